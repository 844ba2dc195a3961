//! Tube-square incidence engine: exact rectangle intersection counting with
//! a bucketed sweep, heavy/light square classification, (delta, s, C)-sets
//! for points and lines, and the discretized Furstenberg-set verifier.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::wavepacket::Tube;

/// Lattice of side-sqrt(R) squares tiling `[-R, R]^2`. Square `(i, j)` is
/// `[i s, (i+1) s] x [j s, (j+1) s]` with `i, j` in `[-n, n)`.
#[derive(Debug, Clone, Copy)]
pub struct SquareGrid {
    radius: f64,
    side: f64,
    n: i64,
}

impl SquareGrid {
    pub fn new(radius: f64) -> Result<Self> {
        if radius < 16.0 {
            invalid!("square grids need R >= 16");
        }
        let side = radius.sqrt();
        let n = (radius / side).round() as i64;
        Ok(SquareGrid { radius, side, n })
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn side(&self) -> f64 {
        self.side
    }

    /// Index range half-width: indices run in `[-n, n)`.
    pub fn half_cells(&self) -> i64 {
        self.n
    }

    pub fn num_squares(&self) -> usize {
        (2 * self.n as usize).pow(2)
    }

    pub fn center(&self, cell: (i64, i64)) -> [f64; 2] {
        [
            (cell.0 as f64 + 0.5) * self.side,
            (cell.1 as f64 + 0.5) * self.side,
        ]
    }

    fn flat_index(&self, cell: (i64, i64)) -> usize {
        let w = 2 * self.n;
        ((cell.0 + self.n) * w + (cell.1 + self.n)) as usize
    }

    fn cells(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        let n = self.n;
        (-n..n).flat_map(move |i| (-n..n).map(move |j| (i, j)))
    }
}

/// Exact closed-rectangle intersection test between a tube and an
/// axis-aligned square, by separating axes against the square corners.
pub fn tube_intersects_square(tube: &Tube, center: [f64; 2], side: f64) -> bool {
    let across = tube.across();
    let axes = [[1.0, 0.0], [0.0, 1.0], tube.direction, across];
    let half_square = side / 2.0;
    for a in axes {
        let dc = (tube.center[0] - center[0]) * a[0] + (tube.center[1] - center[1]) * a[1];
        let tube_r = (tube.width / 2.0) * (across[0] * a[0] + across[1] * a[1]).abs()
            + (tube.length / 2.0) * (tube.direction[0] * a[0] + tube.direction[1] * a[1]).abs();
        let square_r = half_square * (a[0].abs() + a[1].abs());
        if dc.abs() > tube_r + square_r {
            return false;
        }
    }
    true
}

/// Incidence counts between a tube family and the square grid.
#[derive(Debug, Clone)]
pub struct IncidenceCount {
    pub total: u64,
    /// Dense per-square counts, indexed by the grid's flat index.
    per_square: Vec<u32>,
    n: i64,
}

impl IncidenceCount {
    pub fn count_at(&self, grid: &SquareGrid, cell: (i64, i64)) -> u32 {
        self.per_square[grid.flat_index(cell)]
    }

    pub fn nonempty(&self) -> Vec<((i64, i64), u32)> {
        let w = 2 * self.n;
        self.per_square
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(k, &c)| {
                let i = k as i64 / w - self.n;
                let j = k as i64 % w - self.n;
                ((i, j), c)
            })
            .collect()
    }
}

/// Bucketed sweep: each tube visits only the grid cells meeting its bounding
/// box, testing each candidate with the exact predicate. Equals the all-pairs
/// brute force by construction (same predicate, superset of candidates).
pub fn incidence_count(tubes: &[Tube], grid: &SquareGrid) -> IncidenceCount {
    let per_tube: Vec<Vec<usize>> = tubes
        .par_iter()
        .map(|tube| {
            let corners = tube.corners();
            let (mut min_x, mut max_x) = (f64::INFINITY, f64::NEG_INFINITY);
            let (mut min_y, mut max_y) = (f64::INFINITY, f64::NEG_INFINITY);
            for c in corners {
                min_x = min_x.min(c[0]);
                max_x = max_x.max(c[0]);
                min_y = min_y.min(c[1]);
                max_y = max_y.max(c[1]);
            }
            let s = grid.side;
            let i_lo = ((min_x / s).floor() as i64 - 1).max(-grid.n);
            let i_hi = ((max_x / s).floor() as i64).min(grid.n - 1);
            let j_lo = ((min_y / s).floor() as i64 - 1).max(-grid.n);
            let j_hi = ((max_y / s).floor() as i64).min(grid.n - 1);
            let mut hits = Vec::new();
            for i in i_lo..=i_hi {
                for j in j_lo..=j_hi {
                    let cell = (i, j);
                    if tube_intersects_square(tube, grid.center(cell), grid.side) {
                        hits.push(grid.flat_index(cell));
                    }
                }
            }
            hits
        })
        .collect();

    let mut per_square = vec![0u32; grid.num_squares()];
    let mut total = 0u64;
    for hits in &per_tube {
        total += hits.len() as u64;
        for &k in hits {
            per_square[k] += 1;
        }
    }
    IncidenceCount {
        total,
        per_square,
        n: grid.n,
    }
}

/// Literal all-pairs intersection count, the oracle for the bucketed sweep.
pub fn incidence_count_brute(tubes: &[Tube], grid: &SquareGrid) -> IncidenceCount {
    let mut per_square = vec![0u32; grid.num_squares()];
    let mut total = 0u64;
    for cell in grid.cells() {
        let center = grid.center(cell);
        let k = grid.flat_index(cell);
        for tube in tubes {
            if tube_intersects_square(tube, center, grid.side) {
                per_square[k] += 1;
                total += 1;
            }
        }
    }
    IncidenceCount {
        total,
        per_square,
        n: grid.n,
    }
}

/// Heavy/light classification of the nonempty squares.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HeavyLightSplit {
    pub s: f64,
    pub alpha: f64,
    /// `R^{s/2 - alpha}`.
    pub threshold: f64,
    pub heavy: Vec<(i64, i64)>,
    pub light: Vec<(i64, i64)>,
    /// `R^{1-s} R^{10 alpha + 2 alpha / s}`, the double-counting bound.
    pub heavy_bound: f64,
    pub heavy_ratio: f64,
    /// `R^{1 - s - 2 alpha}`, the improved bound.
    pub improved_bound: f64,
    pub improved_ratio: f64,
}

pub fn heavy_light_split(
    tubes: &[Tube],
    grid: &SquareGrid,
    s: f64,
    alpha: f64,
) -> HeavyLightSplit {
    let counts = incidence_count(tubes, grid);
    let r = grid.radius();
    let threshold = r.powf(s / 2.0 - alpha);
    let mut heavy = Vec::new();
    let mut light = Vec::new();
    for (cell, c) in counts.nonempty() {
        if c as f64 >= threshold {
            heavy.push(cell);
        } else {
            light.push(cell);
        }
    }
    let heavy_bound = r.powf(1.0 - s) * r.powf(10.0 * alpha + 2.0 * alpha / s);
    let improved_bound = r.powf(1.0 - s - 2.0 * alpha);
    HeavyLightSplit {
        s,
        alpha,
        threshold,
        heavy_ratio: heavy.len() as f64 / heavy_bound,
        improved_ratio: heavy.len() as f64 / improved_bound,
        heavy,
        light,
        heavy_bound,
        improved_bound,
    }
}

/// Count of heavy squares met by one tube, against the per-tube claim
/// `|T| / R^{s/2 - alpha - 2 alpha / s}`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct PerTubeHeavyCheck {
    pub count: usize,
    pub bound: f64,
    pub ratio: f64,
}

pub fn per_tube_heavy_count(
    tubes: &[Tube],
    split: &HeavyLightSplit,
    grid: &SquareGrid,
    tube: &Tube,
) -> PerTubeHeavyCheck {
    let count = split
        .heavy
        .iter()
        .filter(|&&cell| tube_intersects_square(tube, grid.center(cell), grid.side()))
        .count();
    let r = grid.radius();
    let bound =
        tubes.len() as f64 / r.powf(split.s / 2.0 - split.alpha - 2.0 * split.alpha / split.s);
    PerTubeHeavyCheck {
        count,
        bound,
        ratio: count as f64 / bound,
    }
}

/// Worst ball of a (delta, s, C)-set scan.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct BallWitness {
    pub center_index: usize,
    pub r: f64,
    pub count: usize,
    pub allowed: f64,
}

/// Verdict of a (delta, s, C)-set test.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DeltaSetVerdict {
    pub is_delta_set: bool,
    pub delta: f64,
    pub s: f64,
    pub c: f64,
    /// Per dyadic radius: `(r, max count, allowed)`.
    pub rows: Vec<(f64, usize, f64)>,
    pub worst: Option<BallWitness>,
}

fn delta_set_scan(
    dist: impl Fn(usize, usize) -> f64,
    n: usize,
    delta: f64,
    r_top: f64,
    s: f64,
    c: f64,
) -> DeltaSetVerdict {
    let mut rows = Vec::new();
    let mut worst: Option<BallWitness> = None;
    let mut worst_excess = 1.0f64;
    let mut r = delta;
    loop {
        let allowed = c * (r / delta).powf(s);
        let mut max_count = 0usize;
        let mut max_at = 0usize;
        for i in 0..n {
            // open balls: strict inequality
            let count = (0..n).filter(|&j| dist(i, j) < r).count();
            if count > max_count {
                max_count = count;
                max_at = i;
            }
        }
        rows.push((r, max_count, allowed));
        let excess = max_count as f64 / allowed;
        if excess > 1.0 && excess > worst_excess {
            worst_excess = excess;
            worst = Some(BallWitness {
                center_index: max_at,
                r,
                count: max_count,
                allowed,
            });
        }
        if r > r_top {
            break;
        }
        r *= 2.0;
    }
    DeltaSetVerdict {
        is_delta_set: worst.is_none(),
        delta,
        s,
        c,
        rows,
        worst,
    }
}

/// Test `|P intersect B(x, r)| <= C (r/delta)^s` for centers in the set and
/// dyadic `r` from `delta` past the diameter (Euclidean metric, open balls).
pub fn check_delta_set_points(
    points: &[[f64; 2]],
    delta: f64,
    s: f64,
    c: f64,
) -> Result<DeltaSetVerdict> {
    if points.is_empty() {
        invalid!("point set must be nonempty");
    }
    let d2 = |i: usize, j: usize| -> f64 {
        let dx = points[i][0] - points[j][0];
        let dy = points[i][1] - points[j][1];
        (dx * dx + dy * dy).sqrt()
    };
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if d2(i, j) < delta * (1.0 - 1e-12) {
                invalid!("points {i} and {j} closer than delta");
            }
        }
    }
    let mut diam = 0.0f64;
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            diam = diam.max(d2(i, j));
        }
    }
    Ok(delta_set_scan(d2, points.len(), delta, diam.max(delta), s, c))
}

/// A line `{x : x . n(phi) = a}` with `n(phi) = (-sin phi, cos phi)`,
/// `phi` in `[0, pi)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Line {
    pub angle: f64,
    pub offset: f64,
}

impl Line {
    pub fn normal(&self) -> [f64; 2] {
        [-self.angle.sin(), self.angle.cos()]
    }

    pub fn direction(&self) -> [f64; 2] {
        [self.angle.cos(), self.angle.sin()]
    }

    /// Foot of the perpendicular from the origin.
    pub fn foot(&self) -> [f64; 2] {
        let n = self.normal();
        [self.offset * n[0], self.offset * n[1]]
    }

    pub fn distance_to_point(&self, p: [f64; 2]) -> f64 {
        let n = self.normal();
        (p[0] * n[0] + p[1] * n[1] - self.offset).abs()
    }

    /// Rotate about the origin by `rho`, then translate by `t`. Folds the
    /// angle back into `[0, pi)`, flipping the offset sign when it wraps.
    pub fn transformed(&self, rho: f64, t: [f64; 2]) -> Line {
        let mut angle = self.angle + rho;
        let mut offset = self.offset;
        while angle >= std::f64::consts::PI {
            angle -= std::f64::consts::PI;
            offset = -offset;
        }
        while angle < 0.0 {
            angle += std::f64::consts::PI;
            offset = -offset;
        }
        let line = Line { angle, offset };
        let n = line.normal();
        Line {
            angle,
            offset: offset + t[0] * n[0] + t[1] * n[1],
        }
    }
}

/// `d(l1, l2) = |sin(phi1 - phi2)| + |a1 - a2|`: the projection-distance
/// part in closed form plus the offset gap.
pub fn line_metric(l1: &Line, l2: &Line) -> f64 {
    (l1.angle - l2.angle).sin().abs() + (l1.offset - l2.offset).abs()
}

/// A family of lines with a declared separation scale.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LineFamily {
    pub lines: Vec<Line>,
    pub delta: f64,
}

impl LineFamily {
    /// Validates pairwise metric separation `>= delta`.
    pub fn new_separated(lines: Vec<Line>, delta: f64) -> Result<Self> {
        if lines.is_empty() {
            invalid!("line family must be nonempty");
        }
        for i in 0..lines.len() {
            for j in i + 1..lines.len() {
                let d = line_metric(&lines[i], &lines[j]);
                if d < delta * (1.0 - 1e-12) {
                    invalid!("lines {i} and {j} at metric distance {d} < delta {delta}");
                }
            }
        }
        Ok(LineFamily { lines, delta })
    }

    /// No separation check (for derived families such as tube axes).
    pub fn new_unchecked(lines: Vec<Line>, delta: f64) -> Self {
        LineFamily { lines, delta }
    }
}

/// Row of the rectangle cross-check: lines crossing a `1 x r` rectangle
/// around a family line at full length.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct RectangleCheckRow {
    pub line_index: usize,
    pub r: f64,
    pub full_length_count: usize,
    pub allowed: f64,
}

/// Verdict for a line family: the metric-ball scan plus sampled rectangle
/// cross-checks of the "full length" formulation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LineSetVerdict {
    pub metric: DeltaSetVerdict,
    pub rectangle_rows: Vec<RectangleCheckRow>,
    /// Minimal chord fraction counting as "full length".
    pub full_length_min: f64,
}

/// Chord length of `line` inside the `1 x r` rectangle centered at `center`
/// with long axis along `axis_dir`.
fn chord_in_rectangle(line: &Line, center: [f64; 2], axis_dir: [f64; 2], r: f64) -> f64 {
    let d = line.direction();
    let p0 = line.foot();
    let rel = [p0[0] - center[0], p0[1] - center[1]];
    let across = [-axis_dir[1], axis_dir[0]];
    // coordinates of the line in the rectangle frame: u along, v across
    let u0 = rel[0] * axis_dir[0] + rel[1] * axis_dir[1];
    let du = d[0] * axis_dir[0] + d[1] * axis_dir[1];
    let v0 = rel[0] * across[0] + rel[1] * across[1];
    let dv = d[0] * across[0] + d[1] * across[1];
    let mut t_lo = f64::NEG_INFINITY;
    let mut t_hi = f64::INFINITY;
    for (start, step, half) in [(u0, du, 0.5), (v0, dv, r / 2.0)] {
        if step.abs() < 1e-15 {
            if start.abs() > half {
                return 0.0;
            }
        } else {
            let a = (-half - start) / step;
            let b = (half - start) / step;
            t_lo = t_lo.max(a.min(b));
            t_hi = t_hi.min(a.max(b));
        }
    }
    (t_hi - t_lo).max(0.0)
}

/// Metric-ball (delta, s, C)-test for lines, with the rectangle formulation
/// cross-checked on sampled radii (informational rows).
pub fn check_delta_set_lines(family: &LineFamily, s: f64, c: f64) -> LineSetVerdict {
    let lines = &family.lines;
    let n = lines.len();
    let delta = family.delta;
    let metric = delta_set_scan(
        |i, j| line_metric(&lines[i], &lines[j]),
        n,
        delta,
        2.0,
        s,
        c,
    );

    let full_length_min = 0.9;
    // centroid of the foot points anchors the sampled rectangles
    let mut centroid = [0.0f64; 2];
    for l in lines {
        let f = l.foot();
        centroid[0] += f[0] / n as f64;
        centroid[1] += f[1] / n as f64;
    }
    let mut rectangle_rows = Vec::new();
    let sample_stride = (n / 4).max(1);
    let mut r = delta * 2.0;
    while r <= 1.0 {
        for idx in (0..n).step_by(sample_stride) {
            let l0 = &lines[idx];
            let d0 = l0.direction();
            let foot = l0.foot();
            let rel = [centroid[0] - foot[0], centroid[1] - foot[1]];
            let along = rel[0] * d0[0] + rel[1] * d0[1];
            let center = [foot[0] + along * d0[0], foot[1] + along * d0[1]];
            let count = lines
                .iter()
                .filter(|l| chord_in_rectangle(l, center, d0, r) >= full_length_min)
                .count();
            rectangle_rows.push(RectangleCheckRow {
                line_index: idx,
                r,
                full_length_count: count,
                allowed: c * (r / delta).powf(s),
            });
        }
        r *= 4.0;
    }
    LineSetVerdict {
        metric,
        rectangle_rows,
        full_length_min,
    }
}

/// Certification state of a single line's slab in the Furstenberg check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LineCertification {
    /// The greedy subset reached the target cardinality and certified as a
    /// (delta, s, C)-set.
    Certified,
    /// Enough slab points, but the greedy subset failed certification; the
    /// verdict is "not certified" rather than "false".
    NotCertified,
    TooFewPoints,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct PerLineCheck {
    pub line_index: usize,
    pub slab_count: usize,
    pub required: usize,
    pub status: LineCertification,
}

/// Verdict of the discretized (delta, s, t, C)-Furstenberg test.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FurstenbergVerdict {
    pub is_furstenberg: bool,
    pub delta: f64,
    pub s: f64,
    pub t: f64,
    pub c: f64,
    pub line_set_is_delta_t: bool,
    /// `|L| >= C^{-1} delta^{-t}`.
    pub line_cardinality_ok: bool,
    pub point_count: usize,
    pub per_line: Vec<PerLineCheck>,
    /// `|F| / delta^{-2s}`: informational comparison with the Furstenberg
    /// cardinality lower bound; not part of the verdict.
    pub os_cardinality_ratio: f64,
}

/// Greedy farthest-point subset of `m` indices, deterministic (lowest index
/// seeds, ties toward lower index).
fn farthest_point_subset(points: &[[f64; 2]], candidates: &[usize], m: usize) -> Vec<usize> {
    let mut chosen = vec![candidates[0]];
    let mut min_dist: Vec<f64> = candidates
        .iter()
        .map(|&i| dist2(points[i], points[candidates[0]]))
        .collect();
    while chosen.len() < m {
        let mut best = 0usize;
        let mut best_d = f64::NEG_INFINITY;
        for (k, &d) in min_dist.iter().enumerate() {
            if d > best_d {
                best_d = d;
                best = k;
            }
        }
        let pick = candidates[best];
        chosen.push(pick);
        for (k, &i) in candidates.iter().enumerate() {
            min_dist[k] = min_dist[k].min(dist2(points[i], points[pick]));
        }
    }
    chosen
}

fn dist2(a: [f64; 2], b: [f64; 2]) -> f64 {
    let dx = a[0] - b[0];
    let dy = a[1] - b[1];
    (dx * dx + dy * dy).sqrt()
}

/// Verify the discretized Furstenberg property: the line family is a
/// (delta, t, C)-set of cardinality at least `C^{-1} delta^{-t}`, and the
/// delta-slab of every line contains a certified (delta, s, C)-subset of
/// cardinality at least `C^{-1} delta^{-s}` (greedy farthest-point
/// extraction, then certification).
pub fn verify_furstenberg(
    points: &[[f64; 2]],
    family: &LineFamily,
    delta: f64,
    s: f64,
    t: f64,
    c: f64,
) -> Result<FurstenbergVerdict> {
    check_delta_set_points(points, delta, 2.0, f64::INFINITY)?; // separation validation only
    let line_verdict = check_delta_set_lines(family, t, c);
    let line_set_is_delta_t = line_verdict.metric.is_delta_set;
    let required_lines = (delta.powf(-t) / c).ceil() as usize;
    let line_cardinality_ok = family.lines.len() >= required_lines;

    let required = (delta.powf(-s) / c).ceil() as usize;
    let per_line: Vec<PerLineCheck> = family
        .lines
        .par_iter()
        .enumerate()
        .map(|(idx, line)| {
            let slab: Vec<usize> = (0..points.len())
                .filter(|&i| line.distance_to_point(points[i]) <= delta)
                .collect();
            let status = if slab.len() < required {
                LineCertification::TooFewPoints
            } else {
                let subset_idx = farthest_point_subset(points, &slab, required);
                let subset: Vec<[f64; 2]> = subset_idx.iter().map(|&i| points[i]).collect();
                match check_delta_set_points(&subset, delta, s, c) {
                    Ok(v) if v.is_delta_set => LineCertification::Certified,
                    _ => LineCertification::NotCertified,
                }
            };
            PerLineCheck {
                line_index: idx,
                slab_count: slab.len(),
                required,
                status,
            }
        })
        .collect();

    let all_lines_certified = per_line
        .iter()
        .all(|c| c.status == LineCertification::Certified);
    Ok(FurstenbergVerdict {
        is_furstenberg: line_set_is_delta_t && line_cardinality_ok && all_lines_certified,
        delta,
        s,
        t,
        c,
        line_set_is_delta_t,
        line_cardinality_ok,
        point_count: points.len(),
        per_line,
        os_cardinality_ratio: points.len() as f64 / delta.powf(-2.0 * s),
    })
}

/// Axis of a tube rescaled by `1/R`: the central line of `R^{-1} T`.
pub fn rescaled_tube_axis(tube: &Tube, radius: f64) -> Line {
    let d = tube.direction;
    let mut angle = d[1].atan2(d[0]);
    if angle < 0.0 {
        angle += std::f64::consts::PI;
    }
    if angle >= std::f64::consts::PI {
        angle -= std::f64::consts::PI;
    }
    let line = Line { angle, offset: 0.0 };
    let n = line.normal();
    Line {
        angle,
        offset: (tube.center[0] / radius) * n[0] + (tube.center[1] / radius) * n[1],
    }
}
