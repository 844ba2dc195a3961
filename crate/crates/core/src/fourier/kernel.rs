//! Direct exponential-sum evaluation over uniform lattices.
//!
//! The hot path streams atoms x points with per-row phase recurrences:
//! along a lattice row the phase of one atom advances by a fixed unit
//! complex step, so each atom-point pair costs one complex multiply and one
//! add. Rows are swept in cache-sized tiles and the recurrence is reseeded
//! from exact `sin_cos` every `reseed` points to keep drift below 1e-12
//! (f64) resp. 1e-5 (f32). All accumulation orders are fixed, so results are
//! bit-identical across runs and thread counts.

use num_complex::Complex;
use rayon::prelude::*;

use crate::scalar::Real;

const TILE: usize = 1024;

/// Structure-of-arrays atom table: frequencies and complex weights, with
/// f64 shadow copies of the frequencies for exact reseeding.
#[derive(Debug, Clone)]
pub struct AtomTable<R: Real> {
    pub fx: Vec<f64>,
    pub fy: Vec<f64>,
    wre: Vec<R>,
    wim: Vec<R>,
}

impl<R: Real> AtomTable<R> {
    pub fn new() -> Self {
        AtomTable {
            fx: Vec::new(),
            fy: Vec::new(),
            wre: Vec::new(),
            wim: Vec::new(),
        }
    }

    pub fn push(&mut self, freq: [f64; 2], weight: Complex<R>) {
        self.fx.push(freq[0]);
        self.fy.push(freq[1]);
        self.wre.push(weight.re);
        self.wim.push(weight.im);
    }

    pub fn from_real_atoms(atoms: &[([R; 2], R)]) -> Self {
        let mut t = Self::new();
        for &(p, w) in atoms {
            t.push(
                [p[0].to_f64_lossy(), p[1].to_f64_lossy()],
                Complex::new(w, R::zero()),
            );
        }
        t
    }

    pub fn len(&self) -> usize {
        self.fx.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fx.is_empty()
    }

    /// All weights real: `S(-x) = conj(S(x))`, so `|S|` is even and ball
    /// sums may be folded onto the upper half plane.
    pub fn weights_are_real(&self) -> bool {
        self.wim.iter().all(|w| *w == R::zero())
    }

    /// Coordinatewise frequency extents `(width_x, width_y)`.
    pub fn extents(&self) -> (f64, f64) {
        let fold = |v: &Vec<f64>| {
            let lo = v.iter().cloned().fold(f64::INFINITY, f64::min);
            let hi = v.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            (hi - lo).max(0.0)
        };
        (fold(&self.fx), fold(&self.fy))
    }

    /// Are all `fy` equal (a flat lift)? Then `|S(x, y)|` does not depend
    /// on `y` and ball sums collapse to one row.
    pub fn is_y_degenerate(&self) -> bool {
        self.fy.windows(2).all(|w| w[0] == w[1])
    }
}

fn reseed_interval<R: Real>() -> usize {
    if std::mem::size_of::<R>() <= 4 {
        256
    } else {
        4096
    }
}

/// Per-atom column steps `cis(2 pi fx h)`, fixed for a whole pass.
struct StepTable<R: Real> {
    sre: Vec<R>,
    sim: Vec<R>,
}

impl<R: Real> StepTable<R> {
    fn new(atoms: &AtomTable<R>, step_x: f64) -> Self {
        let n = atoms.len();
        let mut sre = Vec::with_capacity(n);
        let mut sim = Vec::with_capacity(n);
        let tp = 2.0 * std::f64::consts::PI;
        for j in 0..n {
            let (s, c) = (tp * atoms.fx[j] * step_x).sin_cos();
            sre.push(R::of(c));
            sim.push(R::of(s));
        }
        StepTable { sre, sim }
    }
}

/// Per-row recurrence state, reused across rows of one thread.
struct RowScratch<R: Real> {
    zre: Vec<R>,
    zim: Vec<R>,
}

impl<R: Real> RowScratch<R> {
    fn new(n: usize) -> Self {
        RowScratch {
            zre: vec![R::zero(); n],
            zim: vec![R::zero(); n],
        }
    }
}

/// Add `sum_j w_j e(f_j . (x0 + k h, y))` for `k in 0..out.len()` into `out`.
fn accumulate_row<R: Real>(
    atoms: &AtomTable<R>,
    steps: &StepTable<R>,
    scratch: &mut RowScratch<R>,
    x0: f64,
    h: f64,
    y: f64,
    out: &mut [Complex<R>],
) {
    let n = atoms.len();
    let m = out.len();
    let reseed = reseed_interval::<R>();
    let tp = 2.0 * std::f64::consts::PI;

    let mut k0 = 0usize;
    while k0 < m {
        let klen = reseed.min(m - k0);
        // exact seeds at column k0
        let xs = x0 + k0 as f64 * h;
        for j in 0..n {
            let (s, c) = (tp * (atoms.fx[j] * xs + atoms.fy[j] * y)).sin_cos();
            let (cr, ci) = (R::of(c), R::of(s));
            let (wr, wi) = (atoms.wre[j], atoms.wim[j]);
            scratch.zre[j] = wr * cr - wi * ci;
            scratch.zim[j] = wr * ci + wi * cr;
        }
        let block = &mut out[k0..k0 + klen];
        let mut t0 = 0usize;
        while t0 < klen {
            let tlen = TILE.min(klen - t0);
            let tile = &mut block[t0..t0 + tlen];
            let mut j = 0usize;
            while j + 4 <= n {
                let (mut z0r, mut z0i) = (scratch.zre[j], scratch.zim[j]);
                let (mut z1r, mut z1i) = (scratch.zre[j + 1], scratch.zim[j + 1]);
                let (mut z2r, mut z2i) = (scratch.zre[j + 2], scratch.zim[j + 2]);
                let (mut z3r, mut z3i) = (scratch.zre[j + 3], scratch.zim[j + 3]);
                let (s0r, s0i) = (steps.sre[j], steps.sim[j]);
                let (s1r, s1i) = (steps.sre[j + 1], steps.sim[j + 1]);
                let (s2r, s2i) = (steps.sre[j + 2], steps.sim[j + 2]);
                let (s3r, s3i) = (steps.sre[j + 3], steps.sim[j + 3]);
                for cell in tile.iter_mut() {
                    cell.re += (z0r + z1r) + (z2r + z3r);
                    cell.im += (z0i + z1i) + (z2i + z3i);
                    let t = z0r * s0r - z0i * s0i;
                    z0i = z0r * s0i + z0i * s0r;
                    z0r = t;
                    let t = z1r * s1r - z1i * s1i;
                    z1i = z1r * s1i + z1i * s1r;
                    z1r = t;
                    let t = z2r * s2r - z2i * s2i;
                    z2i = z2r * s2i + z2i * s2r;
                    z2r = t;
                    let t = z3r * s3r - z3i * s3i;
                    z3i = z3r * s3i + z3i * s3r;
                    z3r = t;
                }
                scratch.zre[j] = z0r;
                scratch.zim[j] = z0i;
                scratch.zre[j + 1] = z1r;
                scratch.zim[j + 1] = z1i;
                scratch.zre[j + 2] = z2r;
                scratch.zim[j + 2] = z2i;
                scratch.zre[j + 3] = z3r;
                scratch.zim[j + 3] = z3i;
                j += 4;
            }
            while j < n {
                let (mut zr, mut zi) = (scratch.zre[j], scratch.zim[j]);
                let (sr, si) = (steps.sre[j], steps.sim[j]);
                for cell in tile.iter_mut() {
                    cell.re += zr;
                    cell.im += zi;
                    let t = zr * sr - zi * si;
                    zi = zr * si + zi * sr;
                    zr = t;
                }
                scratch.zre[j] = zr;
                scratch.zim[j] = zi;
                j += 1;
            }
            t0 += tlen;
        }
        k0 += klen;
    }
}

/// Raise `|z|^2` to the `p/2`-th power in f64.
#[derive(Clone, Copy, Debug)]
enum PowKind {
    Sixth,
    Square,
    General(f64),
}

impl PowKind {
    fn of(p: f64) -> Self {
        if p == 6.0 {
            PowKind::Sixth
        } else if p == 2.0 {
            PowKind::Square
        } else {
            PowKind::General(p)
        }
    }

    #[inline]
    fn apply(self, mod_sq: f64) -> f64 {
        match self {
            PowKind::Sixth => mod_sq * mod_sq * mod_sq,
            PowKind::Square => mod_sq,
            PowKind::General(p) => mod_sq.powf(p / 2.0),
        }
    }
}

/// One pass over the lattice `h Z^2` clipped to the closed ball `|x| <= r_max`,
/// accumulating `h^2 sum |S(x)|^p` separately for every radius in `radii`
/// (which must be sorted ascending; the result is cumulative per radius).
///
/// When all weights are real the sum is folded onto rows `y >= 0`.
/// Rows are processed in parallel; the final reduction runs in fixed row
/// order, so the output is bit-identical across thread counts.
pub fn ball_lp_integrals<R: Real>(atoms: &AtomTable<R>, p: f64, h: f64, radii: &[f64]) -> Vec<f64> {
    assert!(!radii.is_empty());
    assert!(radii.windows(2).all(|w| w[0] < w[1]), "radii must ascend");
    let r_max = *radii.last().unwrap();
    let pow = PowKind::of(p);

    if atoms.is_empty() {
        return vec![0.0; radii.len()];
    }

    if atoms.is_y_degenerate() {
        return y_degenerate_ball_lp(atoms, pow, h, radii);
    }

    let symmetric = atoms.weights_are_real();
    let j_max = (r_max / h).floor() as i64;
    let rows: Vec<i64> = if symmetric {
        (0..=j_max).collect()
    } else {
        (-j_max..=j_max).collect()
    };

    let steps = StepTable::new(atoms, h);
    let per_row: Vec<Vec<f64>> = rows
        .par_iter()
        .map_init(
            || RowScratch::new(atoms.len()),
            |scratch, &j| {
            let y = j as f64 * h;
            let k_max = ((r_max * r_max - y * y).max(0.0).sqrt() / h).floor() as i64;
            let width = (2 * k_max + 1) as usize;
            let mut out = vec![Complex::new(R::zero(), R::zero()); width];
            accumulate_row(atoms, &steps, scratch, -(k_max as f64) * h, h, y, &mut out);

            // bucket index by |k|: smallest radius whose ball contains the column
            let mut cut = vec![usize::MAX; k_max as usize + 1];
            for (i, &r) in radii.iter().enumerate().rev() {
                let kc = (r * r - y * y).max(-1.0);
                if kc < 0.0 {
                    continue;
                }
                let kc = (kc.sqrt() / h).floor() as i64;
                for slot in cut.iter_mut().take((kc.min(k_max) + 1) as usize) {
                    *slot = i;
                }
            }

            let weight = if symmetric && j > 0 { 2.0 } else { 1.0 };
            let mut buckets = vec![0.0f64; radii.len()];
            for (idx, z) in out.iter().enumerate() {
                let k = (idx as i64 - k_max).unsigned_abs() as usize;
                let b = cut[k];
                if b == usize::MAX {
                    continue;
                }
                let re = z.re.to_f64_lossy();
                let im = z.im.to_f64_lossy();
                buckets[b] += pow.apply(re * re + im * im);
            }
            for b in &mut buckets {
                *b *= weight;
            }
            buckets
            },
        )
        .collect();

    let mut totals = vec![0.0f64; radii.len()];
    for row in &per_row {
        for (t, v) in totals.iter_mut().zip(row) {
            *t += v;
        }
    }
    // cumulative: ball i includes every annulus bucket j <= i
    for i in 1..totals.len() {
        totals[i] += totals[i - 1];
    }
    for t in &mut totals {
        *t *= h * h;
    }
    totals
}

/// Flat-lift fast path: all `fy` equal, so `|S(x, y)| = |S(x, 0)|` and the
/// lattice-ball sum collapses to one row weighted by column heights.
fn y_degenerate_ball_lp<R: Real>(
    atoms: &AtomTable<R>,
    pow: PowKind,
    h: f64,
    radii: &[f64],
) -> Vec<f64> {
    let r_max = *radii.last().unwrap();
    let k_max = (r_max / h).floor() as i64;
    let width = (2 * k_max + 1) as usize;
    let steps = StepTable::new(atoms, h);
    let mut scratch = RowScratch::new(atoms.len());
    let mut out = vec![Complex::new(R::zero(), R::zero()); width];
    accumulate_row(atoms, &steps, &mut scratch, -(k_max as f64) * h, h, 0.0, &mut out);

    let mut totals = vec![0.0f64; radii.len()];
    for (i, &r) in radii.iter().enumerate() {
        let kc = ((r / h).floor() as i64).min(k_max);
        let mut acc = 0.0f64;
        for k in -kc..=kc {
            let x = k as f64 * h;
            let rows = 2 * ((r * r - x * x).max(0.0).sqrt() / h).floor() as i64 + 1;
            let z = out[(k + k_max) as usize];
            let re = z.re.to_f64_lossy();
            let im = z.im.to_f64_lossy();
            acc += pow.apply(re * re + im * im) * rows as f64;
        }
        totals[i] = acc * h * h;
    }
    totals
}

/// Integration domain for grouped passes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Domain {
    /// Closed ball `|x| <= r`.
    Ball(f64),
    /// Square `[-half, half]^2`.
    Square(f64),
}

impl Domain {
    fn half_extent(self) -> f64 {
        match self {
            Domain::Ball(r) => r,
            Domain::Square(half) => half,
        }
    }

    fn row_k_max(self, y: f64, h: f64) -> i64 {
        match self {
            Domain::Ball(r) => ((r * r - y * y).max(0.0).sqrt() / h).floor() as i64,
            Domain::Square(half) => (half / h).floor() as i64,
        }
    }
}

/// Grouped pass over one domain: returns `h^2 sum |S_total|^p` together with
/// `h^2 sum |S_g|^p` for each atom group (the total is the pointwise sum of
/// the groups). Used by decoupling ratios, where the groups are the caps.
pub fn grouped_lp<R: Real>(
    groups: &[AtomTable<R>],
    p: f64,
    h: f64,
    domain: Domain,
) -> (f64, Vec<f64>) {
    let pow = PowKind::of(p);
    let symmetric = groups.iter().all(|g| g.weights_are_real());
    let j_max = (domain.half_extent() / h).floor() as i64;
    let rows: Vec<i64> = if symmetric {
        (0..=j_max).collect()
    } else {
        (-j_max..=j_max).collect()
    };

    // merged table for the combined sum: one pass through the fast path
    let mut merged = AtomTable::new();
    for g in groups {
        for j in 0..g.len() {
            merged.push([g.fx[j], g.fy[j]], Complex::new(g.wre[j], g.wim[j]));
        }
    }
    let merged_steps = StepTable::new(&merged, h);
    let group_steps: Vec<Option<StepTable<R>>> = groups
        .iter()
        .map(|g| (g.len() > 1).then(|| StepTable::new(g, h)))
        .collect();
    // |S_g| is constant along rows for single-atom groups
    let const_mod_pow: Vec<Option<f64>> = groups
        .iter()
        .map(|g| {
            (g.len() == 1).then(|| {
                let wr = g.wre[0].to_f64_lossy();
                let wi = g.wim[0].to_f64_lossy();
                pow.apply(wr * wr + wi * wi)
            })
        })
        .collect();

    let per_row: Vec<(f64, Vec<f64>)> = rows
        .par_iter()
        .map_init(
            || RowScratch::new(merged.len()),
            |scratch, &j| {
                let y = j as f64 * h;
                let k_max = domain.row_k_max(y, h);
                let width = (2 * k_max + 1) as usize;
                let x0 = -(k_max as f64) * h;
                let weight = if symmetric && j > 0 { 2.0 } else { 1.0 };

                let mut combined = vec![Complex::new(R::zero(), R::zero()); width];
                accumulate_row(&merged, &merged_steps, scratch, x0, h, y, &mut combined);
                let mut total = 0.0f64;
                for z in &combined {
                    let re = z.re.to_f64_lossy();
                    let im = z.im.to_f64_lossy();
                    total += pow.apply(re * re + im * im);
                }

                let mut per_group = Vec::with_capacity(groups.len());
                let mut group_row = combined;
                for (gi, g) in groups.iter().enumerate() {
                    let acc = if let Some(cm) = const_mod_pow[gi] {
                        cm * width as f64
                    } else if g.is_empty() {
                        0.0
                    } else {
                        group_row.fill(Complex::new(R::zero(), R::zero()));
                        accumulate_row(
                            g,
                            group_steps[gi].as_ref().unwrap(),
                            scratch,
                            x0,
                            h,
                            y,
                            &mut group_row,
                        );
                        let mut acc = 0.0f64;
                        for z in &group_row {
                            let re = z.re.to_f64_lossy();
                            let im = z.im.to_f64_lossy();
                            acc += pow.apply(re * re + im * im);
                        }
                        acc
                    };
                    per_group.push(acc * weight);
                }
                (total * weight, per_group)
            },
        )
        .collect();

    let mut total = 0.0f64;
    let mut per_group = vec![0.0f64; groups.len()];
    for (t, row) in &per_row {
        total += t;
        for (g, v) in per_group.iter_mut().zip(row) {
            *g += v;
        }
    }
    let h2 = h * h;
    (total * h2, per_group.iter().map(|v| v * h2).collect())
}

/// Sweep an affine lattice `origin + iu * step_u + iv * step_v` (`iu` fast),
/// calling `visit(iu, iv, S)` with the phase sum at every node. Rows go in
/// `iv` order; used by quadratures over rotated tube frames.
pub fn sweep_affine_lattice<R: Real>(
    atoms: &AtomTable<R>,
    origin: [f64; 2],
    step_u: [f64; 2],
    n_u: usize,
    step_v: [f64; 2],
    n_v: usize,
    mut visit: impl FnMut(usize, usize, Complex<R>),
) {
    let n = atoms.len();
    let reseed = reseed_interval::<R>();
    let tp = 2.0 * std::f64::consts::PI;
    // per-atom step along u
    let mut sre = Vec::with_capacity(n);
    let mut sim = Vec::with_capacity(n);
    for j in 0..n {
        let (s, c) = (tp * (atoms.fx[j] * step_u[0] + atoms.fy[j] * step_u[1])).sin_cos();
        sre.push(R::of(c));
        sim.push(R::of(s));
    }
    let mut zre = vec![R::zero(); n];
    let mut zim = vec![R::zero(); n];

    for iv in 0..n_v {
        let base = [
            origin[0] + iv as f64 * step_v[0],
            origin[1] + iv as f64 * step_v[1],
        ];
        let mut iu = 0usize;
        while iu < n_u {
            let len = reseed.min(n_u - iu);
            let x = [base[0] + iu as f64 * step_u[0], base[1] + iu as f64 * step_u[1]];
            for j in 0..n {
                let (s, c) = (tp * (atoms.fx[j] * x[0] + atoms.fy[j] * x[1])).sin_cos();
                let (cr, ci) = (R::of(c), R::of(s));
                let (wr, wi) = (atoms.wre[j], atoms.wim[j]);
                zre[j] = wr * cr - wi * ci;
                zim[j] = wr * ci + wi * cr;
            }
            for q in 0..len {
                let mut acc_re = R::zero();
                let mut acc_im = R::zero();
                for j in 0..n {
                    acc_re += zre[j];
                    acc_im += zim[j];
                    let t = zre[j] * sre[j] - zim[j] * sim[j];
                    zim[j] = zre[j] * sim[j] + zim[j] * sre[j];
                    zre[j] = t;
                }
                visit(iu + q, iv, Complex::new(acc_re, acc_im));
            }
            iu += len;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn direct_sum(atoms: &AtomTable<f64>, x: [f64; 2]) -> Complex<f64> {
        let tp = 2.0 * std::f64::consts::PI;
        let mut acc = Complex::new(0.0, 0.0);
        for j in 0..atoms.len() {
            let phi = tp * (atoms.fx[j] * x[0] + atoms.fy[j] * x[1]);
            let w = Complex::new(atoms.wre[j], atoms.wim[j]);
            acc += w * Complex::new(phi.cos(), phi.sin());
        }
        acc
    }

    fn sample_atoms(n: usize) -> AtomTable<f64> {
        let mut t = AtomTable::new();
        for j in 0..n {
            let x = -1.0 + 2.0 * j as f64 / (n - 1) as f64;
            // irrational-ish offsets so nothing aligns with the lattice
            let y = (x * x) + 0.001 * (j as f64).sin();
            t.push([x, y], Complex::new(1.0 / n as f64, 0.0));
        }
        t
    }

    #[test]
    fn row_recurrence_matches_direct_evaluation() {
        let atoms = sample_atoms(7);
        let h = 0.13;
        let y = -3.7;
        let x0 = -11.0 * h;
        let mut out = vec![Complex::new(0.0, 0.0); 2 * 11 + 1];
        let steps = StepTable::new(&atoms, h);
        let mut scratch = RowScratch::new(atoms.len());
        accumulate_row(&atoms, &steps, &mut scratch, x0, h, y, &mut out);
        for (k, z) in out.iter().enumerate() {
            let x = [x0 + k as f64 * h, y];
            let want = direct_sum(&atoms, x);
            assert!((z - want).norm() < 1e-12, "k={k}");
        }
    }

    #[test]
    fn reseeding_keeps_long_rows_exact() {
        let mut atoms = AtomTable::new();
        atoms.push([1.7320508075688772, 0.5], Complex::new(1.0, 0.0));
        atoms.push([-0.3333, 0.25], Complex::new(0.5, 0.0));
        let h = 0.125;
        let width = 3 * 4096 + 17;
        let mut out = vec![Complex::new(0.0, 0.0); width];
        let steps = StepTable::new(&atoms, h);
        let mut scratch = RowScratch::new(atoms.len());
        accumulate_row(&atoms, &steps, &mut scratch, -7.0, h, 2.0, &mut out);
        for &k in &[0usize, 4095, 4096, 8191, width - 1] {
            let want = direct_sum(&atoms, [-7.0 + k as f64 * h, 2.0]);
            assert!((out[k] - want).norm() < 1e-11, "k={k}");
        }
    }

    /// Brute-force lattice sum over the ball, no recurrences, no folding.
    fn oracle_ball_lp(atoms: &AtomTable<f64>, p: f64, h: f64, r: f64) -> f64 {
        let jm = (r / h).floor() as i64;
        let mut acc = 0.0;
        for j in -jm..=jm {
            for k in -jm..=jm {
                let x = [k as f64 * h, j as f64 * h];
                if x[0] * x[0] + x[1] * x[1] <= r * r {
                    let z = direct_sum(atoms, x);
                    acc += (z.norm_sqr()).powf(p / 2.0);
                }
            }
        }
        acc * h * h
    }

    #[test]
    fn ball_integrals_match_brute_force_multi_radius() {
        let atoms = sample_atoms(5);
        let radii = [4.0, 6.5, 9.0];
        let got = ball_lp_integrals(&atoms, 6.0, 0.25, &radii);
        for (i, &r) in radii.iter().enumerate() {
            let want = oracle_ball_lp(&atoms, 6.0, 0.25, r);
            assert!(
                (got[i] - want).abs() < 1e-9 * want.max(1.0),
                "r={r}: {} vs {want}",
                got[i]
            );
        }
    }

    #[test]
    fn complex_weights_disable_folding_but_stay_correct() {
        let mut atoms = AtomTable::new();
        atoms.push([0.3, 0.1], Complex::new(0.7, 0.4));
        atoms.push([-0.8, 0.9], Complex::new(-0.2, 0.1));
        atoms.push([0.05, -0.4], Complex::new(0.0, -0.6));
        assert!(!atoms.weights_are_real());
        let got = ball_lp_integrals(&atoms, 6.0, 0.3, &[5.0]);
        let want = oracle_ball_lp(&atoms, 6.0, 0.3, 5.0);
        assert!((got[0] - want).abs() < 1e-9 * want.max(1.0));
    }

    #[test]
    fn flat_fast_path_matches_full_pass() {
        let mut atoms = AtomTable::new();
        for j in 0..6 {
            atoms.push(
                [-1.0 + 0.4 * j as f64, 0.25],
                Complex::new(1.0 / 6.0, 0.0),
            );
        }
        assert!(atoms.is_y_degenerate());
        let fast = ball_lp_integrals(&atoms, 6.0, 0.2, &[4.0, 7.0]);
        for (i, &r) in [4.0, 7.0].iter().enumerate() {
            let want = oracle_ball_lp(&atoms, 6.0, 0.2, r);
            assert!((fast[i] - want).abs() < 1e-9 * want.max(1.0));
        }
    }

    #[test]
    fn grouped_pass_total_is_sum_of_groups_pointwise() {
        let g1 = {
            let mut t = AtomTable::new();
            t.push([0.2, 0.04], Complex::new(1.0, 0.0));
            t.push([0.25, 0.0625], Complex::new(1.0, 0.0));
            t
        };
        let g2 = {
            let mut t = AtomTable::new();
            t.push([-0.5, 0.25], Complex::new(1.0, 0.0));
            t
        };
        let (total, per_group) =
            grouped_lp(&[g1.clone(), g2.clone()], 6.0, 0.25, Domain::Ball(6.0));

        let mut merged = AtomTable::new();
        for g in [&g1, &g2] {
            for j in 0..g.len() {
                merged.push([g.fx[j], g.fy[j]], Complex::new(g.wre[j], g.wim[j]));
            }
        }
        let want_total = oracle_ball_lp(&merged, 6.0, 0.25, 6.0);
        assert!((total - want_total).abs() < 1e-9 * want_total);
        let want_g1 = oracle_ball_lp(&g1, 6.0, 0.25, 6.0);
        assert!((per_group[0] - want_g1).abs() < 1e-9 * want_g1);
    }

    #[test]
    fn affine_sweep_matches_direct() {
        let atoms = sample_atoms(4);
        let origin = [0.3, -0.9];
        let su = [0.11, 0.05];
        let sv = [-0.04, 0.21];
        sweep_affine_lattice(&atoms, origin, su, 300, sv, 5, |iu, iv, z| {
            let x = [
                origin[0] + iu as f64 * su[0] + iv as f64 * sv[0],
                origin[1] + iu as f64 * su[1] + iv as f64 * sv[1],
            ];
            let want = direct_sum(&atoms, x);
            assert!((z - want).norm() < 1e-11, "iu={iu} iv={iv}");
        });
    }

    #[test]
    fn deterministic_across_repeated_runs() {
        let atoms = sample_atoms(9);
        let a = ball_lp_integrals(&atoms, 6.0, 0.11, &[5.0, 8.0]);
        let b = ball_lp_integrals(&atoms, 6.0, 0.11, &[5.0, 8.0]);
        assert_eq!(a, b, "bitwise determinism");
    }
}
