//! Additive 2- and 3-energies: exact tuple counting for discrete point sets
//! (brute force and histogram routes that must agree to the integer),
//! weighted window energies for atomic measures, and (delta, s)-regularity.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::fit::fit_power_law;
use crate::measure::DiscreteMeasure1D;
use crate::scalar::Real;

/// A delta-separated list of points in `[-1, 1]`, kept sorted.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet1D<R: Real> {
    points: Vec<R>,
    delta: R,
}

impl<R: Real> PointSet1D<R> {
    pub fn new(mut points: Vec<R>, delta: R) -> Result<Self> {
        if points.is_empty() {
            invalid!("point set must be nonempty");
        }
        if delta <= R::zero() {
            invalid!("delta must be positive");
        }
        points.sort_by(|a, b| a.partial_cmp(b).expect("finite points"));
        let slack = delta * R::of(1.0 - 1e-12);
        for pair in points.windows(2) {
            if pair[1] - pair[0] < slack {
                invalid!(
                    "points {} and {} closer than delta = {delta}",
                    pair[0],
                    pair[1]
                );
            }
        }
        Ok(Self { points, delta })
    }

    /// Arithmetic progression `{0, delta, ..., (n-1) delta}` shifted to start
    /// at `start`.
    pub fn arithmetic(n: usize, delta: R, start: R) -> Result<Self> {
        let points = (0..n).map(|k| start + R::of(k as f64) * delta).collect();
        Self::new(points, delta)
    }

    pub fn points(&self) -> &[R] {
        &self.points
    }

    pub fn delta(&self) -> R {
        self.delta
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn translated(&self, c: R) -> Self {
        Self {
            points: self.points.iter().map(|&p| p + c).collect(),
            delta: self.delta,
        }
    }

    /// Dilation by `lambda > 0` (exact when `lambda` is a power of two).
    pub fn dilated(&self, lambda: R) -> Self {
        Self {
            points: self.points.iter().map(|&p| p * lambda).collect(),
            delta: self.delta * lambda,
        }
    }

    fn diameter(&self) -> R {
        *self.points.last().unwrap() - self.points[0]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EnergyKind {
    E2Discrete,
    E3Discrete,
    Ec2Measure,
    Ec3Measure,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EnergyMethod {
    BruteForce,
    Histogram,
}

/// Order of a measure energy: 2-energy (4 atoms) or 3-energy (6 atoms).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EnergyOrder {
    Two,
    Three,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EnergyReport {
    pub kind: EnergyKind,
    /// Threshold (discrete) or window radius (measure).
    pub scale: f64,
    pub value: f64,
    /// Exact tuple count for the discrete kinds.
    pub count: Option<u64>,
    /// `value` divided by the trivial bound (`|P|^3`, `|P|^5`, `mass^4`, `mass^6`).
    pub normalized: f64,
    pub method: EnergyMethod,
}

#[inline]
fn checked_acc(acc: &mut u64, add: u64) -> Result<()> {
    *acc = acc.checked_add(add).ok_or(Error::CountOverflow)?;
    Ok(())
}

/// Count quadruples with `|(p1 + p2) - (p3 + p4)| <= threshold`.
///
/// Both methods compute pair sums with the same parenthesization, so the
/// histogram route reproduces brute force exactly, boundary ties included.
pub fn e2_discrete<R: Real>(
    set: &PointSet1D<R>,
    threshold: R,
    method: EnergyMethod,
) -> Result<EnergyReport> {
    if threshold < R::zero() {
        invalid!("threshold must be nonnegative");
    }
    let n = set.len();
    let count = match method {
        EnergyMethod::BruteForce => {
            if n > 64 {
                invalid!("brute-force E2 limited to 64 points, got {n}");
            }
            let p = set.points();
            let mut count = 0u64;
            for i1 in 0..n {
                for i2 in 0..n {
                    let s12 = p[i1] + p[i2];
                    for i3 in 0..n {
                        for i4 in 0..n {
                            let s34 = p[i3] + p[i4];
                            if (s12 - s34).abs() <= threshold {
                                count += 1;
                            }
                        }
                    }
                }
            }
            count
        }
        EnergyMethod::Histogram => {
            let sums = pair_sums(set.points());
            window_pair_count(&sums, threshold)?
        }
    };
    let trivial = (n as f64).powi(3);
    Ok(EnergyReport {
        kind: EnergyKind::E2Discrete,
        scale: threshold.to_f64_lossy(),
        value: count as f64,
        count: Some(count),
        normalized: count as f64 / trivial,
        method,
    })
}

/// Count 6-tuples with `|(p1 + p2 + p3) - (p4 + p5 + p6)| <= threshold`.
pub fn e3_discrete<R: Real>(
    set: &PointSet1D<R>,
    threshold: R,
    method: EnergyMethod,
) -> Result<EnergyReport> {
    if threshold < R::zero() {
        invalid!("threshold must be nonnegative");
    }
    let n = set.len();
    let count = match method {
        EnergyMethod::BruteForce => {
            if n > 24 {
                invalid!("brute-force E3 limited to 24 points, got {n}");
            }
            let p = set.points();
            let mut count = 0u64;
            for i1 in 0..n {
                for i2 in 0..n {
                    let s12 = p[i1] + p[i2];
                    for i3 in 0..n {
                        let s123 = s12 + p[i3];
                        for i4 in 0..n {
                            for i5 in 0..n {
                                let s45 = p[i4] + p[i5];
                                for i6 in 0..n {
                                    let s456 = s45 + p[i6];
                                    if (s123 - s456).abs() <= threshold {
                                        count += 1;
                                    }
                                }
                            }
                        }
                    }
                }
            }
            count
        }
        EnergyMethod::Histogram => {
            if n > 600 {
                invalid!("histogram E3 limited to 600 points (n^3 sums), got {n}");
            }
            let sums = triple_sums(set.points());
            window_pair_count(&sums, threshold)?
        }
    };
    let trivial = (n as f64).powi(5);
    Ok(EnergyReport {
        kind: EnergyKind::E3Discrete,
        scale: threshold.to_f64_lossy(),
        value: count as f64,
        count: Some(count),
        normalized: count as f64 / trivial,
        method,
    })
}

fn pair_sums<R: Real>(p: &[R]) -> Vec<R> {
    let mut sums = Vec::with_capacity(p.len() * p.len());
    for &a in p {
        for &b in p {
            sums.push(a + b);
        }
    }
    sums
}

fn triple_sums<R: Real>(p: &[R]) -> Vec<R> {
    let mut sums = Vec::with_capacity(p.len().pow(3));
    for &a in p {
        for &b in p {
            let ab = a + b;
            for &c in p {
                sums.push(ab + c);
            }
        }
    }
    sums
}

/// Count ordered pairs `(a, b)` from `sums` with `|a - b| <= threshold`,
/// by width-`threshold` buckets with exact filtering of the bucket and its
/// two neighbors. Zero threshold degenerates to exact-value matching.
fn window_pair_count<R: Real>(sums: &[R], threshold: R) -> Result<u64> {
    let thr = threshold.to_f64_lossy();
    let mut count = 0u64;
    if thr == 0.0 {
        let mut groups: HashMap<u64, u64> = HashMap::new();
        for &s in sums {
            *groups.entry(s.to_f64_lossy().to_bits()).or_insert(0) += 1;
        }
        for (_, m) in groups {
            checked_acc(&mut count, m.checked_mul(m).ok_or(Error::CountOverflow)?)?;
        }
        return Ok(count);
    }

    // distinct values with multiplicities, bucketed by floor(v / thr)
    let mut values: Vec<f64> = sums.iter().map(|s| s.to_f64_lossy()).collect();
    values.sort_by(f64::total_cmp);
    let mut distinct: Vec<(f64, u64)> = Vec::new();
    for v in values {
        match distinct.last_mut() {
            Some((last, m)) if *last == v => *m += 1,
            _ => distinct.push((v, 1)),
        }
    }
    let mut bins: HashMap<i64, Vec<usize>> = HashMap::new();
    for (idx, &(v, _)) in distinct.iter().enumerate() {
        bins.entry((v / thr).floor() as i64).or_default().push(idx);
    }
    for &(v, m) in &distinct {
        let bin = (v / thr).floor() as i64;
        for b in [bin - 1, bin, bin + 1] {
            if let Some(members) = bins.get(&b) {
                for &j in members {
                    let (w, mw) = distinct[j];
                    if (v - w).abs() <= thr {
                        checked_acc(
                            &mut count,
                            m.checked_mul(mw).ok_or(Error::CountOverflow)?,
                        )?;
                    }
                }
            }
        }
    }
    Ok(count)
}

/// Weighted window energy of an atomic measure:
/// order 2 is `sum w1 w2 w3 w4 [ |(x1+x2) - (x3+x4)| <= r ]`, order 3 the
/// 6-atom analogue; both equal the defining integral exactly for atomic
/// measures (closed window).
pub fn ec_energy<R: Real>(
    nu: &DiscreteMeasure1D<R>,
    order: EnergyOrder,
    r: R,
) -> Result<EnergyReport> {
    if r < R::zero() {
        invalid!("window radius must be nonnegative");
    }
    let n = nu.atoms().len();
    let (kind, sums) = match order {
        EnergyOrder::Two => {
            if n > 2000 {
                invalid!("measure 2-energy limited to 2000 atoms, got {n}");
            }
            (EnergyKind::Ec2Measure, weighted_pair_sums(nu))
        }
        EnergyOrder::Three => {
            if n > 400 {
                invalid!("measure 3-energy limited to 400 atoms, got {n}");
            }
            (EnergyKind::Ec3Measure, weighted_triple_sums(nu))
        }
    };
    let value = weighted_window_sum(sums, r.to_f64_lossy());
    let mass = nu.total_mass().to_f64_lossy();
    let trivial = match order {
        EnergyOrder::Two => mass.powi(4),
        EnergyOrder::Three => mass.powi(6),
    };
    Ok(EnergyReport {
        kind,
        scale: r.to_f64_lossy(),
        value,
        count: None,
        normalized: if trivial > 0.0 { value / trivial } else { f64::NAN },
        method: EnergyMethod::Histogram,
    })
}

fn weighted_pair_sums<R: Real>(nu: &DiscreteMeasure1D<R>) -> Vec<(f64, f64)> {
    let atoms = nu.atoms();
    let mut out = Vec::with_capacity(atoms.len() * atoms.len());
    for &(x1, w1) in atoms {
        for &(x2, w2) in atoms {
            out.push(((x1 + x2).to_f64_lossy(), (w1 * w2).to_f64_lossy()));
        }
    }
    out
}

fn weighted_triple_sums<R: Real>(nu: &DiscreteMeasure1D<R>) -> Vec<(f64, f64)> {
    let atoms = nu.atoms();
    let mut out = Vec::with_capacity(atoms.len().pow(3));
    for &(x1, w1) in atoms {
        for &(x2, w2) in atoms {
            let x12 = x1 + x2;
            let w12 = w1 * w2;
            for &(x3, w3) in atoms {
                out.push(((x12 + x3).to_f64_lossy(), (w12 * w3).to_f64_lossy()));
            }
        }
    }
    out
}

/// `sum_{a, b} w_a w_b [ |v_a - v_b| <= r ]` by a sliding window over the
/// sorted sums with prefix weights.
fn weighted_window_sum(mut sums: Vec<(f64, f64)>, r: f64) -> f64 {
    sums.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut prefix = Vec::with_capacity(sums.len() + 1);
    prefix.push(0.0f64);
    for &(_, w) in &sums {
        prefix.push(prefix.last().unwrap() + w);
    }
    let values: Vec<f64> = sums.iter().map(|s| s.0).collect();
    let mut total = 0.0f64;
    for &(v, w) in &sums {
        let lo = values.partition_point(|&u| u < v - r);
        let hi = values.partition_point(|&u| u <= v + r);
        total += w * (prefix[hi] - prefix[lo]);
    }
    total
}

/// Witness for a failed regularity condition.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct IntervalWitness {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
    pub allowed: f64,
}

/// Verdict of the (delta, s)-regularity test.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RegularSetVerdict {
    pub regular: bool,
    pub s: f64,
    pub c: f64,
    /// Worst violation of the upper count bound, if any.
    pub upper_violation: Option<IntervalWitness>,
    /// Worst violation of the point-centered two-sided bound, if any.
    pub lower_violation: Option<IntervalWitness>,
}

/// Test (delta, s)-regularity: (i) every interval `I` with `|I| >= delta`
/// holds at most `C (|I|/delta)^s` points (checked on point-pair intervals,
/// which is sufficient by monotonicity), and (ii) intervals centered at set
/// points hold `(|I|/delta)^s` points up to factor `C` both ways, for dyadic
/// lengths up to the diameter.
pub fn check_delta_s_regular<R: Real>(set: &PointSet1D<R>, s: f64, c: f64) -> RegularSetVerdict {
    let p = set.points();
    let n = p.len();
    let delta = set.delta().to_f64_lossy();
    let mut upper_violation: Option<IntervalWitness> = None;
    let mut worst_excess = 1.0f64;
    for i in 0..n {
        for j in i..n {
            let len = (p[j] - p[i]).to_f64_lossy().max(delta);
            let count = j - i + 1;
            let allowed = c * (len / delta).powf(s);
            let excess = count as f64 / allowed;
            if excess > 1.0 && excess > worst_excess {
                worst_excess = excess;
                upper_violation = Some(IntervalWitness {
                    lo: p[i].to_f64_lossy(),
                    hi: p[j].to_f64_lossy(),
                    count,
                    allowed,
                });
            }
        }
    }

    let diam = set.diameter().to_f64_lossy();
    let mut lower_violation: Option<IntervalWitness> = None;
    let mut worst_defect = 1.0f64;
    let mut len = delta * 2.0;
    while len <= diam.max(delta * 2.0) {
        for i in 0..n {
            let center = p[i].to_f64_lossy();
            let (lo, hi) = (center - len / 2.0, center + len / 2.0);
            let a = p.partition_point(|&q| q.to_f64_lossy() < lo);
            let b = p.partition_point(|&q| q.to_f64_lossy() <= hi);
            let count = b - a;
            let expected = (len / delta).powf(s);
            let floor = expected / c;
            let cap = expected * c;
            let defect = floor / (count as f64).max(f64::MIN_POSITIVE);
            if (count as f64) < floor && defect > worst_defect {
                worst_defect = defect;
                lower_violation = Some(IntervalWitness {
                    lo,
                    hi,
                    count,
                    allowed: floor,
                });
            }
            let excess = count as f64 / cap;
            if excess > 1.0 && excess > worst_excess {
                worst_excess = excess;
                upper_violation = Some(IntervalWitness {
                    lo,
                    hi,
                    count,
                    allowed: cap,
                });
            }
        }
        len *= 2.0;
    }

    RegularSetVerdict {
        regular: upper_violation.is_none() && lower_violation.is_none(),
        s,
        c,
        upper_violation,
        lower_violation,
    }
}

/// One ladder step of an energy-improvement scan.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct EnergyScanRow {
    pub n: usize,
    pub e2: f64,
    pub e3: Option<f64>,
    pub normalized: f64,
}

/// Fitted `E2 ~ |P|^{3 - eta}` across a ladder of truncation depths of one
/// fractal family.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EnergyImprovementFit {
    pub eta: f64,
    pub slope: f64,
    pub rows: Vec<EnergyScanRow>,
}

/// Compute E2 across the ladder and fit `eta = 3 - slope` of `log E2` against
/// `log |P|`. Every member must pass the (delta, s)-regularity test at
/// constant `c`; thresholds default to each member's own delta.
pub fn energy_improvement_scan<R: Real>(
    family: &[PointSet1D<R>],
    s: f64,
    c: f64,
) -> Result<EnergyImprovementFit> {
    if family.len() < 2 {
        return Err(Error::InsufficientScales);
    }
    for set in family {
        let verdict = check_delta_s_regular(set, s, c);
        if !verdict.regular {
            invalid!(
                "family member with {} points is not ({}, {s})-regular at C = {c}",
                set.len(),
                set.delta()
            );
        }
    }
    let mut rows = Vec::with_capacity(family.len());
    for set in family {
        let e2 = e2_discrete(set, set.delta(), EnergyMethod::Histogram)?;
        rows.push(EnergyScanRow {
            n: set.len(),
            e2: e2.value,
            e3: None,
            normalized: e2.normalized,
        });
    }
    let fit = fit_power_law(
        &rows
            .iter()
            .map(|r| (r.n as f64, r.e2))
            .collect::<Vec<_>>(),
    )?;
    Ok(EnergyImprovementFit {
        eta: 3.0 - fit.exponent,
        slope: fit.exponent,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::{build_ap_measure, build_cantor};
    use rand::Rng;

    fn random_set(rng: &mut impl Rng, n: usize, delta: f64) -> PointSet1D<f64> {
        // rejection-free: jittered grid keeps delta-separation
        let mut points = Vec::with_capacity(n);
        let pitch = 2.0 / n as f64;
        for k in 0..n {
            let jitter = rng.random_range(0.0..(pitch - delta).max(1e-9));
            points.push(-1.0 + k as f64 * pitch + jitter);
        }
        PointSet1D::new(points, delta).unwrap()
    }

    #[test]
    fn single_point_energies_are_one() {
        let set = PointSet1D::new(vec![0.0], 0.1).unwrap();
        for method in [EnergyMethod::BruteForce, EnergyMethod::Histogram] {
            assert_eq!(e2_discrete(&set, 0.05, method).unwrap().count, Some(1));
            assert_eq!(e3_discrete(&set, 0.05, method).unwrap().count, Some(1));
        }
    }

    #[test]
    fn four_point_ap_brute_equals_histogram() {
        let d = 0.01;
        let set = PointSet1D::arithmetic(4, d, 0.0).unwrap();
        let brute = e2_discrete(&set, d, EnergyMethod::BruteForce).unwrap();
        let hist = e2_discrete(&set, d, EnergyMethod::Histogram).unwrap();
        assert_eq!(brute.count, hist.count);
        // all 256 quadruples examined: sums on grid {0..6d}, window +-d
        assert!(brute.count.unwrap() >= 4usize.pow(2) as u64);
    }

    #[test]
    fn oracle_equality_on_seeded_sets() {
        let mut rng = crate::rng::seeded(101);
        for trial in 0..25 {
            let n = rng.random_range(3..=14);
            let set = random_set(&mut rng, n, 1e-4);
            let thr = rng.random_range(0.0..0.3);
            let b2 = e2_discrete(&set, thr, EnergyMethod::BruteForce).unwrap();
            let h2 = e2_discrete(&set, thr, EnergyMethod::Histogram).unwrap();
            assert_eq!(b2.count, h2.count, "E2 trial {trial}");
            let b3 = e3_discrete(&set, thr, EnergyMethod::BruteForce).unwrap();
            let h3 = e3_discrete(&set, thr, EnergyMethod::Histogram).unwrap();
            assert_eq!(b3.count, h3.count, "E3 trial {trial}");
        }
    }

    #[test]
    fn zero_threshold_counts_exact_coincidences() {
        let set = PointSet1D::arithmetic(6, 0.125, -0.25).unwrap();
        let b = e2_discrete(&set, 0.0, EnergyMethod::BruteForce).unwrap();
        let h = e2_discrete(&set, 0.0, EnergyMethod::Histogram).unwrap();
        assert_eq!(b.count, h.count);
    }

    #[test]
    fn diagonal_lower_bounds_hold() {
        let mut rng = crate::rng::seeded(5);
        let set = random_set(&mut rng, 12, 1e-4);
        let n = set.len() as u64;
        let e2 = e2_discrete(&set, set.delta(), EnergyMethod::Histogram).unwrap();
        assert!(e2.count.unwrap() >= n * n);
        let e3 = e3_discrete(&set, set.delta(), EnergyMethod::Histogram).unwrap();
        assert!(e3.count.unwrap() >= n * n * n);
    }

    #[test]
    fn e3_bounded_by_n_squared_e2() {
        // E3 <= |P|^2 E2 in exact integers on small instances
        let mut rng = crate::rng::seeded(23);
        for _ in 0..5 {
            let n = rng.random_range(4..=10);
            let set = random_set(&mut rng, n, 1e-4);
            let thr = set.delta();
            let e2 = e2_discrete(&set, thr, EnergyMethod::BruteForce).unwrap();
            let e3 = e3_discrete(&set, thr, EnergyMethod::BruteForce).unwrap();
            assert!(e3.count.unwrap() <= (n as u64).pow(2) * e2.count.unwrap());
        }
    }

    #[test]
    fn ap_saturates_e2_and_random_stays_below() {
        // AP of 32 points: E2 within factor 8 of N^3/6
        let set = PointSet1D::arithmetic(32, 1e-3, 0.0).unwrap();
        let e2 = e2_discrete(&set, set.delta(), EnergyMethod::Histogram).unwrap();
        let n = 32f64;
        let reference = n.powi(3) / 6.0;
        let ratio = e2.value / reference;
        assert!(
            (1.0 / 8.0..=8.0).contains(&ratio),
            "AP E2 {} vs N^3/6 {reference}",
            e2.value
        );

        // AP of 16: histogram equals brute force; scaling from N=8 within factor 8
        let ap8 = PointSet1D::arithmetic(8, 1e-3, 0.0).unwrap();
        let ap16 = PointSet1D::arithmetic(16, 1e-3, 0.0).unwrap();
        let b16 = e3_discrete(&ap16, 1e-3, EnergyMethod::BruteForce).unwrap();
        let h16 = e3_discrete(&ap16, 1e-3, EnergyMethod::Histogram).unwrap();
        assert_eq!(b16.count, h16.count);
        let b8 = e3_discrete(&ap8, 1e-3, EnergyMethod::BruteForce).unwrap();
        let c_ap = b8.value / 8f64.powi(5);
        let predicted16 = c_ap * 16f64.powi(5);
        let ratio = h16.value / predicted16;
        assert!((1.0 / 8.0..=8.0).contains(&ratio), "ratio {ratio}");

        // a generic set has strictly smaller E3 at equal size
        let mut rng = crate::rng::seeded(77);
        let generic = random_set(&mut rng, 16, 1e-3);
        let g3 = e3_discrete(&generic, 1e-3, EnergyMethod::BruteForce).unwrap();
        assert!(g3.count.unwrap() < h16.count.unwrap());
    }

    #[test]
    fn translation_invariance() {
        let mut rng = crate::rng::seeded(31);
        let set = random_set(&mut rng, 10, 1e-4);
        let thr = 0.017;
        let moved = set.translated(0.35);
        for method in [EnergyMethod::BruteForce, EnergyMethod::Histogram] {
            assert_eq!(
                e2_discrete(&set, thr, method).unwrap().count,
                e2_discrete(&moved, thr, method).unwrap().count
            );
        }
    }

    #[test]
    fn dyadic_dilation_covariance_is_exact() {
        let mut rng = crate::rng::seeded(37);
        let set = random_set(&mut rng, 9, 1e-4);
        let thr = 0.02;
        let scaled = set.dilated(0.5);
        assert_eq!(
            e2_discrete(&set, thr, EnergyMethod::Histogram).unwrap().count,
            e2_discrete(&scaled, 0.5 * thr, EnergyMethod::Histogram)
                .unwrap()
                .count
        );
        assert_eq!(
            e3_discrete(&set, thr, EnergyMethod::BruteForce).unwrap().count,
            e3_discrete(&scaled, 0.5 * thr, EnergyMethod::BruteForce)
                .unwrap()
                .count
        );
    }

    #[test]
    fn measure_energy_unit_atom() {
        let nu = DiscreteMeasure1D::from_atoms(vec![(0.25, 1.0)], 0.1).unwrap();
        let e = ec_energy(&nu, EnergyOrder::Two, 0.05).unwrap();
        assert!((e.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn measure_energy_two_atoms_hand_oracle() {
        // atoms weight 1/2 at 0 and 1/2, order 2, r = 0.1:
        // enumerate all 2^4 quadruples by hand-oracle code
        let nu =
            DiscreteMeasure1D::from_atoms(vec![(0.0, 0.5), (0.5, 0.5)], 0.5).unwrap();
        let positions: [f64; 2] = [0.0, 0.5];
        let w = 0.5f64;
        let mut oracle = 0.0;
        for x1 in positions {
            for x2 in positions {
                for x3 in positions {
                    for x4 in positions {
                        if ((x1 + x2) - (x3 + x4)).abs() <= 0.1 {
                            oracle += w * w * w * w;
                        }
                    }
                }
            }
        }
        let e = ec_energy(&nu, EnergyOrder::Two, 0.1).unwrap();
        assert!((e.value - oracle).abs() < 1e-14, "{} vs {oracle}", e.value);
    }

    #[test]
    fn ap_measure_energy_matches_r_power() {
        // Ec2 and Ec3 at r = interval_length sit within factor 4 resp. 8 of r^s
        let r = 2f64.powi(-10);
        let s = 0.5;
        let nu = build_ap_measure(32, r, 1.0).unwrap();
        let e2 = ec_energy(&nu, EnergyOrder::Two, r).unwrap();
        let ratio2 = e2.value / r.powf(s);
        assert!((0.25..=4.0).contains(&ratio2), "Ec2 ratio {ratio2}");
        let e3 = ec_energy(&nu, EnergyOrder::Three, r).unwrap();
        let ratio3 = e3.value / r.powf(s);
        assert!((1.0 / 8.0..=8.0).contains(&ratio3), "Ec3 ratio {ratio3}");
    }

    #[test]
    fn ap_is_one_regular_but_not_half_regular() {
        let set = PointSet1D::arithmetic(32, 1e-3, 0.0).unwrap();
        assert!(check_delta_s_regular(&set, 1.0, 2.0).regular);
        let verdict = check_delta_s_regular(&set, 0.5, 2.0);
        assert!(!verdict.regular);
        let witness = verdict.upper_violation.expect("upper bound must break");
        assert!(witness.count as f64 > witness.allowed);
    }

    #[test]
    fn cantor_positions_are_regular() {
        let mu = build_cantor(1.0 / 3.0, 8, 1.0).unwrap();
        let set = PointSet1D::new(mu.positions(), mu.resolution()).unwrap();
        let verdict = check_delta_s_regular(&set, 0.6309297535714574, 8.0);
        assert!(
            verdict.regular,
            "upper {:?} lower {:?}",
            verdict.upper_violation, verdict.lower_violation
        );
    }

    #[test]
    fn improvement_scan_sees_cantor_gain_and_no_ap_gain() {
        let s = 0.6309297535714574;
        let family: Vec<PointSet1D<f64>> = (4..=9)
            .map(|d| {
                let mu = build_cantor(1.0 / 3.0, d, 1.0).unwrap();
                PointSet1D::new(mu.positions(), mu.resolution()).unwrap()
            })
            .collect();
        let fit = energy_improvement_scan(&family, s, 8.0).unwrap();
        assert!(fit.eta >= 0.05, "cantor eta {}", fit.eta);

        let ap_family: Vec<PointSet1D<f64>> = [8usize, 16, 32, 64]
            .iter()
            .map(|&n| PointSet1D::arithmetic(n, 2.0 / (n as f64 * 4.0), 0.0).unwrap())
            .collect();
        let fit = energy_improvement_scan(&ap_family, 1.0, 4.0).unwrap();
        assert!(fit.eta <= 0.05, "ap eta {}", fit.eta);
    }

    #[test]
    fn improvement_scan_needs_a_ladder() {
        let set = PointSet1D::arithmetic(16, 1e-2, 0.0).unwrap();
        assert!(matches!(
            energy_improvement_scan(&[set], 1.0, 4.0),
            Err(Error::InsufficientScales)
        ));
    }
}
