//! Fractal measures on the line as finite weighted atom lists, with upper
//! (Frostman) and lower (AD) regularity verification by exhaustive ball scans.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::fit::fit_power_law;
use crate::scalar::Real;

/// A finite atomic approximation of a Borel measure on `[-1, 1]`.
///
/// Atoms are kept sorted by position. A ball mass is the exact sum of atom
/// weights with `|position - y| <= r` (closed ball), so brute-force oracles
/// can reproduce every quantity bit for bit.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteMeasure1D<R: Real> {
    atoms: Vec<(R, R)>,
    resolution: R,
    total_mass: R,
}

impl<R: Real> DiscreteMeasure1D<R> {
    /// Build from raw `(position, weight)` pairs; sorts by position and
    /// validates the type invariants.
    pub fn from_atoms(mut atoms: Vec<(R, R)>, resolution: R) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::EmptyMeasure);
        }
        if resolution <= R::zero() {
            invalid!("resolution must be positive");
        }
        atoms.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite positions"));
        let one = R::one();
        for &(p, w) in &atoms {
            if p < -one || p > one {
                invalid!("atom position {p} outside [-1, 1]");
            }
            if w < R::zero() || !w.is_finite() {
                invalid!("atom weight {w} must be nonnegative and finite");
            }
        }
        let half = resolution / R::of(2.0);
        for pair in atoms.windows(2) {
            if pair[1].0 - pair[0].0 < half {
                invalid!(
                    "atoms at {} and {} closer than resolution/2 = {half}",
                    pair[0].0,
                    pair[1].0
                );
            }
        }
        let total_mass = atoms.iter().map(|&(_, w)| w).sum();
        Ok(Self {
            atoms,
            resolution,
            total_mass,
        })
    }

    pub fn atoms(&self) -> &[(R, R)] {
        &self.atoms
    }

    pub fn resolution(&self) -> R {
        self.resolution
    }

    pub fn total_mass(&self) -> R {
        self.total_mass
    }

    /// Exact mass of the closed ball `[y - r, y + r]`.
    pub fn ball_mass(&self, y: R, r: R) -> R {
        let lo = self.atoms.partition_point(|&(p, _)| p < y - r);
        let hi = self.atoms.partition_point(|&(p, _)| p <= y + r);
        self.atoms[lo..hi].iter().map(|&(_, w)| w).sum()
    }

    /// Multiply every weight by `t`.
    pub fn scaled(&self, t: R) -> Self {
        Self {
            atoms: self.atoms.iter().map(|&(p, w)| (p, w * t)).collect(),
            resolution: self.resolution,
            total_mass: self.total_mass * t,
        }
    }

    /// Positions only, e.g. to reuse the support as a discrete point set.
    pub fn positions(&self) -> Vec<R> {
        self.atoms.iter().map(|&(p, _)| p).collect()
    }
}

/// Equal-weight Cantor-type measure with contraction `ratio` and `depth`
/// construction levels, rescaled to `[-1, 1]` with atoms at the centers of
/// the depth-level intervals.
pub fn build_cantor<R: Real>(ratio: R, depth: u32, mass: R) -> Result<DiscreteMeasure1D<R>> {
    let half = R::of(0.5);
    if ratio <= R::zero() || ratio >= half {
        invalid!("cantor ratio must lie in (0, 1/2), got {ratio}");
    }
    if depth == 0 || depth > 20 {
        // depth 20 already keeps the atom count (2^20) well under 2^24
        invalid!("cantor depth must lie in 1..=20, got {depth}");
    }
    if mass <= R::zero() {
        invalid!("mass must be positive");
    }

    // left endpoints of the level-d intervals of the Cantor construction on [0,1]
    let mut lefts: Vec<R> = vec![R::zero()];
    let mut len = R::one();
    for _ in 0..depth {
        len = len * ratio;
        let shift = R::one() - ratio;
        let mut next = Vec::with_capacity(lefts.len() * 2);
        // gap length at the previous level, in units of that level's length
        let offset = shift * len / ratio;
        for &l in &lefts {
            next.push(l);
            next.push(l + offset);
        }
        lefts = next;
    }

    let n = lefts.len();
    let w = mass / R::of(n as f64);
    let two = R::of(2.0);
    let atoms: Vec<(R, R)> = lefts
        .into_iter()
        .map(|l| {
            let center = l + len / two;
            (two * center - R::one(), w)
        })
        .collect();

    // 2*ratio^depth per the construction; clamped by the true sibling gap
    // 2*(1-2*ratio)*ratio^(depth-1) which is smaller once ratio > 2/5.
    let nominal = two * len;
    let sibling_gap = two * (R::one() - two * ratio) * len / ratio;
    DiscreteMeasure1D::from_atoms(atoms, nominal.min(sibling_gap))
}

/// Measure standing for mass spread over `num_intervals` intervals of length
/// `interval_length` with centers in arithmetic progression: one atom per
/// interval carrying the interval's share of the mass.
pub fn build_ap_measure<R: Real>(
    num_intervals: usize,
    interval_length: R,
    mass: R,
) -> Result<DiscreteMeasure1D<R>> {
    if num_intervals < 2 {
        invalid!("ap measure needs at least 2 intervals, got {num_intervals}");
    }
    if interval_length <= R::zero() {
        invalid!("interval_length must be positive");
    }
    if R::of(num_intervals as f64) * interval_length > R::of(2.0) {
        invalid!("num_intervals * interval_length must not exceed 2");
    }
    let n = num_intervals;
    let w = mass / R::of(n as f64);
    let step = R::of(2.0 / (n as f64 - 1.0));
    let atoms = (0..n)
        .map(|k| (-R::one() + R::of(k as f64) * step, w))
        .collect();
    DiscreteMeasure1D::from_atoms(atoms, interval_length)
}

/// `n` equally weighted atoms equally spaced across `[lo, hi]`.
pub fn build_uniform<R: Real>(n: usize, lo: R, hi: R, mass: R) -> Result<DiscreteMeasure1D<R>> {
    if n < 2 {
        invalid!("uniform measure needs at least 2 atoms");
    }
    if hi <= lo {
        invalid!("uniform measure needs hi > lo");
    }
    let w = mass / R::of(n as f64);
    let step = (hi - lo) / R::of(n as f64 - 1.0);
    let atoms = (0..n).map(|k| (lo + R::of(k as f64) * step, w)).collect();
    DiscreteMeasure1D::from_atoms(atoms, step)
}

/// Which side of the regularity sandwich a report describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RegularitySide {
    /// Frostman upper bound `mu(B(y,r)) <= C r^s`.
    Upper,
    /// AD lower bound `mu(B(y,r)) >= c r^s` on the support.
    Lower,
}

/// Outcome of a regularity scan across geometrically spaced scales.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RegularityReport {
    pub side: RegularitySide,
    pub s: f64,
    /// OLS slope of log(extremal ball mass) against log r.
    pub exponent_fit: f64,
    /// Upper side: the max of the per-scale ratios, i.e. the minimal valid C.
    /// Lower side: the min of the per-scale ratios, i.e. the largest valid c.
    pub constant_fit: f64,
    /// The cap (upper side) or floor (lower side) that `passed` compares against.
    pub reference_constant: f64,
    pub r_range: (f64, f64),
    /// `(r, extremal over centers of mu(B(y,r)) / r^s)` per scale; extremal is
    /// max for the upper side and min for the lower side.
    pub per_scale_extremal_ratio: Vec<(f64, f64)>,
    pub passed: bool,
}

/// Anything whose regularity can be scanned: 1-D measures and planar lifts.
pub trait RegularityDomain<R: Real> {
    /// Centers for the upper-bound sup: atoms plus consecutive midpoints.
    fn sup_center_count(&self) -> usize;
    fn mass_at_sup_center(&self, idx: usize, r: R) -> R;
    /// Centers for the lower bound: the atoms (the support).
    fn atom_center_count(&self) -> usize;
    fn mass_at_atom_center(&self, idx: usize, r: R) -> R;
    fn resolution(&self) -> R;
    fn is_empty_measure(&self) -> bool;
}

impl<R: Real> RegularityDomain<R> for DiscreteMeasure1D<R> {
    fn sup_center_count(&self) -> usize {
        2 * self.atoms.len() - 1
    }

    // even indices are atoms, odd indices the midpoint after atom idx/2
    fn mass_at_sup_center(&self, idx: usize, r: R) -> R {
        let y = if idx % 2 == 0 {
            self.atoms[idx / 2].0
        } else {
            let a = self.atoms[idx / 2].0;
            let b = self.atoms[idx / 2 + 1].0;
            (a + b) / R::of(2.0)
        };
        self.ball_mass(y, r)
    }

    fn atom_center_count(&self) -> usize {
        self.atoms.len()
    }

    fn mass_at_atom_center(&self, idx: usize, r: R) -> R {
        self.ball_mass(self.atoms[idx].0, r)
    }

    fn resolution(&self) -> R {
        self.resolution
    }

    fn is_empty_measure(&self) -> bool {
        self.atoms.is_empty()
    }
}

fn geometric_scales<R: Real>(r_min: R, r_max: R, num_scales: usize) -> Vec<R> {
    let lo = r_min.to_f64_lossy().ln();
    let hi = r_max.to_f64_lossy().ln();
    (0..num_scales)
        .map(|i| {
            let t = i as f64 / (num_scales - 1) as f64;
            R::of((lo + t * (hi - lo)).exp())
        })
        .collect()
}

fn validate_scan_inputs<R: Real>(
    mu: &impl RegularityDomain<R>,
    r_min: R,
    r_max: R,
    num_scales: usize,
) -> Result<()> {
    if mu.is_empty_measure() {
        return Err(Error::EmptyMeasure);
    }
    if r_min < mu.resolution() {
        invalid!("r_min below measure resolution");
    }
    if r_max > R::of(2.0) || r_max <= r_min {
        invalid!("scan needs resolution <= r_min < r_max <= 2");
    }
    if num_scales < 2 {
        invalid!("num_scales must be at least 2");
    }
    Ok(())
}

/// Verify the Frostman condition `mu(B(y,r)) <= C r^s` over geometrically
/// spaced scales, taking the sup over atom centers and consecutive midpoints.
/// `passed` holds iff the fitted minimal constant is at most `constant_cap`.
pub fn check_frostman<R: Real>(
    mu: &impl RegularityDomain<R>,
    s: R,
    r_min: R,
    r_max: R,
    num_scales: usize,
    constant_cap: R,
) -> Result<RegularityReport> {
    validate_scan_inputs(mu, r_min, r_max, num_scales)?;
    let scales = geometric_scales(r_min, r_max, num_scales);
    let mut rows = Vec::with_capacity(num_scales);
    let mut masses = Vec::with_capacity(num_scales);
    for &r in &scales {
        let mut max_mass = R::zero();
        for i in 0..mu.sup_center_count() {
            max_mass = max_mass.max(mu.mass_at_sup_center(i, r));
        }
        masses.push((r, max_mass));
        rows.push((r.to_f64_lossy(), (max_mass / r.powf(s)).to_f64_lossy()));
    }
    let constant_fit = rows.iter().map(|&(_, c)| c).fold(f64::MIN, f64::max);
    let fit = fit_power_law(&masses)?;
    Ok(RegularityReport {
        side: RegularitySide::Upper,
        s: s.to_f64_lossy(),
        exponent_fit: fit.exponent,
        constant_fit,
        reference_constant: constant_cap.to_f64_lossy(),
        r_range: (r_min.to_f64_lossy(), r_max.to_f64_lossy()),
        per_scale_extremal_ratio: rows,
        passed: constant_fit <= constant_cap.to_f64_lossy(),
    })
}

/// Verify the AD-regularity lower bound `mu(B(y,r)) >= c r^s` at every atom
/// and scale; reports the largest valid `c` and passes iff it is at least
/// `min_constant`.
pub fn check_ad_regular<R: Real>(
    mu: &impl RegularityDomain<R>,
    s: R,
    r_min: R,
    r_max: R,
    num_scales: usize,
    min_constant: R,
) -> Result<RegularityReport> {
    validate_scan_inputs(mu, r_min, r_max, num_scales)?;
    let scales = geometric_scales(r_min, r_max, num_scales);
    let mut rows = Vec::with_capacity(num_scales);
    let mut masses = Vec::with_capacity(num_scales);
    for &r in &scales {
        let mut min_mass = R::infinity();
        for i in 0..mu.atom_center_count() {
            min_mass = min_mass.min(mu.mass_at_atom_center(i, r));
        }
        masses.push((r, min_mass));
        rows.push((r.to_f64_lossy(), (min_mass / r.powf(s)).to_f64_lossy()));
    }
    let constant_fit = rows.iter().map(|&(_, c)| c).fold(f64::MAX, f64::min);
    let fit = fit_power_law(&masses)?;
    Ok(RegularityReport {
        side: RegularitySide::Lower,
        s: s.to_f64_lossy(),
        exponent_fit: fit.exponent,
        constant_fit,
        reference_constant: min_constant.to_f64_lossy(),
        r_range: (r_min.to_f64_lossy(), r_max.to_f64_lossy()),
        per_scale_extremal_ratio: rows,
        passed: constant_fit >= min_constant.to_f64_lossy(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const LOG2_LOG3: f64 = 0.6309297535714574;

    #[test]
    fn cantor_depth_one_matches_hand_construction() {
        let mu = build_cantor::<f64>(1.0 / 3.0, 1, 1.0).unwrap();
        let atoms = mu.atoms();
        assert_eq!(atoms.len(), 2);
        assert!((atoms[0].0 - (-2.0 / 3.0)).abs() < 1e-15);
        assert!((atoms[1].0 - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(atoms[0].1, 0.5);
        assert_eq!(atoms[1].1, 0.5);
    }

    #[test]
    fn cantor_mass_bookkeeping() {
        for depth in 1..=10 {
            let mu = build_cantor::<f64>(1.0 / 3.0, depth, 1.0).unwrap();
            assert_eq!(mu.atoms().len(), 1 << depth);
            assert!((mu.total_mass() - 1.0).abs() <= 1e-12);
        }
        let mu2 = build_cantor::<f64>(0.25, 6, 2.0).unwrap();
        assert!((mu2.total_mass() - 2.0).abs() <= 2e-12);
    }

    #[test]
    fn cantor_rejects_bad_parameters() {
        assert!(build_cantor::<f64>(0.5, 3, 1.0).is_err());
        assert!(build_cantor::<f64>(0.6, 3, 1.0).is_err());
        assert!(build_cantor::<f64>(1.0 / 3.0, 0, 1.0).is_err());
        assert!(build_cantor::<f64>(1.0 / 3.0, 21, 1.0).is_err());
    }

    #[test]
    fn ap_measure_examples() {
        let mu = build_ap_measure(2, 0.5, 1.0).unwrap();
        assert_eq!(mu.atoms(), &[(-1.0, 0.5), (1.0, 0.5)]);

        let mu = build_ap_measure(32, 2f64.powi(-10), 2.0).unwrap();
        assert_eq!(mu.atoms().len(), 32);
        assert!((mu.total_mass() - 2.0).abs() <= 2e-12);

        assert!(build_ap_measure(1, 0.1, 1.0).is_err());
        assert!(build_ap_measure(64, 0.1, 1.0).is_err());
    }

    /// Independent quadratic-time ball scan: no sorting tricks, no shared code.
    fn oracle_max_ratio(atoms: &[(f64, f64)], s: f64, r: f64) -> f64 {
        let mut centers: Vec<f64> = atoms.iter().map(|a| a.0).collect();
        let mut sorted = centers.clone();
        sorted.sort_by(f64::total_cmp);
        for w in sorted.windows(2) {
            centers.push((w[0] + w[1]) / 2.0);
        }
        centers
            .iter()
            .map(|&y| {
                let m: f64 = atoms
                    .iter()
                    .filter(|&&(p, _)| (p - y).abs() <= r)
                    .map(|&(_, w)| w)
                    .sum();
                m / r.powf(s)
            })
            .fold(f64::MIN, f64::max)
    }

    #[test]
    fn frostman_engine_matches_independent_oracle() {
        let mu = build_cantor(1.0 / 3.0, 5, 1.0).unwrap();
        let report = check_frostman(&mu, LOG2_LOG3, mu.resolution(), 1.0, 7, 8.0).unwrap();
        for &(r, ratio) in &report.per_scale_extremal_ratio {
            let oracle = oracle_max_ratio(mu.atoms(), LOG2_LOG3, r);
            assert!(
                (ratio - oracle).abs() <= 1e-12 * oracle.max(1.0),
                "scale {r}: engine {ratio} vs oracle {oracle}"
            );
        }
    }

    #[test]
    fn cantor_third_fits_its_dimension() {
        let mu = build_cantor(1.0 / 3.0, 8, 1.0).unwrap();
        let report = check_frostman(&mu, LOG2_LOG3, mu.resolution(), 1.0, 12, 8.0).unwrap();
        assert!(
            (report.exponent_fit - LOG2_LOG3).abs() <= 0.05,
            "fit {} target {LOG2_LOG3}",
            report.exponent_fit
        );
        assert!(report.passed, "constant_fit {}", report.constant_fit);
    }

    #[test]
    fn cantor_quarter_fits_one_half() {
        let mu = build_cantor(0.25, 6, 1.0).unwrap();
        let report = check_frostman(&mu, 0.5, mu.resolution(), 1.0, 12, 8.0).unwrap();
        assert!((report.exponent_fit - 0.5).abs() <= 0.05);
    }

    #[test]
    fn uniform_atoms_are_one_regular() {
        let mu = build_uniform(1000, 0.0, 1.0, 1.0).unwrap();
        let report = check_frostman(&mu, 1.0, 0.005, 0.5, 10, 4.0).unwrap();
        assert!(report.passed, "constant_fit {}", report.constant_fit);
        let lower = check_ad_regular(&mu, 1.0, 0.005, 0.5, 10, 0.5).unwrap();
        assert!(lower.passed, "lower constant {}", lower.constant_fit);
    }

    #[test]
    fn point_mass_fails_frostman() {
        let mu = DiscreteMeasure1D::from_atoms(vec![(0.0, 1.0)], 1e-3).unwrap();
        let report = check_frostman(&mu, 0.5, 1e-3, 1.0, 8, 10.0).unwrap();
        assert!(!report.passed);
        // ratio grows without bound as r -> 0
        let first = report.per_scale_extremal_ratio.first().unwrap().1;
        let last = report.per_scale_extremal_ratio.last().unwrap().1;
        assert!(first > last);
        assert!(first > 10.0);
    }

    #[test]
    fn cantor_is_ad_regular() {
        let mu = build_cantor(1.0 / 3.0, 8, 1.0).unwrap();
        let report =
            check_ad_regular(&mu, LOG2_LOG3, mu.resolution(), 1.0, 12, 1.0 / 8.0).unwrap();
        assert!(
            report.passed,
            "largest valid lower constant {}",
            report.constant_fit
        );
    }

    #[test]
    fn ap_measure_is_not_ad_regular_between_scales() {
        // 32 intervals of length 2^-10: lower bound fails for r between the
        // interval length and the spacing ~ 1/16.
        let mu = build_ap_measure(32, 2f64.powi(-10), 1.0).unwrap();
        let s = 0.5;
        let report = check_ad_regular(&mu, s, 2f64.powi(-9), 0.03, 6, 0.25).unwrap();
        assert!(!report.passed, "constant {}", report.constant_fit);
    }

    #[test]
    fn cantor_constants_stable_across_depths() {
        let mut uppers = Vec::new();
        let mut lowers = Vec::new();
        for depth in 4..=10 {
            let mu = build_cantor(1.0 / 3.0, depth, 1.0).unwrap();
            let up = check_frostman(&mu, LOG2_LOG3, mu.resolution(), 1.0, 10, 8.0).unwrap();
            let lo =
                check_ad_regular(&mu, LOG2_LOG3, mu.resolution(), 1.0, 10, 1.0 / 8.0).unwrap();
            assert!(up.passed && lo.passed, "depth {depth}");
            uppers.push(up.constant_fit);
            lowers.push(lo.constant_fit);
        }
        let (umin, umax) = (
            uppers.iter().cloned().fold(f64::MAX, f64::min),
            uppers.iter().cloned().fold(f64::MIN, f64::max),
        );
        let (lmin, lmax) = (
            lowers.iter().cloned().fold(f64::MAX, f64::min),
            lowers.iter().cloned().fold(f64::MIN, f64::max),
        );
        assert!(umax / umin <= 2.0, "upper constants {uppers:?}");
        assert!(lmax / lmin <= 2.0, "lower constants {lowers:?}");
    }

    #[test]
    fn weight_scaling_scales_ratios_exactly() {
        let mu = build_cantor(1.0 / 3.0, 6, 1.0).unwrap();
        let t = 0.37;
        let scaled = mu.scaled(t);
        let a = check_frostman(&mu, LOG2_LOG3, mu.resolution(), 1.0, 8, 8.0).unwrap();
        let b = check_frostman(&scaled, LOG2_LOG3, mu.resolution(), 1.0, 8, 8.0).unwrap();
        for (ra, rb) in a
            .per_scale_extremal_ratio
            .iter()
            .zip(&b.per_scale_extremal_ratio)
        {
            assert!((rb.1 - ra.1 * t).abs() <= 1e-13 * ra.1.max(1.0));
        }
    }

    #[test]
    fn empty_and_invalid_inputs_error() {
        assert!(matches!(
            DiscreteMeasure1D::<f64>::from_atoms(vec![], 0.1),
            Err(Error::EmptyMeasure)
        ));
        let mu = build_cantor(1.0 / 3.0, 4, 1.0).unwrap();
        assert!(check_frostman(&mu, 0.5, mu.resolution() / 4.0, 1.0, 5, 8.0).is_err());
        assert!(check_frostman(&mu, 0.5, 0.01, 3.0, 5, 8.0).is_err());
        assert!(check_frostman(&mu, 0.5, 0.01, 1.0, 1, 8.0).is_err());
    }

    #[test]
    fn generic_f32_instantiation() {
        let mu = build_cantor(1.0f32 / 3.0, 5, 1.0f32).unwrap();
        assert_eq!(mu.atoms().len(), 32);
        let report = check_frostman(&mu, 0.6309f32, mu.resolution(), 1.0, 8, 8.0).unwrap();
        assert!((report.exponent_fit - LOG2_LOG3).abs() < 0.06);
    }
}
