//! Graph curves with certified curvature bounds, and lifts of 1-D measures
//! onto them.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::measure::{DiscreteMeasure1D, RegularityDomain};
use crate::scalar::Real;

/// Curve family of a [`CurveSpec`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CurveKind {
    Parabola,
    /// Polynomial graph, coefficients low-to-high degree.
    Custom,
    /// Straight line `y = 0`: violates the curvature hypothesis on purpose.
    /// Only constructible through [`CurveSpec::unchecked_line`], never through
    /// [`make_curve`]; used as the negative control in decay experiments.
    FlatControl,
}

/// The graph of a polynomial `gamma: [-1,1] -> R` together with certified
/// bounds on `|gamma''|`. Polynomials keep the derivative bounds exact rather
/// than sampled.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveSpec<R: Real> {
    kind: CurveKind,
    /// Coefficients low-to-high; the parabola stores `[0, 0, 1]`.
    coefficients: Vec<R>,
    gamma_d2_min: R,
    gamma_d2_max: R,
    /// `(x, gamma, gamma', gamma'')` on a uniform grid over `[-1, 1]`.
    samples: Vec<(R, R, R, R)>,
}

fn eval_poly<R: Real>(coeffs: &[R], x: R) -> R {
    let mut acc = R::zero();
    for &c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

fn derivative<R: Real>(coeffs: &[R]) -> Vec<R> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, &c)| c * R::of(k as f64))
        .collect()
}

impl<R: Real> CurveSpec<R> {
    pub fn kind(&self) -> CurveKind {
        self.kind
    }

    pub fn coefficients(&self) -> &[R] {
        &self.coefficients
    }

    /// Certified lower bound on `|gamma''|` over `[-1, 1]`.
    pub fn gamma_d2_min(&self) -> R {
        self.gamma_d2_min
    }

    pub fn gamma_d2_max(&self) -> R {
        self.gamma_d2_max
    }

    pub fn samples(&self) -> &[(R, R, R, R)] {
        &self.samples
    }

    pub fn gamma(&self, x: R) -> R {
        if self.kind == CurveKind::FlatControl {
            return R::zero();
        }
        eval_poly(&self.coefficients, x)
    }

    pub fn gamma_d1(&self, x: R) -> R {
        if self.kind == CurveKind::FlatControl {
            return R::zero();
        }
        eval_poly(&derivative(&self.coefficients), x)
    }

    pub fn gamma_d2(&self, x: R) -> R {
        if self.kind == CurveKind::FlatControl {
            return R::zero();
        }
        eval_poly(&derivative(&derivative(&self.coefficients)), x)
    }

    /// Unit tangent at `(x, gamma(x))`.
    pub fn tangent(&self, x: R) -> [R; 2] {
        let g1 = self.gamma_d1(x);
        let norm = (R::one() + g1 * g1).sqrt();
        [R::one() / norm, g1 / norm]
    }

    /// Unit normal at `(x, gamma(x))`, pointing to the `gamma'' > 0` side for
    /// the parabola (`(-gamma', 1)` direction).
    pub fn normal(&self, x: R) -> [R; 2] {
        let g1 = self.gamma_d1(x);
        let norm = (R::one() + g1 * g1).sqrt();
        [-g1 / norm, R::one() / norm]
    }

    /// The flat negative control `y = 0`. Bypasses the curvature check; test
    /// harnesses and the decay control use it, nothing else should.
    pub fn unchecked_line(grid_points: usize) -> Self {
        let n = grid_points.max(2);
        let samples = (0..n)
            .map(|k| {
                let x = R::of(-1.0 + 2.0 * k as f64 / (n - 1) as f64);
                (x, R::zero(), R::zero(), R::zero())
            })
            .collect();
        CurveSpec {
            kind: CurveKind::FlatControl,
            coefficients: vec![R::zero()],
            gamma_d2_min: R::zero(),
            gamma_d2_max: R::zero(),
            samples,
        }
    }
}

/// Build a curve with certified curvature.
///
/// `Parabola` ignores `coefficients` and yields `gamma(x) = x^2` with
/// `gamma'' = 2` exactly. `Custom` takes polynomial coefficients low-to-high
/// and certifies `min |gamma''|` by a grid scan tightened with the exact
/// Lipschitz bound `max |gamma'''| <= sum k(k-1)(k-2) |c_k|`.
pub fn make_curve<R: Real>(
    kind: CurveKind,
    coefficients: &[R],
    grid_points: usize,
) -> Result<CurveSpec<R>> {
    if grid_points < 2 {
        invalid!("grid_points must be at least 2");
    }
    let coefficients: Vec<R> = match kind {
        CurveKind::Parabola => vec![R::zero(), R::zero(), R::one()],
        CurveKind::Custom => {
            if coefficients.len() < 3 {
                return Err(Error::DegenerateCurvature);
            }
            coefficients.to_vec()
        }
        CurveKind::FlatControl => {
            invalid!("the flat control is only available through CurveSpec::unchecked_line")
        }
    };

    let d1 = derivative(&coefficients);
    let d2 = derivative(&d1);
    let d3 = derivative(&d2);
    // max over [-1,1] of |gamma'''| is at most the coefficient sum
    let lip: R = d3.iter().map(|c| c.abs()).sum();

    let n = grid_points;
    let mut samples = Vec::with_capacity(n);
    let mut min_abs = R::infinity();
    let mut max_abs = R::zero();
    let mut sign_pos = 0usize;
    let mut sign_neg = 0usize;
    for k in 0..n {
        let x = R::of(-1.0 + 2.0 * k as f64 / (n - 1) as f64);
        let g2 = eval_poly(&d2, x);
        if g2 > R::zero() {
            sign_pos += 1;
        } else {
            sign_neg += 1;
        }
        min_abs = min_abs.min(g2.abs());
        max_abs = max_abs.max(g2.abs());
        samples.push((x, eval_poly(&coefficients, x), eval_poly(&d1, x), g2));
    }
    let h = R::of(2.0 / (n - 1) as f64);
    let certified_min = min_abs - lip * h / R::of(2.0);
    if sign_pos > 0 && sign_neg > 0 {
        return Err(Error::DegenerateCurvature);
    }
    if certified_min <= R::of(1e-6) {
        return Err(Error::DegenerateCurvature);
    }

    Ok(CurveSpec {
        kind,
        coefficients,
        gamma_d2_min: min_abs,
        gamma_d2_max: max_abs,
        samples,
    })
}

/// A finite atomic measure in the plane, typically a lift of a 1-D measure
/// onto a curve. Atoms are sorted by `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteMeasure2D<R: Real> {
    atoms: Vec<([R; 2], R)>,
    resolution: R,
    total_mass: R,
}

impl<R: Real> DiscreteMeasure2D<R> {
    pub fn from_atoms(mut atoms: Vec<([R; 2], R)>, resolution: R) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::EmptyMeasure);
        }
        if resolution <= R::zero() {
            invalid!("resolution must be positive");
        }
        for &(_, w) in &atoms {
            if w < R::zero() || !w.is_finite() {
                invalid!("atom weight {w} must be nonnegative and finite");
            }
        }
        atoms.sort_by(|a, b| {
            a.0[0]
                .partial_cmp(&b.0[0])
                .unwrap()
                .then(a.0[1].partial_cmp(&b.0[1]).unwrap())
        });
        let total_mass = atoms.iter().map(|&(_, w)| w).sum();
        Ok(Self {
            atoms,
            resolution,
            total_mass,
        })
    }

    pub fn atoms(&self) -> &[([R; 2], R)] {
        &self.atoms
    }

    pub fn resolution(&self) -> R {
        self.resolution
    }

    pub fn total_mass(&self) -> R {
        self.total_mass
    }

    /// Exact mass of the closed Euclidean ball around `center`.
    pub fn ball_mass(&self, center: [R; 2], r: R) -> R {
        let lo = self.atoms.partition_point(|&(p, _)| p[0] < center[0] - r);
        let hi = self.atoms.partition_point(|&(p, _)| p[0] <= center[0] + r);
        let rr = r * r;
        self.atoms[lo..hi]
            .iter()
            .filter(|&&(p, _)| {
                let dx = p[0] - center[0];
                let dy = p[1] - center[1];
                dx * dx + dy * dy <= rr
            })
            .map(|&(_, w)| w)
            .sum()
    }

    /// Support diameter per coordinate, `(extent_x, extent_y)`.
    pub fn coordinate_extents(&self) -> (R, R) {
        let mut min_x = R::infinity();
        let mut max_x = R::neg_infinity();
        let mut min_y = R::infinity();
        let mut max_y = R::neg_infinity();
        for &(p, _) in &self.atoms {
            min_x = min_x.min(p[0]);
            max_x = max_x.max(p[0]);
            min_y = min_y.min(p[1]);
            max_y = max_y.max(p[1]);
        }
        (max_x - min_x, max_y - min_y)
    }
}

/// Lift a 1-D measure onto the curve: `(x, w) -> ((x, gamma(x)), w)`.
/// Total mass is preserved exactly.
pub fn lift_measure<R: Real>(
    nu: &DiscreteMeasure1D<R>,
    curve: &CurveSpec<R>,
) -> DiscreteMeasure2D<R> {
    let atoms = nu
        .atoms()
        .iter()
        .map(|&(x, w)| ([x, curve.gamma(x)], w))
        .collect();
    DiscreteMeasure2D {
        atoms,
        resolution: nu.resolution(),
        total_mass: nu.total_mass(),
    }
}

impl<R: Real> RegularityDomain<R> for DiscreteMeasure2D<R> {
    fn sup_center_count(&self) -> usize {
        2 * self.atoms.len() - 1
    }

    fn mass_at_sup_center(&self, idx: usize, r: R) -> R {
        let y = if idx % 2 == 0 {
            self.atoms[idx / 2].0
        } else {
            let a = self.atoms[idx / 2].0;
            let b = self.atoms[idx / 2 + 1].0;
            let half = R::of(0.5);
            [(a[0] + b[0]) * half, (a[1] + b[1]) * half]
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::{build_cantor, check_frostman};

    #[test]
    fn parabola_has_constant_curvature_two() {
        let c = make_curve::<f64>(CurveKind::Parabola, &[], 101).unwrap();
        assert_eq!(c.gamma_d2_min(), 2.0);
        assert_eq!(c.gamma_d2_max(), 2.0);
        for &(x, g, g1, g2) in c.samples() {
            assert_eq!(g, x * x);
            assert_eq!(g1, 2.0 * x);
            assert_eq!(g2, 2.0);
        }
    }

    #[test]
    fn cubic_without_curvature_rejected() {
        // gamma = x^3 has gamma''(0) = 0
        let err = make_curve::<f64>(CurveKind::Custom, &[0.0, 0.0, 0.0, 1.0], 1001);
        assert!(matches!(err, Err(Error::DegenerateCurvature)));
    }

    #[test]
    fn perturbed_parabola_min_curvature_at_left_endpoint() {
        // gamma = x^2 + 0.1 x^3, gamma'' = 2 + 0.6 x, minimized at x = -1
        let c = make_curve::<f64>(CurveKind::Custom, &[0.0, 0.0, 1.0, 0.1], 2001).unwrap();
        assert!((c.gamma_d2_min() - 1.4).abs() < 1e-9, "{}", c.gamma_d2_min());
        assert!((c.gamma_d2_max() - 2.6).abs() < 1e-9);
    }

    #[test]
    fn lift_preserves_atoms_and_mass() {
        let curve = make_curve::<f64>(CurveKind::Parabola, &[], 64).unwrap();
        let nu = DiscreteMeasure1D::from_atoms(vec![(0.0, 1.0)], 0.1).unwrap();
        let mu = lift_measure(&nu, &curve);
        assert_eq!(mu.atoms(), &[([0.0, 0.0], 1.0)]);

        let nu = DiscreteMeasure1D::from_atoms(vec![(-1.0, 0.5), (1.0, 0.5)], 0.5).unwrap();
        let mu = lift_measure(&nu, &curve);
        assert_eq!(mu.atoms(), &[([-1.0, 1.0], 0.5), ([1.0, 1.0], 0.5)]);
        assert_eq!(mu.total_mass(), nu.total_mass());
    }

    #[test]
    fn lifted_cantor_keeps_frostman_exponent() {
        let curve = make_curve::<f64>(CurveKind::Parabola, &[], 64).unwrap();
        let nu = build_cantor(1.0 / 3.0, 8, 1.0).unwrap();
        let s = 0.6309297535714574;
        let mu = lift_measure(&nu, &curve);
        let planar = check_frostman(&mu, s, mu.resolution(), 1.0, 12, 16.0).unwrap();
        assert!(planar.passed, "constant {}", planar.constant_fit);
        let linear = check_frostman(&nu, s, nu.resolution(), 1.0, 12, 16.0).unwrap();
        assert!(
            (planar.exponent_fit - linear.exponent_fit).abs() <= 0.05,
            "2d fit {} vs 1d fit {}",
            planar.exponent_fit,
            linear.exponent_fit
        );
    }

    #[test]
    fn tangent_normal_orthonormal() {
        let c = make_curve::<f64>(CurveKind::Parabola, &[], 16).unwrap();
        for &x in &[-1.0, -0.3, 0.0, 0.7, 1.0] {
            let t = c.tangent(x);
            let n = c.normal(x);
            assert!((t[0] * n[0] + t[1] * n[1]).abs() < 1e-15);
            assert!((t[0] * t[0] + t[1] * t[1] - 1.0).abs() < 1e-14);
            assert!((n[0] * n[0] + n[1] * n[1] - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn flat_control_not_constructible_via_make_curve() {
        assert!(make_curve::<f64>(CurveKind::FlatControl, &[], 16).is_err());
        let line = CurveSpec::<f64>::unchecked_line(16);
        assert_eq!(line.gamma(0.5), 0.0);
        assert_eq!(line.gamma_d2_min(), 0.0);
    }
}
