//! Fourier side of the laboratory: transforms of atomic measures, L^p norms
//! over balls, decay-exponent scans, mollification, and the AD-regular
//! decoupling-energy pipeline.

pub mod kernel;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::curve::DiscreteMeasure2D;
use crate::energy::{ec_energy, EnergyOrder};
use crate::error::{invalid, Error, Result};
use crate::fit::fit_power_law;
use crate::measure::DiscreteMeasure1D;
use crate::scalar::Real;
use crate::special::mollifier_ft_radial;
use crate::wavepacket::build_cap_grid;
use kernel::{ball_lp_integrals, AtomTable};

/// e(t) = exp(2 pi i t), the phase convention used everywhere.
pub fn e_phase<R: Real>(t: R) -> Complex<R> {
    let tp = crate::scalar::two_pi::<R>() * t;
    Complex::new(tp.cos(), tp.sin())
}

/// mu^(x) = sum_j w_j e(p_j . x).
pub fn fourier_eval<R: Real>(mu: &DiscreteMeasure2D<R>, x: [R; 2]) -> Complex<R> {
    let mut acc = Complex::new(R::zero(), R::zero());
    for &(p, w) in mu.atoms() {
        acc = acc + e_phase(p[0] * x[0] + p[1] * x[1]) * w;
    }
    acc
}

/// How the quadrature spacing for a ball norm is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum SpacingRule {
    /// `h = 1 / (8 p d)` with `d` the support diameter: resolves the
    /// oscillation scale of `|mu^|^p` with an 8x safety factor.
    Default,
    /// Explicit spacing, validated against the alias-free bound.
    Explicit(f64),
    /// `h = alias_free_bound / factor`.
    AliasSafety(f64),
}

/// Largest spacing for which the lattice sum of `|mu^|^p` over the plane is
/// alias-free: `|mu^|^p` is (for even p) a trigonometric sum with
/// coordinatewise frequencies at most `ceil(p/2) * extent`, and Poisson
/// summation is exact while `1/h` clears that band.
pub fn alias_free_spacing<R: Real>(mu: &DiscreteMeasure2D<R>, p: f64) -> f64 {
    let (ex, ey) = mu.coordinate_extents();
    let extent = ex.to_f64_lossy().max(ey.to_f64_lossy());
    let folds = (p / 2.0).ceil().max(1.0);
    if extent <= 0.0 {
        f64::INFINITY
    } else {
        1.0 / (folds * extent)
    }
}

fn spacing_for<R: Real>(mu: &DiscreteMeasure2D<R>, p: f64, rule: SpacingRule) -> Result<f64> {
    let bound = alias_free_spacing(mu, p);
    let h = match rule {
        SpacingRule::Default => {
            let (ex, ey) = mu.coordinate_extents();
            let (ex, ey) = (ex.to_f64_lossy(), ey.to_f64_lossy());
            let d = (ex * ex + ey * ey).sqrt().max(0.25);
            1.0 / (8.0 * p * d)
        }
        SpacingRule::Explicit(h) => h,
        SpacingRule::AliasSafety(factor) => {
            if !(factor >= 1.0) {
                invalid!("alias safety factor must be >= 1");
            }
            if bound.is_finite() {
                bound / factor
            } else {
                0.25 / factor
            }
        }
    };
    if !(h > 0.0) {
        invalid!("spacing must be positive");
    }
    if h > bound {
        return Err(Error::Undersampled { h, h_max: bound });
    }
    Ok(h)
}

/// Uniform sampling grid over `[-R, R]^2` clipped to the ball `|x| <= R`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampleGrid {
    pub radius: f64,
    pub spacing: f64,
}

impl SampleGrid {
    /// Validated against the alias-free bound of the measure at exponent `p`.
    pub fn new<R: Real>(mu: &DiscreteMeasure2D<R>, radius: f64, p: f64, rule: SpacingRule) -> Result<Self> {
        if radius < 4.0 {
            invalid!("grid radius must be at least 4, got {radius}");
        }
        let spacing = spacing_for(mu, p, rule)?;
        Ok(SampleGrid { radius, spacing })
    }
}

/// `(h^2 sum_{|x| <= R} |mu^(x)|^p)^{1/p}` over the lattice `h Z^2`.
pub fn lp_norm_on_ball<R: Real>(
    mu: &DiscreteMeasure2D<R>,
    radius: f64,
    p: f64,
    h: f64,
) -> Result<f64> {
    if p < 1.0 {
        invalid!("p must be at least 1, got {p}");
    }
    let grid = SampleGrid::new(mu, radius, p, SpacingRule::Explicit(h))?;
    let atoms = AtomTable::from_real_atoms(mu.atoms());
    let integrals = ball_lp_integrals(&atoms, p, grid.spacing, &[radius]);
    Ok(integrals[0].powf(1.0 / p))
}

/// One scale row of a decay scan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecayRow {
    pub r: f64,
    pub h: f64,
    pub l6_pow6: f64,
}

/// Fitted L^6 decay against the `R^{2-2s}` envelope.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DecayReport {
    pub s: f64,
    /// `2 - 2s`.
    pub target_exponent: f64,
    pub slack: f64,
    /// OLS slope of `log L6^6` against `log R`, excluding the smallest R.
    pub fitted_exponent: f64,
    pub per_r: Vec<DecayRow>,
    pub passed: bool,
}

/// Measure `h^2 sum |mu^|^6` over nested balls and fit the growth exponent.
///
/// All radii are covered by a single lattice pass at the spacing produced by
/// `rule`; the smallest radius is excluded from the fit (transient constants)
/// but always reported.
pub fn decay_scan<R: Real>(
    mu: &DiscreteMeasure2D<R>,
    s: f64,
    r_list: &[f64],
    rule: SpacingRule,
    slack: f64,
) -> Result<DecayReport> {
    if r_list.len() < 3 {
        return Err(Error::InsufficientScales);
    }
    let mut radii = r_list.to_vec();
    radii.sort_by(f64::total_cmp);
    radii.dedup();
    if radii.len() < 3 {
        return Err(Error::InsufficientScales);
    }
    for &r in &radii {
        if r < 16.0 {
            invalid!("decay scan radii must be at least 16, got {r}");
        }
    }
    let r_max = *radii.last().unwrap();
    if mu.resolution().to_f64_lossy() > 1.0 / r_max {
        invalid!("measure resolution must be at most 1/max(R) so atoms resolve the finest scale");
    }
    let h = spacing_for(mu, 6.0, rule)?;
    let atoms = AtomTable::from_real_atoms(mu.atoms());
    let integrals = ball_lp_integrals(&atoms, 6.0, h, &radii);

    let per_r: Vec<DecayRow> = radii
        .iter()
        .zip(&integrals)
        .map(|(&r, &v)| DecayRow { r, h, l6_pow6: v })
        .collect();
    let fit_rows: Vec<(f64, f64)> = per_r[1..].iter().map(|d| (d.r, d.l6_pow6)).collect();
    let fit = fit_power_law(&fit_rows)?;
    let target = 2.0 - 2.0 * s;
    Ok(DecayReport {
        s,
        target_exponent: target,
        slack,
        fitted_exponent: fit.exponent,
        per_r,
        passed: fit.exponent <= target + slack,
    })
}

/// Replace each atom by a 9-point cluster on a `delta/2` stencil carrying the
/// same mass, weighted by the mollifier profile `psi(xi) = c (1 - |xi|^2)^4`.
pub fn mollify<R: Real>(mu: &DiscreteMeasure2D<R>, delta: R) -> Result<DiscreteMeasure2D<R>> {
    if delta < mu.resolution() / R::of(4.0) {
        invalid!("mollification scale below resolution/4");
    }
    // relative stencil weights psi(o/delta) at offsets {-d/2, 0, d/2}^2
    let center = 1.0f64;
    let edge = (1.0f64 - 0.25).powi(4);
    let corner = (1.0f64 - 0.5).powi(4);
    let total = center + 4.0 * edge + 4.0 * corner;
    let half = delta / R::of(2.0);
    let offsets: [(i8, i8, f64); 9] = [
        (0, 0, center / total),
        (1, 0, edge / total),
        (-1, 0, edge / total),
        (0, 1, edge / total),
        (0, -1, edge / total),
        (1, 1, corner / total),
        (1, -1, corner / total),
        (-1, 1, corner / total),
        (-1, -1, corner / total),
    ];
    let mut atoms = Vec::with_capacity(mu.atoms().len() * 9);
    for &(p, w) in mu.atoms() {
        for &(dx, dy, frac) in &offsets {
            atoms.push((
                [
                    p[0] + R::of(dx as f64) * half,
                    p[1] + R::of(dy as f64) * half,
                ],
                w * R::of(frac),
            ));
        }
    }
    DiscreteMeasure2D::from_atoms(atoms, half)
}

/// Fourier transform of the continuous mollifier at scale `delta`, evaluated
/// at `x`: the exact multiplier `psi_delta^(x) = psi^(delta x)`.
pub fn mollifier_multiplier<R: Real>(delta: R, x: [R; 2]) -> R {
    let r = (x[0] * x[0] + x[1] * x[1]).sqrt() * delta;
    mollifier_ft_radial(crate::scalar::two_pi::<R>() * r)
}

/// Per-cap row of the AD-regular pipeline report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PipelineCapRow {
    pub cap_index: usize,
    pub mass: f64,
    pub l6_pow6: f64,
    /// `R^2 * Ec3(nu_theta, 1/R)`.
    pub energy_bound: f64,
    /// `Ec3(nu_theta, 1/R) / (mass^5 (1/R)^s)`, the per-cap energy constant.
    pub energy_constant: f64,
}

/// Factor-by-factor report of the decoupling + energy chain for AD-regular
/// measures: `||mu^||^6 <= (#caps)^3 max_cap ||mu_theta^||^6` and
/// `||mu_theta^||^6 <= R^2 Ec3(nu_theta, 1/R)`, compared against `R^{2-2s}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PipelineReport {
    pub r: f64,
    pub s: f64,
    pub h: f64,
    pub occupied_caps: usize,
    /// `R^{s/2}`.
    pub expected_caps: f64,
    pub lhs_l6_pow6: f64,
    pub max_cap_l6_pow6: f64,
    pub max_energy_bound: f64,
    /// `(#caps)^3 * max_cap_l6_pow6`, the decoupled upper route.
    pub decoupled_product: f64,
    /// `(#caps)^3 * R^2 * max_cap Ec3`, the full chain.
    pub chain_product: f64,
    /// `R^{2-2s}`.
    pub envelope: f64,
    pub per_cap: Vec<PipelineCapRow>,
}

/// Run the decoupling-energy chain on a measure supported on the curve.
/// `w_{B_R}` is realized as the sharp indicator of `B_R`.
pub fn ad_regular_pipeline<R: Real>(
    mu: &DiscreteMeasure2D<R>,
    curve: &crate::curve::CurveSpec<R>,
    s: f64,
    radius: f64,
    rule: SpacingRule,
) -> Result<PipelineReport> {
    let grid = build_cap_grid(curve, radius)?;
    let h = spacing_for(mu, 6.0, rule)?;

    // restriction of the 1-D base measure to each theta base interval
    let mut per_theta: Vec<Vec<(R, R)>> = vec![Vec::new(); grid.theta_caps().len()];
    for &(p, w) in mu.atoms() {
        if w > R::zero() {
            let idx = grid.theta_index_of(p[0].to_f64_lossy());
            per_theta[idx].push((p[0], w));
        }
    }

    let atoms_all = AtomTable::from_real_atoms(mu.atoms());
    let lhs = ball_lp_integrals(&atoms_all, 6.0, h, &[radius])[0];

    let mut per_cap = Vec::new();
    let mut max_l6 = 0.0f64;
    let mut max_energy_bound = 0.0f64;
    for (idx, cap_atoms) in per_theta.iter().enumerate() {
        if cap_atoms.is_empty() {
            continue;
        }
        let nu = DiscreteMeasure1D::from_atoms(
            cap_atoms.clone(),
            mu.resolution().min(R::of(1.0 / radius)),
        )?;
        let planar: Vec<([R; 2], R)> = cap_atoms
            .iter()
            .map(|&(x, w)| ([x, curve.gamma(x)], w))
            .collect();
        let table = AtomTable::from_real_atoms(&planar);
        let l6 = ball_lp_integrals(&table, 6.0, h, &[radius])[0];
        let ec3 = ec_energy(&nu, EnergyOrder::Three, R::of(1.0 / radius))?;
        let mass = nu.total_mass().to_f64_lossy();
        let energy_bound = radius * radius * ec3.value;
        let energy_constant = ec3.value / (mass.powi(5) * (1.0 / radius).powf(s));
        max_l6 = max_l6.max(l6);
        max_energy_bound = max_energy_bound.max(energy_bound);
        per_cap.push(PipelineCapRow {
            cap_index: idx,
            mass,
            l6_pow6: l6,
            energy_bound,
            energy_constant,
        });
    }
    if per_cap.is_empty() {
        return Err(Error::EmptyMeasure);
    }

    let occupied = per_cap.len();
    let occ3 = (occupied as f64).powi(3);
    Ok(PipelineReport {
        r: radius,
        s,
        h,
        occupied_caps: occupied,
        expected_caps: radius.powf(s / 2.0),
        lhs_l6_pow6: lhs,
        max_cap_l6_pow6: max_l6,
        max_energy_bound,
        decoupled_product: occ3 * max_l6,
        chain_product: occ3 * max_energy_bound,
        envelope: radius.powf(2.0 - 2.0 * s),
        per_cap,
    })
}
