//! Cap grids over the curve, the (D, M, P) pigeonhole decomposition, tube
//! tilings with wave-packet coefficients, and the coefficient / box-count /
//! bush bounds.
//!
//! Geometry and quadratures here run in f64; generic measures are converted
//! on entry.

use num_complex::Complex;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::curve::{CurveKind, CurveSpec, DiscreteMeasure2D};
use crate::error::{invalid, Result};
use crate::fourier::kernel::{sweep_affine_lattice, AtomTable};
use crate::scalar::Real;
use crate::special::bump_ft;

/// One frequency cap of dimensions ~ R^{-1/2} x R^{-1}.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ThetaCap {
    pub index: usize,
    /// Base interval on the x-axis, length 2 R^{-1/2}.
    pub base: (f64, f64),
    /// `(m, gamma(m))` at the base midpoint.
    pub freq_center: [f64; 2],
    /// Unit tangent of the curve at the frequency center.
    pub tangent: [f64; 2],
    /// Unit normal; tubes point this way.
    pub normal: [f64; 2],
    pub tau_index: usize,
}

/// One intermediate cap of dimensions ~ R^{-1/4} x R^{-1/2}.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TauCap {
    pub index: usize,
    pub base: (f64, f64),
    pub theta_indices: Vec<usize>,
}

/// Partition of the 1/R-neighborhood of the curve into theta and tau caps.
#[derive(Debug, Clone)]
pub struct CapGrid {
    radius: f64,
    theta_caps: Vec<ThetaCap>,
    tau_caps: Vec<TauCap>,
    /// Polynomial coefficients of the curve (f64), empty for the flat control.
    poly: Vec<f64>,
}

impl CapGrid {
    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn theta_caps(&self) -> &[ThetaCap] {
        &self.theta_caps
    }

    pub fn tau_caps(&self) -> &[TauCap] {
        &self.tau_caps
    }

    pub fn gamma(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for &c in self.poly.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// The unique theta cap whose base interval holds `x` (clamped at the ends).
    pub fn theta_index_of(&self, x: f64) -> usize {
        let n = self.theta_caps.len() as f64;
        let idx = ((x + 1.0) / 2.0 * n).floor();
        (idx.max(0.0) as usize).min(self.theta_caps.len() - 1)
    }
}

/// Partition `[-1, 1]` into `round(sqrt(R))` theta caps grouped into
/// `ceil(R^{1/4})` tau caps (the last one possibly ragged).
pub fn build_cap_grid<R: Real>(curve: &CurveSpec<R>, radius: f64) -> Result<CapGrid> {
    if radius < 64.0 {
        invalid!("cap grids need R >= 64, got {radius}");
    }
    let n_theta = radius.sqrt().round() as usize;
    let n_tau = radius.powf(0.25).ceil() as usize;
    let group = n_theta.div_ceil(n_tau);
    let theta_len = 2.0 / n_theta as f64;

    let poly: Vec<f64> = if curve.kind() == CurveKind::FlatControl {
        vec![0.0]
    } else {
        curve.coefficients().iter().map(|c| c.to_f64_lossy()).collect()
    };
    let eval = |x: f64| -> f64 {
        let mut acc = 0.0;
        for &c in poly.iter().rev() {
            acc = acc * x + c;
        }
        acc
    };

    let mut theta_caps = Vec::with_capacity(n_theta);
    for i in 0..n_theta {
        let lo = -1.0 + i as f64 * theta_len;
        let hi = lo + theta_len;
        let m = 0.5 * (lo + hi);
        let g1 = {
            let mid = R::of(m);
            curve.gamma_d1(mid).to_f64_lossy()
        };
        let norm = (1.0 + g1 * g1).sqrt();
        theta_caps.push(ThetaCap {
            index: i,
            base: (lo, hi),
            freq_center: [m, eval(m)],
            tangent: [1.0 / norm, g1 / norm],
            normal: [-g1 / norm, 1.0 / norm],
            tau_index: i / group,
        });
    }

    let n_tau_actual = theta_caps.last().unwrap().tau_index + 1;
    let mut tau_caps = Vec::with_capacity(n_tau_actual);
    for t in 0..n_tau_actual {
        let members: Vec<usize> = theta_caps
            .iter()
            .filter(|c| c.tau_index == t)
            .map(|c| c.index)
            .collect();
        let lo = theta_caps[members[0]].base.0;
        let hi = theta_caps[*members.last().unwrap()].base.1;
        tau_caps.push(TauCap {
            index: t,
            base: (lo, hi),
            theta_indices: members,
        });
    }

    Ok(CapGrid {
        radius,
        theta_caps,
        tau_caps,
        poly,
    })
}

/// One (D, M, P) class of the pigeonhole decomposition.
#[derive(Debug, Clone)]
pub struct PigeonholeClass<R: Real> {
    /// Dyadic count of active theta caps: their number lies in `[D, 2D)`.
    pub d: u64,
    /// Dyadic mass level: every active theta carries mass in `[M R^{-s}, 2M R^{-s})`.
    pub m: f64,
    /// Dyadic per-tau occupancy: every active tau holds `[P, 2P)` active thetas.
    pub p: u64,
    pub s: f64,
    pub radius: f64,
    pub active_thetas: Vec<usize>,
    pub class_measure: DiscreteMeasure2D<R>,
    pub class_mass: f64,
    pub negligible: bool,
}

impl<R: Real> PigeonholeClass<R> {
    /// Constants in the forced inequalities: `M <= c5 R^{s/2}`,
    /// `D M <= c6 R^s`, `M P <= c7 R^{3s/4}`.
    pub fn inequality_constants(&self) -> (f64, f64, f64) {
        let r = self.radius;
        let s = self.s;
        (
            self.m / r.powf(s / 2.0),
            self.d as f64 * self.m / r.powf(s),
            self.m * self.p as f64 / r.powf(3.0 * s / 4.0),
        )
    }

    /// Largest admissible coefficient magnitude `M R^{-5/4}` (the lambda_max
    /// scale of the coefficient bound).
    pub fn lambda_max_bound(&self) -> f64 {
        self.m * self.radius.powf(-1.25)
    }
}

fn dyadic_floor(v: f64) -> f64 {
    2f64.powi(v.log2().floor() as i32)
}

/// Decompose the nonempty caps of `mu` into (D, M, P) classes. The union of
/// the class measures recovers `mu` restricted to the 1/R-neighborhood of
/// the curve exactly; atoms further away are rejected.
pub fn pigeonhole_decompose<R: Real>(
    mu: &DiscreteMeasure2D<R>,
    s: f64,
    grid: &CapGrid,
) -> Result<Vec<PigeonholeClass<R>>> {
    let radius = grid.radius();
    for &(p, _) in mu.atoms() {
        let (x, y) = (p[0].to_f64_lossy(), p[1].to_f64_lossy());
        if (y - grid.gamma(x)).abs() > 2.0 / radius {
            invalid!(
                "atom at ({x}, {y}) lies outside the 1/R-neighborhood of the curve"
            );
        }
    }

    let n_theta = grid.theta_caps().len();
    let mut cap_atoms: Vec<Vec<([R; 2], R)>> = vec![Vec::new(); n_theta];
    for &(p, w) in mu.atoms() {
        if w > R::zero() {
            cap_atoms[grid.theta_index_of(p[0].to_f64_lossy())].push((p, w));
        }
    }

    let total_mass = mu.total_mass().to_f64_lossy();
    let rs = radius.powf(s);

    // M level per occupied theta
    let mut theta_level: Vec<Option<f64>> = vec![None; n_theta];
    for (i, atoms) in cap_atoms.iter().enumerate() {
        if atoms.is_empty() {
            continue;
        }
        let mass: f64 = atoms.iter().map(|&(_, w)| w.to_f64_lossy()).sum();
        if mass > 0.0 {
            theta_level[i] = Some(dyadic_floor(mass * rs));
        }
    }

    // group by M, then by the dyadic occupancy P of each tau
    use std::collections::BTreeMap;
    let mut by_m: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
    for (i, lvl) in theta_level.iter().enumerate() {
        if let Some(m) = lvl {
            by_m.entry(m.to_bits()).or_default().push(i);
        }
    }

    let mut classes = Vec::new();
    for (m_bits, thetas) in by_m {
        let m = f64::from_bits(m_bits);
        let mut tau_counts: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &i in &thetas {
            tau_counts
                .entry(grid.theta_caps()[i].tau_index)
                .or_default()
                .push(i);
        }
        let mut by_p: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
        for (_tau, members) in tau_counts {
            let p = dyadic_floor(members.len() as f64) as u64;
            by_p.entry(p).or_default().extend(members);
        }
        for (p, mut members) in by_p {
            members.sort_unstable();
            let d = dyadic_floor(members.len() as f64) as u64;
            let mut atoms = Vec::new();
            for &i in &members {
                atoms.extend(cap_atoms[i].iter().cloned());
            }
            let class_measure = DiscreteMeasure2D::from_atoms(atoms, mu.resolution())?;
            let class_mass = class_measure.total_mass().to_f64_lossy();
            classes.push(PigeonholeClass {
                d,
                m,
                p,
                s,
                radius,
                active_thetas: members,
                class_measure,
                class_mass,
                negligible: m * radius.powf(-s) < total_mass * 1e-30,
            });
        }
    }
    Ok(classes)
}

/// An R^{1/2} x R tube dual to a theta cap, with its wave-packet coefficient.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Tube {
    pub theta_index: usize,
    pub center: [f64; 2],
    /// Unit vector along the long axis (the cap normal).
    pub direction: [f64; 2],
    pub width: f64,
    pub length: f64,
    pub coefficient: (f64, f64),
    /// Dyadic class `2^k` with `|coefficient|` in `[2^k, 2^{k+1})`.
    pub lambda_class: f64,
    /// `(u, v)` tile indices within its theta's tiling.
    pub slot: (i64, i64),
}

impl Tube {
    pub fn coefficient_norm(&self) -> f64 {
        let (re, im) = self.coefficient;
        (re * re + im * im).sqrt()
    }

    /// Unit vector across the tube (the cap tangent direction).
    pub fn across(&self) -> [f64; 2] {
        [self.direction[1], -self.direction[0]]
    }

    /// Tube-frame coordinates of a point: `u` across, `v` along.
    pub fn local(&self, x: [f64; 2]) -> (f64, f64) {
        let dx = [x[0] - self.center[0], x[1] - self.center[1]];
        let a = self.across();
        (
            dx[0] * a[0] + dx[1] * a[1],
            dx[0] * self.direction[0] + dx[1] * self.direction[1],
        )
    }

    /// Corner points, for exact rectangle intersection tests.
    pub fn corners(&self) -> [[f64; 2]; 4] {
        let a = self.across();
        let (hw, hl) = (self.width / 2.0, self.length / 2.0);
        let mut out = [[0.0; 2]; 4];
        for (k, (su, sv)) in [(1.0, 1.0), (1.0, -1.0), (-1.0, -1.0), (-1.0, 1.0)]
            .iter()
            .enumerate()
        {
            out[k] = [
                self.center[0] + su * hw * a[0] + sv * hl * self.direction[0],
                self.center[1] + su * hw * a[1] + sv * hl * self.direction[1],
            ];
        }
        out
    }
}

/// Whether wave-packet coefficients see the mollifier damping of `F` or the
/// raw phase sum (the latter admits an exact separable oracle).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Damping {
    Mollified,
    None,
}

/// The fixed spatial window: `b(t) = cos^2(pi t)` on `|t| <= 1/2`.
fn bump(t: f64) -> f64 {
    if t.abs() <= 0.5 {
        let c = (std::f64::consts::PI * t).cos();
        c * c
    } else {
        0.0
    }
}

/// `W_T(x) = R^{-3/4} e(xi_theta . x) b(u / sqrt(R)) b(v / R)`.
pub fn wave_packet_value(tube: &Tube, freq_center: [f64; 2], x: [f64; 2]) -> Complex<f64> {
    let (u, v) = tube.local(x);
    let env = bump(u / tube.width) * bump(v / tube.length);
    if env == 0.0 {
        return Complex::new(0.0, 0.0);
    }
    let scale = tube.length.powf(-0.75) * env;
    let phase = 2.0 * std::f64::consts::PI * (freq_center[0] * x[0] + freq_center[1] * x[1]);
    Complex::new(phase.cos(), phase.sin()) * scale
}

/// Enumerate the tube tiling of `[-R, R]^2` for one theta direction: slots
/// `iu` across (pitch sqrt(R)) and `iv` along (pitch R), covering every cell
/// that meets the square. Every point belongs to exactly one tube per theta
/// via `floor` indexing.
fn tube_slots(radius: f64, tangent: [f64; 2], normal: [f64; 2]) -> Vec<(i64, i64)> {
    let w = radius.sqrt();
    let eu = radius * (tangent[0].abs() + tangent[1].abs());
    let ev = radius * (normal[0].abs() + normal[1].abs());
    let iu_lo = (-eu / w).floor() as i64;
    let iu_hi = (eu / w).floor() as i64;
    let iv_lo = (-ev / radius).floor() as i64;
    let iv_hi = (ev / radius).floor() as i64;
    let mut slots = Vec::new();
    for iu in iu_lo..=iu_hi {
        for iv in iv_lo..=iv_hi {
            slots.push((iu, iv));
        }
    }
    slots
}

fn tube_at(theta: &ThetaCap, radius: f64, slot: (i64, i64)) -> Tube {
    let w = radius.sqrt();
    let u_c = (slot.0 as f64 + 0.5) * w;
    let v_c = (slot.1 as f64 + 0.5) * radius;
    Tube {
        theta_index: theta.index,
        center: [
            u_c * theta.tangent[0] + v_c * theta.normal[0],
            u_c * theta.tangent[1] + v_c * theta.normal[1],
        ],
        direction: theta.normal,
        width: w,
        length: radius,
        coefficient: (0.0, 0.0),
        lambda_class: 0.0,
        slot,
    }
}

/// Compute `<F_theta, W_T>` for every tube of every active theta by midpoint
/// quadrature over the tube at spacing `sqrt(R)/16`, where
/// `F = R^{s-2} sum_j w_j psi^(x/R) e(p_j . x)` restricted to the cap.
/// Tubes with `|coefficient| < R^{-12} M R^{-5/4}` are dropped.
pub fn wavepacket_coefficients<R: Real>(
    class: &PigeonholeClass<R>,
    grid: &CapGrid,
    damping: Damping,
) -> Result<Vec<Tube>> {
    if class.negligible {
        invalid!("wave packets of a negligible class");
    }
    let radius = class.radius;
    let s = class.s;
    let norm_factor = radius.powf(s - 2.0) * radius.powf(-0.75);
    let floor = class.lambda_max_bound() * radius.powf(-12.0);

    // per-theta atom tables with frequencies shifted by the cap center
    let mut per_theta: Vec<(usize, AtomTable<f64>)> = Vec::new();
    for &ti in &class.active_thetas {
        let theta = &grid.theta_caps()[ti];
        let mut table = AtomTable::new();
        for &(p, w) in class.class_measure.atoms() {
            let x = p[0].to_f64_lossy();
            if grid.theta_index_of(x) == ti {
                table.push(
                    [
                        x - theta.freq_center[0],
                        p[1].to_f64_lossy() - theta.freq_center[1],
                    ],
                    Complex::new(w.to_f64_lossy(), 0.0),
                );
            }
        }
        if !table.is_empty() {
            per_theta.push((ti, table));
        }
    }

    let spacing = radius.sqrt() / 16.0;
    let n_u = 16usize;
    let n_v = (radius / spacing).round() as usize;
    // window samples at midpoint offsets, shared by every tube
    let bu: Vec<f64> = (0..n_u)
        .map(|q| bump((q as f64 + 0.5) / n_u as f64 - 0.5))
        .collect();
    let bv: Vec<f64> = (0..n_v)
        .map(|q| bump((q as f64 + 0.5) / n_v as f64 - 0.5))
        .collect();
    let cell = spacing * spacing;

    let mut jobs: Vec<(&AtomTable<f64>, Tube)> = Vec::new();
    for (ti, table) in per_theta.iter() {
        let theta = &grid.theta_caps()[*ti];
        for slot in tube_slots(radius, theta.tangent, theta.normal) {
            jobs.push((table, tube_at(theta, radius, slot)));
        }
    }

    let table_psi = crate::special::MollifierFtTable::new(
        2.0 * std::f64::consts::PI * 3.0,
        8192,
    );
    let tubes: Vec<Option<Tube>> = jobs
        .par_iter()
        .map(|(table, tube)| {
            let across = tube.across();
            // lattice corner: u at slot start, v at slot start, midpoint offsets
            let u0 = tube.slot.0 as f64 * tube.width + 0.5 * spacing;
            let v0 = tube.slot.1 as f64 * tube.length + 0.5 * spacing;
            let origin = [
                u0 * across[0] + v0 * tube.direction[0],
                u0 * across[1] + v0 * tube.direction[1],
            ];
            let step_v = [tube.direction[0] * spacing, tube.direction[1] * spacing];
            let step_u = [across[0] * spacing, across[1] * spacing];
            let mut acc = Complex::new(0.0, 0.0);
            // long axis fast; rows across
            sweep_affine_lattice(
                table,
                origin,
                step_v,
                n_v,
                step_u,
                n_u,
                |iv, iu, z: Complex<f64>| {
                    let x = [
                        origin[0] + iv as f64 * step_v[0] + iu as f64 * step_u[0],
                        origin[1] + iv as f64 * step_v[1] + iu as f64 * step_u[1],
                    ];
                    let damp = match damping {
                        Damping::Mollified => {
                            let r = (x[0] * x[0] + x[1] * x[1]).sqrt() / radius;
                            table_psi.eval(2.0 * std::f64::consts::PI * r)
                        }
                        Damping::None => 1.0,
                    };
                    acc += z * (damp * bu[iu] * bv[iv]);
                },
            );
            let coeff = acc * (cell * norm_factor);
            if coeff.norm() < floor {
                None
            } else {
                let mut t = (*tube).clone();
                t.coefficient = (coeff.re, coeff.im);
                t.lambda_class = dyadic_floor(coeff.norm());
                Some(t)
            }
        })
        .collect();

    Ok(tubes.into_iter().flatten().collect())
}

/// Exact coefficient of a single undamped atom against one wave packet:
/// `w R^{s-2} R^{-3/4} sqrt(R) R |b^(sqrt(R) k_u) b^(R k_v)|` with
/// `(k_u, k_v)` the cap-relative frequency in the tube frame. Test oracle for
/// the quadrature route.
pub fn single_atom_coefficient_oracle(
    tube: &Tube,
    freq_center: [f64; 2],
    atom_freq: [f64; 2],
    weight: f64,
    s: f64,
) -> f64 {
    let radius = tube.length;
    let rel = [atom_freq[0] - freq_center[0], atom_freq[1] - freq_center[1]];
    let across = tube.across();
    let ku = rel[0] * across[0] + rel[1] * across[1];
    let kv = rel[0] * tube.direction[0] + rel[1] * tube.direction[1];
    weight
        * radius.powf(s - 2.0)
        * radius.powf(-0.75)
        * radius.sqrt()
        * radius
        * (bump_ft(radius.sqrt() * ku) * bump_ft(radius * kv)).abs()
}

/// Count-and-check of tubes of one dyadic coefficient class inside an
/// oriented box of dimensions `delta_across x R` parallel to the tubes.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoxCountCheck {
    pub count: usize,
    /// `(delta/sqrt(R))^{1-s} M R^{(s-5)/2} / lambda^2`.
    pub bound: f64,
    pub ratio: f64,
}

/// Oriented box for the fractal box-count bound.
#[derive(Debug, Clone, Copy)]
pub struct OrientedBox {
    pub center: [f64; 2],
    /// Unit vector of the long (length R) axis; must match the tube direction.
    pub axis: [f64; 2],
    pub len_long: f64,
    pub len_across: f64,
}

/// `N_B = |{T in T_{lambda,theta} : T inside B}|` against the fractal bound.
pub fn count_tubes_in_box(
    tubes: &[Tube],
    lambda: f64,
    boxed: &OrientedBox,
    m_level: f64,
    s: f64,
) -> Result<BoxCountCheck> {
    if tubes.is_empty() {
        return Ok(BoxCountCheck {
            count: 0,
            bound: 0.0,
            ratio: 0.0,
        });
    }
    let radius = tubes[0].length;
    if !(boxed.len_across >= radius.sqrt() - 1e-9 && boxed.len_across <= radius + 1e-9) {
        invalid!("box width must lie in [sqrt(R), R]");
    }
    let across = [boxed.axis[1], -boxed.axis[0]];
    let mut count = 0usize;
    for t in tubes {
        if t.lambda_class != lambda {
            continue;
        }
        let d = [t.center[0] - boxed.center[0], t.center[1] - boxed.center[1]];
        let du = (d[0] * across[0] + d[1] * across[1]).abs();
        let dv = (d[0] * boxed.axis[0] + d[1] * boxed.axis[1]).abs();
        let aligned = (t.direction[0] * boxed.axis[0] + t.direction[1] * boxed.axis[1]).abs()
            > 1.0 - 1e-9;
        if aligned
            && du + t.width / 2.0 <= boxed.len_across / 2.0 + 1e-9
            && dv + t.length / 2.0 <= boxed.len_long / 2.0 + 1e-9
        {
            count += 1;
        }
    }
    let bound = (boxed.len_across / radius.sqrt()).powf(1.0 - s)
        * m_level
        * radius.powf((s - 5.0) / 2.0)
        / (lambda * lambda);
    Ok(BoxCountCheck {
        count,
        bound,
        ratio: if bound > 0.0 { count as f64 / bound } else { 0.0 },
    })
}

/// Result of the bush L^6 estimate on one sqrt(R)-square.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BushCheck {
    pub lhs_pow6: f64,
    /// `R^{-7/2} D^3 P^2 max |a_T|^6`.
    pub rhs: f64,
    pub ratio: f64,
    pub tubes_in_bush: usize,
}

/// Quadrature of `|| sum a_T W_T ||_{L^6(q)}^6` over a square of side
/// sqrt(R) centered at `q_center`, against `R^{-7/2} D^3 P^2 ||a||_inf^6`.
pub fn bush_l6(
    bush: &[Tube],
    grid: &CapGrid,
    q_center: [f64; 2],
    d_level: u64,
    p_level: u64,
    spacing: f64,
) -> Result<BushCheck> {
    if bush.is_empty() {
        invalid!("bush must contain at least one tube");
    }
    let radius = bush[0].length;
    let side = radius.sqrt();
    let n = (side / spacing).round().max(1.0) as usize;
    let centers: Vec<[f64; 2]> = bush
        .iter()
        .map(|t| grid.theta_caps()[t.theta_index].freq_center)
        .collect();

    let rows: Vec<f64> = (0..n)
        .into_par_iter()
        .map(|j| {
            let y = q_center[1] - side / 2.0 + (j as f64 + 0.5) * spacing;
            let mut acc = 0.0f64;
            for i in 0..n {
                let x = [q_center[0] - side / 2.0 + (i as f64 + 0.5) * spacing, y];
                let mut f = Complex::new(0.0, 0.0);
                for (t, fc) in bush.iter().zip(&centers) {
                    let w = wave_packet_value(t, *fc, x);
                    if w.re != 0.0 || w.im != 0.0 {
                        f += w * Complex::new(t.coefficient.0, t.coefficient.1);
                    }
                }
                let m = f.norm_sqr();
                acc += m * m * m;
            }
            acc
        })
        .collect();
    let lhs = rows.iter().sum::<f64>() * spacing * spacing;
    let a_max = bush
        .iter()
        .map(Tube::coefficient_norm)
        .fold(0.0f64, f64::max);
    let rhs = radius.powf(-3.5) * (d_level as f64).powi(3) * (p_level as f64).powi(2)
        * a_max.powi(6);
    Ok(BushCheck {
        lhs_pow6: lhs,
        rhs,
        ratio: if rhs > 0.0 { lhs / rhs } else { f64::INFINITY },
        tubes_in_bush: bush.len(),
    })
}
