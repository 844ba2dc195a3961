//! Timing probes for acceptance-scale runs (ignored by default).

use std::time::Instant;

use frostlab_core::curve::{lift_measure, make_curve, CurveKind};
use frostlab_core::decoupling::{decoupling_ratio, CapFunction, DecouplingSide};
use frostlab_core::fourier::{decay_scan, SpacingRule};
use frostlab_core::measure::build_cantor;
use frostlab_core::wavepacket::build_cap_grid;

#[test]
#[ignore]
fn probe_decay_2048() {
    let nu = build_cantor(1.0 / 3.0, 10, 1.0).unwrap();
    let curve = make_curve::<f64>(CurveKind::Parabola, &[], 64).unwrap();
    let mu = lift_measure(&nu, &curve);
    let start = Instant::now();
    let report = decay_scan(
        &mu,
        0.6309297535714574,
        &[64.0, 128.0, 256.0, 512.0, 1024.0, 2048.0],
        SpacingRule::Explicit(1.0 / 8.0),
        0.15,
    )
    .unwrap();
    println!(
        "decay depth10 h=1/8: {:?}, fit {:.4} target {:.4}",
        start.elapsed(),
        report.fitted_exponent,
        report.target_exponent
    );
    for row in &report.per_r {
        println!("  R={} l6^6={:.6e}", row.r, row.l6_pow6);
    }
}

#[test]
#[ignore]
fn probe_kernel_rate() {
    use frostlab_core::fourier::kernel::{ball_lp_integrals, AtomTable};
    use num_complex::Complex;
    let mut atoms = AtomTable::<f64>::new();
    for j in 0..256 {
        let x = -1.0 + 2.0 * j as f64 / 255.0;
        atoms.push([x, x * x], Complex::new(1.0 / 256.0, 0.0));
    }
    let start = Instant::now();
    let ints = ball_lp_integrals(&atoms, 6.0, 1.0 / 8.0, &[256.0]);
    let el = start.elapsed().as_secs_f64();
    let points = std::f64::consts::PI * (256.0f64 * 8.0).powi(2) / 2.0;
    println!(
        "rate: {:.3e} pairs/s over {:.2e} pairs ({:.2}s), v={:.3e}",
        points * 256.0 / el,
        points * 256.0,
        el,
        ints[0]
    );
}

#[test]
#[ignore]
fn probe_wavepackets_4096() {
    use frostlab_core::incidence::{heavy_light_split, per_tube_heavy_count, SquareGrid};
    use frostlab_core::wavepacket::{pigeonhole_decompose, wavepacket_coefficients, Damping};

    let s = 0.6309297535714574;
    let radius = 4096.0;
    let nu = build_cantor(1.0 / 3.0, 10, 1.0).unwrap();
    let curve = make_curve::<f64>(CurveKind::Parabola, &[], 1025).unwrap();
    let mu = lift_measure(&nu, &curve);
    let grid = build_cap_grid(&curve, radius).unwrap();
    let start = Instant::now();
    let classes = pigeonhole_decompose(&mu, s, &grid).unwrap();
    println!("pigeonhole: {:?}, {} classes", start.elapsed(), classes.len());
    for c in &classes {
        println!(
            "  class D={} M={} P={} |thetas|={} mass={:.4e} negligible={}",
            c.d,
            c.m,
            c.p,
            c.active_thetas.len(),
            c.class_mass,
            c.negligible
        );
    }
    let class = classes
        .iter()
        .filter(|c| !c.negligible)
        .max_by(|a, b| a.class_mass.partial_cmp(&b.class_mass).unwrap())
        .unwrap();
    let start = Instant::now();
    let tubes = wavepacket_coefficients(class, &grid, Damping::Mollified).unwrap();
    println!("coefficients: {:?}, {} tubes kept", start.elapsed(), tubes.len());
    let lam_bound = class.lambda_max_bound();
    let lam_top = tubes.iter().map(|t| t.lambda_class).fold(0.0f64, f64::max);
    let top: Vec<_> = tubes
        .iter()
        .filter(|t| t.lambda_class == lam_top)
        .cloned()
        .collect();
    let worst = tubes
        .iter()
        .map(|t| t.coefficient_norm() / lam_bound)
        .fold(0.0f64, f64::max);
    println!(
        "lambda_top={lam_top:.3e} bound={lam_bound:.3e} worst c={worst:.3} top class size {}",
        top.len()
    );
    let sq = SquareGrid::new(radius).unwrap();
    let start = Instant::now();
    let split = heavy_light_split(&top, &sq, s, 0.02);
    println!(
        "split: {:?}, threshold {:.2}, heavy {}, light {}, bound {:.1}, ratio {:.4}",
        start.elapsed(),
        split.threshold,
        split.heavy.len(),
        split.light.len(),
        split.heavy_bound,
        split.heavy_ratio
    );
    let start = Instant::now();
    let mut worst_ratio = 0.0f64;
    for t in &top {
        worst_ratio = worst_ratio.max(per_tube_heavy_count(&top, &split, &sq, t).ratio);
    }
    println!("per-tube: {:?}, worst ratio {:.4}", start.elapsed(), worst_ratio);
}

#[test]
#[ignore]
fn probe_decouple_4096() {
    let curve = make_curve::<f64>(CurveKind::Parabola, &[], 64).unwrap();
    for &r in &[256.0, 1024.0, 4096.0] {
        let grid = build_cap_grid(&curve, r).unwrap();
        let f = CapFunction::unit_ensemble(grid);
        let start = Instant::now();
        let ratio = decoupling_ratio(&f, DecouplingSide::Local, 0.125).unwrap();
        println!("decouple R={r}: {:?} ratio {:.4}", start.elapsed(), ratio.ratio);
    }
}
