//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

mod common;

use common::{linspace, Reference};
use eit_noise::analytic::{asymptotic_spectra, closed_form_spectra, f_factor, length_scales, ClosedFormContext};
use eit_noise::langevin::{second_moment_residual, FluctuationBlock};
use eit_noise::steady_state::{dark_state, steady_state_numeric};
use eit_noise::transfer::eigen_report;
use eit_noise::{build_drive_from_rabi, max_abs, simulate_decoherence, Beam, MediumParams, Simulation};
use num_complex::Complex64 as C64;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};
use std::process::ExitCode;
use std::time::Instant;

struct Outcome {
    pass: bool,
    detail: String,
}

fn standard_medium() -> MediumParams {
    MediumParams::symmetric(1.0 / 60.0, 3600.0).unwrap()
}

fn sim(p: &MediumParams, o1: f64, o2: f64, xi: f64, theta: f64) -> Simulation {
    Simulation::new(p, &build_drive_from_rabi(p, o1, o2, xi, theta).unwrap()).unwrap()
}

fn omega_grid() -> Vec<f64> {
    linspace(0.05, 1.0, 20)
}

fn z_grid() -> Vec<f64> {
    linspace(0.0, 200.0, 100)
}

fn boundary_values() -> Outcome {
    let p = standard_medium();
    let d = build_drive_from_rabi(&p, 1.0, 1.0, -3.0, 0.0).unwrap();
    let ctx = ClosedFormContext::new(&d, &p).unwrap();
    let s = Simulation::new(&p, &d).unwrap();
    let target = (-6f64).exp();
    let mut worst = 0.0_f64;
    for w in omega_grid() {
        let (a1, a2) = closed_form_spectra(0.0, w, &ctx, 0.0);
        let map = s.propagate(w, &[0.0]).unwrap();
        for err in [a1 - 1.0, a2 - target, map.s1[0] - 1.0, map.s2[0] - target] {
            worst = worst.max(err.abs());
        }
    }
    Outcome {
        pass: worst <= 1e-9,
        detail: format!("max |S(0) - (1, e^(2 xi))| = {worst:.2e} (tol 1e-9)"),
    }
}

fn equivalence() -> Outcome {
    let p = standard_medium();
    let d = build_drive_from_rabi(&p, 1.0, 1.0, -3.0, 0.0).unwrap();
    let ctx = ClosedFormContext::new(&d, &p).unwrap();
    let s = Simulation::new(&p, &d).unwrap();
    let start = Instant::now();
    let mut worst = 0.0_f64;
    for w in omega_grid() {
        let map = s.propagate(w, &z_grid()).unwrap();
        for (k, z) in z_grid().iter().enumerate() {
            let (a1, a2) = closed_form_spectra(z * ctx.length_unit(), w, &ctx, 0.0);
            worst = worst.max((map.s1[k] - a1).abs()).max((map.s2[k] - a2).abs());
        }
    }
    let secs = start.elapsed().as_secs_f64();
    Outcome {
        pass: worst <= 1e-3 && secs < 60.0,
        detail: format!("max |S_num - S_an| = {worst:.2e} over 20x100 grid (tol 1e-3), {secs:.2}s"),
    }
}

fn eigenvalue_identity() -> Outcome {
    let p = standard_medium();
    let mut worst = 0.0_f64;
    let mut count_ok = true;
    for (o1, o2) in [(1.0, 1.0), (1.0, 2.0), (0.5, 1.5)] {
        let s = sim(&p, o1, o2, 0.0, 0.0);
        let r = Reference::standard(0.0, 0.0).with_rabi(o1, o2);
        let om = (o1 * o1 + o2 * o2).sqrt();
        for w in omega_grid() {
            let g = s.generator(w).unwrap();
            let bright: Vec<C64> = g.eigen.iter().copied().filter(|l| l.norm() > 1e-10).collect();
            count_ok &= bright.len() == 2;
            for l in bright {
                let target = C64::new(-r.gamma * r.p(w, 0.0) / 2.0, (r.p(w, om) * w).copysign(l.im));
                worst = worst.max((l - target).norm() / target.norm());
            }
        }
    }
    Outcome {
        pass: count_ok && worst <= 1e-6,
        detail: format!("max relative eigenvalue error = {worst:.2e} (tol 1e-6), two nonzero eigenvalues: {count_ok}"),
    }
}

fn position_checks() -> Outcome {
    let p = standard_medium();
    let d = build_drive_from_rabi(&p, 1.0, 1.0, -3.0, 0.0).unwrap();
    let ctx = ClosedFormContext::new(&d, &p).unwrap();
    let s = Simulation::new(&p, &d).unwrap();
    let w = 0.25;
    let r = Reference::standard(-3.0, 0.0);

    let scales = length_scales(w, &ctx).scaled(&ctx);
    let oracle_transfer = FRAC_PI_2 * r.z_osc(w) / r.unit();
    let oracle_abs = r.z_abs(w) / r.unit();

    // First maximum of the transfer: first minimum of the pump spectrum.
    let z = linspace(0.0, 60.0, 6001);
    let map = s.propagate(w, &z).unwrap();
    let k = (1..z.len() - 1)
        .find(|&k| map.s1[k] <= map.s1[k - 1] && map.s1[k] < map.s1[k + 1])
        .unwrap_or(0);
    let numeric_transfer = z[k];
    let numeric_abs = 1.0 / eigen_report(&s.generator(w).unwrap()).absorption_rate / s.length_unit();

    let quoted_abs = 64.0;
    let gap = (numeric_abs - quoted_abs) / quoted_abs * 100.0;
    let pass = (numeric_transfer - 24.45).abs() <= 1.0
        && (scales.z_max_transfer - 24.45).abs() <= 1.0
        && (scales.z_max_transfer - oracle_transfer).abs() < 1e-9
        && (numeric_abs - 60.3).abs() <= 0.5
        && (scales.z_abs - oracle_abs).abs() < 1e-9;
    Outcome {
        pass,
        detail: format!(
            "transfer max at zC/gamma = {numeric_transfer:.2} numeric, {:.2} closed form (target 24.45 +- 1, quoted ~25); \
             z_abs C/gamma = {numeric_abs:.2} (target 60.3 +- 0.5); DISCREPANCY FLAGGED: quoted ~64 differs by {gap:+.1}%",
            scales.z_max_transfer
        ),
    }
}

fn ratio_check() -> Outcome {
    let p = standard_medium();
    let s = sim(&p, 1.0, 1.0, 0.0, 0.0);
    let rep = eigen_report(&s.generator(0.1).unwrap());
    let z_abs = 1.0 / rep.absorption_rate;
    let z_osc = 2.0 / rep.oscillation_rate;
    let ratio = z_abs / z_osc;
    let r = Reference::standard(0.0, 0.0);
    let oracle = r.z_abs(0.1) / r.z_osc(0.1);
    Outcome {
        pass: (ratio - 9.95).abs() <= 0.05 && (ratio - oracle).abs() < 1e-6,
        detail: format!("z_abs/z_osc at omega = 0.1 gamma: {ratio:.4} (target 9.95 +- 0.05)"),
    }
}

fn sum_conservation() -> Outcome {
    let p = standard_medium();
    let mut worst = 0.0_f64;
    for (o1, o2) in [(1.0, 1.0), (1.0, 2.0), (0.5, 1.5)] {
        for (xi, theta) in [(-3.0, 0.0), (-3.0, FRAC_PI_4), (-1.0, FRAC_PI_2), (2.0, 0.3)] {
            let s = sim(&p, o1, o2, xi, theta);
            let r = Reference::standard(xi, theta).with_rabi(o1, o2);
            let f = f_factor(xi, theta);
            for w in omega_grid() {
                let z_max = 0.999e-3 / (r.gamma * r.p(w, 0.0)) / r.unit();
                let map = s.propagate(w, &linspace(0.0, z_max, 5)).unwrap();
                for k in 0..5 {
                    let rel = (map.s1[k] + map.s2[k] - (2.0 - f)).abs() / f.abs();
                    worst = worst.max(rel);
                }
            }
        }
    }
    let d = build_drive_from_rabi(&p, 1.3, 1.3, -3.0, 0.4).unwrap();
    let (a1, a2) = asymptotic_spectra(&ClosedFormContext::new(&d, &p).unwrap(), 0.4);
    Outcome {
        pass: worst <= 0.01 && a1 == a2,
        detail: format!(
            "max |S1+S2-(2-f)|/|f| = {worst:.2e} for gamma P z < 1e-3 (tol 1e-2); S1(inf) == S2(inf) at equal drives: {}",
            a1 == a2
        ),
    }
}

fn strong_pump() -> Outcome {
    let p = standard_medium();
    let s = sim(&p, 1.0, 1e-3, -3.0, 0.0);
    let r = Reference::standard(-3.0, 0.0).with_rabi(1.0, 1e-3);
    let (mut pump_dev, mut rate_dev) = (0.0_f64, 0.0_f64);
    for w in omega_grid() {
        let z_abs = r.z_abs(w) / r.unit();
        let map = s.propagate(w, &[0.0, 0.5 * z_abs, z_abs]).unwrap();
        for v in &map.s1 {
            pump_dev = pump_dev.max((v - 1.0).abs());
        }
        let excess = |v: f64| (1.0 - v) / r.f();
        let rate = -(excess(map.s2[2]) / excess(map.s2[0])).ln() / (z_abs * r.unit());
        let expected = r.gamma * r.p(w, 0.0);
        rate_dev = rate_dev.max((rate - expected).abs() / expected);
    }
    Outcome {
        pass: pump_dev <= 1e-5 && rate_dev <= 1e-5,
        detail: format!("max |S1 - 1| = {pump_dev:.2e}, probe decay rate relative error = {rate_dev:.2e} (tol 1e-5)"),
    }
}

fn coherent_invariance() -> Outcome {
    let mut worst = 0.0_f64;
    for (g, n) in [(1.0 / 60.0, 3600.0), (0.05, 900.0)] {
        let p = MediumParams::symmetric(g, n).unwrap();
        for (o1, o2) in [(1.0, 1.0), (1.0, 2.0), (0.5, 1.5), (1.0, 1e-3)] {
            let s = sim(&p, o1, o2, 0.0, 0.0);
            for w in omega_grid() {
                let map = s.propagate(w, &z_grid()).unwrap();
                for theta in [0.0, FRAC_PI_4, FRAC_PI_2] {
                    for beam in Beam::BOTH {
                        for v in map.spectra_at(theta, beam).unwrap() {
                            worst = worst.max((v - 1.0).abs());
                        }
                    }
                }
            }
        }
    }
    Outcome {
        pass: worst <= 1e-9,
        detail: format!("max |S - 1| for coherent inputs = {worst:.2e} (tol 1e-9)"),
    }
}

fn decoherence() -> Outcome {
    let ideal_params = standard_medium();
    let dephased = standard_medium().with_gamma12(1.0 / 500.0).unwrap();
    let xi = -3.0;
    let w = 0.25;
    let d = build_drive_from_rabi(&ideal_params, 1.0, 1.0, xi, 0.0).unwrap();
    let z = linspace(0.0, 100.0, 2001);

    let ideal = simulate_decoherence(&ideal_params, &d, w, &z).unwrap();
    let noisy = simulate_decoherence(&dephased, &d, w, &z).unwrap();
    let (mut sup, mut at) = (0.0_f64, 0.0);
    for ((zk, a), b) in z.iter().zip(&noisy.s2).zip(&ideal.s2) {
        let dev = (a - b).abs();
        if dev > sup {
            sup = dev;
            at = *zk;
        }
    }
    let bound = 0.1 * (1.0 - (2.0 * xi).exp());

    // With no dephasing the decoherence pipeline must be the ideal one.
    let s = Simulation::new(&ideal_params, &d).unwrap();
    let mut identical = true;
    for w in omega_grid() {
        let a = simulate_decoherence(&ideal_params, &d, w, &z_grid()).unwrap();
        let b = s.propagate(w, &z_grid()).unwrap();
        identical &= a == b;
    }
    Outcome {
        pass: sup < bound && identical,
        detail: format!(
            "sup |S2(G12=gamma/500) - S2(ideal)| = {sup:.4} at zC/gamma = {at:.2} (bound {bound:.5}); \
             G12 = 0 reduces exactly to the ideal pipeline: {identical}"
        ),
    }
}

fn oracle_agreement() -> Outcome {
    let p = standard_medium();
    let mut state_err = 0.0_f64;
    for (o1, o2) in [(1.0, 1.0), (1.0, 2.0), (0.5, 1.5), (1.0, 1e-3)] {
        let d = build_drive_from_rabi(&p, o1, o2, 0.0, 0.0).unwrap();
        let a = dark_state(&d).unwrap().density_matrix();
        let b = steady_state_numeric(&d, &p).unwrap().density_matrix();
        state_err = state_err.max(max_abs(&(a - b)));
    }
    let mut residual = 0.0_f64;
    for g12 in [0.0, 1.0 / 500.0] {
        let q = standard_medium().with_gamma12(g12).unwrap();
        for (o1, o2) in [(1.0, 1.0), (1.0, 2.0)] {
            let d = build_drive_from_rabi(&q, o1, o2, 0.0, 0.0).unwrap();
            let m = steady_state_numeric(&d, &q).unwrap();
            let b = FluctuationBlock::assemble(&m, &d, &q).unwrap();
            residual = residual.max(second_moment_residual(&m, &b));
        }
    }
    Outcome {
        pass: state_err <= 1e-12 && residual <= 1e-10,
        detail: format!(
            "dark vs numeric steady state = {state_err:.2e} (tol 1e-12); second-moment residual = {residual:.2e} (tol 1e-10)"
        ),
    }
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("boundary values", boundary_values),
        ("analytic-numeric equivalence", equivalence),
        ("eigenvalue identity", eigenvalue_identity),
        ("position checks at omega = 0.25 gamma", position_checks),
        ("absorption/oscillation ratio", ratio_check),
        ("sum conservation", sum_conservation),
        ("strong-pump reduction", strong_pump),
        ("coherent invariance", coherent_invariance),
        ("decoherence deviation", decoherence),
        ("oracle agreement", oracle_agreement),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let out = check();
        if !out.pass {
            failed += 1;
        }
        println!("{} criterion {:>2} {name}: {}", if out.pass { "PASS" } else { "FAIL" }, k + 1, out.detail);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
