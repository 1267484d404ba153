//! Summary statistics for analytic/numeric comparisons and the length-scale
//! table.

use std::io::{self, Write};

use rayon::prelude::*;

use eit_noise::analytic::{length_scales, peak_positions, resonance_p, ClosedFormContext};
use eit_noise::transfer::eigen_report;

use crate::config::{Mode, SweepConfig};
use crate::sweep::{run_prepared, Prepared, Record, SweepError};

#[derive(Debug, Clone, PartialEq)]
pub struct CompareReport {
    pub points: usize,
    pub max_abs: f64,
    pub mean_abs: f64,
    pub max_rel: f64,
    pub mean_rel: f64,
    /// Worst `(omega, z)` in relative terms.
    pub worst_at: (f64, f64),
    pub eigen_points: usize,
    pub eigen_degenerate: usize,
    pub eigen_max_rel: f64,
    pub tolerance: f64,
    pub eigen_tolerance: f64,
}

impl CompareReport {
    pub fn within_tolerance(&self) -> bool {
        self.max_rel <= self.tolerance && self.eigen_max_rel <= self.eigen_tolerance
    }

    pub fn write<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "points={}", self.points)?;
        writeln!(out, "max_abs_deviation={:.16e}", self.max_abs)?;
        writeln!(out, "mean_abs_deviation={:.16e}", self.mean_abs)?;
        writeln!(out, "max_rel_deviation={:.16e}", self.max_rel)?;
        writeln!(out, "mean_rel_deviation={:.16e}", self.mean_rel)?;
        writeln!(out, "worst_omega_over_gamma={:.16e}", self.worst_at.0)?;
        writeln!(out, "worst_z_C_over_gamma={:.16e}", self.worst_at.1)?;
        writeln!(out, "eigen_points={}", self.eigen_points)?;
        writeln!(out, "eigen_degenerate={}", self.eigen_degenerate)?;
        writeln!(out, "eigen_max_rel_deviation={:.16e}", self.eigen_max_rel)?;
        writeln!(out, "tolerance={:.16e}", self.tolerance)?;
        writeln!(out, "eigen_tolerance={:.16e}", self.eigen_tolerance)?;
        writeln!(out, "status={}", if self.within_tolerance() { "pass" } else { "fail" })
    }
}

fn eigen_deviation(prep: &Prepared, ctx: &ClosedFormContext, omega: f64) -> Result<Option<f64>, SweepError> {
    let sim = prep.simulation.as_ref().expect("compare mode runs the numeric path");
    let g = sim.generator(omega).map_err(|e| SweepError::Numerical {
        omega: Some(omega),
        z: None,
        msg: e.to_string(),
    })?;
    let rep = eigen_report(&g);
    if rep.degenerate {
        return Ok(None);
    }
    let half_absorption = ctx.params.gamma() * resonance_p(omega, 0.0, ctx) / 2.0;
    let oscillation = resonance_p(omega, ctx.drive.omega_total(), ctx) * omega.abs();
    let err = (rep.absorption_rate / 2.0 - half_absorption).hypot(rep.oscillation_rate - oscillation);
    Ok(Some(err / half_absorption.hypot(oscillation)))
}

/// Run the grid in comparison mode and summarize the deviations together
/// with the bright-mode eigenvalue check.
pub fn compare_report(cfg: &SweepConfig) -> Result<(CompareReport, Vec<Record>), SweepError> {
    if cfg.mode != Mode::Compare {
        return Err(SweepError::Config(format!("comparison needs mode compare, got {}", cfg.mode)));
    }
    let prep = Prepared::new(cfg)?;
    let records = run_prepared(&prep, cfg)?;
    let (mut max_abs, mut sum_abs, mut max_rel, mut sum_rel) = (0.0_f64, 0.0, 0.0_f64, 0.0);
    let mut worst_at = (f64::NAN, f64::NAN);
    for r in &records {
        let (a, n) = (r.s_analytic.unwrap_or(f64::NAN), r.s_numeric.unwrap_or(f64::NAN));
        let abs = (a - n).abs();
        let rel = abs / a.abs().max(f64::MIN_POSITIVE);
        sum_abs += abs;
        sum_rel += rel;
        max_abs = max_abs.max(abs);
        if rel > max_rel || worst_at.0.is_nan() {
            max_rel = max_rel.max(rel);
            worst_at = (r.omega, r.z);
        }
    }
    let count = records.len().max(1) as f64;

    let ctx = prep.closed_form.expect("compare mode evaluates the closed form");
    let eig: Vec<Result<Option<f64>, SweepError>> =
        cfg.omega.par_iter().map(|&w| eigen_deviation(&prep, &ctx, w)).collect();
    let (mut eigen_points, mut eigen_degenerate, mut eigen_max_rel) = (0, 0, 0.0_f64);
    for e in eig {
        eigen_points += 1;
        match e? {
            Some(d) => eigen_max_rel = eigen_max_rel.max(d),
            None => eigen_degenerate += 1,
        }
    }

    let report = CompareReport {
        points: records.len(),
        max_abs,
        mean_abs: sum_abs / count,
        max_rel,
        mean_rel: sum_rel / count,
        worst_at,
        eigen_points,
        eigen_degenerate,
        eigen_max_rel,
        tolerance: cfg.tolerance,
        eigen_tolerance: cfg.eigen_tolerance,
    };
    Ok((report, records))
}

/// Length scales (in `gamma / C`) over the frequency grid and peak positions.
pub fn write_scales<W: Write>(cfg: &SweepConfig, mut out: W) -> Result<(), SweepError> {
    let params = cfg.medium().map_err(|e| SweepError::Config(e.to_string()))?;
    let drive = cfg.drive().map_err(|e| SweepError::Config(e.to_string()))?;
    let ideal = params.with_gamma12(0.0).map_err(|e| SweepError::Config(e.to_string()))?;
    let ctx = ClosedFormContext::new(&drive, &ideal).map_err(|e| SweepError::Numerical {
        omega: None,
        z: None,
        msg: e.to_string(),
    })?;
    let io = |e: io::Error| SweepError::Config(format!("cannot write output: {e}"));
    let peaks = peak_positions(&ctx);
    writeln!(out, "# mean_value_peak_over_gamma={:.16e}", peaks.mean_value_peak).map_err(io)?;
    writeln!(out, "# fluctuation_peak_over_gamma={:.16e}", peaks.fluctuation_peak).map_err(io)?;
    writeln!(out, "omega_over_gamma,z_abs_C_over_gamma,z_osc_C_over_gamma,z_max_transfer_C_over_gamma").map_err(io)?;
    for &w in &cfg.omega {
        let s = length_scales(w, &ctx).scaled(&ctx);
        writeln!(out, "{w:.16e},{:.16e},{:.16e},{:.16e}", s.z_abs, s.z_osc, s.z_max_transfer).map_err(io)?;
    }
    Ok(())
}
