//! Grid evaluation of the spectra and CSV export.

use std::f64::consts::FRAC_PI_2;
use std::io::{self, Write};

use rayon::prelude::*;

use eit_noise::analytic::{closed_form_spectra, ClosedFormContext};
use eit_noise::propagate::{uncertainty_product, CovarianceMap};
use eit_noise::{Beam, DriveState, MediumParams, Simulation, SystemOrdering};

use crate::config::{Mode, SweepConfig};

pub const HEADER: &str = "omega_over_gamma,z_C_over_gamma,theta,beam,s_analytic,s_numeric,abs_diff";

const UNCERTAINTY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SweepError {
    #[error("configuration: {0}")]
    Config(String),
    #[error("numerical failure at omega = {omega:?}, z = {z:?}: {msg}")]
    Numerical {
        omega: Option<f64>,
        z: Option<f64>,
        msg: String,
    },
}

fn numerical(omega: Option<f64>, z: Option<f64>, msg: impl ToString) -> SweepError {
    SweepError::Numerical {
        omega,
        z,
        msg: msg.to_string(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Record {
    pub omega: f64,
    pub z: f64,
    pub theta: f64,
    pub beam: Beam,
    pub s_analytic: Option<f64>,
    pub s_numeric: Option<f64>,
}

impl Record {
    pub fn abs_diff(&self) -> Option<f64> {
        Some((self.s_analytic? - self.s_numeric?).abs())
    }
}

fn field(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.16e}")).unwrap_or_default()
}

pub fn write_csv<W: Write>(records: &[Record], mut out: W) -> io::Result<()> {
    writeln!(out, "{HEADER}")?;
    for r in records {
        writeln!(
            out,
            "{:.16e},{:.16e},{:.16e},{},{},{},{}",
            r.omega,
            r.z,
            r.theta,
            r.beam.number(),
            field(r.s_analytic),
            field(r.s_numeric),
            field(r.abs_diff())
        )?;
    }
    Ok(())
}

/// Everything that is fixed across the frequency grid.
pub struct Prepared {
    pub params: MediumParams,
    pub drive: DriveState,
    pub closed_form: Option<ClosedFormContext>,
    pub simulation: Option<Simulation>,
}

impl Prepared {
    pub fn new(cfg: &SweepConfig) -> Result<Self, SweepError> {
        let params = cfg.medium().map_err(|e| SweepError::Config(e.to_string()))?;
        let drive = cfg.drive().map_err(|e| SweepError::Config(e.to_string()))?;

        let closed_form = match cfg.mode {
            Mode::Numeric => None,
            Mode::Decoherence => {
                let ideal = params.with_gamma12(0.0).map_err(|e| numerical(None, None, e))?;
                Some(ClosedFormContext::new(&drive, &ideal).map_err(|e| numerical(None, None, e))?)
            }
            Mode::Analytic | Mode::Compare => {
                Some(ClosedFormContext::new(&drive, &params).map_err(|e| numerical(None, None, e))?)
            }
        };
        let simulation = match cfg.mode {
            Mode::Analytic => None,
            _ => {
                let mut sim = Simulation::new(&params, &drive).map_err(|e| numerical(None, None, e))?;
                if cfg.test_diffusion_offset != 0.0 {
                    let mut block = sim.block().clone();
                    // <f_x f_x*> grows by the offset for every atomic variable.
                    for k in 0..8 {
                        let conj = SystemOrdering::conjugate(k + 2).expect("atomic index") - 2;
                        block.diff[(k, conj)] += cfg.test_diffusion_offset;
                    }
                    sim = sim.with_block(block);
                }
                Some(sim)
            }
        };
        Ok(Self {
            params,
            drive,
            closed_form,
            simulation,
        })
    }

    /// Internal length of one `gamma / C` unit.
    fn length_unit(&self) -> f64 {
        match (&self.simulation, &self.closed_form) {
            (Some(s), _) => s.length_unit(),
            (None, Some(c)) => c.length_unit(),
            (None, None) => unreachable!("every mode evaluates at least one path"),
        }
    }
}

fn check_uncertainty(product: f64, omega: f64, z: f64) -> Result<(), SweepError> {
    if product >= 1.0 - UNCERTAINTY_TOL {
        Ok(())
    } else {
        Err(numerical(
            Some(omega),
            Some(z),
            format!("quadrature uncertainty product {product} below 1"),
        ))
    }
}

fn analytic_value(ctx: &ClosedFormContext, z: f64, omega: f64, theta: f64, beam: Beam) -> f64 {
    let (s1, s2) = closed_form_spectra(z, omega, ctx, theta);
    match beam {
        Beam::Pump => s1,
        Beam::Probe => s2,
    }
}

fn block_for_omega(prep: &Prepared, cfg: &SweepConfig, omega: f64) -> Result<Vec<Record>, SweepError> {
    let unit = prep.length_unit();
    let map: Option<CovarianceMap> = match &prep.simulation {
        Some(sim) => Some(sim.propagate(omega, &cfg.z).map_err(|e| numerical(Some(omega), None, e))?),
        None => None,
    };

    let mut records = Vec::with_capacity(cfg.z.len() * cfg.theta.len() * 2);
    for (k, &z) in cfg.z.iter().enumerate() {
        for &theta in &cfg.theta {
            for beam in Beam::BOTH {
                let s_numeric = match &map {
                    Some(m) => {
                        let sigma = &m.sigma[k];
                        let s = eit_noise::propagate::spectrum(sigma, theta, beam)
                            .map_err(|e| numerical(Some(omega), Some(z), e))?;
                        let product =
                            uncertainty_product(sigma, theta, beam).map_err(|e| numerical(Some(omega), Some(z), e))?;
                        check_uncertainty(product, omega, z)?;
                        Some(s)
                    }
                    None => None,
                };
                let s_analytic = match &prep.closed_form {
                    Some(ctx) => {
                        let zi = z * unit;
                        let s = analytic_value(ctx, zi, omega, theta, beam);
                        if s_numeric.is_none() {
                            let product = s * analytic_value(ctx, zi, omega, theta + FRAC_PI_2, beam);
                            check_uncertainty(product, omega, z)?;
                        }
                        Some(s)
                    }
                    None => None,
                };
                for v in [s_analytic, s_numeric].into_iter().flatten() {
                    if !v.is_finite() {
                        return Err(numerical(Some(omega), Some(z), "non-finite spectrum"));
                    }
                }
                records.push(Record {
                    omega,
                    z,
                    theta,
                    beam,
                    s_analytic,
                    s_numeric,
                });
            }
        }
    }
    Ok(records)
}

/// Evaluate the configured grid. Rows are ordered by frequency, then
/// position, quadrature angle and beam, independent of thread scheduling.
pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<Record>, SweepError> {
    run_prepared(&Prepared::new(cfg)?, cfg)
}

pub fn run_prepared(prep: &Prepared, cfg: &SweepConfig) -> Result<Vec<Record>, SweepError> {
    let blocks: Vec<Result<Vec<Record>, SweepError>> =
        cfg.omega.par_iter().map(|&w| block_for_omega(prep, cfg, w)).collect();
    let mut records = Vec::with_capacity(cfg.omega.len() * cfg.z.len() * cfg.theta.len() * 2);
    for block in blocks {
        records.extend(block?);
    }
    Ok(records)
}
