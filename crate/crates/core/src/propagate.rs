//! Propagation of the field fluctuation covariance along the medium and
//! extraction of quadrature noise spectra.
//!
//! `Sigma = <v v^dag>` with `v = (d alpha1, d alpha2, d alpha1*, d alpha2*)` at one
//! sideband frequency, normally ordered and measured relative to the vacuum
//! level, so a coherent state has `Sigma = 0` and `S = 1`.

use nalgebra::{Matrix4, SMatrix};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::langevin::FluctuationBlock;
use crate::model::{c_prefactor, Beam, DriveState, MediumParams};
use crate::steady_state::{mean_values, MeanValues};
use crate::transfer::{field_generator, FieldGenerator};

pub type Covariance = Matrix4<C64>;

const IMAGINARY_TOL: f64 = 1e-10;
/// Largest `|A|_inf * h` per exponential sub-step.
const MAX_STEP_NORM: f64 = 0.5;

/// Normally ordered covariance of broadband squeezed inputs.
///
/// Sign convention: `S_j(theta = 0) = e^{2 xi_j}` at the input.
pub fn input_covariance(drive: &DriveState) -> Result<Covariance> {
    let mut sigma = Covariance::zeros();
    for beam in Beam::BOTH {
        let xi = drive.xi(beam);
        if !xi.is_finite() {
            return Err(Error::InvalidParameter(format!("squeezing must be finite, got {xi}")));
        }
        let j = beam.slot();
        let photons = C64::from(xi.sinh().powi(2));
        let pairs = C64::from(xi.cosh() * xi.sinh());
        sigma[(j, j)] = photons;
        sigma[(j + 2, j + 2)] = photons;
        sigma[(j, j + 2)] = pairs;
        sigma[(j + 2, j)] = pairs;
    }
    Ok(sigma)
}

/// Quadrature noise spectrum of one beam, vacuum level 1.
pub fn spectrum(sigma: &Covariance, theta: f64, beam: Beam) -> Result<f64> {
    let j = beam.slot();
    let phase = C64::from_polar(1.0, -2.0 * theta);
    let s = C64::from(1.0)
        + phase * sigma[(j, j + 2)]
        + phase.conj() * sigma[(j + 2, j)]
        + sigma[(j, j)]
        + sigma[(j + 2, j + 2)];
    if !s.re.is_finite() || s.im.abs() > IMAGINARY_TOL * s.re.abs().max(1.0) {
        return Err(Error::ImaginaryResidue(s.im));
    }
    Ok(s.re)
}

/// `S(theta) S(theta + pi/2)`, bounded below by one for physical states.
pub fn uncertainty_product(sigma: &Covariance, theta: f64, beam: Beam) -> Result<f64> {
    Ok(spectrum(sigma, theta, beam)? * spectrum(sigma, theta + std::f64::consts::FRAC_PI_2, beam)?)
}

/// Covariance and spectra along the medium at one sideband frequency.
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceMap {
    pub omega: f64,
    pub theta: f64,
    /// Positions in internal length units.
    pub z_grid: Vec<f64>,
    pub sigma: Vec<Covariance>,
    pub s1: Vec<f64>,
    pub s2: Vec<f64>,
}

impl CovarianceMap {
    pub fn spectra(&self, beam: Beam) -> &[f64] {
        match beam {
            Beam::Pump => &self.s1,
            Beam::Probe => &self.s2,
        }
    }

    /// Spectra of another quadrature at the recorded positions.
    pub fn spectra_at(&self, theta: f64, beam: Beam) -> Result<Vec<f64>> {
        self.sigma.iter().map(|s| spectrum(s, theta, beam)).collect()
    }
}

/// One exact step `Sigma -> Phi Sigma Phi^dag + Q` of length `h`.
fn lyapunov_step(a: &Matrix4<C64>, n: &Matrix4<C64>, h: f64) -> (Matrix4<C64>, Matrix4<C64>) {
    let mut m = SMatrix::<C64, 8, 8>::zeros();
    m.fixed_view_mut::<4, 4>(0, 0).copy_from(a);
    m.fixed_view_mut::<4, 4>(0, 4).copy_from(n);
    m.fixed_view_mut::<4, 4>(4, 4).copy_from(&(-a.adjoint()));
    let e = (m * C64::from(h)).exp();
    let phi: Matrix4<C64> = e.fixed_view::<4, 4>(0, 0).into();
    let q: Matrix4<C64> = e.fixed_view::<4, 4>(0, 4) * phi.adjoint();
    (phi, (q + q.adjoint()) * C64::from(0.5))
}

/// Solve `dSigma/dz = A Sigma + Sigma A^dag + N` from `z = 0`, recording at
/// each point of the ascending, non-negative `z_grid`.
pub fn propagate_covariance(
    sigma0: &Covariance,
    generator: &FieldGenerator,
    z_grid: &[f64],
    theta: f64,
) -> Result<CovarianceMap> {
    let a = &generator.a_mat;
    let n = &generator.n_mat;
    let norm = a.row_iter().map(|r| r.iter().map(|z| z.norm()).sum::<f64>()).fold(0.0, f64::max);

    let mut sigma = *sigma0;
    let mut z_prev = 0.0;
    let mut cached: Option<(f64, Matrix4<C64>, Matrix4<C64>)> = None;
    let mut map = CovarianceMap {
        omega: generator.omega,
        theta,
        z_grid: Vec::with_capacity(z_grid.len()),
        sigma: Vec::with_capacity(z_grid.len()),
        s1: Vec::with_capacity(z_grid.len()),
        s2: Vec::with_capacity(z_grid.len()),
    };

    for &z in z_grid {
        if !z.is_finite() || z < z_prev {
            return Err(Error::Integration {
                z,
                reason: "positions must be finite, non-negative and ascending".into(),
            });
        }
        let h = z - z_prev;
        if h > 0.0 {
            let steps = ((norm * h / MAX_STEP_NORM).ceil() as usize).max(1);
            let hs = h / steps as f64;
            let (phi, q) = match cached {
                Some((hc, phi, q)) if hc == hs => (phi, q),
                _ => {
                    let (phi, q) = lyapunov_step(a, n, hs);
                    cached = Some((hs, phi, q));
                    (phi, q)
                }
            };
            for _ in 0..steps {
                sigma = phi * sigma * phi.adjoint() + q;
            }
            sigma = (sigma + sigma.adjoint()) * C64::from(0.5);
        }
        if sigma.iter().any(|x| !x.is_finite()) {
            return Err(Error::Integration {
                z,
                reason: "non-finite covariance".into(),
            });
        }
        let s1 = spectrum(&sigma, theta, Beam::Pump).map_err(|e| Error::Integration { z, reason: e.to_string() })?;
        let s2 = spectrum(&sigma, theta, Beam::Probe).map_err(|e| Error::Integration { z, reason: e.to_string() })?;
        map.z_grid.push(z);
        map.sigma.push(sigma);
        map.s1.push(s1);
        map.s2.push(s2);
        z_prev = z;
    }
    Ok(map)
}

/// Full numeric pipeline for one parameter set: mean values, linearized
/// atomic block and field generators on demand.
#[derive(Debug, Clone)]
pub struct Simulation {
    params: MediumParams,
    drive: DriveState,
    mean: MeanValues,
    block: FluctuationBlock,
    c_prefactor: f64,
}

impl Simulation {
    /// Uses the closed-form dark state when `gamma12 = 0` and the numeric
    /// steady state otherwise.
    pub fn new(params: &MediumParams, drive: &DriveState) -> Result<Self> {
        let mean = mean_values(drive, params)?;
        Self::with_mean(params, drive, mean)
    }

    pub fn with_mean(params: &MediumParams, drive: &DriveState, mean: MeanValues) -> Result<Self> {
        let block = FluctuationBlock::assemble(&mean, drive, params)?;
        let c_prefactor = c_prefactor(params, drive);
        if c_prefactor.is_nan() || c_prefactor <= 0.0 {
            return Err(Error::InvalidParameter("resonance prefactor must be positive".into()));
        }
        Ok(Self {
            params: *params,
            drive: *drive,
            mean,
            block,
            c_prefactor,
        })
    }

    /// Replace the fluctuation block, e.g. to inject a perturbed diffusion.
    pub fn with_block(mut self, block: FluctuationBlock) -> Self {
        self.block = block;
        self
    }

    pub fn params(&self) -> &MediumParams {
        &self.params
    }

    pub fn drive(&self) -> &DriveState {
        &self.drive
    }

    pub fn mean(&self) -> &MeanValues {
        &self.mean
    }

    pub fn block(&self) -> &FluctuationBlock {
        &self.block
    }

    pub fn c_prefactor(&self) -> f64 {
        self.c_prefactor
    }

    /// Internal length of one `gamma / C` unit.
    pub fn length_unit(&self) -> f64 {
        self.params.gamma() / self.c_prefactor
    }

    pub fn generator(&self, omega: f64) -> Result<FieldGenerator> {
        field_generator(&self.block, &self.params, omega)
    }

    /// Propagate the squeezed input to positions given in `gamma / C` units.
    pub fn propagate(&self, omega: f64, z_scaled: &[f64]) -> Result<CovarianceMap> {
        let generator = self.generator(omega)?;
        let unit = self.length_unit();
        let z: Vec<f64> = z_scaled.iter().map(|u| u * unit).collect();
        propagate_covariance(&input_covariance(&self.drive)?, &generator, &z, self.drive.theta())
    }
}

/// Full pipeline including ground-state decoherence; positions in `gamma / C`.
///
/// With `gamma12 = 0` this is exactly the ideal dark-state pipeline.
pub fn simulate_decoherence(
    params: &MediumParams,
    drive: &DriveState,
    omega: f64,
    z_scaled: &[f64],
) -> Result<CovarianceMap> {
    Simulation::new(params, drive)?.propagate(omega, z_scaled)
}
