//! Closed-form noise spectra for a coherent pump and a squeezed probe in the
//! ideal dark state, together with the derived length and frequency scales.
//!
//! All lengths are internal; divide by [`ClosedFormContext::length_unit`] to
//! express them in units of `gamma / C`.

use crate::error::{Error, Result};
use crate::model::{c_prefactor, DriveState, MediumParams};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedFormContext {
    pub drive: DriveState,
    pub params: MediumParams,
    /// `C = N (g1^2 Omega2^2 + g2^2 Omega1^2) / (c Omega^2)`
    pub c_prefactor: f64,
}

impl ClosedFormContext {
    pub fn new(drive: &DriveState, params: &MediumParams) -> Result<Self> {
        let c = c_prefactor(params, drive);
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "resonance prefactor must be positive and finite, got {c}"
            )));
        }
        Ok(Self {
            drive: *drive,
            params: *params,
            c_prefactor: c,
        })
    }

    /// Internal length of one `gamma / C` unit.
    pub fn length_unit(&self) -> f64 {
        self.params.gamma() / self.c_prefactor
    }

    fn weights(&self) -> (f64, f64, f64) {
        let a = self.drive.omega1().powi(2);
        let b = self.drive.omega2().powi(2);
        let total = a + b;
        (a, b, total * total)
    }
}

/// `1 - e^{2 xi} cos^2 theta - e^{-2 xi} sin^2 theta`
pub fn f_factor(xi: f64, theta: f64) -> f64 {
    -(2.0 * xi).exp_m1() * theta.cos().powi(2) - (-2.0 * xi).exp_m1() * theta.sin().powi(2)
}

/// Resonance curve `P(omega, delta)`.
pub fn resonance_p(omega: f64, delta: f64, ctx: &ClosedFormContext) -> f64 {
    let gamma = ctx.params.gamma();
    let om2 = ctx.drive.omega_total_sq();
    let w2 = omega * omega;
    let numerator = (w2 - delta * delta).abs();
    if numerator == 0.0 {
        return 0.0;
    }
    ctx.c_prefactor * numerator / ((gamma / 2.0).powi(2) * w2 + (w2 - om2).powi(2))
}

/// Absorption rate `gamma P(omega, 0)` of the squeezing.
pub fn absorption_rate(omega: f64, ctx: &ClosedFormContext) -> f64 {
    ctx.params.gamma() * resonance_p(omega, 0.0, ctx)
}

/// Oscillation wavenumber `P(omega, Omega) omega` of the pump/probe exchange.
pub fn oscillation_rate(omega: f64, ctx: &ClosedFormContext) -> f64 {
    resonance_p(omega, ctx.drive.omega_total(), ctx) * omega
}

/// Pump and probe spectra after propagating a distance `z`.
///
/// `z = +inf` returns the asymptotic values.
pub fn closed_form_spectra(z: f64, omega: f64, ctx: &ClosedFormContext, theta: f64) -> (f64, f64) {
    if z == f64::INFINITY && absorption_rate(omega, ctx) > 0.0 {
        return asymptotic_spectra(ctx, theta);
    }
    let f = f_factor(ctx.drive.xi2(), theta);
    let (a, b, om4) = ctx.weights();
    let decay = absorption_rate(omega, ctx) * z;
    let full = (-decay).exp();
    let half = (-decay / 2.0).exp();
    let beat = (oscillation_rate(omega, ctx) * z).cos();
    let s1 = 1.0 - f / om4 * a * b * (1.0 + full - 2.0 * half * beat);
    let s2 = 1.0 - f / om4 * (b * b + a * a * full + 2.0 * a * b * half * beat);
    (s1, s2)
}

/// Limits of [`closed_form_spectra`] for `z -> inf`.
pub fn asymptotic_spectra(ctx: &ClosedFormContext, theta: f64) -> (f64, f64) {
    let f = f_factor(ctx.drive.xi2(), theta);
    let (a, b, om4) = ctx.weights();
    (1.0 - f * a * b / om4, 1.0 - f * b * b / om4)
}

/// Weak-absorption form as a function of `zeta = z / z_osc`.
pub fn approx_spectra(zeta: f64, ctx: &ClosedFormContext, theta: f64) -> (f64, f64) {
    let f = f_factor(ctx.drive.xi2(), theta);
    let (a, b, om4) = ctx.weights();
    let s1 = 1.0 - f * 4.0 * a * b / om4 * zeta.sin().powi(2);
    let s2 = 1.0 - f / om4 * ((a - b).powi(2) + 4.0 * a * b * zeta.cos().powi(2));
    (s1, s2)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LengthScales {
    /// `1 / (gamma P(omega, 0))`
    pub z_abs: f64,
    /// `2 / (P(omega, Omega) omega)`
    pub z_osc: f64,
    /// First maximum of the transfer, `(pi / 2) z_osc`.
    pub z_max_transfer: f64,
}

impl LengthScales {
    /// The same scales in units of `gamma / C`.
    pub fn scaled(&self, ctx: &ClosedFormContext) -> LengthScales {
        let u = ctx.length_unit();
        LengthScales {
            z_abs: self.z_abs / u,
            z_osc: self.z_osc / u,
            z_max_transfer: self.z_max_transfer / u,
        }
    }
}

/// Divergent scales are reported as `f64::INFINITY`.
pub fn length_scales(omega: f64, ctx: &ClosedFormContext) -> LengthScales {
    let absorb = absorption_rate(omega, ctx);
    let osc = oscillation_rate(omega, ctx).abs();
    let z_abs = if absorb > 0.0 { 1.0 / absorb } else { f64::INFINITY };
    let z_osc = if osc > 0.0 { 2.0 / osc } else { f64::INFINITY };
    LengthScales {
        z_abs,
        z_osc,
        z_max_transfer: std::f64::consts::FRAC_PI_2 * z_osc,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeakPositions {
    /// `(Omega1^2 + Omega2^2)^{3/4} / sqrt(Omega1)`
    pub mean_value_peak: f64,
    /// `sqrt(Omega1^2 + Omega2^2)`
    pub fluctuation_peak: f64,
}

/// Peak positions of the mean-value absorption and of `P(omega, 0)`.
/// The mean-value peak diverges when the pump is off.
pub fn peak_positions(ctx: &ClosedFormContext) -> PeakPositions {
    let om2 = ctx.drive.omega_total_sq();
    PeakPositions {
        mean_value_peak: om2.powf(0.75) / ctx.drive.omega1().sqrt(),
        fluctuation_peak: om2.sqrt(),
    }
}
