//! Spatial propagation generator for the field fluctuations at one sideband
//! frequency, obtained by solving the atomic fluctuations algebraically.
//!
//! Field vectors are ordered `(d alpha1(w), d alpha2(w), d alpha1*(w), d alpha2*(w))`,
//! all components being Fourier amplitudes at the same frequency `w`
//! (so `d alpha_j*(w)` is the conjugate of `d alpha_j(-w)`). Positions are in
//! the retarded frame, which removes the common `-i w / c` phase that cancels
//! in every stationary spectrum.

use nalgebra::{Matrix4, SMatrix, Schur, Vector4};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::langevin::{FluctuationBlock, Matrix8};
use crate::model::{MediumParams, ATOMIC_CONJ};

/// Coupling column feeding each field component.
const COUPLE_COLUMN: [usize; 4] = [2, 3, 1, 0];

#[derive(Debug, Clone, PartialEq)]
pub struct FieldGenerator {
    pub omega: f64,
    /// `d v / dz = a_mat v + noise`, in units of 1/length.
    pub a_mat: Matrix4<C64>,
    /// Normally ordered noise injected per unit length, relative to the
    /// vacuum level of the input field.
    pub n_mat: Matrix4<C64>,
    pub eigen: Vector4<C64>,
    /// Set when the atomic response was singular at `omega` and the
    /// generator was obtained as a symmetric limit.
    pub limit_evaluated: bool,
}

/// `dv/dz` rows pick the polarizations that source each field component.
fn projection(params: &MediumParams) -> SMatrix<C64, 4, 8> {
    let k = params.n_atoms() / params.c();
    let i = C64::i();
    let mut proj = SMatrix::<C64, 4, 8>::zeros();
    proj[(0, 6)] = -i * params.g1() * k;
    proj[(1, 7)] = -i * params.g2() * k;
    proj[(2, 1)] = i * params.g1() * k;
    proj[(3, 0)] = i * params.g2() * k;
    proj
}

fn response(jac: &Matrix8, omega: f64) -> Option<Matrix8> {
    let m = Matrix8::identity() * C64::new(0.0, omega) - jac;
    let inv = m.lu().try_inverse()?;
    let residual = crate::max_abs(&(m * inv - Matrix8::identity()));
    (inv.iter().all(|z| z.is_finite()) && residual < 1e-8).then_some(inv)
}

fn generator_at(block: &FluctuationBlock, params: &MediumParams, omega: f64) -> Option<(Matrix4<C64>, Matrix4<C64>)> {
    let r = response(&block.jac, omega)?;
    let proj = projection(params);
    let couple = SMatrix::<C64, 8, 4>::from_fn(|row, col| block.couple[(row, COUPLE_COLUMN[col])]);
    let a = proj * r * couple;

    // <f_x f_y*> = <f_x f_conj(y)>
    let diff = Matrix8::from_fn(|x, y| block.diff[(x, ATOMIC_CONJ[y])]);
    let scale = C64::from(params.c() / params.n_atoms());
    let n = proj * r * diff * r.adjoint() * proj.adjoint() * scale;
    Some((a, n))
}

fn eigenvalues(m: &Matrix4<C64>) -> Vector4<C64> {
    // Complex Schur form is triangular, so this never returns None.
    Schur::new(*m)
        .eigenvalues()
        .unwrap_or_else(|| Vector4::from_element(C64::new(f64::NAN, f64::NAN)))
}

/// Field propagation generator and noise injection at sideband `omega`.
pub fn field_generator(block: &FluctuationBlock, params: &MediumParams, omega: f64) -> Result<FieldGenerator> {
    if !omega.is_finite() {
        return Err(Error::InvalidParameter(format!("omega must be finite, got {omega}")));
    }
    let (a_mat, n_mat, limit_evaluated) = match generator_at(block, params, omega) {
        Some((a, n)) => (a, n, false),
        None => {
            let h = 1e-6 * omega.abs().max(1.0);
            let (ap, np) = generator_at(block, params, omega + h).ok_or(Error::SingularResponse(omega))?;
            let (am, nm) = generator_at(block, params, omega - h).ok_or(Error::SingularResponse(omega))?;
            let half = C64::new(0.5, 0.0);
            ((ap + am) * half, (np + nm) * half, true)
        }
    };
    Ok(FieldGenerator {
        omega,
        eigen: eigenvalues(&a_mat),
        a_mat,
        n_mat,
        limit_evaluated,
    })
}

/// Noise-injection matrix alone.
pub fn noise_injection(block: &FluctuationBlock, params: &MediumParams, omega: f64) -> Result<Matrix4<C64>> {
    field_generator(block, params, omega).map(|g| g.n_mat)
}

/// Absorption and oscillation rates of the bright field mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenReport {
    /// `-2 Re(lambda_bright)`
    pub absorption_rate: f64,
    /// `|Im(lambda_bright)|`
    pub oscillation_rate: f64,
    /// Bright and dark modes could not be told apart.
    pub degenerate: bool,
}

pub fn eigen_report(generator: &FieldGenerator) -> EigenReport {
    let mut eig: Vec<C64> = generator.eigen.iter().copied().collect();
    eig.sort_by(|a, b| b.norm().total_cmp(&a.norm()));
    let scale = crate::max_abs(&generator.a_mat);
    let bright = (eig[0] + eig[1]) * C64::new(0.5, 0.0);
    let degenerate = scale == 0.0
        || eig[1].norm() <= 1e-12 * scale
        || eig[2].norm() >= 0.5 * eig[1].norm()
        || (eig[0] - eig[1]).norm() > 0.5 * eig[1].norm();
    if degenerate {
        return EigenReport {
            absorption_rate: 0.0,
            oscillation_rate: 0.0,
            degenerate: true,
        };
    }
    EigenReport {
        absorption_rate: -2.0 * bright.re,
        oscillation_rate: bright.im.abs(),
        degenerate: false,
    }
}
