//! Linearized atomic fluctuations: drift Jacobian, coupling to the field
//! fluctuations and c-number diffusion coefficients.
//!
//! Matrices use the atomic sub-order
//! `sigma_e2, sigma_e1, sigma_12, w1, w2, sigma_21, sigma_1e, sigma_2e`.
//! Coupling columns are `d alpha2*, d alpha1*, d alpha1, d alpha2`.
//!
//! The diffusion matrix `D` is defined through the collective correlations
//! `<f_x(z,t) f_y(z',t')> = (L/N) D_xy delta(t-t') delta(z-z')`.

use nalgebra::{SMatrix, SVector};
use num_complex::Complex64 as C64;

use crate::atom::{atomic_operator, expect, field_derivative, Liouvillian, Op};
use crate::error::{Error, Result};
use crate::model::{Beam, DriveState, MediumParams};
use crate::steady_state::{stationarity_residual, MeanValues};

pub type Matrix8 = SMatrix<C64, 8, 8>;
pub type Matrix8x4 = SMatrix<C64, 8, 4>;

const STATIONARITY_TOL: f64 = 1e-8;

/// Operator order that the c-number variables represent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OperatorOrder {
    /// The canonical order of [`crate::model::SystemOrdering`].
    #[default]
    Normal,
    /// The canonical order reversed.
    Antinormal,
}

impl OperatorOrder {
    fn rank(self, k: usize) -> usize {
        match self {
            OperatorOrder::Normal => k,
            OperatorOrder::Antinormal => 7 - k,
        }
    }

    /// Product of atomic variables `i` and `j` written in this order.
    fn product(self, i: usize, j: usize) -> Op {
        let (a, b) = (atomic_operator(i), atomic_operator(j));
        if self.rank(i) <= self.rank(j) {
            a * b
        } else {
            b * a
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FluctuationBlock {
    pub jac: Matrix8,
    pub couple: Matrix8x4,
    pub diff: Matrix8,
}

impl FluctuationBlock {
    /// Jacobian, coupling and normally ordered diffusion around `mean`.
    pub fn assemble(mean: &MeanValues, drive: &DriveState, params: &MediumParams) -> Result<Self> {
        let (jac, couple) = atomic_jacobian(mean, drive, params)?;
        let diff = diffusion_matrix(mean, drive, params)?;
        Ok(Self { jac, couple, diff })
    }
}

fn ensure_stationary(mean: &MeanValues, drive: &DriveState, params: &MediumParams) -> Result<()> {
    let r = stationarity_residual(mean, drive, params);
    if r.is_finite() && r < STATIONARITY_TOL {
        Ok(())
    } else {
        Err(Error::NotStationary(r))
    }
}

/// First-order expansion of the atomic drift around `(mean, alpha)`.
pub fn atomic_jacobian(
    mean: &MeanValues,
    drive: &DriveState,
    params: &MediumParams,
) -> Result<(Matrix8, Matrix8x4)> {
    ensure_stationary(mean, drive, params)?;
    let (jac, _) = Liouvillian::new(drive, params).drift();
    let rho = mean.density_matrix();
    let columns = [
        (Beam::Probe, true),
        (Beam::Pump, true),
        (Beam::Pump, false),
        (Beam::Probe, false),
    ];
    let mut couple = Matrix8x4::zeros();
    for k in 0..8 {
        let x = atomic_operator(k);
        for (col, &(beam, conj)) in columns.iter().enumerate() {
            let g = C64::from(params.g(beam));
            couple[(k, col)] = g * expect(&rho, &field_derivative(&x, beam, conj));
        }
    }
    Ok((jac, couple))
}

/// Normally ordered c-number diffusion coefficients.
pub fn diffusion_matrix(mean: &MeanValues, drive: &DriveState, params: &MediumParams) -> Result<Matrix8> {
    diffusion_matrix_ordered(mean, drive, params, OperatorOrder::Normal)
}

/// Diffusion coefficients for c-numbers representing operators in `order`.
///
/// Generalized Einstein relation
/// `D_xy = d<(xy)>/dt - <(A_x y)> - <(x A_y)>`, where `(..)` places single-atom
/// operator products in `order` and `A_x` is the drift of `x`. Reordering
/// inside the drift products is what distinguishes the orders.
pub fn diffusion_matrix_ordered(
    mean: &MeanValues,
    drive: &DriveState,
    params: &MediumParams,
    order: OperatorOrder,
) -> Result<Matrix8> {
    ensure_stationary(mean, drive, params)?;
    let liouv = Liouvillian::new(drive, params);
    let (jac, constant) = liouv.drift();
    let rho = mean.density_matrix();

    let means = SVector::<C64, 8>::from_fn(|k, _| expect(&rho, &atomic_operator(k)));
    let mut ordered = Matrix8::zeros();
    let mut product_rate = Matrix8::zeros();
    for i in 0..8 {
        for j in 0..8 {
            let o = order.product(i, j);
            ordered[(i, j)] = expect(&rho, &o);
            product_rate[(i, j)] = expect(&rho, &liouv.adjoint(&o));
        }
    }
    let drift_terms = jac * ordered
        + ordered * jac.transpose()
        + constant * means.transpose()
        + means * constant.transpose();
    Ok(product_rate - drift_terms)
}

/// Single-atom covariance `<(xy)> - <x><y>` in the given order.
pub fn ordered_covariance(mean: &MeanValues, order: OperatorOrder) -> Matrix8 {
    let rho = mean.density_matrix();
    let means = SVector::<C64, 8>::from_fn(|k, _| expect(&rho, &atomic_operator(k)));
    Matrix8::from_fn(|i, j| expect(&rho, &order.product(i, j))) - means * means.transpose()
}

/// Largest entry of `J C + C J^T + D`, the stationary second-moment drift of
/// the linear c-number system built from `block`.
pub fn second_moment_residual(mean: &MeanValues, block: &FluctuationBlock) -> f64 {
    let cov = ordered_covariance(mean, OperatorOrder::Normal);
    crate::max_abs(&(block.jac * cov + cov * block.jac.transpose() + block.diff))
}

/// Apply the conjugate-pair involution to rows and columns.
pub fn conjugate_permuted(m: &Matrix8) -> Matrix8 {
    use crate::model::ATOMIC_CONJ;
    Matrix8::from_fn(|i, j| m[(ATOMIC_CONJ[i], ATOMIC_CONJ[j])])
}
