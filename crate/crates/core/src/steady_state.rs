//! Zeroth-order (z-independent) atomic mean values.

use nalgebra::SVD;
use num_complex::Complex64 as C64;

use crate::atom::{Liouvillian, Op};
use crate::error::{Error, Result};
use crate::model::{DriveState, MediumParams};

/// Single-atom expectation values in steady state.
///
/// `coh12 = <sigma_12>`, `pol1e = <sigma_1e>`, `pol2e = <sigma_2e>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanValues {
    pub pop1: f64,
    pub pop2: f64,
    pub pope: f64,
    pub coh12: C64,
    pub pol1e: C64,
    pub pol2e: C64,
    pub w1: f64,
    pub w2: f64,
}

impl MeanValues {
    pub fn from_density_matrix(rho: &Op) -> Self {
        let (pop1, pop2, pope) = (rho[(0, 0)].re, rho[(1, 1)].re, rho[(2, 2)].re);
        Self {
            pop1,
            pop2,
            pope,
            coh12: rho[(1, 0)],
            pol1e: rho[(2, 0)],
            pol2e: rho[(2, 1)],
            w1: pope - pop1,
            w2: pope - pop2,
        }
    }

    pub fn density_matrix(&self) -> Op {
        let mut rho = Op::zeros();
        rho[(0, 0)] = self.pop1.into();
        rho[(1, 1)] = self.pop2.into();
        rho[(2, 2)] = self.pope.into();
        rho[(1, 0)] = self.coh12;
        rho[(0, 1)] = self.coh12.conj();
        rho[(2, 0)] = self.pol1e;
        rho[(0, 2)] = self.pol1e.conj();
        rho[(2, 1)] = self.pol2e;
        rho[(1, 2)] = self.pol2e.conj();
        rho
    }

    /// Largest violation of the trace, inversion and positivity relations.
    pub fn invariant_violation(&self) -> f64 {
        let trace = (self.pop1 + self.pop2 + self.pope - 1.0).abs();
        let w = (self.w1 - (self.pope - self.pop1))
            .abs()
            .max((self.w2 - (self.pope - self.pop2)).abs());
        let positivity = (self.coh12.norm_sqr() - self.pop1 * self.pop2).max(0.0);
        let negative = [self.pop1, self.pop2, self.pope]
            .iter()
            .map(|p| (-p).max(0.0))
            .fold(0.0, f64::max);
        trace.max(w).max(positivity).max(negative)
    }

    /// The same state with the roles of `|1>` and `|2>` exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            pop1: self.pop2,
            pop2: self.pop1,
            pope: self.pope,
            coh12: self.coh12.conj(),
            pol1e: self.pol2e,
            pol2e: self.pol1e,
            w1: self.w2,
            w2: self.w1,
        }
    }
}

/// Closed-form dark state `(Omega2 |1> - Omega1 |2>) / Omega`.
///
/// Only stationary when the ground coherence is undamped.
pub fn dark_state(drive: &DriveState) -> Result<MeanValues> {
    let om2 = drive.omega_total_sq();
    if om2 == 0.0 {
        return Err(Error::UndefinedState);
    }
    let (o1, o2) = (drive.omega1(), drive.omega2());
    let pop1 = o2 * o2 / om2;
    let pop2 = o1 * o1 / om2;
    Ok(MeanValues {
        pop1,
        pop2,
        pope: 0.0,
        coh12: C64::new(-o1 * o2 / om2, 0.0),
        pol1e: C64::new(0.0, 0.0),
        pol2e: C64::new(0.0, 0.0),
        w1: -pop1,
        w2: -pop2,
    })
}

/// Stationary state from the null space of the single-atom Liouvillian.
pub fn steady_state_numeric(drive: &DriveState, params: &MediumParams) -> Result<MeanValues> {
    let superop = Liouvillian::new(drive, params).superoperator();
    let svd = SVD::new(superop, false, true);
    let v_t = svd.v_t.expect("right singular vectors requested");
    let sv = svd.singular_values;
    let scale = sv.max().max(1.0);

    let mut order: Vec<usize> = (0..sv.len()).collect();
    order.sort_by(|&a, &b| sv[a].total_cmp(&sv[b]));
    let null_dim = sv.iter().filter(|s| **s <= 1e-10 * scale).count();
    if null_dim != 1 {
        return Err(Error::DegenerateSteadyState(null_dim));
    }

    let row = v_t.row(order[0]);
    let mut rho = Op::zeros();
    for k in 0..9 {
        rho[k] = row[k].conj();
    }
    let tr = rho.trace();
    rho /= tr;
    let rho = (rho + rho.adjoint()) * C64::new(0.5, 0.0);
    Ok(MeanValues::from_density_matrix(&rho))
}

/// Largest entry of `L(rho)` for the given mean values.
pub fn stationarity_residual(mean: &MeanValues, drive: &DriveState, params: &MediumParams) -> f64 {
    let l = Liouvillian::new(drive, params);
    crate::max_abs(&l.apply(&mean.density_matrix()))
}

/// Mean values appropriate for the given parameters: the closed-form dark
/// state without ground-state dephasing, the numeric steady state otherwise.
pub fn mean_values(drive: &DriveState, params: &MediumParams) -> Result<MeanValues> {
    if params.gamma12() == 0.0 {
        dark_state(drive)
    } else {
        steady_state_numeric(drive, params)
    }
}
