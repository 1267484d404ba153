//! Single-atom operator algebra for the three-level lambda system.
//!
//! Operators are 3x3 matrices in the basis `|1>, |2>, |e>`. The eight atomic
//! system variables together with the identity span the full operator space,
//! so every single-atom operator decomposes uniquely onto them.

use nalgebra::{Matrix3, SMatrix, SVector};
use num_complex::Complex64 as C64;

use crate::model::{Beam, DriveState, MediumParams};

pub type Op = Matrix3<C64>;
pub type SuperOp = SMatrix<C64, 9, 9>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    One = 0,
    Two = 1,
    Excited = 2,
}

/// `|m><n|`
pub fn transition(m: Level, n: Level) -> Op {
    let mut op = Op::zeros();
    op[(m as usize, n as usize)] = C64::new(1.0, 0.0);
    op
}

/// Operator of atomic variable `k` (atomic sub-order).
pub fn atomic_operator(k: usize) -> Op {
    use Level::*;
    match k {
        0 => transition(Excited, Two),
        1 => transition(Excited, One),
        2 => transition(One, Two),
        3 => transition(Excited, Excited) - transition(One, One),
        4 => transition(Excited, Excited) - transition(Two, Two),
        5 => transition(Two, One),
        6 => transition(One, Excited),
        7 => transition(Two, Excited),
        _ => panic!("atomic index {k} out of range"),
    }
}

/// Coefficients `(c, c0)` with `x = sum_k c[k] V_k + c0 * I`.
pub fn decompose(x: &Op) -> (SVector<C64, 8>, C64) {
    let (d1, d2, de) = (x[(0, 0)], x[(1, 1)], x[(2, 2)]);
    let c0 = (d1 + d2 + de) / 3.0;
    let coeffs = SVector::<C64, 8>::from([
        x[(2, 1)],
        x[(2, 0)],
        x[(0, 1)],
        c0 - d1,
        c0 - d2,
        x[(1, 0)],
        x[(0, 2)],
        x[(1, 2)],
    ]);
    (coeffs, c0)
}

fn commutator(a: &Op, b: &Op) -> Op {
    a * b - b * a
}

/// Resonantly driven lambda atom with spontaneous decay and optional
/// ground-state dephasing, with the two carriers treated as c-numbers.
#[derive(Debug, Clone)]
pub struct Liouvillian {
    hamiltonian: Op,
    jumps: Vec<Op>,
}

impl Liouvillian {
    pub fn new(drive: &DriveState, params: &MediumParams) -> Self {
        use Level::*;
        let d1 = C64::from(drive.coupling(params, Beam::Pump));
        let d2 = C64::from(drive.coupling(params, Beam::Probe));
        let hamiltonian = (transition(Excited, One) + transition(One, Excited)) * d1
            + (transition(Excited, Two) + transition(Two, Excited)) * d2;
        let mut jumps = vec![
            transition(One, Excited) * C64::from(params.gamma1().sqrt()),
            transition(Two, Excited) * C64::from(params.gamma2().sqrt()),
        ];
        // Projective dephasing of both ground levels: the 1-2 coherence decays
        // at gamma12, the optical coherences pick up gamma12 / 2.
        if params.gamma12() > 0.0 {
            let r = C64::from(params.gamma12().sqrt());
            jumps.push(transition(One, One) * r);
            jumps.push(transition(Two, Two) * r);
        }
        Self { hamiltonian, jumps }
    }

    pub fn hamiltonian(&self) -> &Op {
        &self.hamiltonian
    }

    pub fn jumps(&self) -> &[Op] {
        &self.jumps
    }

    /// Heisenberg-picture generator: `dX/dt = L^dag(X)`.
    pub fn adjoint(&self, x: &Op) -> Op {
        let i = C64::i();
        let mut out = commutator(&self.hamiltonian, x) * i;
        for l in &self.jumps {
            let ld = l.adjoint();
            let ldl = ld * l;
            out += ld * x * l - (ldl * x + x * ldl) * C64::new(0.5, 0.0);
        }
        out
    }

    /// Schroedinger-picture generator: `d rho/dt = L(rho)`.
    pub fn apply(&self, rho: &Op) -> Op {
        let i = C64::i();
        let mut out = -commutator(&self.hamiltonian, rho) * i;
        for l in &self.jumps {
            let ld = l.adjoint();
            let ldl = ld * l;
            out += l * rho * ld - (ldl * rho + rho * ldl) * C64::new(0.5, 0.0);
        }
        out
    }

    /// Matrix of [`Self::apply`] acting on column-major `vec(rho)`.
    pub fn superoperator(&self) -> SuperOp {
        let mut s = SuperOp::zeros();
        for k in 0..9 {
            let mut e = Op::zeros();
            e[k] = C64::new(1.0, 0.0);
            let image = self.apply(&e);
            for r in 0..9 {
                s[(r, k)] = image[r];
            }
        }
        s
    }

    /// Drift of the atomic variables as `dV/dt = J V + c`.
    pub fn drift(&self) -> (SMatrix<C64, 8, 8>, SVector<C64, 8>) {
        let mut jac = SMatrix::<C64, 8, 8>::zeros();
        let mut constant = SVector::<C64, 8>::zeros();
        for k in 0..8 {
            let (coeffs, c0) = decompose(&self.adjoint(&atomic_operator(k)));
            jac.set_row(k, &coeffs.transpose());
            constant[k] = c0;
        }
        (jac, constant)
    }
}

/// `<X>` in state `rho`.
pub fn expect(rho: &Op, x: &Op) -> C64 {
    (rho * x).trace()
}

/// Derivative of the drift of `x` with respect to the field operator of
/// `beam` (`conj = false`) or its adjoint (`conj = true`), per unit coupling.
pub(crate) fn field_derivative(x: &Op, beam: Beam, conj: bool) -> Op {
    use Level::*;
    let ground = match beam {
        Beam::Pump => One,
        Beam::Probe => Two,
    };
    // H contains g (a sigma_ej + a^dag sigma_je)
    let partner = if conj {
        transition(ground, Excited)
    } else {
        transition(Excited, ground)
    };
    commutator(&partner, x) * C64::i()
}
