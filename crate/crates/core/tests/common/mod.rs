#![allow(dead_code)]

//! Reference implementations used as test oracles. Nothing here calls into
//! the library's physics code.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;

/// Closed-form reference written directly from the raw parameters.
#[derive(Debug, Clone, Copy)]
pub struct Reference {
    pub o1: f64,
    pub o2: f64,
    pub g1: f64,
    pub g2: f64,
    pub n: f64,
    pub gamma: f64,
    pub xi: f64,
    pub theta: f64,
}

impl Reference {
    pub fn standard(xi: f64, theta: f64) -> Self {
        Self {
            o1: 1.0,
            o2: 1.0,
            g1: 1.0 / 60.0,
            g2: 1.0 / 60.0,
            n: 3600.0,
            gamma: 1.0,
            xi,
            theta,
        }
    }

    pub fn with_rabi(mut self, o1: f64, o2: f64) -> Self {
        self.o1 = o1;
        self.o2 = o2;
        self
    }

    fn om2(&self) -> f64 {
        self.o1 * self.o1 + self.o2 * self.o2
    }

    pub fn big_c(&self) -> f64 {
        self.n * (self.g1.powi(2) * self.o2.powi(2) + self.g2.powi(2) * self.o1.powi(2)) / self.om2()
    }

    pub fn p(&self, w: f64, delta: f64) -> f64 {
        let den = (self.gamma * w / 2.0).powi(2) + (w * w - self.om2()).powi(2);
        self.big_c() * (w * w - delta * delta).abs() / den
    }

    pub fn f(&self) -> f64 {
        let (c, s) = (self.theta.cos(), self.theta.sin());
        1.0 - (2.0 * self.xi).exp() * c * c - (-2.0 * self.xi).exp() * s * s
    }

    /// Spectra at `z` (internal units).
    pub fn spectra(&self, w: f64, z: f64) -> (f64, f64) {
        let (a, b) = (self.o1 * self.o1, self.o2 * self.o2);
        let om4 = self.om2().powi(2);
        let k = self.gamma * self.p(w, 0.0) * z;
        let phase = self.p(w, self.om2().sqrt()) * w * z;
        let f = self.f();
        let s1 = 1.0 - f * a * b / om4 * (1.0 + (-k).exp() - 2.0 * (-k / 2.0).exp() * phase.cos());
        let s2 = 1.0 - f / om4 * (b * b + a * a * (-k).exp() + 2.0 * a * b * (-k / 2.0).exp() * phase.cos());
        (s1, s2)
    }

    /// Internal length of one `gamma / C` unit.
    pub fn unit(&self) -> f64 {
        self.gamma / self.big_c()
    }

    pub fn z_abs(&self, w: f64) -> f64 {
        1.0 / (self.gamma * self.p(w, 0.0))
    }

    pub fn z_osc(&self, w: f64) -> f64 {
        2.0 / (self.p(w, self.om2().sqrt()) * w)
    }
}

/// `n` points evenly spaced on `[a, b]`.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n).map(|k| a + (b - a) * k as f64 / (n - 1) as f64).collect()
}

fn ket_bra(m: usize, n: usize) -> DMatrix<C64> {
    let mut o = DMatrix::zeros(3, 3);
    o[(m, n)] = C64::new(1.0, 0.0);
    o
}

/// Single three-level atom with levels `1 = 0`, `2 = 1`, `e = 2`.
pub struct ReferenceAtom {
    h: DMatrix<C64>,
    jumps: Vec<DMatrix<C64>>,
}

impl ReferenceAtom {
    pub fn new(o1: f64, o2: f64, gamma1: f64, gamma2: f64, gamma12: f64) -> Self {
        let h = (ket_bra(2, 0) + ket_bra(0, 2)) * C64::from(o1) + (ket_bra(2, 1) + ket_bra(1, 2)) * C64::from(o2);
        let mut jumps = vec![ket_bra(0, 2) * C64::from(gamma1.sqrt()), ket_bra(1, 2) * C64::from(gamma2.sqrt())];
        if gamma12 > 0.0 {
            jumps.push(ket_bra(0, 0) * C64::from(gamma12.sqrt()));
            jumps.push(ket_bra(1, 1) * C64::from(gamma12.sqrt()));
        }
        Self { h, jumps }
    }

    pub fn lindblad(&self, rho: &DMatrix<C64>) -> DMatrix<C64> {
        let i = C64::i();
        let mut out = (&self.h * rho - rho * &self.h) * (-i);
        for l in &self.jumps {
            let ld = l.adjoint();
            let ldl = &ld * l;
            out += l * rho * &ld - (&ldl * rho + rho * &ldl) * C64::from(0.5);
        }
        out
    }

    /// Row-major superoperator.
    pub fn superoperator(&self) -> DMatrix<C64> {
        let mut s = DMatrix::zeros(9, 9);
        for k in 0..9 {
            let out = self.lindblad(&ket_bra(k / 3, k % 3));
            for r in 0..9 {
                s[(r, k)] = out[(r / 3, r % 3)];
            }
        }
        s
    }

    pub fn steady_state(&self) -> DMatrix<C64> {
        let s = self.superoperator();
        // Replace one equation by the trace condition.
        let mut m = s.clone();
        let mut rhs = DVector::zeros(9);
        for k in 0..9 {
            m[(0, k)] = if k % 4 == 0 { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) };
        }
        rhs[0] = C64::new(1.0, 0.0);
        let v = m.lu().solve(&rhs).expect("unique steady state");
        DMatrix::from_fn(3, 3, |r, c| v[3 * r + c])
    }

    /// `int dtau e^{-i w tau} <dX(0) dY(tau)>` for the stationary atom, the
    /// normally ordered fluctuation spectrum when `X` raises and `Y` lowers.
    pub fn spectrum(&self, w: f64, x: &DMatrix<C64>, y: &DMatrix<C64>) -> C64 {
        let rho = self.steady_state();
        let s = self.superoperator();
        let ex = |a: &DMatrix<C64>| (&rho * a).trace();
        let flat = |m: &DMatrix<C64>| DVector::from_fn(9, |k, _| m[(k / 3, k % 3)]);
        let unflat = |v: &DVector<C64>| DMatrix::from_fn(3, 3, |r, c| v[3 * r + c]);
        let id = DMatrix::<C64>::identity(9, 9);

        let src1 = flat(&(&rho * x - &rho * ex(x)));
        let a = (&id * C64::new(0.0, w) - &s).lu().solve(&src1).unwrap();
        let first = (y * unflat(&a)).trace();
        let src2 = flat(&(y * &rho - &rho * ex(y)));
        let b = (&id * C64::new(0.0, -w) - &s).lu().solve(&src2).unwrap();
        let second = (x * unflat(&b)).trace();
        first + second
    }

    pub fn op(m: usize, n: usize) -> DMatrix<C64> {
        ket_bra(m, n)
    }
}
