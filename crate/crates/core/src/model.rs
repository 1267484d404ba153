//! Parameters, unit conventions and the canonical ordering of system variables.
//!
//! Internal units: the total linewidth `gamma` and the speed of light `c` set
//! the frequency and velocity scales. Positions reported to users are
//! measured in units of `gamma / C` where `C` is the resonance prefactor
//! returned by [`c_prefactor`].

use crate::error::{Error, Result};

/// Atomic and medium constants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MediumParams {
    gamma1: f64,
    gamma2: f64,
    g1: f64,
    g2: f64,
    n_atoms: f64,
    c: f64,
    gamma12: f64,
}

impl MediumParams {
    /// Decay rates into `|1>` and `|2>`, couplings and atom number. The
    /// ground-coherence decay rate starts at zero and `c` at one.
    pub fn new(gamma1: f64, gamma2: f64, g1: f64, g2: f64, n_atoms: f64) -> Result<Self> {
        let params = Self {
            gamma1,
            gamma2,
            g1,
            g2,
            n_atoms,
            c: 1.0,
            gamma12: 0.0,
        };
        params.validate()?;
        Ok(params)
    }

    /// Equal branching `gamma1 = gamma2 = 1/2`, equal couplings `g`.
    pub fn symmetric(g: f64, n_atoms: f64) -> Result<Self> {
        Self::new(0.5, 0.5, g, g, n_atoms)
    }

    pub fn with_gamma12(mut self, gamma12: f64) -> Result<Self> {
        self.gamma12 = gamma12;
        self.validate()?;
        Ok(self)
    }

    pub fn with_speed_of_light(mut self, c: f64) -> Result<Self> {
        self.c = c;
        self.validate()?;
        Ok(self)
    }

    fn validate(&self) -> Result<()> {
        let all = [
            ("gamma1", self.gamma1),
            ("gamma2", self.gamma2),
            ("g1", self.g1),
            ("g2", self.g2),
            ("n_atoms", self.n_atoms),
            ("c", self.c),
            ("gamma12", self.gamma12),
        ];
        for (name, v) in all {
            if !v.is_finite() {
                return Err(Error::InvalidParameter(format!("{name} must be finite, got {v}")));
            }
        }
        for (name, v) in [("gamma1", self.gamma1), ("gamma2", self.gamma2), ("gamma12", self.gamma12)] {
            if v < 0.0 {
                return Err(Error::InvalidParameter(format!("{name} must be >= 0, got {v}")));
            }
        }
        for (name, v) in [("g1", self.g1), ("g2", self.g2), ("n_atoms", self.n_atoms), ("c", self.c)] {
            if v <= 0.0 {
                return Err(Error::InvalidParameter(format!("{name} must be > 0, got {v}")));
            }
        }
        if self.gamma() <= 0.0 {
            return Err(Error::InvalidParameter("total linewidth must be > 0".into()));
        }
        Ok(())
    }

    pub fn gamma1(&self) -> f64 {
        self.gamma1
    }

    pub fn gamma2(&self) -> f64 {
        self.gamma2
    }

    /// Total linewidth of the excited state.
    pub fn gamma(&self) -> f64 {
        self.gamma1 + self.gamma2
    }

    pub fn g1(&self) -> f64 {
        self.g1
    }

    pub fn g2(&self) -> f64 {
        self.g2
    }

    pub fn n_atoms(&self) -> f64 {
        self.n_atoms
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    /// Damping rate of the ground-state coherence.
    pub fn gamma12(&self) -> f64 {
        self.gamma12
    }

    /// Coupling constant of beam `j`.
    pub fn g(&self, beam: Beam) -> f64 {
        match beam {
            Beam::Pump => self.g1,
            Beam::Probe => self.g2,
        }
    }

    /// Exchange the roles of the two transitions.
    pub fn swapped(&self) -> Self {
        Self {
            gamma1: self.gamma2,
            gamma2: self.gamma1,
            g1: self.g2,
            g2: self.g1,
            ..*self
        }
    }
}

/// The two beams. The pump drives `|1> <-> |e>`, the probe `|2> <-> |e>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Beam {
    Pump,
    Probe,
}

impl Beam {
    pub const BOTH: [Beam; 2] = [Beam::Pump, Beam::Probe];

    /// 1 for the pump, 2 for the probe.
    pub fn number(self) -> u8 {
        match self {
            Beam::Pump => 1,
            Beam::Probe => 2,
        }
    }

    pub fn from_number(n: u8) -> Option<Beam> {
        match n {
            1 => Some(Beam::Pump),
            2 => Some(Beam::Probe),
            _ => None,
        }
    }

    pub(crate) fn slot(self) -> usize {
        self.number() as usize - 1
    }
}

/// Carrier amplitudes, Rabi frequencies, squeezing and quadrature angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriveState {
    alpha1: f64,
    alpha2: f64,
    omega1: f64,
    omega2: f64,
    xi1: f64,
    xi2: f64,
    theta: f64,
}

impl DriveState {
    pub fn alpha1(&self) -> f64 {
        self.alpha1
    }

    pub fn alpha2(&self) -> f64 {
        self.alpha2
    }

    /// Pump Rabi frequency `|g1 alpha1|`.
    pub fn omega1(&self) -> f64 {
        self.omega1
    }

    /// Probe Rabi frequency `|g2 alpha2|`.
    pub fn omega2(&self) -> f64 {
        self.omega2
    }

    /// `sqrt(omega1^2 + omega2^2)`.
    pub fn omega_total(&self) -> f64 {
        self.omega1.hypot(self.omega2)
    }

    pub fn omega_total_sq(&self) -> f64 {
        self.omega1 * self.omega1 + self.omega2 * self.omega2
    }

    pub fn xi1(&self) -> f64 {
        self.xi1
    }

    pub fn xi2(&self) -> f64 {
        self.xi2
    }

    pub fn xi(&self, beam: Beam) -> f64 {
        match beam {
            Beam::Pump => self.xi1,
            Beam::Probe => self.xi2,
        }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn rabi(&self, beam: Beam) -> f64 {
        match beam {
            Beam::Pump => self.omega1,
            Beam::Probe => self.omega2,
        }
    }

    /// Signed drive `g_j alpha_j` entering the atomic Hamiltonian.
    pub(crate) fn coupling(&self, params: &MediumParams, beam: Beam) -> f64 {
        match beam {
            Beam::Pump => params.g1() * self.alpha1,
            Beam::Probe => params.g2() * self.alpha2,
        }
    }

    /// Squeeze the pump as well. Closed-form spectra assume `xi1 = 0`.
    pub fn with_xi1(mut self, xi1: f64) -> Result<Self> {
        if !xi1.is_finite() {
            return Err(Error::InvalidParameter(format!("xi1 must be finite, got {xi1}")));
        }
        self.xi1 = xi1;
        Ok(self)
    }

    pub fn with_theta(mut self, theta: f64) -> Result<Self> {
        if !theta.is_finite() {
            return Err(Error::InvalidParameter(format!("theta must be finite, got {theta}")));
        }
        self.theta = theta;
        Ok(self)
    }

    /// Exchange pump and probe (drives and squeezing).
    pub fn swapped(&self) -> Self {
        Self {
            alpha1: self.alpha2,
            alpha2: self.alpha1,
            omega1: self.omega2,
            omega2: self.omega1,
            xi1: self.xi2,
            xi2: self.xi1,
            theta: self.theta,
        }
    }
}

/// Resonant drive with a coherent pump and a squeezed probe.
///
/// Carrier amplitudes are real; negative amplitudes are rejected since the
/// mean-value phase conventions assume `alpha_j >= 0`.
pub fn build_drive(
    params: &MediumParams,
    alpha1: f64,
    alpha2: f64,
    xi2: f64,
    theta: f64,
) -> Result<DriveState> {
    for (name, v) in [("alpha1", alpha1), ("alpha2", alpha2), ("xi2", xi2), ("theta", theta)] {
        if !v.is_finite() {
            return Err(Error::InvalidParameter(format!("{name} must be finite, got {v}")));
        }
    }
    if alpha1 < 0.0 || alpha2 < 0.0 {
        return Err(Error::InvalidParameter(
            "carrier amplitudes must be real and non-negative".into(),
        ));
    }
    Ok(DriveState {
        alpha1,
        alpha2,
        omega1: (params.g1() * alpha1).abs(),
        omega2: (params.g2() * alpha2).abs(),
        xi1: 0.0,
        xi2,
        theta,
    })
}

/// Drive specified through Rabi frequencies instead of carrier amplitudes.
pub fn build_drive_from_rabi(
    params: &MediumParams,
    omega1: f64,
    omega2: f64,
    xi2: f64,
    theta: f64,
) -> Result<DriveState> {
    build_drive(params, omega1 / params.g1(), omega2 / params.g2(), xi2, theta)
}

/// Resonance prefactor `N (g1^2 Omega2^2 + g2^2 Omega1^2) / (c Omega^2)`.
///
/// Zero when both Rabi frequencies vanish.
pub fn c_prefactor(params: &MediumParams, drive: &DriveState) -> f64 {
    let om2 = drive.omega_total_sq();
    if om2 == 0.0 {
        return 0.0;
    }
    let (g1, g2) = (params.g1(), params.g2());
    params.n_atoms()
        * (g1 * g1 * drive.omega2() * drive.omega2() + g2 * g2 * drive.omega1() * drive.omega1())
        / (params.c() * om2)
}

/// The twelve c-number system variables in canonical (normal) order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SystemVar {
    Alpha2Conj,
    Alpha1Conj,
    SigmaE2,
    SigmaE1,
    Sigma12,
    Inversion1,
    Inversion2,
    Sigma21,
    Sigma1E,
    Sigma2E,
    Alpha1,
    Alpha2,
}

/// Canonical ordering helpers shared by every module.
pub struct SystemOrdering;

impl SystemOrdering {
    pub const ORDER: [SystemVar; 12] = [
        SystemVar::Alpha2Conj,
        SystemVar::Alpha1Conj,
        SystemVar::SigmaE2,
        SystemVar::SigmaE1,
        SystemVar::Sigma12,
        SystemVar::Inversion1,
        SystemVar::Inversion2,
        SystemVar::Sigma21,
        SystemVar::Sigma1E,
        SystemVar::Sigma2E,
        SystemVar::Alpha1,
        SystemVar::Alpha2,
    ];

    /// Indices 2..=9.
    pub const ATOMIC: [SystemVar; 8] = [
        SystemVar::SigmaE2,
        SystemVar::SigmaE1,
        SystemVar::Sigma12,
        SystemVar::Inversion1,
        SystemVar::Inversion2,
        SystemVar::Sigma21,
        SystemVar::Sigma1E,
        SystemVar::Sigma2E,
    ];

    pub const FIELD_INDICES: [usize; 4] = [0, 1, 10, 11];

    pub fn name(i: usize) -> Option<&'static str> {
        Self::ORDER.get(i).map(|v| v.name())
    }

    pub fn index(name: &str) -> Option<usize> {
        Self::ORDER.iter().position(|v| v.name() == name)
    }

    /// Index of the conjugate partner.
    pub fn conjugate(i: usize) -> Option<usize> {
        Self::ORDER.get(i).map(|v| v.conjugate().index())
    }
}

impl SystemVar {
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Self> {
        SystemOrdering::ORDER.get(i).copied()
    }

    pub fn name(self) -> &'static str {
        match self {
            SystemVar::Alpha2Conj => "alpha2*",
            SystemVar::Alpha1Conj => "alpha1*",
            SystemVar::SigmaE2 => "sigma_e2",
            SystemVar::SigmaE1 => "sigma_e1",
            SystemVar::Sigma12 => "sigma_12",
            SystemVar::Inversion1 => "w1",
            SystemVar::Inversion2 => "w2",
            SystemVar::Sigma21 => "sigma_21",
            SystemVar::Sigma1E => "sigma_1e",
            SystemVar::Sigma2E => "sigma_2e",
            SystemVar::Alpha1 => "alpha1",
            SystemVar::Alpha2 => "alpha2",
        }
    }

    pub fn conjugate(self) -> Self {
        // The order is palindromic under conjugation except for the two
        // self-adjoint inversions, which sit next to each other.
        match self {
            SystemVar::Inversion1 | SystemVar::Inversion2 => self,
            other => SystemOrdering::ORDER[11 - other.index()],
        }
    }

    pub fn is_atomic(self) -> bool {
        self.atomic_index().is_some()
    }

    /// Position inside the 8-component atomic block.
    pub fn atomic_index(self) -> Option<usize> {
        match self.index() {
            i @ 2..=9 => Some(i - 2),
            _ => None,
        }
    }
}

/// Conjugate partner inside the atomic block (atomic indices 0..8).
pub(crate) const ATOMIC_CONJ: [usize; 8] = [7, 6, 5, 3, 4, 2, 1, 0];
