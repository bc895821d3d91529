//! Mode kinematics and thermal occupation.
//!
//! Everything here is a pure function of frequency, transverse wavevector and
//! temperature: the z-component of the wavevector in vacuum and in a medium,
//! the Bose occupation factors that drive all thermal terms, and the scalar
//! polarization-vector combinations the observable kernels need.
//!
//! Conventions: a mode is labelled by (ω, k, p) with ω > 0 the angular
//! frequency in rad/s, k ≥ 0 the magnitude of the transverse wavevector in
//! 1/m and p ∈ {TE, TM}. Modes with k ≤ ω/c are propagative (real k_z ≥ 0),
//! modes with k > ω/c are evanescent; the decaying branch Im k_z ≥ 0 is used
//! throughout.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Reduced Planck constant, J·s (CODATA 2018, exact via SI definition).
pub const HBAR: f64 = 1.054_571_817e-34;
/// Speed of light in vacuum, m/s (exact).
pub const C: f64 = 2.997_924_58e8;
/// Boltzmann constant, J/K (exact).
pub const K_B: f64 = 1.380_649e-23;
/// Vacuum permittivity, F/m (CODATA 2018).
pub const EPSILON_0: f64 = 8.854_187_812_8e-12;
/// Stefan-Boltzmann constant σ = π²k_B⁴/(60 c²ħ³), W/(m²K⁴).
pub const SIGMA_SB: f64 = std::f64::consts::PI * std::f64::consts::PI * K_B * K_B * K_B * K_B
    / (60.0 * C * C * HBAR * HBAR * HBAR);

/// Version tag for the constants block above, echoed into output metadata.
pub const CONSTANTS_VERSION: &str = "CODATA-2018";

/// Field polarization. TE carries the paper-convention index p = 1, TM p = 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Polarization {
    Te,
    Tm,
}

impl Polarization {
    pub const BOTH: [Polarization; 2] = [Polarization::Te, Polarization::Tm];

    /// Index used by reciprocity sign factors (-1)^(p+p').
    pub fn index(self) -> i32 {
        match self {
            Polarization::Te => 1,
            Polarization::Tm => 2,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Polarization::Te => "TE",
            Polarization::Tm => "TM",
        }
    }
}

/// Spectral sector of a mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sector {
    /// k ≤ ω/c, real k_z: traveling waves.
    Propagative,
    /// k > ω/c, imaginary k_z: exponentially decaying waves.
    Evanescent,
}

/// A single field mode (ω, k, p).
#[derive(Debug, Clone, Copy)]
pub struct Mode {
    pub omega: f64,
    pub k: f64,
    pub pol: Polarization,
}

impl Mode {
    pub fn new(omega: f64, k: f64, pol: Polarization) -> Self {
        Mode { omega, k, pol }
    }

    /// Sector is determined by (ω, k); the light line k = ω/c itself counts
    /// as propagative (measure zero, every kernel vanishes there).
    pub fn sector(&self) -> Sector {
        sector(self.omega, self.k)
    }

    pub fn kz(&self) -> Complex64 {
        kz_vacuum(self.omega, self.k)
    }
}

/// Sector of the mode (ω, k).
pub fn sector(omega: f64, k: f64) -> Sector {
    if k <= omega / C {
        Sector::Propagative
    } else {
        Sector::Evanescent
    }
}

/// Vacuum z-wavevector k_z = sqrt(ω²/c² − k²).
///
/// Propagative sector: real, ≥ 0. Evanescent sector: purely imaginary with
/// Im k_z ≥ 0, so that e^{i k_z z} decays for z → +∞.
pub fn kz_vacuum(omega: f64, k: f64) -> Complex64 {
    let q2 = (omega / C) * (omega / C) - k * k;
    if q2 >= 0.0 {
        Complex64::new(q2.sqrt(), 0.0)
    } else {
        Complex64::new(0.0, (-q2).sqrt())
    }
}

/// z-wavevector inside a medium of relative permittivity ε:
/// k_z1 = sqrt(ε ω²/c² − k²) on the Im ≥ 0 branch.
///
/// For real ε with ε ω²/c² > k² the result is real ≥ 0.
pub fn kz_medium(eps: Complex64, omega: f64, k: f64) -> Complex64 {
    let arg = eps * (omega / C) * (omega / C) - k * k;
    branch_sqrt(arg)
}

/// Principal square root pushed onto the Im ≥ 0 branch.
///
/// `Complex64::sqrt` returns the principal branch (Re ≥ 0); for passive media
/// (Im ε ≥ 0) the argument lies in the closed upper half plane and the
/// principal root already has Im ≥ 0, except for the negative real axis where
/// the sign of a −0.0 imaginary part would select the decaying/growing branch.
/// Mapping Im < 0 roots to their negative keeps the decaying wave.
pub(crate) fn branch_sqrt(z: Complex64) -> Complex64 {
    let r = z.sqrt();
    if r.im < 0.0 || (r.im == 0.0 && r.re < 0.0) {
        -r
    } else {
        r
    }
}

/// Bose occupation number n(ω, T) = 1/(e^{ħω/k_BT} − 1).
///
/// T = 0 returns exactly 0; arguments with ħω/k_BT > 700 underflow the
/// exponential and also return exactly 0.
pub fn bose_n(omega: f64, temperature: f64) -> f64 {
    if temperature <= 0.0 {
        return 0.0;
    }
    let x = HBAR * omega / (K_B * temperature);
    if x > 700.0 {
        return 0.0;
    }
    1.0 / x.exp_m1()
}

/// Occupation difference n_ab = n(ω, T_a) − n(ω, T_b).
pub fn n_diff(omega: f64, t_a: f64, t_b: f64) -> f64 {
    if t_a == t_b {
        return 0.0;
    }
    bose_n(omega, t_a) - bose_n(omega, t_b)
}

/// Scalar product ε̂_p⁺·ε̂_p⁻ of the two countermoving polarization vectors
/// at the same (ω, k).
///
/// TE gives 1 identically. TM gives (c²/ω²)(k² − k_z²) = (c²/ω²)(2k² − ω²/c²),
/// real in both sectors; it crosses zero at k = ω/(c√2).
pub fn pol_dot_pm(pol: Polarization, omega: f64, k: f64) -> f64 {
    match pol {
        Polarization::Te => 1.0,
        Polarization::Tm => {
            let oc = omega / C;
            (2.0 * k * k - oc * oc) / (oc * oc)
        }
    }
}

/// The three temperatures of the problem: body 1, body 2, environment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalTriple {
    pub t1: f64,
    pub t2: f64,
    pub t3: f64,
}

impl ThermalTriple {
    pub fn new(t1: f64, t2: f64, t3: f64) -> Result<Self> {
        for (name, t) in [("T1", t1), ("T2", t2), ("T3", t3)] {
            if !t.is_finite() || t < 0.0 {
                return Err(Error::domain(format!(
                    "{name} must be finite and >= 0, got {t}"
                )));
            }
        }
        Ok(ThermalTriple { t1, t2, t3 })
    }

    pub fn max(&self) -> f64 {
        self.t1.max(self.t2).max(self.t3)
    }

    pub fn is_equilibrium(&self) -> bool {
        self.t1 == self.t2 && self.t2 == self.t3
    }
}
