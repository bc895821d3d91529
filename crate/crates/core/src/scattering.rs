//! Slab and atom scattering amplitudes in the plane-wave basis.
//!
//! Reflection and transmission operators of planar bodies are diagonal in
//! (k, p); this module evaluates their diagonal elements, applies the
//! translation-of-origin phase rules, and provides the reciprocity checking
//! utility used by the test suites.
//!
//! Phase conventions. All amplitudes are operator elements in a common frame
//! whose origin the caller picks. The transmission amplitude is referenced so
//! that an absent body (ε → 1 or δ → 0) transmits with exactly unit
//! amplitude, which is what makes the diagonal transmission operator
//! translation-invariant: for a slab filling [z_L, z_L + δ],
//!
//! ```text
//! ρ = r (1 − e^{2ik_{z1}δ}) / (1 − r² e^{2ik_{z1}δ})        (at its own face)
//! τ = t t̄ e^{i(k_{z1} − k_z)δ} / (1 − r² e^{2ik_{z1}δ})
//! ```
//!
//! and the face phases e^{∓2ik_z z_face} place ρ± in the common frame.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::materials::{DielectricModel, StaticEps};
use crate::waves::{branch_sqrt, kz_medium, kz_vacuum, Polarization, C};

/// Exponent threshold beyond which e^{2ik_{z1}δ} is replaced by exactly 0.
const DECAY_EXP_LIMIT: f64 = 700.0;

/// Slab thickness, finite in meters or the infinite-thickness sentinel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Thickness {
    Finite(f64),
    Infinite,
}

/// A homogeneous planar slab.
#[derive(Debug, Clone, PartialEq)]
pub struct SlabSpec {
    pub material: DielectricModel,
    pub thickness: Thickness,
}

impl SlabSpec {
    /// Infinite thickness needs a lossy material (or a perfect mirror);
    /// otherwise the δ → ∞ limit of ρ, τ is ill-defined.
    pub fn new(material: DielectricModel, thickness: Thickness) -> Result<Self> {
        match thickness {
            Thickness::Finite(d) if !(d > 0.0 && d.is_finite()) => {
                return Err(Error::InvalidSpec(format!(
                    "slab thickness must be positive and finite, got {d}"
                )))
            }
            Thickness::Infinite => {
                let ok = material.is_lossy()
                    || matches!(material, DielectricModel::PerfectMirror);
                if !ok {
                    return Err(Error::InvalidSpec(
                        "infinite thickness requires a lossy material or a perfect mirror".into(),
                    ));
                }
            }
            _ => {}
        }
        Ok(SlabSpec {
            material,
            thickness,
        })
    }
}

/// Vacuum-medium Fresnel reflection coefficient.
///
/// r_TE = (k_z − k_{z1})/(k_z + k_{z1}), r_TM = (ε k_z − k_{z1})/(ε k_z + k_{z1}),
/// with the vacuum and medium z-wavevectors on their decaying branches.
/// The numerator differences are expanded through their conjugates,
/// k_z − k_{z1} = (1 − ε)(ω/c)²/(k_z + k_{z1}) and
/// ε k_z − k_{z1} = (ε − 1)(ε ω²/c² − (ε + 1)k²)/(ε k_z + k_{z1}),
/// because in the deep evanescent regime the direct subtraction of two
/// nearly equal wavevectors loses most of its significant digits.
pub fn fresnel_r(pol: Polarization, eps: Complex64, omega: f64, k: f64) -> Result<Complex64> {
    let kz = kz_vacuum(omega, k);
    let kz1 = kz_medium(eps, omega, k);
    let oc2 = (omega / C) * (omega / C);
    match pol {
        Polarization::Te => {
            let den = kz + kz1;
            check_denominator(den, omega, k, pol)?;
            Ok((Complex64::new(1.0, 0.0) - eps) * oc2 / (den * den))
        }
        Polarization::Tm => {
            let den = eps * kz + kz1;
            check_denominator(den, omega, k, pol)?;
            let num = (eps - 1.0) * (eps * oc2 - (eps + 1.0) * k * k);
            Ok(num / (den * den))
        }
    }
}

/// Vacuum-to-medium transmission coefficient t.
pub fn fresnel_t(pol: Polarization, eps: Complex64, omega: f64, k: f64) -> Result<Complex64> {
    let kz = kz_vacuum(omega, k);
    let kz1 = kz_medium(eps, omega, k);
    match pol {
        Polarization::Te => {
            let den = kz + kz1;
            check_denominator(den, omega, k, pol)?;
            Ok(2.0 * kz / den)
        }
        Polarization::Tm => {
            let den = eps * kz + kz1;
            check_denominator(den, omega, k, pol)?;
            Ok(2.0 * branch_sqrt(eps) * kz / den)
        }
    }
}

/// Medium-to-vacuum transmission coefficient t̄ (k_z and k_{z1} exchange
/// roles in the numerator).
pub fn fresnel_tbar(pol: Polarization, eps: Complex64, omega: f64, k: f64) -> Result<Complex64> {
    let kz = kz_vacuum(omega, k);
    let kz1 = kz_medium(eps, omega, k);
    match pol {
        Polarization::Te => {
            let den = kz + kz1;
            check_denominator(den, omega, k, pol)?;
            Ok(2.0 * kz1 / den)
        }
        Polarization::Tm => {
            let den = eps * kz + kz1;
            check_denominator(den, omega, k, pol)?;
            Ok(2.0 * branch_sqrt(eps) * kz1 / den)
        }
    }
}

fn check_denominator(den: Complex64, omega: f64, k: f64, pol: Polarization) -> Result<()> {
    if den.norm_sqr() == 0.0 {
        return Err(Error::Evaluation {
            omega,
            k,
            pol: pol.label(),
            msg: "degenerate Fresnel denominator".into(),
        });
    }
    Ok(())
}

/// Finite-thickness slab coefficients (ρ, τ) at the slab's own face frame.
///
/// PerfectMirror gives (−1, 0) for TE and (+1, 0) for TM at all (ω, k) and
/// any thickness; infinite thickness gives (r, 0). Once Im(k_{z1})δ exceeds
/// 700 the internal exponential is replaced by exactly 0, so ρ → r and τ → 0
/// without underflow artifacts.
pub fn slab_coefficients(
    slab: &SlabSpec,
    pol: Polarization,
    omega: f64,
    k: f64,
) -> Result<(Complex64, Complex64)> {
    if let DielectricModel::PerfectMirror = slab.material {
        let rho = match pol {
            Polarization::Te => Complex64::new(-1.0, 0.0),
            Polarization::Tm => Complex64::new(1.0, 0.0),
        };
        return Ok((rho, Complex64::new(0.0, 0.0)));
    }
    let eps = slab.material.permittivity(omega)?;
    slab_coefficients_resolved(eps, slab.thickness, pol, omega, k)
}

/// Slab coefficients with the permittivity already evaluated, for callers
/// that cache ε(ω) across the inner k sweep.
pub fn slab_coefficients_resolved(
    eps: Complex64,
    thickness: Thickness,
    pol: Polarization,
    omega: f64,
    k: f64,
) -> Result<(Complex64, Complex64)> {
    let r = fresnel_r(pol, eps, omega, k)?;
    let delta = match thickness {
        Thickness::Infinite => return Ok((r, Complex64::new(0.0, 0.0))),
        Thickness::Finite(d) => d,
    };
    let kz1 = kz_medium(eps, omega, k);
    if kz1.im * delta > DECAY_EXP_LIMIT {
        return Ok((r, Complex64::new(0.0, 0.0)));
    }
    let phase2 = (Complex64::i() * 2.0 * kz1 * delta).exp();
    let den = Complex64::new(1.0, 0.0) - r * r * phase2;
    if den.norm_sqr() == 0.0 {
        return Err(Error::Evaluation {
            omega,
            k,
            pol: pol.label(),
            msg: "degenerate slab denominator".into(),
        });
    }
    let rho = r * (Complex64::new(1.0, 0.0) - phase2) / den;
    let t = fresnel_t(pol, eps, omega, k)?;
    let tbar = fresnel_tbar(pol, eps, omega, k)?;
    let kz = kz_vacuum(omega, k);
    let tau = t * tbar * (Complex64::i() * (kz1 - kz) * delta).exp() / den;
    Ok((rho, tau))
}

/// Diagonal scattering amplitudes of one body at a (ω, k, p) mode.
///
/// `rho_plus`/`rho_minus` are the reflection elements R⁺/R⁻ in the frame the
/// body was built in; `tau` is the (side-independent, translation-invariant)
/// transmission element; `z_ref` is a lazily applied frame-origin offset.
/// Keeping the offset symbolic makes translation composition exact:
/// translating by a then b is bit-identical to translating by a + b.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiagonalScattering {
    rho_plus: Complex64,
    rho_minus: Complex64,
    tau: Complex64,
    z_ref: f64,
}

impl DiagonalScattering {
    pub fn new(rho_plus: Complex64, rho_minus: Complex64, tau: Complex64) -> Self {
        DiagonalScattering {
            rho_plus,
            rho_minus,
            tau,
            z_ref: 0.0,
        }
    }

    pub fn z_ref(&self) -> f64 {
        self.z_ref
    }

    pub fn tau(&self) -> Complex64 {
        self.tau
    }

    /// R⁺ element with the frame offset resolved: gains e^{+2ik_z z_ref}.
    pub fn rho_plus(&self, kz: Complex64) -> Complex64 {
        if self.z_ref == 0.0 {
            return self.rho_plus;
        }
        self.rho_plus * (Complex64::i() * 2.0 * kz * self.z_ref).exp()
    }

    /// R⁻ element with the frame offset resolved: gains e^{−2ik_z z_ref}.
    pub fn rho_minus(&self, kz: Complex64) -> Complex64 {
        if self.z_ref == 0.0 {
            return self.rho_minus;
        }
        self.rho_minus * (-Complex64::i() * 2.0 * kz * self.z_ref).exp()
    }
}

/// Re-express diagonal scattering amplitudes in a frame whose origin sits at
/// z = shift in the current frame: R̃⁺ = e^{+2ik_z·shift} R⁺,
/// R̃⁻ = e^{−2ik_z·shift} R⁻, T̃± unchanged (k_z = k_z′ on the diagonal).
pub fn translate_slab(base: &DiagonalScattering, shift: f64) -> DiagonalScattering {
    DiagonalScattering {
        z_ref: base.z_ref + shift,
        ..*base
    }
}

/// Scattering of body 1 occupying [−δ, 0] (or (−∞, 0]):
/// R⁺ at its own face, R⁻ displaced by the thickness, τ unchanged.
pub fn body1_scattering(
    slab: &SlabSpec,
    pol: Polarization,
    omega: f64,
    k: f64,
) -> Result<DiagonalScattering> {
    let (rho, tau) = slab_coefficients(slab, pol, omega, k)?;
    let kz = kz_vacuum(omega, k);
    let rho_minus = match slab.thickness {
        Thickness::Finite(d) => rho * (-Complex64::i() * 2.0 * kz * d).exp(),
        // left face of a half-space sits at −∞; never used
        Thickness::Infinite => Complex64::new(0.0, 0.0),
    };
    Ok(DiagonalScattering::new(rho, rho_minus, tau))
}

/// Scattering of body 2 occupying [d, d + δ] (or [d, ∞)):
/// R⁻ = ρ e^{2ik_z d}, R⁺ = ρ e^{−2ik_z (d+δ)}, τ unchanged.
pub fn body2_scattering(
    slab: &SlabSpec,
    pol: Polarization,
    omega: f64,
    k: f64,
    d: f64,
) -> Result<DiagonalScattering> {
    let (rho, tau) = slab_coefficients(slab, pol, omega, k)?;
    let kz = kz_vacuum(omega, k);
    let rho_minus = rho * (Complex64::i() * 2.0 * kz * d).exp();
    let rho_plus = match slab.thickness {
        Thickness::Finite(delta) => rho * (-Complex64::i() * 2.0 * kz * (d + delta)).exp(),
        Thickness::Infinite => Complex64::new(0.0, 0.0),
    };
    Ok(DiagonalScattering::new(rho_plus, rho_minus, tau))
}

/// Slab reflection on the imaginary frequency axis (ω = iξ), where all
/// quantities are real: q = √(ξ²/c² + κ²), q₁ = √(ε(iξ)ξ²/c² + κ²),
/// ρ = r(1 − e^{−2q₁δ})/(1 − r²e^{−2q₁δ}).
///
/// `eps` carries the ξ = 0 limit classification so the half-weighted n = 0
/// Matsubara term gets its correct Drude/plasma behavior.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ImagAxisMaterial {
    Mirror,
    Eps(StaticEps),
}

pub fn slab_rho_imag_axis(
    material: &ImagAxisMaterial,
    thickness: Thickness,
    pol: Polarization,
    xi: f64,
    kappa: f64,
) -> f64 {
    let q = (xi * xi / (C * C) + kappa * kappa).sqrt();
    if q == 0.0 {
        return 0.0;
    }
    let (r, q1) = match material {
        ImagAxisMaterial::Mirror => {
            return match pol {
                Polarization::Te => -1.0,
                Polarization::Tm => 1.0,
            };
        }
        ImagAxisMaterial::Eps(StaticEps::Finite(e)) => {
            let q1 = (e * xi * xi / (C * C) + kappa * kappa).sqrt();
            let r = match pol {
                Polarization::Te => (q - q1) / (q + q1),
                Polarization::Tm => (e * q - q1) / (e * q + q1),
            };
            (r, q1)
        }
        // ε ~ A/ξ: ε ξ² → 0, so q₁ → κ; r_TE → 0 and r_TM → 1
        ImagAxisMaterial::Eps(StaticEps::DrudeDivergent) => match pol {
            Polarization::Te => (0.0, kappa),
            Polarization::Tm => (1.0, kappa),
        },
        // ε ~ ω_p²/ξ²: ε ξ² → ω_p², TE keeps the plasma reflection
        ImagAxisMaterial::Eps(StaticEps::PlasmaDivergent { omega_p }) => {
            let q1 = (omega_p * omega_p / (C * C) + kappa * kappa).sqrt();
            let r = match pol {
                Polarization::Te => (q - q1) / (q + q1),
                Polarization::Tm => 1.0,
            };
            (r, q1)
        }
    };
    match thickness {
        Thickness::Infinite => r,
        Thickness::Finite(delta) => {
            if q1 * delta > DECAY_EXP_LIMIT / 2.0 {
                return r;
            }
            let e = (-2.0 * q1 * delta).exp();
            r * (1.0 - e) / (1.0 - r * r * e)
        }
    }
}

/// Propagation direction label φ = ±1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Phi {
    Plus,
    Minus,
}

impl Phi {
    pub fn sign(self) -> f64 {
        match self {
            Phi::Plus => 1.0,
            Phi::Minus => -1.0,
        }
    }

    pub fn flip(self) -> Phi {
        match self {
            Phi::Plus => Phi::Minus,
            Phi::Minus => Phi::Plus,
        }
    }
}

/// Transverse wavevector (k_x, k_y) in 1/m.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KVec {
    pub kx: f64,
    pub ky: f64,
}

impl KVec {
    pub fn mag(&self) -> f64 {
        self.kx.hypot(self.ky)
    }

    pub fn neg(&self) -> KVec {
        KVec {
            kx: -self.kx,
            ky: -self.ky,
        }
    }
}

/// Polarization unit vector ε̂_p^φ(k) as a complex 3-vector.
/// For k = 0 the transverse direction is taken along x by convention.
fn pol_vector(pol: Polarization, phi: Phi, kv: KVec, omega: f64) -> [Complex64; 3] {
    let k = kv.mag();
    let (khx, khy) = if k > 0.0 {
        (kv.kx / k, kv.ky / k)
    } else {
        (1.0, 0.0)
    };
    match pol {
        Polarization::Te => [
            Complex64::new(-khy, 0.0),
            Complex64::new(khx, 0.0),
            Complex64::new(0.0, 0.0),
        ],
        Polarization::Tm => {
            let kz = kz_vacuum(omega, k);
            let f = C / omega;
            let pkz = kz * phi.sign();
            [
                pkz * khx * f,
                pkz * khy * f,
                Complex64::new(-k * f, 0.0),
            ]
        }
    }
}

/// Plain (unconjugated) dot product of two polarization vectors.
pub fn pol_dot(
    p_out: Polarization,
    phi_out: Phi,
    k_out: KVec,
    p_in: Polarization,
    phi_in: Phi,
    k_in: KVec,
    omega: f64,
) -> Complex64 {
    let a = pol_vector(p_out, phi_out, k_out, omega);
    let b = pol_vector(p_in, phi_in, k_in, omega);
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// Matrix element ⟨k,p|R_A^φ|k′,p′⟩ of the atomic reflection operator in
/// dipole approximation, for an atom at (0, 0, z_A) with polarizability α:
///
/// ```text
/// (iω²α / 2ε₀c²k_z) (ε̂_p^φ·ε̂_{p′}^{−φ}) e^{−iφ(k_z + k_z′) z_A}
/// ```
///
/// Test utility for the reciprocity suite; the atom-force observable uses the
/// closed-form kernel instead.
pub fn atom_reflection_element(
    alpha: Complex64,
    z_a: f64,
    phi: Phi,
    mode_out: (KVec, Polarization),
    mode_in: (KVec, Polarization),
    omega: f64,
) -> Result<Complex64> {
    let (kv, p) = mode_out;
    let (kv_in, p_in) = mode_in;
    let kz = kz_vacuum(omega, kv.mag());
    if kz.norm_sqr() == 0.0 {
        return Err(Error::SingularMode {
            omega,
            k: kv.mag(),
        });
    }
    let kz_in = kz_vacuum(omega, kv_in.mag());
    let pref = Complex64::i() * omega * omega * alpha
        / (2.0 * crate::waves::EPSILON_0 * C * C * kz);
    let dot = pol_dot(p, phi, kv, p_in, phi.flip(), kv_in, omega);
    let phase = (-Complex64::i() * phi.sign() * (kz + kz_in) * z_a).exp();
    Ok(pref * dot * phase)
}

/// Matrix element ⟨k,p|T̃_A^φ|k′,p′⟩ of the modified atomic transmission
/// operator (the identity part removed). Differs from reflection by the
/// same-φ polarization dot and the (k_z − k_z′) phase.
pub fn atom_transmission_element(
    alpha: Complex64,
    z_a: f64,
    phi: Phi,
    mode_out: (KVec, Polarization),
    mode_in: (KVec, Polarization),
    omega: f64,
) -> Result<Complex64> {
    let (kv, p) = mode_out;
    let (kv_in, p_in) = mode_in;
    let kz = kz_vacuum(omega, kv.mag());
    if kz.norm_sqr() == 0.0 {
        return Err(Error::SingularMode {
            omega,
            k: kv.mag(),
        });
    }
    let kz_in = kz_vacuum(omega, kv_in.mag());
    let pref = Complex64::i() * omega * omega * alpha
        / (2.0 * crate::waves::EPSILON_0 * C * C * kz);
    let dot = pol_dot(p, phi, kv, p_in, phi, kv_in, omega);
    let phase = (-Complex64::i() * phi.sign() * (kz - kz_in) * z_a).exp();
    Ok(pref * dot * phase)
}

/// Reciprocity residual for a pair of scattering elements:
///
/// ```text
/// k_z ⟨k,p|S|k′,p′⟩  =  k_z′ (−1)^{p+p′} ⟨−k′,p′|S̃|−k,p⟩
/// ```
///
/// where S̃ = S for reflection operators and the opposite-side operator for
/// transmission. `direct` is the left element at (k, p; k′, p′), `swapped`
/// the right element at (−k′, p′; −k, p). Returns |LHS − RHS| normalized by
/// the larger magnitude, and whether it is below 1e-12.
pub fn check_reciprocity(
    direct: Complex64,
    swapped: Complex64,
    kz: Complex64,
    kz_prime: Complex64,
    p: Polarization,
    p_prime: Polarization,
) -> (bool, f64) {
    let sign = if (p.index() + p_prime.index()) % 2 == 0 {
        1.0
    } else {
        -1.0
    };
    let lhs = kz * direct;
    let rhs = kz_prime * swapped * sign;
    let scale = lhs.norm().max(rhs.norm());
    let residual = if scale > 0.0 {
        (lhs - rhs).norm() / scale
    } else {
        0.0
    };
    (residual < 1e-12, residual)
}
