//! Per-(ω, k, p) integrands for every observable.
//!
//! Real-axis kernels are normalized so that Σ_p ∫dω ∫dk of a kernel yields
//! the observable (Pa for pressure, W/m² for heat); the transverse-plane
//! measure k/(4π²) and the ħ prefactors are folded in. All kernels are in
//! the raw stress-tensor orientation of the two-body geometry (positive z
//! from body 1 toward body 2); the assembly layer applies the output sign
//! convention.
//!
//! Kernels consume frame-resolved scattering amplitudes through a
//! [`SpectralPoint`], built from the invariant combinations
//! ρ₁⁺ρ₂⁻ (the cavity round trip), ρ₁⁺(ρ₂⁻)* and (ρ₁⁻)*ρ₂⁻τ₁², so every
//! value is independent of the common frame origin to machine precision.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::scattering::{slab_rho_imag_axis, DiagonalScattering, ImagAxisMaterial, Thickness};
use crate::waves::{bose_n, kz_vacuum, n_diff, pol_dot_pm, sector, Polarization, Sector, ThermalTriple, C, HBAR};

const INV_2PI2: f64 = 1.0 / (2.0 * std::f64::consts::PI * std::f64::consts::PI);
const INV_4PI2: f64 = 1.0 / (4.0 * std::f64::consts::PI * std::f64::consts::PI);

/// Which observable family a term contributes to, for breakdown output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TermTag {
    EqT1,
    EqT2,
    AEw,
    B1,
    B2,
    B3,
    StefanBoltzmann,
    PositionIndependent,
    PropagativeInterference,
    Evanescent,
    BodyAlone,
}

impl TermTag {
    pub fn label(&self) -> &'static str {
        match self {
            TermTag::EqT1 => "eq_T1",
            TermTag::EqT2 => "eq_T2",
            TermTag::AEw => "A_ew",
            TermTag::B1 => "B1",
            TermTag::B2 => "B2",
            TermTag::B3 => "B3",
            TermTag::StefanBoltzmann => "stefan_boltzmann",
            TermTag::PositionIndependent => "position_independent",
            TermTag::PropagativeInterference => "propagative_interference",
            TermTag::Evanescent => "evanescent",
            TermTag::BodyAlone => "body_alone",
        }
    }
}

/// A tagged kernel value; finite for every valid spectral point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelValue {
    pub value: f64,
    pub tag: TermTag,
}

/// One (ω, k, p) evaluation point with the frame-resolved scattering
/// amplitudes of both bodies and the cavity separation.
#[derive(Debug, Clone, Copy)]
pub struct SpectralPoint {
    pub omega: f64,
    pub k: f64,
    pub pol: Polarization,
    pub kz: Complex64,
    /// body 1, cavity side (R⁺) and far side (R⁻), transmission
    pub r1_plus: Complex64,
    pub r1_minus: Complex64,
    pub t1: Complex64,
    /// body 2, cavity side (R⁻), transmission
    pub r2_minus: Complex64,
    pub t2: Complex64,
    pub d: f64,
}

impl SpectralPoint {
    pub fn new(
        omega: f64,
        k: f64,
        pol: Polarization,
        body1: &DiagonalScattering,
        body2: &DiagonalScattering,
        d: f64,
    ) -> Self {
        let kz = kz_vacuum(omega, k);
        SpectralPoint {
            omega,
            k,
            pol,
            kz,
            r1_plus: body1.rho_plus(kz),
            r1_minus: body1.rho_minus(kz),
            t1: body1.tau(),
            r2_minus: body2.rho_minus(kz),
            t2: body2.tau(),
            d,
        }
    }

    pub fn sector(&self) -> Sector {
        sector(self.omega, self.k)
    }

    /// Cavity factor D_p = 1 − ρ₁⁺ρ₂⁻ (the round-trip phases live inside the
    /// frame-resolved amplitudes).
    pub fn cavity(&self) -> Complex64 {
        Complex64::new(1.0, 0.0) - self.r1_plus * self.r2_minus
    }
}

/// Equilibrium Matsubara summand at (ξ_n, κ, p):
/// κ q ρ₁ρ₂ e^{−2qd} / (1 − ρ₁ρ₂ e^{−2qd}), q = √(ξ²/c² + κ²).
///
/// Non-negative for identical passive bodies; the assembly multiplies by
/// −(ħ/2π²)·M[·] so that negative pressure means attraction.
pub fn kernel_equilibrium_matsubara(
    xi: f64,
    kappa: f64,
    pol: Polarization,
    body1: &(ImagAxisMaterial, Thickness),
    body2: &(ImagAxisMaterial, Thickness),
    d: f64,
) -> f64 {
    let q = (xi * xi / (C * C) + kappa * kappa).sqrt();
    if q == 0.0 {
        return 0.0;
    }
    let rho1 = slab_rho_imag_axis(&body1.0, body1.1, pol, xi, kappa);
    let rho2 = slab_rho_imag_axis(&body2.0, body2.1, pol, xi, kappa);
    if rho1 == 0.0 || rho2 == 0.0 {
        return 0.0;
    }
    let x = rho1 * rho2 * (-2.0 * q * d).exp();
    kappa * q * x / (1.0 - x)
}

fn require_sector(point: &SpectralPoint, want: Sector, what: &'static str) -> Result<()> {
    if point.sector() != want {
        return Err(Error::SectorMismatch(what));
    }
    Ok(())
}

/// Ratio num/den with the 0/0 limits of ideal reflectors resolved to 0.
fn guarded_div(num: f64, den: f64) -> f64 {
    if num == 0.0 {
        0.0
    } else {
        num / den
    }
}

/// Evanescent pressure kernel A^(ew):
/// (ħ/2π²) k Im k_z n(ω,T) Im(ρ₁⁺ ρ₂⁻*) / |D|².
pub fn kernel_a_ew(point: &SpectralPoint, temperature: f64) -> Result<KernelValue> {
    require_sector(point, Sector::Evanescent, "A kernel is evanescent-only")?;
    let dd = point.cavity().norm_sqr();
    let num = (point.r1_plus * point.r2_minus.conj()).im;
    let value = HBAR * INV_2PI2
        * point.k
        * point.kz.im
        * bose_n(point.omega, temperature)
        * guarded_div(num, dd);
    Ok(KernelValue {
        value,
        tag: TermTag::AEw,
    })
}

/// Propagative pressure kernel B₁:
/// −(ħ/4π²) k k_z n(ω,T) [|ρ₂|² − |ρ₁|² + |τ₁|²(1 − |ρ₂|²)] / |D|².
pub fn kernel_b1_pw(point: &SpectralPoint, temperature: f64) -> Result<KernelValue> {
    require_sector(point, Sector::Propagative, "B kernels are propagative-only")?;
    let a = point.r1_plus.norm_sqr();
    let b = point.r2_minus.norm_sqr();
    let t = point.t1.norm_sqr();
    let dd = point.cavity().norm_sqr();
    let num = b - a + t * (1.0 - b);
    let value = -HBAR * INV_4PI2
        * point.k
        * point.kz.re
        * bose_n(point.omega, temperature)
        * guarded_div(num, dd);
    Ok(KernelValue {
        value,
        tag: TermTag::B1,
    })
}

/// The common interference term of B₂ and its heat analogue:
/// 2 Re[(ρ₁⁻)* ρ₂⁻ τ₁² / D], frame-invariant form of
/// 2 Re[ρ₁* ρ₂ τ₁² e^{2ik_z(d+δ₁)} / D].
fn interference_term(point: &SpectralPoint) -> f64 {
    if point.t1.norm_sqr() == 0.0 {
        return 0.0;
    }
    let x = point.r1_minus.conj() * point.r2_minus * point.t1 * point.t1 / point.cavity();
    2.0 * x.re
}

/// Propagative pressure kernel B₂:
/// −(ħ/4π²) k k_z n(ω,T) [ |τ₁|²(1 + |ρ₂|²(1 − |τ₁|²))/|D|² − |ρ₁|²
///                          − 2Re(ρ₁*ρ₂τ₁² e^{2ik_z(d+δ₁)}/D) ].
pub fn kernel_b2_pw(point: &SpectralPoint, temperature: f64) -> Result<KernelValue> {
    require_sector(point, Sector::Propagative, "B kernels are propagative-only")?;
    let a = point.r1_plus.norm_sqr();
    let b = point.r2_minus.norm_sqr();
    let t = point.t1.norm_sqr();
    let dd = point.cavity().norm_sqr();
    let bracket = guarded_div(t * (1.0 + b * (1.0 - t)), dd) - a - interference_term(point);
    let value = -HBAR * INV_4PI2
        * point.k
        * point.kz.re
        * bose_n(point.omega, temperature)
        * bracket;
    Ok(KernelValue {
        value,
        tag: TermTag::B2,
    })
}

/// Material-dependent part of the B₃ bracket:
/// −(ħ/4π²) k k_z n(ω,T) |τ₂|²(1 + |ρ₁|² − |τ₁|²)/|D|².
pub fn kernel_b3_pw_main(point: &SpectralPoint, temperature: f64) -> Result<KernelValue> {
    require_sector(point, Sector::Propagative, "B kernels are propagative-only")?;
    let a = point.r1_plus.norm_sqr();
    let t1 = point.t1.norm_sqr();
    let t2 = point.t2.norm_sqr();
    let dd = point.cavity().norm_sqr();
    let value = -HBAR * INV_4PI2
        * point.k
        * point.kz.re
        * bose_n(point.omega, temperature)
        * guarded_div(t2 * (1.0 + a - t1), dd);
    Ok(KernelValue {
        value,
        tag: TermTag::B3,
    })
}

/// The constant −1 inside the B₃ bracket, kept as its own kernel: its
/// (T₃, T₂) difference integrates to the Stefan-Boltzmann radiation pressure
/// 2σ(T₃⁴ − T₂⁴)/(3c).
pub fn kernel_b3_sb_part(point: &SpectralPoint, temperature: f64) -> Result<KernelValue> {
    require_sector(point, Sector::Propagative, "B kernels are propagative-only")?;
    let value = HBAR * INV_4PI2 * point.k * point.kz.re * bose_n(point.omega, temperature);
    Ok(KernelValue {
        value,
        tag: TermTag::StefanBoltzmann,
    })
}

/// Full printed B₃ kernel (the −1 constant retained).
pub fn kernel_b3_pw(point: &SpectralPoint, temperature: f64) -> Result<KernelValue> {
    let main = kernel_b3_pw_main(point, temperature)?;
    let sb = kernel_b3_sb_part(point, temperature)?;
    Ok(KernelValue {
        value: main.value + sb.value,
        tag: TermTag::B3,
    })
}

/// Evanescent heat kernel 𝒜^(ew):
/// (ħ/2π²) k ω n(ω,T) [Re(ρ₁⁺ρ₂⁻) − Re(ρ₁⁺ρ₂⁻*)] / |D|².
pub fn kernel_heat_a_ew(point: &SpectralPoint, temperature: f64) -> Result<KernelValue> {
    require_sector(point, Sector::Evanescent, "heat A kernel is evanescent-only")?;
    let dd = point.cavity().norm_sqr();
    let num = (point.r1_plus * point.r2_minus).re - (point.r1_plus * point.r2_minus.conj()).re;
    let value = HBAR * INV_2PI2
        * point.k
        * point.omega
        * bose_n(point.omega, temperature)
        * guarded_div(num, dd);
    Ok(KernelValue {
        value,
        tag: TermTag::AEw,
    })
}

/// Propagative heat kernel ℬ₁:
/// (ħ/4π²) k ω n(ω,T) [|ρ₁|² + |ρ₂|² − 1 − |ρ₁ρ₂|² + |τ₁|²(1 − |ρ₂|²)] / |D|².
pub fn kernel_heat_b1_pw(point: &SpectralPoint, temperature: f64) -> Result<KernelValue> {
    require_sector(point, Sector::Propagative, "heat B kernels are propagative-only")?;
    let a = point.r1_plus.norm_sqr();
    let b = point.r2_minus.norm_sqr();
    let t = point.t1.norm_sqr();
    let dd = point.cavity().norm_sqr();
    let num = a + b - 1.0 - a * b + t * (1.0 - b);
    let value = HBAR * INV_4PI2
        * point.k
        * point.omega
        * bose_n(point.omega, temperature)
        * guarded_div(num, dd);
    Ok(KernelValue {
        value,
        tag: TermTag::B1,
    })
}

/// Propagative heat kernel ℬ₂:
/// (ħ/4π²) k ω n(ω,T) [ 1 − |ρ₁|² − |τ₁|²(1 − |ρ₂|²(1 − |τ₁|²))/|D|²
///                       − 2Re(ρ₁*ρ₂τ₁² e^{2ik_z(d+δ₁)}/D) ].
pub fn kernel_heat_b2_pw(point: &SpectralPoint, temperature: f64) -> Result<KernelValue> {
    require_sector(point, Sector::Propagative, "heat B kernels are propagative-only")?;
    let a = point.r1_plus.norm_sqr();
    let b = point.r2_minus.norm_sqr();
    let t = point.t1.norm_sqr();
    let dd = point.cavity().norm_sqr();
    let bracket =
        1.0 - a - guarded_div(t * (1.0 - b * (1.0 - t)), dd) - interference_term(point);
    let value =
        HBAR * INV_4PI2 * point.k * point.omega * bose_n(point.omega, temperature) * bracket;
    Ok(KernelValue {
        value,
        tag: TermTag::B2,
    })
}

/// Propagative heat kernel ℬ₃:
/// (ħ/4π²) k ω n(ω,T) |τ₂|²(1 − |ρ₁|² − |τ₁|²)/|D|².
pub fn kernel_heat_b3_pw(point: &SpectralPoint, temperature: f64) -> Result<KernelValue> {
    require_sector(point, Sector::Propagative, "heat B kernels are propagative-only")?;
    let a = point.r1_plus.norm_sqr();
    let t1 = point.t1.norm_sqr();
    let t2 = point.t2.norm_sqr();
    let dd = point.cavity().norm_sqr();
    let value = HBAR * INV_4PI2
        * point.k
        * point.omega
        * bose_n(point.omega, temperature)
        * guarded_div(t2 * (1.0 - a - t1), dd);
    Ok(KernelValue {
        value,
        tag: TermTag::B3,
    })
}

/// Term selector for the atom-force bracket.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AtomTerm {
    /// Position-independent, propagative: k (|ρ|² + |τ|² − 1); weight n₁₃.
    PositionIndependent = 1,
    /// Propagative interference: W = k (ε̂⁺·ε̂⁻) ρ e^{2ik_z z_A};
    /// enters as n₃₁ W + n₂₃ W*.
    PropagativeInterference = 2,
    /// Evanescent: k (ε̂⁺·ε̂⁻) ρ* e^{2ik_z z_A} (real decay); weight n₂₁.
    Evanescent = 3,
}

/// One term of the atom-force bracket at (ω, k, p), for a slab with bare
/// coefficients (ρ, τ) whose facing surface is at z = 0 and an atom at z_A.
///
/// Returns the complex bracket content without the ω²α(ω) factor and without
/// the occupation weights; the assembly combines the terms under
/// −ħ/(4π²ε₀c²) Im{ Σ_p ∫dω ω²α(ω) [n₁₃·T₁ + n₃₁·T₂ + n₂₃·T₂* + n₂₁·T₃] }.
pub fn kernel_atom(
    omega: f64,
    k: f64,
    pol: Polarization,
    rho: Complex64,
    tau: Complex64,
    z_a: f64,
    term: AtomTerm,
) -> Result<Complex64> {
    let sec = sector(omega, k);
    let kz = kz_vacuum(omega, k);
    match term {
        AtomTerm::PositionIndependent => {
            if sec != Sector::Propagative {
                return Err(Error::SectorMismatch(
                    "atom position-independent term is propagative-only",
                ));
            }
            Ok(Complex64::new(
                k * (rho.norm_sqr() + tau.norm_sqr() - 1.0),
                0.0,
            ))
        }
        AtomTerm::PropagativeInterference => {
            if sec != Sector::Propagative {
                return Err(Error::SectorMismatch(
                    "atom interference term is propagative-only",
                ));
            }
            let dot = pol_dot_pm(pol, omega, k);
            Ok(rho * (Complex64::i() * 2.0 * kz * z_a).exp() * (k * dot))
        }
        AtomTerm::Evanescent => {
            if sec != Sector::Evanescent {
                return Err(Error::SectorMismatch(
                    "atom evanescent term is evanescent-only",
                ));
            }
            let dot = pol_dot_pm(pol, omega, k);
            Ok(rho.conj() * (Complex64::i() * 2.0 * kz * z_a).exp() * (k * dot))
        }
    }
}

/// Observable selector of the unified nonequilibrium expression Δ_m:
/// m = 1 is the heat transfer, m = 2 the force.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeltaKind {
    Heat = 1,
    Force = 2,
}

impl DeltaKind {
    fn m(self) -> i32 {
        self as i32
    }
}

/// Body-alone kernel at a propagative (ω, k, p) point, for a body at T₁
/// immersed in environmental radiation at T₃.
///
/// Heat (m = 1): (ħ/4π²) k ω n₃₁ [2 − |ρ⁺|² − |ρ⁻|² − |τ⁺|² − |τ⁻|²],
/// the two-sided absorptivity. Force (m = 2): −(ħ/4π²) k n₃₁ k_z
/// (|ρ⁺|² − |ρ⁻|²), identically zero for a homogeneous slab.
pub fn kernel_body_alone(
    kind: DeltaKind,
    omega: f64,
    k: f64,
    body: &SpectralBodyAlone,
    t1: f64,
    t3: f64,
) -> Result<f64> {
    if sector(omega, k) != Sector::Propagative {
        return Err(Error::SectorMismatch("body-alone kernel is propagative-only"));
    }
    let kz = kz_vacuum(omega, k).re;
    if kz == 0.0 {
        return Ok(0.0);
    }
    let n31 = n_diff(omega, t3, t1);
    let rp = body.rho_plus.norm_sqr();
    let rm = body.rho_minus.norm_sqr();
    let tt = body.tau.norm_sqr();
    match kind {
        DeltaKind::Heat => {
            Ok(HBAR * INV_4PI2 * k * omega * n31 * (2.0 - rp - rm - 2.0 * tt))
        }
        DeltaKind::Force => Ok(-HBAR * INV_4PI2 * k * n31 * kz * (rp - rm)),
    }
}

/// Both-side amplitudes of an isolated body at one (ω, k, p) point.
#[derive(Debug, Clone, Copy)]
pub struct SpectralBodyAlone {
    pub rho_plus: Complex64,
    pub rho_minus: Complex64,
    pub tau: Complex64,
}

/// The unified nonequilibrium kernel Δ_m reduced to the diagonal
/// (translationally invariant) case, evaluated literally from the operator
/// expression with its auxiliary functions f_α, g_α, u_α. Projectors become
/// sector-restricted powers of k_z, the intracavity operators U^(12) = U^(21)
/// become 1/D, and adjoints become conjugates.
///
/// Exists as the internal oracle: summed over sectors and integrated it must
/// reproduce the explicit A/B (force) and 𝒜/ℬ (heat) kernel assemblies
/// pointwise.
pub fn kernel_delta_general_diagonal(
    kind: DeltaKind,
    point: &SpectralPoint,
    triple: &ThermalTriple,
) -> f64 {
    let m = kind.m();
    let sign_m = if m % 2 == 0 { 1.0 } else { -1.0 }; // (−1)^m
    let kz = point.kz;
    if kz.norm_sqr() == 0.0 {
        return 0.0; // light line: every kernel vanishes (measure zero)
    }
    let pw = point.sector() == Sector::Propagative;
    let zero = Complex64::new(0.0, 0.0);

    // sector-restricted k_z powers
    let p_pw = |n: i32| -> Complex64 {
        if pw {
            kz.powi(n)
        } else {
            zero
        }
    };
    let p_ew = |n: i32| -> Complex64 {
        if !pw {
            kz.powi(n)
        } else {
            zero
        }
    };

    let r1p = point.r1_plus;
    let r1m = point.r1_minus;
    let t1 = point.t1;
    let r2m = point.r2_minus;
    let t2 = point.t2;
    let u = Complex64::new(1.0, 0.0) / point.cavity();
    let u2 = u.norm_sqr();

    // f_{-1}(R) = −R P₋₁^pw R† + R P₋₁^ew − P₋₁^ew R†
    let f_m1 = |r: Complex64| -> Complex64 {
        -r.norm_sqr() * p_pw(-1) + (r - r.conj()) * p_ew(-1)
    };
    // f_m(R) = (−1)^m R† P_m^pw R + R† P_m^ew + (−1)^m P_m^ew R
    let f_m = |r: Complex64| -> Complex64 {
        sign_m * r.norm_sqr() * p_pw(m) + (r.conj() + sign_m * r) * p_ew(m)
    };
    // g_α(T) = T P_α^pw T† − P_α^pw (α = −1), T† P_m^pw T − P_m^pw (α = m)
    let g_m1 = |t: Complex64| -> Complex64 { (t.norm_sqr() - 1.0) * p_pw(-1) };
    let g_m = |t: Complex64| -> Complex64 { (t.norm_sqr() - 1.0) * p_pw(m) };
    // u_α = U P_α^pw U† − P_α^pw
    let u_m1 = (u2 - 1.0) * p_pw(-1);
    let u_m = (u2 - 1.0) * p_pw(m);

    let n12 = n_diff(point.omega, triple.t1, triple.t2);
    let n13 = n_diff(point.omega, triple.t1, triple.t3);
    let n23 = n_diff(point.omega, triple.t2, triple.t3);

    let mut total = zero;

    if n12 != 0.0 {
        let row = (u2 * (2.0 * g_m(t1) - f_m(r1p)) + u_m) * (p_pw(-1) + f_m1(r2m))
            + sign_m * (u2 * f_m1(r1p) + u_m1) * (p_pw(m) + f_m(r2m));
        total += 0.5 * n12 * row;
    }

    if n13 != 0.0 {
        let y1 = -sign_m * (u2 * g_m1(t1) + u_m1) * (p_pw(m) + f_m(r2m));
        let y2 = p_pw(m) * r1m * p_pw(-1) * r1m.conj();
        let y3 = (u2 * g_m(t1) + u_m) * r2m * p_pw(-1) * r2m.conj();
        let y4 = u2 * (p_pw(m) + g_m(t1)) * r2m * g_m1(t1) * r2m.conj();
        let y5c = p_pw(m) * r1m * p_pw(-1) * t1.conj() * u.conj() * r2m.conj() * t1.conj();
        let y5 = 2.0 * y5c.re;
        total += n13 * (y1 + y2 + y3 + y4 + Complex64::new(y5, 0.0));
    }

    if n23 != 0.0 {
        let row = u2 * (g_m(t1) - f_m(r1p)) * (p_pw(-1) + g_m1(t2));
        total += n23 * row;
    }

    let prefactor = if m % 2 == 0 { -1.0 } else { 1.0 }; // (−1)^{m+1}
    prefactor * HBAR * INV_4PI2 * point.k * point.omega.powi(2 - m) * total.re
}

/// The explicit §-kernel combination at one point, i.e. the integrand of the
/// paper-orientation ΔP (force) or h₁ (heat) with all occupation differences
/// applied. This is the second route of the dual-path oracle.
pub fn kernel_delta_explicit(
    kind: DeltaKind,
    point: &SpectralPoint,
    triple: &ThermalTriple,
) -> Result<f64> {
    let (t1, t2, t3) = (triple.t1, triple.t2, triple.t3);
    match (kind, point.sector()) {
        (DeltaKind::Force, Sector::Evanescent) => {
            Ok(kernel_a_ew(point, t1)?.value - kernel_a_ew(point, t2)?.value)
        }
        (DeltaKind::Force, Sector::Propagative) => Ok(kernel_b1_pw(point, t1)?.value
            - kernel_b1_pw(point, t2)?.value
            + kernel_b2_pw(point, t3)?.value
            - kernel_b2_pw(point, t1)?.value
            + kernel_b3_pw(point, t3)?.value
            - kernel_b3_pw(point, t2)?.value),
        (DeltaKind::Heat, Sector::Evanescent) => {
            Ok(kernel_heat_a_ew(point, t1)?.value - kernel_heat_a_ew(point, t2)?.value)
        }
        (DeltaKind::Heat, Sector::Propagative) => Ok(kernel_heat_b1_pw(point, t1)?.value
            - kernel_heat_b1_pw(point, t2)?.value
            + kernel_heat_b2_pw(point, t3)?.value
            - kernel_heat_b2_pw(point, t1)?.value
            + kernel_heat_b3_pw(point, t3)?.value
            - kernel_heat_b3_pw(point, t2)?.value),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::materials::{DielectricModel, Oscillator, StaticEps};
    use crate::scattering::{body1_scattering, body2_scattering, SlabSpec};
    use approx::assert_relative_eq;

    fn lossy_model(seed: f64) -> DielectricModel {
        DielectricModel::drude_lorentz(
            1.0,
            vec![Oscillator {
                omega0: 1e15 * seed,
                omega_p: 1.2e15,
                gamma: 5e13 * seed,
            }],
        )
        .unwrap()
    }

    fn point_for(
        omega: f64,
        k: f64,
        pol: Polarization,
        d: f64,
        delta1: f64,
        delta2: f64,
    ) -> SpectralPoint {
        let s1 = SlabSpec::new(lossy_model(1.0), Thickness::Finite(delta1)).unwrap();
        let s2 = SlabSpec::new(lossy_model(0.7), Thickness::Finite(delta2)).unwrap();
        let b1 = body1_scattering(&s1, pol, omega, k).unwrap();
        let b2 = body2_scattering(&s2, pol, omega, k, d).unwrap();
        SpectralPoint::new(omega, k, pol, &b1, &b2, d)
    }

    fn transparent_point(omega: f64, k: f64, pol: Polarization, d: f64) -> SpectralPoint {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let b = DiagonalScattering::new(zero, zero, one);
        SpectralPoint::new(omega, k, pol, &b, &b, d)
    }

    fn black_point(omega: f64, k: f64, pol: Polarization, d: f64) -> SpectralPoint {
        let zero = Complex64::new(0.0, 0.0);
        let b = DiagonalScattering::new(zero, zero, zero);
        SpectralPoint::new(omega, k, pol, &b, &b, d)
    }

    #[test]
    fn matsubara_kernel_vacuum_body_is_zero() {
        let vac = (ImagAxisMaterial::Eps(StaticEps::Finite(1.0)), Thickness::Infinite);
        let lossy = (
            ImagAxisMaterial::Eps(StaticEps::Finite(3.0)),
            Thickness::Infinite,
        );
        // ε = 1 gives r = 0 on the imaginary axis
        let v = kernel_equilibrium_matsubara(1e14, 1e6, Polarization::Te, &vac, &lossy, 1e-6);
        assert_eq!(v, 0.0);
    }

    #[test]
    fn matsubara_mirror_n0_matches_geometric_series() {
        // at ξ = 0 with ideal mirrors the κ-integrand is κ²e^{−2κd}/(1−e^{−2κd});
        // its integral is ζ(3)/(4d³), summed here independently
        let mirror = (ImagAxisMaterial::Mirror, Thickness::Infinite);
        let d = 1e-6;
        let cfg = crate::quadrature::QuadratureConfig::default();
        let est = crate::quadrature::integrate_1d(
            |kappa| {
                Ok(kernel_equilibrium_matsubara(
                    0.0,
                    kappa,
                    Polarization::Tm,
                    &mirror,
                    &mirror,
                    d,
                ))
            },
            0.0,
            cfg.evanescent_cut_factor / (2.0 * d),
            &[],
            &cfg,
            "mirror n0",
        )
        .unwrap();
        // oracle: Σ_{m≥1} ∫ κ² e^{−2κdm} dκ = Σ 2/(2dm)³ = ζ(3)/(4d³);
        // truncation tail after M terms is ~1/(2M²) relative
        let mut oracle = 0.0;
        for mm in 1..50_000 {
            oracle += 2.0 / (2.0 * d * mm as f64).powi(3);
        }
        assert_relative_eq!(est.value, oracle, max_relative = 1e-8);
    }

    #[test]
    fn nonequilibrium_kernels_vanish_at_zero_temperature() {
        let omega = 1.3e15;
        let pol = Polarization::Tm;
        let p_pw = point_for(omega, 0.4 * omega / C, pol, 2e-6, 1e-6, 3e-6);
        assert_eq!(kernel_b1_pw(&p_pw, 0.0).unwrap().value, 0.0);
        assert_eq!(kernel_b2_pw(&p_pw, 0.0).unwrap().value, 0.0);
        assert_eq!(kernel_b3_pw(&p_pw, 0.0).unwrap().value, 0.0);
        let p_ew = point_for(omega, 1.9 * omega / C, pol, 2e-6, 1e-6, 3e-6);
        assert_eq!(kernel_a_ew(&p_ew, 0.0).unwrap().value, 0.0);
        assert_eq!(kernel_heat_a_ew(&p_ew, 0.0).unwrap().value, 0.0);
    }

    #[test]
    fn sector_mismatch_is_rejected() {
        let omega = 1.3e15;
        let p_pw = point_for(omega, 0.4 * omega / C, Polarization::Te, 2e-6, 1e-6, 3e-6);
        assert!(matches!(
            kernel_a_ew(&p_pw, 300.0),
            Err(Error::SectorMismatch(_))
        ));
        let p_ew = point_for(omega, 1.4 * omega / C, Polarization::Te, 2e-6, 1e-6, 3e-6);
        assert!(matches!(
            kernel_b1_pw(&p_ew, 300.0),
            Err(Error::SectorMismatch(_))
        ));
    }

    #[test]
    fn transparent_b3_bracket_is_minus_one() {
        let omega = 1e15;
        let k = 0.5 * omega / C;
        let pt = transparent_point(omega, k, Polarization::Te, 1e-6);
        let full = kernel_b3_pw(&pt, 300.0).unwrap().value;
        let sb = kernel_b3_sb_part(&pt, 300.0).unwrap().value;
        // bracket = 1·(1+0−1) − 1 = −1, so the full kernel equals the SB part
        assert_relative_eq!(full, sb, max_relative = 1e-14);
        assert!(sb > 0.0);
    }

    #[test]
    fn mirror_pair_exchanges_no_heat() {
        let omega = 1e15;
        let k = 0.5 * omega / C;
        let d = 1.1e-6;
        let m = SlabSpec::new(DielectricModel::PerfectMirror, Thickness::Infinite).unwrap();
        for pol in Polarization::BOTH {
            let b1 = body1_scattering(&m, pol, omega, k).unwrap();
            let b2 = body2_scattering(&m, pol, omega, k, d).unwrap();
            let pt = SpectralPoint::new(omega, k, pol, &b1, &b2, d);
            assert_eq!(kernel_heat_b1_pw(&pt, 300.0).unwrap().value, 0.0);
            assert_eq!(kernel_heat_b2_pw(&pt, 300.0).unwrap().value, 0.0);
            assert_eq!(kernel_heat_b3_pw(&pt, 300.0).unwrap().value, 0.0);
        }
    }

    #[test]
    fn black_pair_b1_numerator_is_minus_one() {
        let omega = 1e15;
        let k = 0.5 * omega / C;
        let pt = black_point(omega, k, Polarization::Te, 1e-6);
        let v = kernel_heat_b1_pw(&pt, 300.0).unwrap().value;
        let expected = -HBAR * INV_4PI2 * k * omega * bose_n(omega, 300.0);
        assert_relative_eq!(v, expected, max_relative = 1e-14);
    }

    #[test]
    fn atom_kernel_trivial_cases() {
        let omega = 1e15;
        let k_pw = 0.5 * omega / C;
        let k_ew = 1.5 * omega / C;
        // transparent slab: every term zero
        let zero = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        for term in [AtomTerm::PositionIndependent, AtomTerm::PropagativeInterference] {
            let v = kernel_atom(omega, k_pw, Polarization::Te, zero, one, 1e-6, term).unwrap();
            assert!(v.norm() < 1e-18);
        }
        let v =
            kernel_atom(omega, k_ew, Polarization::Te, zero, one, 1e-6, AtomTerm::Evanescent)
                .unwrap();
        assert_eq!(v, zero);
        // sector constraints
        assert!(kernel_atom(
            omega,
            k_ew,
            Polarization::Te,
            zero,
            one,
            1e-6,
            AtomTerm::PositionIndependent
        )
        .is_err());
        assert!(kernel_atom(
            omega,
            k_pw,
            Polarization::Te,
            zero,
            one,
            1e-6,
            AtomTerm::Evanescent
        )
        .is_err());
    }

    #[test]
    fn atom_evanescent_term_decays() {
        let omega = 1e15;
        let k = 1.5 * omega / C;
        let rho = Complex64::new(0.4, 0.3);
        let one_um =
            kernel_atom(omega, k, Polarization::Tm, rho, Complex64::new(0.0, 0.0), 1e-6, AtomTerm::Evanescent)
                .unwrap();
        let two_um =
            kernel_atom(omega, k, Polarization::Tm, rho, Complex64::new(0.0, 0.0), 2e-6, AtomTerm::Evanescent)
                .unwrap();
        let kappa = kz_vacuum(omega, k).im;
        assert_relative_eq!(
            two_um.norm() / one_um.norm(),
            (-2.0 * kappa * 1e-6).exp(),
            max_relative = 1e-12
        );
    }

    #[test]
    fn body_alone_force_kernel_vanishes_for_slabs() {
        let omega = 1.2e15;
        let k = 0.3 * omega / C;
        let slab = SlabSpec::new(lossy_model(1.0), Thickness::Finite(2e-6)).unwrap();
        for pol in Polarization::BOTH {
            let sc = body1_scattering(&slab, pol, omega, k).unwrap();
            let kz = kz_vacuum(omega, k);
            let body = SpectralBodyAlone {
                rho_plus: sc.rho_plus(kz),
                rho_minus: sc.rho_minus(kz),
                tau: sc.tau(),
            };
            let v = kernel_body_alone(DeltaKind::Force, omega, k, &body, 0.0, 300.0).unwrap();
            assert!(v.abs() < 1e-40, "force kernel {v}");
            // equal temperatures: both observables vanish
            let h = kernel_body_alone(DeltaKind::Heat, omega, k, &body, 300.0, 300.0).unwrap();
            assert_eq!(h, 0.0);
        }
    }

    #[test]
    fn unified_kernel_zero_at_equilibrium() {
        let omega = 1.1e15;
        let triple = ThermalTriple::new(350.0, 350.0, 350.0).unwrap();
        for (kfrac, pol) in [(0.3, Polarization::Te), (1.7, Polarization::Tm)] {
            let pt = point_for(omega, kfrac * omega / C, pol, 2e-6, 1e-6, 4e-6);
            assert_eq!(
                kernel_delta_general_diagonal(DeltaKind::Force, &pt, &triple),
                0.0
            );
            assert_eq!(
                kernel_delta_general_diagonal(DeltaKind::Heat, &pt, &triple),
                0.0
            );
        }
    }

    #[test]
    fn unified_kernel_matches_explicit_at_sample_points() {
        let triple = ThermalTriple::new(320.0, 140.0, 550.0).unwrap();
        for (ofrac, kfrac, pol, d_um) in [
            (0.8, 0.25, Polarization::Te, 1.5),
            (1.3, 0.85, Polarization::Tm, 0.8),
            (0.6, 1.4, Polarization::Te, 2.5),
            (1.1, 2.3, Polarization::Tm, 0.5),
        ] {
            let omega = ofrac * 1e15;
            let pt = point_for(omega, kfrac * omega / C, pol, d_um * 1e-6, 2e-6, 5e-6);
            for kind in [DeltaKind::Force, DeltaKind::Heat] {
                let general = kernel_delta_general_diagonal(kind, &pt, &triple);
                let explicit = kernel_delta_explicit(kind, &pt, &triple).unwrap();
                let scale = general.abs().max(explicit.abs()).max(1e-15);
                assert!(
                    (general - explicit).abs() / scale < 1e-9,
                    "{kind:?} at ({ofrac}, {kfrac}, {pol:?}): {general} vs {explicit}"
                );
            }
        }
    }

    #[test]
    fn antisymmetry_under_temperature_swap_for_identical_bodies() {
        // with body1 = body2 the A/B1 pair flips sign under T1 ↔ T2
        let omega = 1.2e15;
        let d = 1.5e-6;
        let s = SlabSpec::new(lossy_model(1.0), Thickness::Finite(2e-6)).unwrap();
        for (kfrac, pol) in [(0.5, Polarization::Tm), (1.8, Polarization::Te)] {
            let k = kfrac * omega / C;
            let b1 = body1_scattering(&s, pol, omega, k).unwrap();
            let b2 = body2_scattering(&s, pol, omega, k, d).unwrap();
            let pt = SpectralPoint::new(omega, k, pol, &b1, &b2, d);
            let (ta, tb) = (400.0, 150.0);
            if pt.sector() == Sector::Evanescent {
                let fwd = kernel_a_ew(&pt, ta).unwrap().value - kernel_a_ew(&pt, tb).unwrap().value;
                let rev = kernel_a_ew(&pt, tb).unwrap().value - kernel_a_ew(&pt, ta).unwrap().value;
                assert_eq!(fwd, -rev);
            } else {
                let fwd =
                    kernel_b1_pw(&pt, ta).unwrap().value - kernel_b1_pw(&pt, tb).unwrap().value;
                let rev =
                    kernel_b1_pw(&pt, tb).unwrap().value - kernel_b1_pw(&pt, ta).unwrap().value;
                assert_eq!(fwd, -rev);
            }
        }
    }

    #[test]
    fn frame_shift_leaves_kernels_unchanged() {
        let omega = 0.9e15;
        let d = 1.2e-6;
        let triple = ThermalTriple::new(300.0, 80.0, 450.0).unwrap();
        let s1 = SlabSpec::new(lossy_model(1.0), Thickness::Finite(2e-6)).unwrap();
        let s2 = SlabSpec::new(lossy_model(0.6), Thickness::Finite(3e-6)).unwrap();
        for (kfrac, pol) in [(0.4, Polarization::Te), (2.2, Polarization::Tm)] {
            let k = kfrac * omega / C;
            let b1 = body1_scattering(&s1, pol, omega, k).unwrap();
            let b2 = body2_scattering(&s2, pol, omega, k, d).unwrap();
            let pt = SpectralPoint::new(omega, k, pol, &b1, &b2, d);
            let shift = 0.7e-6;
            let b1s = crate::scattering::translate_slab(&b1, shift);
            let b2s = crate::scattering::translate_slab(&b2, shift);
            let pts = SpectralPoint::new(omega, k, pol, &b1s, &b2s, d);
            for kind in [DeltaKind::Force, DeltaKind::Heat] {
                let v0 = kernel_delta_explicit(kind, &pt, &triple).unwrap();
                let v1 = kernel_delta_explicit(kind, &pts, &triple).unwrap();
                let scale = v0.abs().max(1e-300);
                assert!(
                    (v0 - v1).abs() / scale < 1e-12,
                    "{kind:?}: {v0} vs {v1}"
                );
            }
        }
    }

    #[test]
    fn evanescent_kernel_decays_exactly_with_distance() {
        let omega = 1e15;
        let k = 1.6 * omega / C;
        let pol = Polarization::Tm;
        let s1 = SlabSpec::new(lossy_model(1.0), Thickness::Finite(2e-6)).unwrap();
        let s2 = SlabSpec::new(lossy_model(0.6), Thickness::Finite(3e-6)).unwrap();
        let kz_im = kz_vacuum(omega, k).im;
        let d0 = 1e-6;
        let dd = 0.4e-6;
        let make = |d: f64| {
            let b1 = body1_scattering(&s1, pol, omega, k).unwrap();
            let b2 = body2_scattering(&s2, pol, omega, k, d).unwrap();
            SpectralPoint::new(omega, k, pol, &b1, &b2, d)
        };
        // far apart the cavity factor is ≈ 1 and A scales as e^{−2dκ}
        let far = make(d0 + 10.0e-6);
        let farther = make(d0 + 10.0e-6 + dd);
        let a1 = kernel_a_ew(&far, 300.0).unwrap().value;
        let a2 = kernel_a_ew(&farther, 300.0).unwrap().value;
        let ratio = a2 / a1;
        assert_relative_eq!(ratio, (-2.0 * kz_im * dd).exp(), max_relative = 1e-6);
    }
}
