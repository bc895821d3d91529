//! Assembly of kernels into physical observables.
//!
//! Each observable is a set of named terms; every term is one adaptive
//! double integral (inner k or Im k_z, outer ω) or a Matsubara sum, with the
//! occupation differences applied inside the integrand so that equal
//! temperatures give exact zeros rather than cancellations of two large
//! integrals. Per-term errors are summed in quadrature into the row
//! estimate.
//!
//! Sign conventions at this layer: pressure < 0 means attraction of body 1
//! toward body 2 (the raw stress-tensor kernels are flipped accordingly);
//! heat > 0 means body 1 absorbs; the atom force < 0 means attraction
//! toward the slab.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::kernels::{
    kernel_a_ew, kernel_atom, kernel_b1_pw, kernel_b2_pw, kernel_b3_pw_main, kernel_b3_sb_part,
    kernel_body_alone, kernel_delta_explicit, kernel_delta_general_diagonal,
    kernel_equilibrium_matsubara, kernel_heat_a_ew, kernel_heat_b1_pw, kernel_heat_b2_pw,
    kernel_heat_b3_pw, AtomTerm, DeltaKind, SpectralBodyAlone, SpectralPoint, TermTag,
};
use crate::materials::{DielectricModel, StaticEps};
use crate::quadrature::{
    cavity_xi_scale, integrate_1d, integrate_adaptive, matsubara_sum, Estimate, QuadratureConfig,
};
use crate::scattering::{
    slab_coefficients, translate_slab, DiagonalScattering, ImagAxisMaterial, SlabSpec, Thickness,
};
use crate::waves::{
    kz_vacuum, n_diff, Polarization, ThermalTriple, C, EPSILON_0, HBAR, K_B,
};

/// One named contribution to an observable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TermValue {
    pub tag: TermTag,
    pub value: f64,
    pub error: f64,
}

/// An observable value with its error estimate and per-term breakdown.
/// The terms sum to the value exactly; the error is the quadrature sum of
/// the term errors.
#[derive(Debug, Clone, PartialEq)]
pub struct Observation {
    pub value: f64,
    pub error: f64,
    pub terms: Vec<TermValue>,
}

impl Observation {
    fn from_terms(terms: Vec<TermValue>) -> Self {
        let value = terms.iter().map(|t| t.value).sum();
        let error = terms.iter().map(|t| t.error * t.error).sum::<f64>().sqrt();
        Observation {
            value,
            error,
            terms,
        }
    }
}

/// A planar body seen by the assembly: frame-resolved scattering on the real
/// axis and the (material, thickness) profile on the imaginary axis.
pub trait Body: Sync {
    /// Scattering amplitudes at (ω, k, p) in the common frame.
    fn scattering(&self, pol: Polarization, omega: f64, k: f64) -> Result<DiagonalScattering>;

    /// Per-ω context with the permittivity resolved once.
    fn at_omega<'a>(&'a self, omega: f64) -> Result<Box<dyn BodyAtOmega + 'a>>;

    /// Imaginary-axis response at ξ ≥ 0 (ξ = 0 resolves the static limit).
    fn imag_axis(&self, xi: f64) -> Result<(ImagAxisMaterial, Thickness)>;

    fn max_resonance_omega(&self) -> Option<f64>;

    /// Characteristic extent of the body along z as seen from its cavity
    /// face, for ω-breakpoint seeding. Half-spaces report 0 (their internal
    /// round trips are damped away by the lossy-material requirement).
    fn z_extent(&self) -> f64 {
        0.0
    }

    /// True when the body scatters nothing at all; lets assemblies skip
    /// integrals that are identically zero.
    fn is_transparent(&self) -> bool {
        false
    }
}

/// Per-ω body context.
pub trait BodyAtOmega {
    fn scattering(&self, pol: Polarization, k: f64) -> Result<DiagonalScattering>;
    /// Permittivity at this ω if the body has one (used for breakpoints).
    fn eps(&self) -> Option<Complex64>;
}

/// Geometric placement of a slab along z.
#[derive(Debug, Clone, Copy, PartialEq)]
enum Placement {
    /// Occupies [z − δ, z] (or (−∞, z]); the cavity side is ρ⁺ at face z.
    EndingAt(f64),
    /// Occupies [z, z + δ] (or [z, ∞)); the cavity side is ρ⁻ at face z.
    StartingAt(f64),
}

/// A homogeneous slab positioned on the z axis.
#[derive(Debug, Clone)]
pub struct SlabBody {
    spec: SlabSpec,
    placement: Placement,
}

impl SlabBody {
    /// Body 1 of the standard layout: fills [−δ, 0].
    pub fn first(spec: SlabSpec) -> Self {
        SlabBody {
            spec,
            placement: Placement::EndingAt(0.0),
        }
    }

    /// Body 2 of the standard layout: fills [d, d + δ].
    pub fn second(spec: SlabSpec, d: f64) -> Self {
        SlabBody {
            spec,
            placement: Placement::StartingAt(d),
        }
    }

    pub fn spec(&self) -> &SlabSpec {
        &self.spec
    }

    fn response_at(&self, omega: f64) -> Result<SlabAtOmega<'_>> {
        let eps = match self.spec.material {
            DielectricModel::PerfectMirror => None,
            ref m => Some(m.permittivity(omega)?),
        };
        Ok(SlabAtOmega {
            body: self,
            omega,
            eps,
        })
    }
}

struct SlabAtOmega<'a> {
    body: &'a SlabBody,
    omega: f64,
    eps: Option<Complex64>,
}

impl SlabAtOmega<'_> {
    fn build(&self, pol: Polarization, k: f64) -> Result<DiagonalScattering> {
        let spec = &self.body.spec;
        let (rho, tau) = match self.eps {
            None => slab_coefficients(spec, pol, self.omega, k)?, // mirror path
            Some(eps) => {
                crate::scattering::slab_coefficients_resolved(eps, spec.thickness, pol, self.omega, k)?
            }
        };
        let kz = kz_vacuum(self.omega, k);
        let i2kz = Complex64::i() * 2.0 * kz;
        let sc = match self.body.placement {
            Placement::EndingAt(z) => {
                let rho_plus = rho * (-i2kz * z).exp();
                let rho_minus = match spec.thickness {
                    Thickness::Finite(delta) => rho * (i2kz * (z - delta)).exp(),
                    Thickness::Infinite => Complex64::new(0.0, 0.0),
                };
                DiagonalScattering::new(rho_plus, rho_minus, tau)
            }
            Placement::StartingAt(z) => {
                let rho_minus = rho * (i2kz * z).exp();
                let rho_plus = match spec.thickness {
                    Thickness::Finite(delta) => rho * (-i2kz * (z + delta)).exp(),
                    Thickness::Infinite => Complex64::new(0.0, 0.0),
                };
                DiagonalScattering::new(rho_plus, rho_minus, tau)
            }
        };
        Ok(sc)
    }
}

impl BodyAtOmega for SlabAtOmega<'_> {
    fn scattering(&self, pol: Polarization, k: f64) -> Result<DiagonalScattering> {
        self.build(pol, k)
    }

    fn eps(&self) -> Option<Complex64> {
        self.eps
    }
}

impl Body for SlabBody {
    fn scattering(&self, pol: Polarization, omega: f64, k: f64) -> Result<DiagonalScattering> {
        self.response_at(omega)?.build(pol, k)
    }

    fn at_omega<'a>(&'a self, omega: f64) -> Result<Box<dyn BodyAtOmega + 'a>> {
        Ok(Box::new(self.response_at(omega)?))
    }

    fn imag_axis(&self, xi: f64) -> Result<(ImagAxisMaterial, Thickness)> {
        let mat = match &self.spec.material {
            DielectricModel::PerfectMirror => ImagAxisMaterial::Mirror,
            m => {
                if xi > 0.0 {
                    ImagAxisMaterial::Eps(StaticEps::Finite(m.permittivity_imag_axis(xi)?))
                } else {
                    ImagAxisMaterial::Eps(m.eps_imag_axis_static()?)
                }
            }
        };
        Ok((mat, self.spec.thickness))
    }

    fn max_resonance_omega(&self) -> Option<f64> {
        self.spec.material.max_resonance_omega()
    }

    fn z_extent(&self) -> f64 {
        match self.spec.thickness {
            // beyond ~30 µm internal interference is material-damped for
            // any thickness the infinite-slab rules would not cover better
            Thickness::Finite(delta) => delta.min(30e-6),
            Thickness::Infinite => 0.0,
        }
    }

    fn is_transparent(&self) -> bool {
        matches!(self.spec.material, DielectricModel::Vacuum)
    }
}

/// An idealized perfectly absorbing body (ρ = τ = 0 on both sides), used by
/// the blackbody closed-form checks. It has no equilibrium (imaginary-axis)
/// response.
#[derive(Debug, Clone, Copy)]
pub struct BlackBody;

struct BlackAtOmega;

impl BodyAtOmega for BlackAtOmega {
    fn scattering(&self, _pol: Polarization, _k: f64) -> Result<DiagonalScattering> {
        let z = Complex64::new(0.0, 0.0);
        Ok(DiagonalScattering::new(z, z, z))
    }

    fn eps(&self) -> Option<Complex64> {
        None
    }
}

impl Body for BlackBody {
    fn scattering(&self, _pol: Polarization, _omega: f64, _k: f64) -> Result<DiagonalScattering> {
        let z = Complex64::new(0.0, 0.0);
        Ok(DiagonalScattering::new(z, z, z))
    }

    fn at_omega<'a>(&'a self, _omega: f64) -> Result<Box<dyn BodyAtOmega + 'a>> {
        Ok(Box::new(BlackAtOmega))
    }

    fn imag_axis(&self, _xi: f64) -> Result<(ImagAxisMaterial, Thickness)> {
        Ok((
            ImagAxisMaterial::Eps(StaticEps::Finite(1.0)),
            Thickness::Infinite,
        ))
    }

    fn max_resonance_omega(&self) -> Option<f64> {
        None
    }
}

/// A body re-expressed in a shifted frame; observables must not change.
pub struct Translated<B: Body> {
    pub inner: B,
    pub shift: f64,
}

struct TranslatedAtOmega<'a> {
    inner: Box<dyn BodyAtOmega + 'a>,
    shift: f64,
}

impl BodyAtOmega for TranslatedAtOmega<'_> {
    fn scattering(&self, pol: Polarization, k: f64) -> Result<DiagonalScattering> {
        Ok(translate_slab(&self.inner.scattering(pol, k)?, self.shift))
    }

    fn eps(&self) -> Option<Complex64> {
        self.inner.eps()
    }
}

impl<B: Body> Body for Translated<B> {
    fn scattering(&self, pol: Polarization, omega: f64, k: f64) -> Result<DiagonalScattering> {
        Ok(translate_slab(
            &self.inner.scattering(pol, omega, k)?,
            self.shift,
        ))
    }

    fn at_omega<'a>(&'a self, omega: f64) -> Result<Box<dyn BodyAtOmega + 'a>> {
        Ok(Box::new(TranslatedAtOmega {
            inner: self.inner.at_omega(omega)?,
            shift: self.shift,
        }))
    }

    fn imag_axis(&self, xi: f64) -> Result<(ImagAxisMaterial, Thickness)> {
        self.inner.imag_axis(xi)
    }

    fn max_resonance_omega(&self) -> Option<f64> {
        self.inner.max_resonance_omega()
    }

    fn z_extent(&self) -> f64 {
        self.inner.z_extent()
    }

    fn is_transparent(&self) -> bool {
        self.inner.is_transparent()
    }
}

/// Two-slab geometry: slab 1 fills [−δ₁, 0], slab 2 fills [d, d + δ₂].
#[derive(Debug, Clone)]
pub struct Layout {
    pub slab1: SlabSpec,
    pub slab2: SlabSpec,
    pub d: f64,
}

impl Layout {
    pub fn new(slab1: SlabSpec, slab2: SlabSpec, d: f64) -> Result<Self> {
        if !(d > 0.0 && d.is_finite()) {
            return Err(Error::domain(format!("separation d must be > 0, got {d}")));
        }
        Ok(Layout { slab1, slab2, d })
    }
}

/// Atomic dynamic polarizability model, user-supplied.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Polarizability {
    /// Frequency-independent α₀ in SI units (C·m²/V).
    Static(f64),
    /// Single-resonance form α₀ ω₀²/(ω₀² − ω² − iγω).
    Lorentz { alpha0: f64, omega0: f64, gamma: f64 },
}

impl Polarizability {
    pub fn at(&self, omega: f64) -> Complex64 {
        match *self {
            Polarizability::Static(a) => Complex64::new(a, 0.0),
            Polarizability::Lorentz {
                alpha0,
                omega0,
                gamma,
            } => {
                alpha0 * omega0 * omega0
                    / Complex64::new(omega0 * omega0 - omega * omega, -gamma * omega)
            }
        }
    }

    fn max_resonance_omega(&self) -> Option<f64> {
        match *self {
            Polarizability::Static(_) => None,
            Polarizability::Lorentz { omega0, .. } => Some(omega0),
        }
    }
}

/// Atom-slab configuration: slab fills [−δ, 0], atom sits at z_A > 0.
#[derive(Debug, Clone)]
pub struct AtomForceSetup {
    pub slab: SlabSpec,
    pub alpha: Polarizability,
    pub z_a: f64,
}

/// Which body-alone observable to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BodyAloneKind {
    Heat,
    Force,
}

// ---------------------------------------------------------------------------
// shared integration scaffolding
// ---------------------------------------------------------------------------

fn inner_config(config: &QuadratureConfig) -> QuadratureConfig {
    QuadratureConfig {
        rel_tol: config.rel_tol * 0.25,
        ..config.clone()
    }
}

/// Absolute floor for inner (per-ω) integrals, tracking the largest inner
/// value seen so far in this term. Inner values in spectrally dead regions
/// are orders of magnitude below the term's scale; resolving them beyond
/// rel_tol × peak would stall the panel budget without moving the result.
/// The evaluation order of the outer rule is deterministic, so the floor
/// evolution is reproducible.
struct InnerFloor {
    peak: std::cell::Cell<f64>,
    base: f64,
    rel: f64,
}

impl InnerFloor {
    fn new(config: &QuadratureConfig) -> Self {
        InnerFloor {
            peak: std::cell::Cell::new(0.0),
            base: config.abs_floor,
            rel: config.rel_tol,
        }
    }

    fn floor(&self) -> f64 {
        (self.peak.get() * self.rel * 1e-2).max(self.base)
    }

    fn observe(&self, value: f64) {
        let v = value.abs();
        if v > self.peak.get() {
            self.peak.set(v);
        }
    }
}

/// Upper ω cutoff and seeded breakpoints for thermal integrands.
///
/// `geom_scale` is the largest optical path of the configuration (cavity
/// width plus slab extents, or atom height): kernels oscillate in ω with
/// period ~πc/geom_scale, and a Gauss-Kronrod panel spanning several
/// periods can produce an accidentally small embedded-rule difference, so
/// panels are seeded at half-period spacing (capped in number; finer
/// structure is handled adaptively).
fn omega_domain(
    temps: &[f64],
    resonances: &[Option<f64>],
    geom_scale: f64,
    config: &QuadratureConfig,
) -> (f64, Vec<f64>) {
    let t_max = temps.iter().copied().fold(0.0f64, f64::max);
    let omega_th = if t_max > 0.0 {
        config.omega_thermal_max(t_max)
    } else {
        0.0
    };
    let omega_res = resonances
        .iter()
        .flatten()
        .copied()
        .fold(0.0f64, f64::max)
        * 10.0;
    let omega_max = omega_th.max(omega_res);
    let mut breaks = Vec::new();
    for &t in temps {
        if t > 0.0 {
            let w = K_B * t / HBAR;
            for f in [0.5, 1.0, 2.0, 4.0, 8.0, 16.0] {
                breaks.push(w * f);
            }
        }
    }
    for r in resonances.iter().flatten() {
        breaks.push(*r);
    }
    if geom_scale > 0.0 && omega_max > 0.0 {
        let half_period = std::f64::consts::PI * C / (2.0 * geom_scale);
        let spacing = half_period.max(omega_max / 160.0);
        let mut w = spacing;
        while w < omega_max {
            breaks.push(w);
            w += spacing;
        }
    }
    breaks.retain(|w| *w > 0.0 && *w < omega_max);
    (omega_max, breaks)
}

/// Breakpoints of the evanescent Im k_z integral: the transitions where
/// k_{z1} of either body turns imaginary.
fn evanescent_breaks(omega: f64, eps: &[Option<Complex64>], u_max: f64) -> Vec<f64> {
    let mut breaks = Vec::new();
    for e in eps.iter().flatten() {
        if e.re > 1.0 {
            let uc = omega / C * (e.re - 1.0).sqrt();
            if uc > 0.0 && uc < u_max {
                breaks.push(uc);
            }
        }
    }
    breaks
}

/// Double integral of a per-point kernel over the propagative sector.
fn integrate_propagative<F>(
    body1: &dyn Body,
    body2: &dyn Body,
    d: f64,
    omega_max: f64,
    omega_breaks: &[f64],
    config: &QuadratureConfig,
    context: &str,
    kernel: F,
) -> Result<Estimate>
where
    F: Fn(&SpectralPoint) -> Result<f64>,
{
    let inner = inner_config(config);
    let floors = InnerFloor::new(config);
    integrate_1d(
        |omega| {
            let at1 = body1.at_omega(omega)?;
            let at2 = body2.at_omega(omega)?;
            let mut total = 0.0;
            for pol in Polarization::BOTH {
                let icfg = QuadratureConfig {
                    abs_floor: floors.floor(),
                    ..inner.clone()
                };
                let est = integrate_1d(
                    |k| {
                        let b1 = at1.scattering(pol, k)?;
                        let b2 = at2.scattering(pol, k)?;
                        let pt = SpectralPoint::new(omega, k, pol, &b1, &b2, d);
                        kernel(&pt)
                    },
                    0.0,
                    omega / C,
                    &[],
                    &icfg,
                    context,
                )?;
                floors.observe(est.value);
                total += est.value;
            }
            Ok(total)
        },
        0.0,
        omega_max,
        omega_breaks,
        config,
        context,
    )
}

/// Double integral over the evanescent sector, substituted to u = Im k_z
/// (k dk = u du, so the kernels keep their dk measure).
fn integrate_evanescent<F>(
    body1: &dyn Body,
    body2: &dyn Body,
    d: f64,
    omega_max: f64,
    omega_breaks: &[f64],
    config: &QuadratureConfig,
    context: &str,
    kernel: F,
) -> Result<Estimate>
where
    F: Fn(&SpectralPoint) -> Result<f64>,
{
    let inner = inner_config(config);
    let floors = InnerFloor::new(config);
    let u_max = config.evanescent_cut_factor / (2.0 * d);
    integrate_1d(
        |omega| {
            let at1 = body1.at_omega(omega)?;
            let at2 = body2.at_omega(omega)?;
            let breaks = evanescent_breaks(omega, &[at1.eps(), at2.eps()], u_max);
            let oc = omega / C;
            let mut total = 0.0;
            for pol in Polarization::BOTH {
                let icfg = QuadratureConfig {
                    abs_floor: floors.floor(),
                    ..inner.clone()
                };
                let est = integrate_1d(
                    |u| {
                        let k = oc.hypot(u);
                        let b1 = at1.scattering(pol, k)?;
                        let b2 = at2.scattering(pol, k)?;
                        let pt = SpectralPoint::new(omega, k, pol, &b1, &b2, d);
                        Ok(kernel(&pt)? * u / k)
                    },
                    0.0,
                    u_max,
                    &breaks,
                    &icfg,
                    context,
                )?;
                floors.observe(est.value);
                total += est.value;
            }
            Ok(total)
        },
        0.0,
        omega_max,
        omega_breaks,
        config,
        context,
    )
}

fn zero_term(tag: TermTag) -> TermValue {
    TermValue {
        tag,
        value: 0.0,
        error: 0.0,
    }
}

// ---------------------------------------------------------------------------
// equilibrium pressure (Matsubara)
// ---------------------------------------------------------------------------

/// Equilibrium Casimir-Lifshitz pressure between the two bodies at a common
/// temperature T (negative = attraction):
/// P_eq = −(ħ/2π²) · M[ Σ_p ∫dκ κ q ρ₁ρ₂e^{−2qd}/(1 − ρ₁ρ₂e^{−2qd}) ; T ].
pub fn equilibrium_pressure(
    body1: &dyn Body,
    body2: &dyn Body,
    d: f64,
    temperature: f64,
    config: &QuadratureConfig,
) -> Result<Estimate> {
    if body1.is_transparent() || body2.is_transparent() {
        return Ok(Estimate::ZERO);
    }
    let xi_scale = cavity_xi_scale(d);
    let kappa_max = config.evanescent_cut_factor / (2.0 * d);
    let inner = inner_config(config);
    let floors = InnerFloor::new(config);
    let m = matsubara_sum(
        temperature,
        |xi| {
            let b1 = body1.imag_axis(xi)?;
            let b2 = body2.imag_axis(xi)?;
            let mut total = 0.0;
            let mut err = 0.0;
            for pol in Polarization::BOTH {
                let icfg = QuadratureConfig {
                    abs_floor: floors.floor(),
                    ..inner.clone()
                };
                let est = integrate_1d(
                    |kappa| Ok(kernel_equilibrium_matsubara(xi, kappa, pol, &b1, &b2, d)),
                    0.0,
                    kappa_max,
                    &[xi / C],
                    &icfg,
                    "equilibrium kappa integral",
                )?;
                floors.observe(est.value);
                total += est.value;
                err += est.error;
            }
            Ok(Estimate {
                value: total,
                error: err,
            })
        },
        xi_scale,
        config,
    )
    .map_err(|e| e.in_context("equilibrium pressure"))?;
    let pref = -HBAR / (2.0 * std::f64::consts::PI * std::f64::consts::PI);
    Ok(Estimate {
        value: pref * m.value,
        error: pref.abs() * m.error,
    })
}

// ---------------------------------------------------------------------------
// slab-slab pressure
// ---------------------------------------------------------------------------

/// Total pressure on body 1 for the two-body layout:
/// P = ½[P_eq(T₁) + P_eq(T₂)] + ΔP, with the nonequilibrium terms
/// {A_ew, B1, B2, B3, stefan_boltzmann} sign-flipped from the raw
/// stress-tensor orientation so that negative means attraction.
pub fn pressure_with_bodies(
    body1: &dyn Body,
    body2: &dyn Body,
    d: f64,
    triple: &ThermalTriple,
    config: &QuadratureConfig,
) -> Result<Observation> {
    config.validate()?;
    let mut terms = Vec::with_capacity(7);

    let eq1 = equilibrium_pressure(body1, body2, d, triple.t1, config)?;
    terms.push(TermValue {
        tag: TermTag::EqT1,
        value: 0.5 * eq1.value,
        error: 0.5 * eq1.error,
    });
    let eq2 = if triple.t2 == triple.t1 {
        eq1
    } else {
        equilibrium_pressure(body1, body2, d, triple.t2, config)?
    };
    terms.push(TermValue {
        tag: TermTag::EqT2,
        value: 0.5 * eq2.value,
        error: 0.5 * eq2.error,
    });

    let resonances = [body1.max_resonance_omega(), body2.max_resonance_omega()];
    let temps = [triple.t1, triple.t2, triple.t3];
    let geom = d + 4.0 * (body1.z_extent() + body2.z_extent());
    let (omega_max, breaks) = omega_domain(&temps, &resonances, geom, config);

    // A_ew and B1 are weighted by n₁ − n₂, B2 by n₃ − n₁, B3 and the
    // Stefan-Boltzmann constant by n₃ − n₂. The overall minus converts the
    // raw orientation to the attraction-negative convention. Note that B1,
    // B2 and the SB term are individually nonzero even for transparent
    // bodies; only their sum cancels, so none of them may be skipped.
    if triple.t1 != triple.t2 {
        let a = integrate_evanescent(
            body1,
            body2,
            d,
            omega_max,
            &breaks,
            config,
            "pressure A_ew",
            |pt| {
                Ok(kernel_a_ew(pt, triple.t1)?.value - kernel_a_ew(pt, triple.t2)?.value)
            },
        )?;
        terms.push(TermValue {
            tag: TermTag::AEw,
            value: -a.value,
            error: a.error,
        });
        let b1 = integrate_propagative(
            body1,
            body2,
            d,
            omega_max,
            &breaks,
            config,
            "pressure B1",
            |pt| {
                Ok(kernel_b1_pw(pt, triple.t1)?.value - kernel_b1_pw(pt, triple.t2)?.value)
            },
        )?;
        terms.push(TermValue {
            tag: TermTag::B1,
            value: -b1.value,
            error: b1.error,
        });
    } else {
        terms.push(zero_term(TermTag::AEw));
        terms.push(zero_term(TermTag::B1));
    }

    if triple.t3 != triple.t1 {
        let b2 = integrate_propagative(
            body1,
            body2,
            d,
            omega_max,
            &breaks,
            config,
            "pressure B2",
            |pt| {
                Ok(kernel_b2_pw(pt, triple.t3)?.value - kernel_b2_pw(pt, triple.t1)?.value)
            },
        )?;
        terms.push(TermValue {
            tag: TermTag::B2,
            value: -b2.value,
            error: b2.error,
        });
    } else {
        terms.push(zero_term(TermTag::B2));
    }

    if triple.t3 != triple.t2 {
        let b3 = integrate_propagative(
            body1,
            body2,
            d,
            omega_max,
            &breaks,
            config,
            "pressure B3",
            |pt| {
                Ok(kernel_b3_pw_main(pt, triple.t3)?.value
                    - kernel_b3_pw_main(pt, triple.t2)?.value)
            },
        )?;
        terms.push(TermValue {
            tag: TermTag::B3,
            value: -b3.value,
            error: b3.error,
        });
        let sb = integrate_propagative(
            body1,
            body2,
            d,
            omega_max,
            &breaks,
            config,
            "pressure stefan_boltzmann",
            |pt| {
                Ok(kernel_b3_sb_part(pt, triple.t3)?.value
                    - kernel_b3_sb_part(pt, triple.t2)?.value)
            },
        )?;
        terms.push(TermValue {
            tag: TermTag::StefanBoltzmann,
            value: -sb.value,
            error: sb.error,
        });
    } else {
        terms.push(zero_term(TermTag::B3));
        terms.push(zero_term(TermTag::StefanBoltzmann));
    }

    Ok(Observation::from_terms(terms))
}

/// Pressure for a slab-slab layout.
pub fn observable_pressure(
    layout: &Layout,
    triple: &ThermalTriple,
    config: &QuadratureConfig,
) -> Result<Observation> {
    let b1 = SlabBody::first(layout.slab1.clone());
    let b2 = SlabBody::second(layout.slab2.clone(), layout.d);
    pressure_with_bodies(&b1, &b2, layout.d, triple, config)
}

// ---------------------------------------------------------------------------
// slab-slab heat transfer
// ---------------------------------------------------------------------------

/// Heat absorbed by body 1 per unit surface (positive = absorbs), with terms
/// {A_ew, B1, B2, B3}.
pub fn heat_with_bodies(
    body1: &dyn Body,
    body2: &dyn Body,
    d: f64,
    triple: &ThermalTriple,
    config: &QuadratureConfig,
) -> Result<Observation> {
    config.validate()?;
    let resonances = [body1.max_resonance_omega(), body2.max_resonance_omega()];
    let temps = [triple.t1, triple.t2, triple.t3];
    let geom = d + 4.0 * (body1.z_extent() + body2.z_extent());
    let (omega_max, breaks) = omega_domain(&temps, &resonances, geom, config);
    let transparent = body1.is_transparent();
    let mut terms = Vec::with_capacity(4);

    if triple.t1 != triple.t2 && !transparent {
        let a = integrate_evanescent(
            body1,
            body2,
            d,
            omega_max,
            &breaks,
            config,
            "heat A_ew",
            |pt| {
                Ok(kernel_heat_a_ew(pt, triple.t1)?.value
                    - kernel_heat_a_ew(pt, triple.t2)?.value)
            },
        )?;
        terms.push(TermValue {
            tag: TermTag::AEw,
            value: a.value,
            error: a.error,
        });
        let b1 = integrate_propagative(
            body1,
            body2,
            d,
            omega_max,
            &breaks,
            config,
            "heat B1",
            |pt| {
                Ok(kernel_heat_b1_pw(pt, triple.t1)?.value
                    - kernel_heat_b1_pw(pt, triple.t2)?.value)
            },
        )?;
        terms.push(TermValue {
            tag: TermTag::B1,
            value: b1.value,
            error: b1.error,
        });
    } else {
        terms.push(zero_term(TermTag::AEw));
        terms.push(zero_term(TermTag::B1));
    }

    if triple.t3 != triple.t1 {
        let b2 = integrate_propagative(
            body1,
            body2,
            d,
            omega_max,
            &breaks,
            config,
            "heat B2",
            |pt| {
                Ok(kernel_heat_b2_pw(pt, triple.t3)?.value
                    - kernel_heat_b2_pw(pt, triple.t1)?.value)
            },
        )?;
        terms.push(TermValue {
            tag: TermTag::B2,
            value: b2.value,
            error: b2.error,
        });
    } else {
        terms.push(zero_term(TermTag::B2));
    }

    if triple.t3 != triple.t2 && !transparent {
        let b3 = integrate_propagative(
            body1,
            body2,
            d,
            omega_max,
            &breaks,
            config,
            "heat B3",
            |pt| {
                Ok(kernel_heat_b3_pw(pt, triple.t3)?.value
                    - kernel_heat_b3_pw(pt, triple.t2)?.value)
            },
        )?;
        terms.push(TermValue {
            tag: TermTag::B3,
            value: b3.value,
            error: b3.error,
        });
    } else {
        terms.push(zero_term(TermTag::B3));
    }

    Ok(Observation::from_terms(terms))
}

/// Heat transfer for a slab-slab layout.
pub fn observable_heat(
    layout: &Layout,
    triple: &ThermalTriple,
    config: &QuadratureConfig,
) -> Result<Observation> {
    let b1 = SlabBody::first(layout.slab1.clone());
    let b2 = SlabBody::second(layout.slab2.clone(), layout.d);
    heat_with_bodies(&b1, &b2, layout.d, triple, config)
}

// ---------------------------------------------------------------------------
// atom-slab force
// ---------------------------------------------------------------------------

/// Nonequilibrium force on an atom at z_A above a slab (negative = attraction
/// toward the slab), in newtons. Terms: {position_independent,
/// propagative_interference, evanescent}.
pub fn observable_atom_force(
    setup: &AtomForceSetup,
    triple: &ThermalTriple,
    config: &QuadratureConfig,
) -> Result<Observation> {
    config.validate()?;
    if !(setup.z_a > 0.0) {
        return Err(Error::domain("atom height z_A must be positive"));
    }
    let body = SlabBody::first(setup.slab.clone());
    let z_a = setup.z_a;
    let pref = -HBAR / (4.0 * std::f64::consts::PI * std::f64::consts::PI * EPSILON_0 * C * C);
    let temps = [triple.t1, triple.t2, triple.t3];
    let resonances = [
        body.max_resonance_omega(),
        setup.alpha.max_resonance_omega(),
    ];
    let geom = z_a + 4.0 * body.z_extent();
    let (omega_max, breaks) = omega_domain(&temps, &resonances, geom, config);
    let inner = inner_config(config);
    let transparent = body.is_transparent();
    let mut terms = Vec::with_capacity(3);

    // n₁₃ (|ρ|² + |τ|² − 1): zero whenever T1 = T3
    if triple.t1 != triple.t3 && !transparent {
        let floors = InnerFloor::new(config);
        let est = integrate_1d(
            |omega| {
                let n13 = n_diff(omega, triple.t1, triple.t3);
                if n13 == 0.0 {
                    return Ok(0.0);
                }
                let at = body.at_omega(omega)?;
                let alpha = setup.alpha.at(omega);
                let mut sum = Complex64::new(0.0, 0.0);
                for pol in Polarization::BOTH {
                    let (v, _) = integrate_adaptive::<2, _>(
                        |k| {
                            let sc = at.scattering(pol, k)?;
                            let kz = kz_vacuum(omega, k);
                            let w = kernel_atom(
                                omega,
                                k,
                                pol,
                                sc.rho_plus(kz),
                                sc.tau(),
                                z_a,
                                AtomTerm::PositionIndependent,
                            )?;
                            Ok([w.re, w.im])
                        },
                        0.0,
                        omega / C,
                        &[],
                        inner.rel_tol,
                        floors.floor(),
                        inner.max_subdivisions,
                        "atom position-independent k integral",
                    )?;
                    floors.observe(v[0].hypot(v[1]));
                    sum += Complex64::new(v[0], v[1]);
                }
                Ok((omega * omega * alpha * sum * n13).im)
            },
            0.0,
            omega_max,
            &breaks,
            config,
            "atom position-independent term",
        )?;
        terms.push(TermValue {
            tag: TermTag::PositionIndependent,
            value: pref * est.value,
            error: pref.abs() * est.error,
        });
    } else {
        terms.push(zero_term(TermTag::PositionIndependent));
    }

    // n₃₁ W + n₂₃ W*: zero when T1 = T3 and T2 = T3
    if (triple.t3 != triple.t1 || triple.t2 != triple.t3) && !transparent {
        let floors = InnerFloor::new(config);
        let est = integrate_1d(
            |omega| {
                let n31 = n_diff(omega, triple.t3, triple.t1);
                let n23 = n_diff(omega, triple.t2, triple.t3);
                if n31 == 0.0 && n23 == 0.0 {
                    return Ok(0.0);
                }
                let at = body.at_omega(omega)?;
                let alpha = setup.alpha.at(omega);
                let mut sum = Complex64::new(0.0, 0.0);
                for pol in Polarization::BOTH {
                    let (v, _) = integrate_adaptive::<2, _>(
                        |k| {
                            let sc = at.scattering(pol, k)?;
                            let kz = kz_vacuum(omega, k);
                            let w = kernel_atom(
                                omega,
                                k,
                                pol,
                                sc.rho_plus(kz),
                                sc.tau(),
                                z_a,
                                AtomTerm::PropagativeInterference,
                            )?;
                            Ok([w.re, w.im])
                        },
                        0.0,
                        omega / C,
                        &[],
                        inner.rel_tol,
                        floors.floor(),
                        inner.max_subdivisions,
                        "atom interference k integral",
                    )?;
                    floors.observe(v[0].hypot(v[1]));
                    let w = Complex64::new(v[0], v[1]);
                    sum += w * n31 + w.conj() * n23;
                }
                Ok((omega * omega * alpha * sum).im)
            },
            0.0,
            omega_max,
            &breaks,
            config,
            "atom interference term",
        )?;
        terms.push(TermValue {
            tag: TermTag::PropagativeInterference,
            value: pref * est.value,
            error: pref.abs() * est.error,
        });
    } else {
        terms.push(zero_term(TermTag::PropagativeInterference));
    }

    // n₂₁ evanescent term
    if triple.t2 != triple.t1 && !transparent {
        let u_max = config.evanescent_cut_factor / (2.0 * z_a);
        let floors = InnerFloor::new(config);
        let est = integrate_1d(
            |omega| {
                let n21 = n_diff(omega, triple.t2, triple.t1);
                if n21 == 0.0 {
                    return Ok(0.0);
                }
                let at = body.at_omega(omega)?;
                let alpha = setup.alpha.at(omega);
                let ubreaks = evanescent_breaks(omega, &[at.eps()], u_max);
                let oc = omega / C;
                let mut sum = Complex64::new(0.0, 0.0);
                for pol in Polarization::BOTH {
                    let (v, _) = integrate_adaptive::<2, _>(
                        |u| {
                            let k = oc.hypot(u);
                            let sc = at.scattering(pol, k)?;
                            let kz = kz_vacuum(omega, k);
                            let w = kernel_atom(
                                omega,
                                k,
                                pol,
                                sc.rho_plus(kz),
                                sc.tau(),
                                z_a,
                                AtomTerm::Evanescent,
                            )? * (u / k);
                            Ok([w.re, w.im])
                        },
                        0.0,
                        u_max,
                        &ubreaks,
                        inner.rel_tol,
                        floors.floor(),
                        inner.max_subdivisions,
                        "atom evanescent k integral",
                    )?;
                    floors.observe(v[0].hypot(v[1]));
                    sum += Complex64::new(v[0], v[1]) * n21;
                }
                Ok((omega * omega * alpha * sum).im)
            },
            0.0,
            omega_max,
            &breaks,
            config,
            "atom evanescent term",
        )?;
        terms.push(TermValue {
            tag: TermTag::Evanescent,
            value: pref * est.value,
            error: pref.abs() * est.error,
        });
    } else {
        terms.push(zero_term(TermTag::Evanescent));
    }

    Ok(Observation::from_terms(terms))
}

// ---------------------------------------------------------------------------
// body alone
// ---------------------------------------------------------------------------

/// Force (Pa) or heat (W/m²) on a single slab at T₁ immersed in environment
/// radiation at T₃. The force is asserted, not assumed, to cancel: it is
/// computed and must come out below the absolute floor for homogeneous slabs.
pub fn body_alone_with_body(
    body: &dyn Body,
    kind: BodyAloneKind,
    t_body: f64,
    t_env: f64,
    config: &QuadratureConfig,
) -> Result<Observation> {
    config.validate()?;
    let delta_kind = match kind {
        BodyAloneKind::Heat => DeltaKind::Heat,
        BodyAloneKind::Force => DeltaKind::Force,
    };
    if t_body == t_env {
        return Ok(Observation::from_terms(vec![zero_term(TermTag::BodyAlone)]));
    }
    let (omega_max, breaks) = omega_domain(
        &[t_body, t_env],
        &[body.max_resonance_omega()],
        4.0 * body.z_extent(),
        config,
    );
    let inner = inner_config(config);
    let floors = InnerFloor::new(config);
    let est = integrate_1d(
        |omega| {
            let at = body.at_omega(omega)?;
            let mut total = 0.0;
            for pol in Polarization::BOTH {
                let icfg = QuadratureConfig {
                    abs_floor: floors.floor(),
                    ..inner.clone()
                };
                let est = integrate_1d(
                    |k| {
                        let sc = at.scattering(pol, k)?;
                        let kz = kz_vacuum(omega, k);
                        let spectral = SpectralBodyAlone {
                            rho_plus: sc.rho_plus(kz),
                            rho_minus: sc.rho_minus(kz),
                            tau: sc.tau(),
                        };
                        kernel_body_alone(delta_kind, omega, k, &spectral, t_body, t_env)
                    },
                    0.0,
                    omega / C,
                    &[],
                    &icfg,
                    "body-alone k integral",
                )?;
                floors.observe(est.value);
                total += est.value;
            }
            Ok(total)
        },
        0.0,
        omega_max,
        &breaks,
        config,
        "body-alone observable",
    )?;
    Ok(Observation::from_terms(vec![TermValue {
        tag: TermTag::BodyAlone,
        value: est.value,
        error: est.error,
    }]))
}

/// Body-alone observable for a finite slab.
pub fn observable_body_alone(
    slab: &SlabSpec,
    kind: BodyAloneKind,
    t_body: f64,
    t_env: f64,
    config: &QuadratureConfig,
) -> Result<Observation> {
    if matches!(slab.thickness, Thickness::Infinite) {
        return Err(Error::InvalidSpec(
            "body-alone observable needs a finite slab (both faces exposed)".into(),
        ));
    }
    let body = SlabBody::first(slab.clone());
    body_alone_with_body(&body, kind, t_body, t_env, config)
}

// ---------------------------------------------------------------------------
// dual-path oracle entry points
// ---------------------------------------------------------------------------

/// The nonequilibrium contribution Δ_m in its raw stress-tensor orientation,
/// integrated through the requested kernel route. `general = true` uses the
/// unified diagonal Δ_m kernel, otherwise the explicit per-sector kernels.
/// The two routes must agree within quadrature tolerance; the force
/// observable's ΔP equals minus the m = 2 value.
pub fn delta_observable(
    kind: DeltaKind,
    body1: &dyn Body,
    body2: &dyn Body,
    d: f64,
    triple: &ThermalTriple,
    config: &QuadratureConfig,
    general: bool,
) -> Result<Estimate> {
    if triple.is_equilibrium() {
        return Ok(Estimate::ZERO);
    }
    let resonances = [body1.max_resonance_omega(), body2.max_resonance_omega()];
    let temps = [triple.t1, triple.t2, triple.t3];
    let geom = d + 4.0 * (body1.z_extent() + body2.z_extent());
    let (omega_max, breaks) = omega_domain(&temps, &resonances, geom, config);
    let eval = |pt: &SpectralPoint| -> Result<f64> {
        if general {
            Ok(kernel_delta_general_diagonal(kind, pt, triple))
        } else {
            kernel_delta_explicit(kind, pt, triple)
        }
    };
    let pw = integrate_propagative(
        body1,
        body2,
        d,
        omega_max,
        &breaks,
        config,
        "delta propagative",
        eval,
    )?;
    let ew = integrate_evanescent(
        body1,
        body2,
        d,
        omega_max,
        &breaks,
        config,
        "delta evanescent",
        eval,
    )?;
    Ok(Estimate {
        value: pw.value + ew.value,
        error: pw.error + ew.error,
    })
}
