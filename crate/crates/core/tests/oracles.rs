//! Desk-scale second implementations used as independent oracles:
//! a characteristic-matrix route for the slab coefficients, an
//! independently coded imaginary-axis reflection for the Matsubara kernel,
//! and a composite-Simpson double integrator for the atom force.

use num_complex::Complex64;

use neqslab_core::kernels::{kernel_equilibrium_matsubara, AtomTerm};
use neqslab_core::materials::StaticEps;
use neqslab_core::quadrature::observables::{AtomForceSetup, Polarizability};
use neqslab_core::scattering::{slab_coefficients, ImagAxisMaterial};
use neqslab_core::waves::{bose_n, kz_medium, kz_vacuum, Polarization, C, EPSILON_0, HBAR, K_B};
use neqslab_core::{
    observable_atom_force, DielectricModel, Oscillator, QuadratureConfig, SlabSpec, Thickness,
    ThermalTriple,
};

/// Strongly damped oscillator: lossy at thermal frequencies but without the
/// narrow surface-mode peaks that would defeat a fixed-grid desk integrator.
fn lossy_model() -> DielectricModel {
    DielectricModel::drude_lorentz(
        1.0,
        vec![Oscillator {
            omega0: 1.2e14,
            omega_p: 1.8e14,
            gamma: 8.0e13,
        }],
    )
    .unwrap()
}

/// Characteristic-matrix (Born & Wolf) film amplitudes: an algebraically
/// different route to ρ and τ. Returns τ in the across-the-film reference;
/// the production convention divides out the vacuum span e^{ik_z δ}.
fn film_by_characteristic_matrix(
    eps: Complex64,
    delta: f64,
    pol: Polarization,
    omega: f64,
    k: f64,
) -> (Complex64, Complex64) {
    let kz = kz_vacuum(omega, k);
    let kz1 = kz_medium(eps, omega, k);
    let (eta_v, eta_f) = match pol {
        Polarization::Te => (kz, kz1),
        Polarization::Tm => (kz, kz1 / eps),
    };
    let beta = kz1 * delta;
    let (cb, sb) = (beta.cos(), beta.sin());
    let m00 = cb;
    let m01 = -Complex64::i() * sb / eta_f;
    let m10 = -Complex64::i() * eta_f * sb;
    let m11 = cb;
    let b = m00 + m01 * eta_v;
    let c = m10 + m11 * eta_v;
    let r = (eta_v * b - c) / (eta_v * b + c);
    let t_across = 2.0 * eta_v / (eta_v * b + c);
    (r, t_across)
}

#[test]
fn slab_coefficients_match_characteristic_matrix() {
    let model = lossy_model();
    let delta = 1.3e-6;
    let slab = SlabSpec::new(model.clone(), Thickness::Finite(delta)).unwrap();
    let mut worst = 0.0f64;
    for ofrac in [0.3, 0.8, 1.7] {
        let omega = ofrac * 1e14;
        let eps = model.permittivity(omega).unwrap();
        for kfrac in [0.0, 0.45, 0.93, 1.2, 2.1] {
            let k = kfrac * omega / C;
            let kz = kz_vacuum(omega, k);
            for pol in Polarization::BOTH {
                let (rho, tau) = slab_coefficients(&slab, pol, omega, k).unwrap();
                let (r_cm, t_cm) = film_by_characteristic_matrix(eps, delta, pol, omega, k);
                // production τ divides out the vacuum span across the film
                let tau_cm = t_cm * (-Complex64::i() * kz * delta).exp();
                worst = worst.max((rho - r_cm).norm() / r_cm.norm().max(1e-3));
                worst = worst.max((tau - tau_cm).norm() / tau_cm.norm().max(1e-3));
            }
        }
    }
    assert!(worst < 1e-10, "worst deviation {worst:.3e}");
}

/// Independently coded imaginary-axis slab reflection for the Matsubara
/// kernel check: builds everything from scratch, including the internal
/// reflection recursion written in its Airy-series form.
fn rho_imag_axis_oracle(
    eps_static: f64,
    eps_at_xi: f64,
    delta: f64,
    pol: Polarization,
    xi: f64,
    kappa: f64,
) -> f64 {
    let _ = eps_static;
    let q = (xi * xi / (C * C) + kappa * kappa).sqrt();
    let q1 = (eps_at_xi * xi * xi / (C * C) + kappa * kappa).sqrt();
    let r = match pol {
        Polarization::Te => (q - q1) / (q + q1),
        Polarization::Tm => (eps_at_xi * q - q1) / (eps_at_xi * q + q1),
    };
    // Airy series Σ_{n≥0} r(−r²E)ⁿ(1−E)… summed explicitly instead of the
    // closed form, E = e^{−2q₁δ}
    let e = (-2.0 * q1 * delta).exp();
    let mut sum = 0.0;
    let mut term = r * (1.0 - e);
    for _ in 0..200 {
        sum += term;
        term *= r * r * e;
        if term.abs() < 1e-18 * sum.abs().max(1e-30) {
            break;
        }
    }
    sum
}

#[test]
fn matsubara_kernel_matches_desk_reevaluation() {
    let model = lossy_model();
    let delta = 2.0e-6;
    let d = 1.0e-6;
    let mut worst = 0.0f64;
    for xi in [1e13, 8e13, 4e14] {
        let eps = model.permittivity_imag_axis(xi).unwrap();
        let body = (
            ImagAxisMaterial::Eps(StaticEps::Finite(eps)),
            Thickness::Finite(delta),
        );
        for kappa_frac in [0.1, 0.7, 2.5, 9.0] {
            let kappa = kappa_frac / (2.0 * d);
            for pol in Polarization::BOTH {
                let production =
                    kernel_equilibrium_matsubara(xi, kappa, pol, &body, &body, d);
                // desk-scale re-evaluation of κ q x/(1−x) with its own ρ
                let rho = rho_imag_axis_oracle(0.0, eps, delta, pol, xi, kappa);
                let q = (xi * xi / (C * C) + kappa * kappa).sqrt();
                let x = rho * rho * (-2.0 * q * d).exp();
                let oracle = kappa * q * x / (1.0 - x);
                let scale = production.abs().max(oracle.abs()).max(1e-30);
                worst = worst.max((production - oracle).abs() / scale);
            }
        }
    }
    assert!(worst < 1e-12, "worst deviation {worst:.3e}");
}

/// Composite Simpson rule on [a, b] with n (even) intervals.
fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize) -> f64 {
    assert!(n % 2 == 0);
    let h = (b - a) / n as f64;
    let mut acc = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + h * i as f64);
    }
    acc * h / 3.0
}

/// Brute-force evaluation of the printed atom-force bracket for a static
/// polarizability at (T₁, T₂, T₃) = (T, 0, 0): only the n₃₁ interference and
/// n₂₁ evanescent terms survive the Im{...} for real α.
fn atom_force_brute(slab: &SlabSpec, alpha: f64, z_a: f64, t: f64) -> f64 {
    let omega_hi = 45.0 * K_B * t / HBAR;
    let n_k = 1200;
    let omega_integrand = |omega: f64| {
            let n = bose_n(omega, t);
            if n == 0.0 {
                return 0.0;
            }
            let mut total = 0.0;
            for pol in Polarization::BOTH {
                // propagative interference, weight n31 = −n; substituted to
                // the k_z variable (k dk = −k_z dk_z) so the integrand is
                // smooth at the light line
                let oc = omega / C;
                let i2 = simpson(
                    |kzv| {
                        let k = ((oc - kzv) * (oc + kzv)).max(0.0).sqrt();
                        let (rho, _) = slab_coefficients(slab, pol, omega, k).unwrap();
                        let dot = match pol {
                            Polarization::Te => 1.0,
                            Polarization::Tm => (2.0 * k * k - oc * oc) / (oc * oc),
                        };
                        kzv * dot * (rho * (Complex64::i() * 2.0 * kzv * z_a).exp()).im
                    },
                    0.0,
                    oc,
                    n_k,
                );
                // evanescent, weight n21 = −n; the slab has narrow TM
                // structure below the medium light line u_c, so that region
                // gets its own dense panel
                let u_max = 30.0 / (2.0 * z_a);
                let eps = slab.material.permittivity(omega).unwrap();
                let u_split = if eps.re > 1.0 {
                    (1.5 * oc * (eps.re - 1.0).sqrt()).min(0.8 * u_max)
                } else {
                    0.1 * u_max
                };
                let ev = |u: f64| {
                    let k = oc.hypot(u);
                    let (rho, _) = slab_coefficients(slab, pol, omega, k).unwrap();
                    kernel_atom_scalar(omega, k, pol, rho, z_a, AtomTerm::Evanescent) * u / k
                };
                let i3 =
                    simpson(&ev, 1e-3, u_split, 4000) + simpson(&ev, u_split, u_max, 1200);
                total += -n * (i2 + i3);
            }
            omega * omega * alpha * total
    };
    // piecewise panels, dense across the material resonance
    let outer = simpson(&omega_integrand, 1e11, 5e13, 600)
        + simpson(&omega_integrand, 5e13, 3e14, 3000)
        + simpson(&omega_integrand, 3e14, omega_hi, 1600);
    -HBAR / (4.0 * std::f64::consts::PI.powi(2) * EPSILON_0 * C * C) * outer
}

/// Im part of the printed bracket content per term (real α), written out
/// independently of the production kernel.
fn kernel_atom_scalar(
    omega: f64,
    k: f64,
    pol: Polarization,
    rho: Complex64,
    z_a: f64,
    term: AtomTerm,
) -> f64 {
    let kz = kz_vacuum(omega, k);
    let dot = match pol {
        Polarization::Te => 1.0,
        Polarization::Tm => (2.0 * k * k - (omega / C).powi(2)) / (omega / C).powi(2),
    };
    match term {
        AtomTerm::PropagativeInterference => {
            // Im[ρ e^{2ik_z z_A}] with real k_z
            k * dot * (rho * (Complex64::i() * 2.0 * kz * z_a).exp()).im
        }
        AtomTerm::Evanescent => {
            // Im[ρ* e^{2ik_z z_A}] with k_z = iκ
            k * dot * (rho.conj() * (-2.0 * kz.im * z_a).exp()).im
        }
        AtomTerm::PositionIndependent => 0.0,
    }
}

#[test]
fn atom_force_matches_brute_force_double_integral() {
    let slab = SlabSpec::new(lossy_model(), Thickness::Finite(2e-6)).unwrap();
    let alpha_si = 4.0 * std::f64::consts::PI * EPSILON_0 * 3e-29; // ~30 Å³ class
    let z_a = 3e-6;
    let t = 300.0;

    let setup = AtomForceSetup {
        slab: slab.clone(),
        alpha: Polarizability::Static(alpha_si),
        z_a,
    };
    let triple = ThermalTriple::new(t, 0.0, 0.0).unwrap();
    let cfg = QuadratureConfig::default();
    let production = observable_atom_force(&setup, &triple, &cfg).unwrap();

    let brute = atom_force_brute(&slab, alpha_si, z_a, t);
    let rel = (production.value - brute).abs() / brute.abs();
    println!(
        "atom force: production {:.6e} N vs brute {:.6e} N (rel {:.2e})",
        production.value, brute, rel
    );
    assert!(rel < 1e-4, "relative deviation {rel:.3e}");
}
