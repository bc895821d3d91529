//! Built-in validation suite: oracle equivalence, null tests, reciprocity,
//! closed-form limits, frame invariance, determinism and cut-factor
//! sufficiency. Each check returns a pass/fail with a short detail string;
//! the CLI `validate` command prints one line per check.

use num_complex::Complex64;

use crate::kernels::{kernel_delta_explicit, kernel_delta_general_diagonal, DeltaKind, SpectralPoint};
use crate::materials::{DielectricModel, Oscillator};
use crate::quadrature::observables::{
    body_alone_with_body, heat_with_bodies, pressure_with_bodies, BlackBody, SlabBody, Translated,
};
use crate::quadrature::{delta_observable, BodyAloneKind, Layout, QuadratureConfig};
use crate::scattering::{
    atom_reflection_element, atom_transmission_element, body1_scattering, body2_scattering,
    check_reciprocity, translate_slab, KVec, Phi, SlabSpec, Thickness,
};
use crate::waves::{kz_vacuum, Polarization, ThermalTriple, C, HBAR, SIGMA_SB};

/// Outcome of one validation check.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    fn new(name: &'static str, passed: bool, detail: String) -> Self {
        CheckResult {
            name,
            passed,
            detail,
        }
    }
}

/// Small deterministic xorshift generator so the suite needs no RNG
/// dependency and is reproducible by construction.
struct SplitMix(u64);

impl SplitMix {
    fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1).
    fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    fn in_range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }
}

fn demo_silica() -> DielectricModel {
    DielectricModel::drude_lorentz(
        1.0,
        vec![
            Oscillator {
                omega0: 1.88e14,
                omega_p: 2.45e14,
                gamma: 9e12,
            },
            Oscillator {
                omega0: 2.03e16,
                omega_p: 2.13e16,
                gamma: 1e15,
            },
        ],
    )
    .unwrap()
}

fn demo_silicon() -> DielectricModel {
    DielectricModel::drude_lorentz(
        1.0,
        vec![
            Oscillator {
                omega0: 6.6e15,
                omega_p: 2.2e16,
                gamma: 3e14,
            },
            Oscillator {
                omega0: 0.0,
                omega_p: 2e14,
                gamma: 1e13,
            },
        ],
    )
    .unwrap()
}

fn random_point(rng: &mut SplitMix) -> (SpectralPoint, ThermalTriple) {
    let omega = 10f64.powf(rng.in_range(13.0, 16.0));
    // mixed sectors: half propagative, half evanescent
    let kfrac = if rng.uniform() < 0.5 {
        rng.in_range(0.0, 1.0)
    } else {
        rng.in_range(1.0, 4.0)
    };
    let k = kfrac * omega / C;
    let pol = if rng.uniform() < 0.5 {
        Polarization::Te
    } else {
        Polarization::Tm
    };
    let mk_model = |rng: &mut SplitMix| {
        DielectricModel::drude_lorentz(
            1.0 + rng.in_range(0.0, 2.0),
            vec![Oscillator {
                omega0: 10f64.powf(rng.in_range(13.5, 15.5)),
                omega_p: 10f64.powf(rng.in_range(13.5, 15.5)),
                gamma: 10f64.powf(rng.in_range(12.0, 14.0)),
            }],
        )
        .unwrap()
    };
    let delta1 = rng.in_range(0.2e-6, 5e-6);
    let delta2 = rng.in_range(0.2e-6, 5e-6);
    let d = rng.in_range(0.2e-6, 5e-6);
    let s1 = SlabSpec::new(mk_model(rng), Thickness::Finite(delta1)).unwrap();
    let s2 = SlabSpec::new(mk_model(rng), Thickness::Finite(delta2)).unwrap();
    let b1 = body1_scattering(&s1, pol, omega, k).unwrap();
    let b2 = body2_scattering(&s2, pol, omega, k, d).unwrap();
    let pt = SpectralPoint::new(omega, k, pol, &b1, &b2, d);
    let triple = ThermalTriple::new(
        rng.in_range(0.0, 700.0),
        rng.in_range(0.0, 700.0),
        rng.in_range(0.0, 700.0),
    )
    .unwrap();
    (pt, triple)
}

/// Pointwise agreement of the unified diagonal Δ_m kernel with the explicit
/// sector kernels on `n` random spectral points.
pub fn check_oracle_pointwise(n: usize) -> CheckResult {
    let mut rng = SplitMix(0x5eed_0001);
    let mut worst = 0.0f64;
    for _ in 0..n {
        let (pt, triple) = random_point(&mut rng);
        for kind in [DeltaKind::Force, DeltaKind::Heat] {
            let general = kernel_delta_general_diagonal(kind, &pt, &triple);
            let explicit = match kernel_delta_explicit(kind, &pt, &triple) {
                Ok(v) => v,
                Err(e) => {
                    return CheckResult::new(
                        "oracle pointwise equivalence",
                        false,
                        format!("kernel evaluation failed: {e}"),
                    )
                }
            };
            let scale = general.abs().max(explicit.abs()).max(1e-15);
            worst = worst.max((general - explicit).abs() / scale);
        }
    }
    CheckResult::new(
        "oracle pointwise equivalence",
        worst < 1e-9,
        format!("worst relative deviation {worst:.3e} over {n} points (limit 1e-9)"),
    )
}

/// Integrated dual-path agreement of ΔP and h₁ on a small demo layout.
pub fn check_oracle_integrated(config: &QuadratureConfig) -> CheckResult {
    let s1 = SlabSpec::new(demo_silica(), Thickness::Finite(2e-6)).unwrap();
    let s2 = SlabSpec::new(demo_silicon(), Thickness::Finite(4e-6)).unwrap();
    let d = 2e-6;
    let b1 = SlabBody::first(s1);
    let b2 = SlabBody::second(s2, d);
    let triple = ThermalTriple::new(300.0, 100.0, 450.0).unwrap();
    let mut worst = 0.0f64;
    let mut detail = String::new();
    for kind in [DeltaKind::Force, DeltaKind::Heat] {
        let general = match delta_observable(kind, &b1, &b2, d, &triple, config, true) {
            Ok(v) => v,
            Err(e) => return CheckResult::new("oracle integrated equivalence", false, e.to_string()),
        };
        let explicit = match delta_observable(kind, &b1, &b2, d, &triple, config, false) {
            Ok(v) => v,
            Err(e) => return CheckResult::new("oracle integrated equivalence", false, e.to_string()),
        };
        let tol = 10.0 * (config.rel_tol * explicit.value.abs() + general.error + explicit.error);
        let dev = (general.value - explicit.value).abs();
        worst = worst.max(dev / tol.max(1e-300));
        detail = format!("{detail}{kind:?}: |Δ| = {dev:.3e} vs budget {tol:.3e}; ");
    }
    CheckResult::new("oracle integrated equivalence", worst < 1.0, detail)
}

/// Null tests: every nonequilibrium observable vanishes at (T, T, T),
/// compared against the magnitude of a single-temperature-difference run.
pub fn check_null_tests(config: &QuadratureConfig) -> CheckResult {
    let configs = [
        (demo_silica(), demo_silicon(), 1.5e-6, 310.0),
        (demo_silicon(), demo_silica(), 0.8e-6, 420.0),
        (demo_silica(), demo_silica(), 3e-6, 250.0),
    ];
    let mut worst = 0.0f64;
    for (m1, m2, d, t) in configs {
        let s1 = SlabSpec::new(m1, Thickness::Finite(2e-6)).unwrap();
        let s2 = SlabSpec::new(m2, Thickness::Finite(3e-6)).unwrap();
        let b1 = SlabBody::first(s1.clone());
        let b2 = SlabBody::second(s2.clone(), d);
        let eq = ThermalTriple::new(t, t, t).unwrap();
        // reference: the largest single-temperature-difference magnitude
        let refs = [
            ThermalTriple::new(t, 0.0, 0.0).unwrap(),
            ThermalTriple::new(0.0, t, 0.0).unwrap(),
            ThermalTriple::new(0.0, 0.0, t).unwrap(),
        ];
        for kind in [DeltaKind::Force, DeltaKind::Heat] {
            let null = match delta_observable(kind, &b1, &b2, d, &eq, config, false) {
                Ok(v) => v.value.abs(),
                Err(e) => return CheckResult::new("null tests", false, e.to_string()),
            };
            let mut reference = 0.0f64;
            for r in &refs {
                match delta_observable(kind, &b1, &b2, d, r, config, false) {
                    Ok(v) => reference = reference.max(v.value.abs()),
                    Err(e) => return CheckResult::new("null tests", false, e.to_string()),
                }
            }
            if reference > 0.0 {
                worst = worst.max(null / reference);
            }
        }
    }
    CheckResult::new(
        "null tests at (T,T,T)",
        worst < 1e-3,
        format!("worst null/reference ratio {worst:.3e} (limit 1e-3)"),
    )
}

/// Appendix-B reciprocity residuals for slab and atom elements on random
/// modes.
pub fn check_reciprocity_suite(n_modes: usize) -> CheckResult {
    let mut rng = SplitMix(0x5eed_0002);
    let alpha = Complex64::new(4.2e-39, 1.1e-40);
    let z_a = 1.7e-6;
    let mut worst = 0.0f64;
    for _ in 0..n_modes {
        let omega = 10f64.powf(rng.in_range(13.5, 15.5));
        let kv = KVec {
            kx: rng.in_range(-2.0, 2.0) * omega / C,
            ky: rng.in_range(-2.0, 2.0) * omega / C,
        };
        let kv2 = KVec {
            kx: rng.in_range(-2.0, 2.0) * omega / C,
            ky: rng.in_range(-2.0, 2.0) * omega / C,
        };
        let kz = kz_vacuum(omega, kv.mag());
        let kz2 = kz_vacuum(omega, kv2.mag());
        if kz.norm() < 1e-8 * omega / C || kz2.norm() < 1e-8 * omega / C {
            continue;
        }
        let phi = if rng.uniform() < 0.5 { Phi::Plus } else { Phi::Minus };
        for p in Polarization::BOTH {
            for p2 in Polarization::BOTH {
                // reflection pairs with the same operator
                let direct = atom_reflection_element(alpha, z_a, phi, (kv, p), (kv2, p2), omega)
                    .unwrap();
                let swapped =
                    atom_reflection_element(alpha, z_a, phi, (kv2.neg(), p2), (kv.neg(), p), omega)
                        .unwrap();
                let (_, res) = check_reciprocity(direct, swapped, kz, kz2, p, p2);
                worst = worst.max(res);
                // transmission pairs with the opposite side
                let direct =
                    atom_transmission_element(alpha, z_a, phi, (kv, p), (kv2, p2), omega).unwrap();
                let swapped = atom_transmission_element(
                    alpha,
                    z_a,
                    phi.flip(),
                    (kv2.neg(), p2),
                    (kv.neg(), p),
                    omega,
                )
                .unwrap();
                let (_, res) = check_reciprocity(direct, swapped, kz, kz2, p, p2);
                worst = worst.max(res);
            }
        }
        // slab diagonal elements: relation holds identically
        let slab = SlabSpec::new(demo_silica(), Thickness::Finite(1e-6)).unwrap();
        for p in Polarization::BOTH {
            let sc = body1_scattering(&slab, p, omega, kv.mag()).unwrap();
            let (_, res) = check_reciprocity(sc.rho_plus(kz), sc.rho_plus(kz), kz, kz, p, p);
            worst = worst.max(res);
            let (_, res) = check_reciprocity(sc.tau(), sc.tau(), kz, kz, p, p);
            worst = worst.max(res);
        }
    }
    CheckResult::new(
        "reciprocity residuals",
        worst < 1e-12,
        format!("worst residual {worst:.3e} over {n_modes} modes (limit 1e-12)"),
    )
}

/// Ideal-mirror equilibrium pressure at T = 0, d = 1 µm:
/// −π²ħc/(240 d⁴) within 0.5%.
pub fn check_mirror_equilibrium(config: &QuadratureConfig) -> CheckResult {
    let mirror = SlabSpec::new(DielectricModel::PerfectMirror, Thickness::Infinite).unwrap();
    let d = 1e-6;
    let layout = Layout::new(mirror.clone(), mirror, d).unwrap();
    let triple = ThermalTriple::new(0.0, 0.0, 0.0).unwrap();
    let obs = match crate::quadrature::observable_pressure(&layout, &triple, config) {
        Ok(o) => o,
        Err(e) => return CheckResult::new("ideal-mirror equilibrium", false, e.to_string()),
    };
    let exact = -std::f64::consts::PI.powi(2) * HBAR * C / (240.0 * d.powi(4));
    let rel = (obs.value - exact).abs() / exact.abs();
    CheckResult::new(
        "ideal-mirror equilibrium",
        rel < 5e-3,
        format!(
            "P = {:.6e} Pa vs −π²ħc/240d⁴ = {:.6e} Pa (rel {:.2e}, limit 5e-3)",
            obs.value, exact, rel
        ),
    )
}

/// Stefan-Boltzmann term: transparent bodies, (T₂, T₃) = (0, 300 K); the
/// stefan_boltzmann breakdown term must equal −2σ·300⁴/(3c) and the total
/// must vanish identically (a fully transparent body feels no force).
pub fn check_stefan_boltzmann(config: &QuadratureConfig) -> CheckResult {
    let vac = SlabSpec::new(DielectricModel::Vacuum, Thickness::Finite(1e-6)).unwrap();
    let layout = Layout::new(vac.clone(), vac, 1e-6).unwrap();
    let triple = ThermalTriple::new(0.0, 0.0, 300.0).unwrap();
    let obs = match crate::quadrature::observable_pressure(&layout, &triple, config) {
        Ok(o) => o,
        Err(e) => return CheckResult::new("Stefan-Boltzmann term", false, e.to_string()),
    };
    let sb = obs
        .terms
        .iter()
        .find(|t| t.tag == crate::kernels::TermTag::StefanBoltzmann)
        .map(|t| t.value)
        .unwrap_or(f64::NAN);
    let exact = -2.0 * SIGMA_SB * 300f64.powi(4) / (3.0 * C);
    let rel = (sb - exact).abs() / exact.abs();
    let passed = rel < 1e-3;
    CheckResult::new(
        "Stefan-Boltzmann term",
        passed,
        format!(
            "SB term {:.6e} Pa vs −2σT⁴/3c = {:.6e} Pa (rel {:.2e}, limit 1e-3)",
            sb, exact, rel
        ),
    )
}

/// Blackbody closed forms: isolated black slab and black-slab exchange.
pub fn check_blackbody_limits(config: &QuadratureConfig) -> CheckResult {
    // isolated black slab, (T1, T3) = (0, 300): absorbs 2σT³⁴ on two faces
    let black = BlackBody;
    let alone = match body_alone_with_body(&black, BodyAloneKind::Heat, 0.0, 300.0, config) {
        Ok(o) => o,
        Err(e) => return CheckResult::new("blackbody limits", false, e.to_string()),
    };
    let exact_alone = 2.0 * SIGMA_SB * 300f64.powi(4);
    let rel_alone = (alone.value - exact_alone).abs() / exact_alone;

    // two black slabs with T3 = T1: h₁ = σ(T₂⁴ − T₁⁴) exactly
    let d = 10e-6;
    let triple = ThermalTriple::new(100.0, 300.0, 100.0).unwrap();
    let pair = match heat_with_bodies(&black, &black, d, &triple, config) {
        Ok(o) => o,
        Err(e) => return CheckResult::new("blackbody limits", false, e.to_string()),
    };
    let exact_pair = SIGMA_SB * (300f64.powi(4) - 100f64.powi(4));
    let rel_pair = (pair.value - exact_pair).abs() / exact_pair;

    // the environment face adds σ(T₃⁴ − T₁⁴) when T₃ differs from T₁
    let triple_env = ThermalTriple::new(100.0, 300.0, 300.0).unwrap();
    let pair_env = match heat_with_bodies(&black, &black, d, &triple_env, config) {
        Ok(o) => o,
        Err(e) => return CheckResult::new("blackbody limits", false, e.to_string()),
    };
    let exact_env = 2.0 * SIGMA_SB * (300f64.powi(4) - 100f64.powi(4));
    let rel_env = (pair_env.value - exact_env).abs() / exact_env;

    let passed = rel_alone < 1e-3 && rel_pair < 1e-2 && rel_env < 1e-2;
    CheckResult::new(
        "blackbody limits",
        passed,
        format!(
            "alone {:.4e} (rel {:.1e}), exchange {:.4e} (rel {:.1e}), with env {:.4e} (rel {:.1e})",
            alone.value, rel_alone, pair.value, rel_pair, pair_env.value, rel_env
        ),
    )
}

/// Frame-shift invariance: translating both bodies' operators by the same
/// offset leaves pressure and heat unchanged to 1e-12 relative.
pub fn check_frame_invariance(config: &QuadratureConfig) -> CheckResult {
    let s1 = SlabSpec::new(demo_silica(), Thickness::Finite(2e-6)).unwrap();
    let s2 = SlabSpec::new(demo_silicon(), Thickness::Finite(3e-6)).unwrap();
    let d = 1.2e-6;
    let triple = ThermalTriple::new(300.0, 0.0, 400.0).unwrap();
    let b1 = SlabBody::first(s1.clone());
    let b2 = SlabBody::second(s2.clone(), d);
    let shift = 0.9e-6;
    let t1 = Translated {
        inner: SlabBody::first(s1),
        shift,
    };
    let t2 = Translated {
        inner: SlabBody::second(s2, d),
        shift,
    };
    let mut worst = 0.0f64;
    let p0 = pressure_with_bodies(&b1, &b2, d, &triple, config);
    let p1 = pressure_with_bodies(&t1, &t2, d, &triple, config);
    let h0 = heat_with_bodies(&b1, &b2, d, &triple, config);
    let h1 = heat_with_bodies(&t1, &t2, d, &triple, config);
    match (p0, p1, h0, h1) {
        (Ok(p0), Ok(p1), Ok(h0), Ok(h1)) => {
            worst = worst.max((p0.value - p1.value).abs() / p0.value.abs().max(1e-300));
            worst = worst.max((h0.value - h1.value).abs() / h0.value.abs().max(1e-300));
        }
        _ => return CheckResult::new("frame-shift invariance", false, "evaluation failed".into()),
    }
    CheckResult::new(
        "frame-shift invariance",
        worst < 1e-12,
        format!("worst relative shift {worst:.3e} (limit 1e-12)"),
    )
}

/// Translation composition is exact and a propagative shift preserves
/// moduli (spot check of the Appendix-A rules at the observable layer).
pub fn check_translation_rules() -> CheckResult {
    let slab = SlabSpec::new(demo_silica(), Thickness::Finite(1.5e-6)).unwrap();
    let omega = 8e14;
    let k = 0.6 * omega / C;
    let kz = kz_vacuum(omega, k);
    let base = body1_scattering(&slab, Polarization::Tm, omega, k).unwrap();
    let (a, b) = (1.1e-6, -0.3e-6);
    let two = translate_slab(&translate_slab(&base, a), b);
    let one = translate_slab(&base, a + b);
    let exact = two.rho_plus(kz) == one.rho_plus(kz) && two.rho_minus(kz) == one.rho_minus(kz);
    let modulus =
        (two.rho_plus(kz).norm() - base.rho_plus(kz).norm()).abs() < 1e-12 * base.rho_plus(kz).norm();
    CheckResult::new(
        "translation rules",
        exact && modulus,
        format!("composition exact: {exact}, propagative modulus preserved: {modulus}"),
    )
}

/// Determinism: two runs and two parallelism widths produce bit-identical
/// sweep rows.
pub fn check_determinism(config: &QuadratureConfig) -> CheckResult {
    let s1 = SlabSpec::new(demo_silica(), Thickness::Finite(2e-6)).unwrap();
    let s2 = SlabSpec::new(demo_silicon(), Thickness::Finite(3e-6)).unwrap();
    let obs = crate::quadrature::Observable::Heat {
        slab1: s1,
        slab2: s2,
        triple: ThermalTriple::new(300.0, 0.0, 300.0).unwrap(),
    };
    let grid = [1e-6, 2e-6, 4e-6];
    let runs: Vec<_> = [1usize, 8, 1]
        .iter()
        .map(|&w| crate::quadrature::sweep(&obs, &grid, w, config))
        .collect();
    for r in &runs {
        if let Err(e) = r {
            return CheckResult::new("determinism", false, e.to_string());
        }
    }
    let bits = |r: &crate::quadrature::SweepResult| -> Vec<u64> {
        r.rows
            .iter()
            .flat_map(|row| {
                let mut v = vec![row.value.to_bits(), row.error.to_bits()];
                v.extend(row.terms.iter().map(|t| t.value.to_bits()));
                v
            })
            .collect()
    };
    let b0 = bits(runs[0].as_ref().unwrap());
    let same = runs
        .iter()
        .all(|r| bits(r.as_ref().unwrap()) == b0);
    CheckResult::new(
        "determinism",
        same,
        "widths {1, 8} and repeated runs bit-identical".into(),
    )
}

/// Halving rel_tol must not increase the reported error estimate.
pub fn check_tolerance_monotonicity(config: &QuadratureConfig) -> CheckResult {
    let s1 = SlabSpec::new(demo_silica(), Thickness::Finite(2e-6)).unwrap();
    let s2 = SlabSpec::new(demo_silicon(), Thickness::Finite(3e-6)).unwrap();
    let layout = Layout::new(s1, s2, 2e-6).unwrap();
    let triple = ThermalTriple::new(300.0, 0.0, 300.0).unwrap();
    let mut cfg = config.clone();
    cfg.rel_tol = 1e-3;
    let mut prev = f64::INFINITY;
    let mut ok = true;
    let mut detail = String::new();
    for _ in 0..4 {
        match crate::quadrature::observable_heat(&layout, &triple, &cfg) {
            Ok(o) => {
                detail = format!("{detail}{:.2e}@{:.0e} ", o.error, cfg.rel_tol);
                if o.error > prev * (1.0 + 1e-12) {
                    ok = false;
                }
                prev = o.error;
            }
            Err(e) => return CheckResult::new("tolerance monotonicity", false, e.to_string()),
        }
        cfg.rel_tol *= 0.5;
    }
    CheckResult::new("tolerance monotonicity", ok, detail)
}

/// Doubling the ω and evanescent cut factors changes the validation
/// observables by less than rel_tol.
pub fn check_cut_factor_sufficiency(config: &QuadratureConfig) -> CheckResult {
    let s1 = SlabSpec::new(demo_silica(), Thickness::Finite(2e-6)).unwrap();
    let s2 = SlabSpec::new(demo_silicon(), Thickness::Finite(3e-6)).unwrap();
    let layout = Layout::new(s1, s2, 1.5e-6).unwrap();
    let triple = ThermalTriple::new(300.0, 0.0, 400.0).unwrap();
    let mut wide = config.clone();
    wide.omega_max_factor *= 2.0;
    wide.evanescent_cut_factor *= 2.0;
    let mut worst = 0.0f64;
    for f in [
        crate::quadrature::observable_pressure,
        crate::quadrature::observable_heat,
    ] {
        let base = match f(&layout, &triple, config) {
            Ok(o) => o,
            Err(e) => return CheckResult::new("cut-factor sufficiency", false, e.to_string()),
        };
        let wider = match f(&layout, &triple, &wide) {
            Ok(o) => o,
            Err(e) => return CheckResult::new("cut-factor sufficiency", false, e.to_string()),
        };
        worst = worst.max((base.value - wider.value).abs() / base.value.abs().max(1e-300));
    }
    CheckResult::new(
        "cut-factor sufficiency",
        worst < config.rel_tol,
        format!("worst relative change {worst:.3e} (limit {:.0e})", config.rel_tol),
    )
}

/// Run the full suite. `quick` trims the sample counts.
pub fn run_all(config: &QuadratureConfig, quick: bool) -> Vec<CheckResult> {
    let (n_points, n_modes) = if quick { (1000, 100) } else { (10_000, 1000) };
    vec![
        check_oracle_pointwise(n_points),
        check_oracle_integrated(config),
        check_null_tests(config),
        check_reciprocity_suite(n_modes),
        check_mirror_equilibrium(config),
        check_stefan_boltzmann(config),
        check_blackbody_limits(config),
        check_frame_invariance(config),
        check_translation_rules(),
        check_determinism(config),
        check_tolerance_monotonicity(config),
        check_cut_factor_sufficiency(config),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splitmix_is_deterministic() {
        let mut a = SplitMix(7);
        let mut b = SplitMix(7);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn translation_check_passes() {
        assert!(check_translation_rules().passed);
    }
}
