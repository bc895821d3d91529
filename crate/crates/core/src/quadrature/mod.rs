//! Adaptive integration and Matsubara summation.
//!
//! The engine is a worst-panel-first bisection scheme built on the embedded
//! 7-point Gauss / 15-point Kronrod rule (QUADPACK-style error rescaling).
//! Panels never evaluate the interval endpoints, so integrable endpoint
//! behavior (k_z → 0 at the light line, ω → 0 with a Bose factor) needs no
//! special casing. Refinement order is deterministic: ties on the worst
//! panel resolve to the lowest index, so identical inputs give bit-identical
//! results everywhere.

use crate::error::{Error, Result};
use crate::waves::{C, HBAR, K_B};

pub mod observables;
pub mod sweep;

pub use observables::{
    delta_observable, equilibrium_pressure, observable_atom_force, observable_body_alone,
    observable_heat, observable_pressure, AtomForceSetup, BlackBody, Body, BodyAloneKind, Layout,
    Observation, Polarizability, SlabBody, TermValue,
};
pub use sweep::{sweep, Observable, SweepResult, SweepRow};

/// Tolerances and cutoffs of the integration engine.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureConfig {
    /// Relative tolerance of every integral and sum.
    pub rel_tol: f64,
    /// Absolute floor below which contributions count as converged,
    /// in SI output units (Pa or W/m² scale).
    pub abs_floor: f64,
    /// Panel budget per one-dimensional integral.
    pub max_subdivisions: usize,
    /// Thermal frequency cutoff: ω ≤ factor · k_B·max(T)/ħ, joined with
    /// coverage of material resonances.
    pub omega_max_factor: f64,
    /// Evanescent cutoff: Im k_z integrated over (0, factor/(2d)].
    pub evanescent_cut_factor: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            rel_tol: 1e-6,
            abs_floor: 1e-30,
            max_subdivisions: 2000,
            omega_max_factor: 40.0,
            evanescent_cut_factor: 40.0,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol < 1.0) {
            return Err(Error::domain("rel_tol must lie in (0, 1)"));
        }
        if !(self.abs_floor > 0.0) {
            return Err(Error::domain("abs_floor must be positive"));
        }
        if self.max_subdivisions == 0 {
            return Err(Error::domain("max_subdivisions must be positive"));
        }
        if !(self.omega_max_factor > 0.0 && self.evanescent_cut_factor > 0.0) {
            return Err(Error::domain("cut factors must be positive"));
        }
        Ok(())
    }

    /// Thermal ω cutoff for the hottest temperature involved.
    pub(crate) fn omega_thermal_max(&self, t_max: f64) -> f64 {
        self.omega_max_factor * K_B * t_max / HBAR
    }
}

/// Value with an error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

impl Estimate {
    pub const ZERO: Estimate = Estimate {
        value: 0.0,
        error: 0.0,
    };
}

// 15-point Kronrod abscissae (non-negative half) and weights, with the
// embedded 7-point Gauss weights on the odd-index nodes. QUADPACK QK15.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_33,
    0.949_107_912_342_758_524_526_189_684_047_85,
    0.864_864_423_359_769_072_789_712_788_640_93,
    0.741_531_185_599_394_439_863_864_773_280_79,
    0.586_087_235_467_691_130_294_144_838_258_73,
    0.405_845_151_377_397_166_906_606_412_076_96,
    0.207_784_955_007_898_467_600_689_403_773_24,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy)]
struct Panel<const N: usize> {
    a: f64,
    b: f64,
    value: [f64; N],
    error: f64,
    /// 50·ε·∫|f| over the panel: the smallest error f64 arithmetic can
    /// certify here. Summed over panels it bounds what refinement can
    /// achieve for cancelling integrands.
    round_limit: f64,
    /// Refinement of this panel has stopped reducing its error (integrand
    /// evaluation noise floor); it is excluded from further splitting.
    stagnant: bool,
}

/// One GK15 pass over [a, b] for an N-component integrand.
fn gk15_panel<const N: usize, F>(f: &mut F, a: f64, b: f64) -> Result<Panel<N>>
where
    F: FnMut(f64) -> Result<[f64; N]>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);

    let fc = f(center)?;
    let mut kron = [0.0; N];
    let mut gauss = [0.0; N];
    let mut res_abs = 0.0f64;
    for i in 0..N {
        kron[i] = WGK[7] * fc[i];
        gauss[i] = WG[3] * fc[i]; // the embedded Gauss rule includes the center
        res_abs += (WGK[7] * fc[i]).abs();
    }

    let mut samples: Vec<[f64; N]> = Vec::with_capacity(14);
    let mut nodes_w: Vec<f64> = Vec::with_capacity(14);
    for (j, &x) in XGK.iter().take(7).enumerate() {
        let dx = half * x;
        let f1 = f(center - dx)?;
        let f2 = f(center + dx)?;
        for i in 0..N {
            kron[i] += WGK[j] * (f1[i] + f2[i]);
            res_abs += WGK[j] * (f1[i].abs() + f2[i].abs());
        }
        if j % 2 == 1 {
            // odd Kronrod indices carry the embedded Gauss nodes
            let g = WG[j / 2];
            for i in 0..N {
                gauss[i] += g * (f1[i] + f2[i]);
            }
        }
        samples.push(f1);
        samples.push(f2);
        nodes_w.push(WGK[j]);
        nodes_w.push(WGK[j]);
    }

    // res_asc: deviation of the integrand from its mean, for the QUADPACK
    // error rescaling.
    let mut res_asc = 0.0f64;
    for i in 0..N {
        let mean = kron[i] * 0.5;
        let mut asc = WGK[7] * (fc[i] - mean).abs();
        for (s, w) in samples.iter().zip(nodes_w.iter()) {
            asc += w * (s[i] - mean).abs();
        }
        res_asc += asc;
    }
    res_asc *= half.abs();
    res_abs *= half.abs();

    let mut raw_err = 0.0f64;
    let mut value = [0.0; N];
    for i in 0..N {
        raw_err += ((kron[i] - gauss[i]) * half).abs();
        value[i] = kron[i] * half;
    }

    let mut err = raw_err;
    if res_asc != 0.0 && err != 0.0 {
        let scale = (200.0 * err / res_asc).powf(1.5);
        err = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }

    Ok(Panel {
        a,
        b,
        value,
        error: err,
        round_limit: 50.0 * f64::EPSILON * res_abs,
        stagnant: false,
    })
}

/// Adaptive integral of an N-component integrand over [a, b].
///
/// `breakpoints` seeds interior panel boundaries (values outside (a, b) are
/// ignored); supply them wherever the integrand has known structure.
pub fn integrate_adaptive<const N: usize, F>(
    mut f: F,
    a: f64,
    b: f64,
    breakpoints: &[f64],
    rel_tol: f64,
    abs_floor: f64,
    max_subdivisions: usize,
    context: &str,
) -> Result<([f64; N], f64)>
where
    F: FnMut(f64) -> Result<[f64; N]>,
{
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::domain(format!(
            "integrate_adaptive: non-finite bounds [{a}, {b}]"
        )));
    }
    if a == b {
        return Ok(([0.0; N], 0.0));
    }

    let mut edges: Vec<f64> = Vec::with_capacity(breakpoints.len() + 2);
    edges.push(a);
    let mut sorted: Vec<f64> = breakpoints
        .iter()
        .copied()
        .filter(|x| x.is_finite() && *x > a && *x < b)
        .collect();
    sorted.sort_by(|x, y| x.partial_cmp(y).unwrap());
    sorted.dedup();
    edges.extend_from_slice(&sorted);
    edges.push(b);

    let mut panels: Vec<Panel<N>> = Vec::with_capacity(edges.len().max(16));
    for w in edges.windows(2) {
        panels.push(gk15_panel(&mut f, w[0], w[1])?);
    }

    let mut splits = 0usize;
    loop {
        let mut total = [0.0; N];
        let mut total_err = 0.0;
        let mut total_mag = 0.0;
        let mut round_limit = 0.0;
        for p in &panels {
            for i in 0..N {
                total[i] += p.value[i];
                total_mag += p.value[i].abs();
            }
            total_err += p.error;
            round_limit += p.round_limit;
        }
        let target = (rel_tol * total_mag).max(abs_floor);
        if total_err <= target {
            return Ok((total, total_err));
        }
        // cancelling integrands: once the error is dominated by the
        // roundoff bound, refinement cannot improve it; the estimate is
        // returned as achieved
        if target < round_limit && total_err <= 2.0 * round_limit {
            return Ok((total, total_err));
        }

        // worst refinable panel first; ties resolve to the lowest index
        let mut worst = usize::MAX;
        for (i, p) in panels.iter().enumerate() {
            if p.stagnant {
                continue;
            }
            if worst == usize::MAX || p.error > panels[worst].error {
                worst = i;
            }
        }
        if worst == usize::MAX {
            // only noise-floored panels remain; the achieved estimate is
            // as good as the integrand's evaluation allows
            return Ok((total, total_err));
        }
        let Panel { a: pa, b: pb, .. } = panels[worst];
        let mid = 0.5 * (pa + pb);
        let too_narrow = !(mid > pa && mid < pb);
        if splits >= max_subdivisions || too_narrow {
            return Err(Error::Convergence {
                context: context.to_string(),
                achieved: total_err,
                requested: target,
                panel_lo: pa,
                panel_hi: pb,
            });
        }
        let parent_error = panels[worst].error;
        let mut left = gk15_panel(&mut f, pa, mid)?;
        let mut right = gk15_panel(&mut f, mid, pb)?;
        // freeze only panels whose error no longer shrinks AND sits near
        // the arithmetic noise floor; under-resolved structure keeps its
        // error well above the roundoff bound and stays refinable
        let children_err = left.error + right.error;
        let children_round = left.round_limit + right.round_limit;
        if children_err >= 0.999 * parent_error && children_err <= 500.0 * children_round {
            left.stagnant = true;
            right.stagnant = true;
        }
        panels[worst] = left;
        panels.push(right);
        splits += 1;
    }
}

/// Adaptive integral of a scalar function over [a, b].
pub fn integrate_1d<F>(
    mut f: F,
    a: f64,
    b: f64,
    breakpoints: &[f64],
    config: &QuadratureConfig,
    context: &str,
) -> Result<Estimate>
where
    F: FnMut(f64) -> Result<f64>,
{
    let (v, e) = integrate_adaptive(
        |x| f(x).map(|y| [y]),
        a,
        b,
        breakpoints,
        config.rel_tol,
        config.abs_floor,
        config.max_subdivisions,
        context,
    )?;
    Ok(Estimate {
        value: v[0],
        error: e,
    })
}

/// Adaptive integral over the semi-infinite domain [a, ∞), truncated at
/// `a + cut_factor · decay_scale`. The caller documents the decay scale of
/// its integrand; with the default factor of 40 the discarded tail of an
/// e^{-x/scale} integrand is below 5e-18 relative.
pub fn integrate_semi_infinite<F>(
    f: F,
    a: f64,
    decay_scale: f64,
    breakpoints: &[f64],
    config: &QuadratureConfig,
    context: &str,
) -> Result<Estimate>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !(decay_scale > 0.0 && decay_scale.is_finite()) {
        return Err(Error::domain("decay scale must be positive and finite"));
    }
    let b = a + config.evanescent_cut_factor * decay_scale;
    integrate_1d(f, a, b, breakpoints, config, context)
}

/// Matsubara summation/integration of a per-ξ term function.
///
/// Returns M[f; T] = (2π k_B T/ħ) · [½ f(0) + Σ_{n≥1} f(ξ_n)] for T > 0 with
/// ξ_n = 2πn k_B T/ħ, which converges to ∫₀^∞ f(ξ) dξ as T → 0; T = 0 is
/// routed to that integral directly. `xi_scale` is the decay scale of f
/// (c/(2d) for cavity integrands) and controls the T = 0 cutoff as well as
/// the breakpoints of the integral route.
///
/// The sum stops once the geometric tail bound `last · r/(1 − r)` drops below
/// rel_tol times the accumulated value; non-decaying terms trip a convergence
/// failure after 10^5 indices.
pub fn matsubara_sum<F>(
    temperature: f64,
    mut term: F,
    xi_scale: f64,
    config: &QuadratureConfig,
) -> Result<Estimate>
where
    F: FnMut(f64) -> Result<Estimate>,
{
    const MAX_TERMS: usize = 100_000;
    if temperature < 0.0 {
        return Err(Error::domain("temperature must be >= 0"));
    }
    if temperature == 0.0 {
        let xi_max = config.evanescent_cut_factor * xi_scale;
        let breaks: Vec<f64> = (1..6).map(|i| xi_scale * (1 << i) as f64 / 2.0).collect();
        let mut inner_err = 0.0f64;
        let est = integrate_1d(
            |xi| {
                let e = term(xi)?;
                inner_err = inner_err.max(e.error);
                Ok(e.value)
            },
            0.0,
            xi_max,
            &breaks,
            config,
            "matsubara T=0 integral",
        )?;
        return Ok(Estimate {
            value: est.value,
            error: est.error + inner_err * xi_max,
        });
    }

    let step = 2.0 * std::f64::consts::PI * K_B * temperature / HBAR;
    let t0 = term(0.0)?;
    let mut acc = 0.5 * t0.value;
    let mut err = 0.5 * t0.error;
    let mut prev_mag = f64::NAN;
    let mut n = 1usize;
    loop {
        let tn = term(step * n as f64)?;
        acc += tn.value;
        err += tn.error;
        let mag = tn.value.abs();
        if mag == 0.0 && (prev_mag == 0.0 || n > 2) {
            break;
        }
        // geometric tail bound from the observed decay ratio; ratios at or
        // above 1 mean no bound yet, keep summing
        if prev_mag.is_finite() && prev_mag > 0.0 {
            let ratio = mag / prev_mag;
            if ratio < 1.0 {
                let tail = mag * ratio / (1.0 - ratio);
                if tail <= config.rel_tol * acc.abs() + config.abs_floor {
                    err += tail;
                    break;
                }
            }
        }
        prev_mag = mag;
        n += 1;
        if n > MAX_TERMS {
            return Err(Error::Convergence {
                context: "matsubara sum: terms not decaying".into(),
                achieved: prev_mag,
                requested: config.rel_tol * acc.abs(),
                panel_lo: step,
                panel_hi: step * n as f64,
            });
        }
    }
    Ok(Estimate {
        value: acc * step,
        error: err * step,
    })
}

/// Decay scale ξ_scale = c/(2d) of cavity integrands in the Matsubara
/// variable.
pub fn cavity_xi_scale(d: f64) -> f64 {
    C / (2.0 * d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    #[test]
    fn polynomial_exact() {
        let est = integrate_1d(|x| Ok(x * x), 0.0, 1.0, &[], &cfg(), "x^2").unwrap();
        assert_relative_eq!(est.value, 1.0 / 3.0, max_relative = 1e-12);
    }

    #[test]
    fn bose_weighted_cubic() {
        // ∫₀^∞ x³/(eˣ−1) dx = π⁴/15; the ω-integration path of the blackbody
        // limits uses exactly this shape.
        let est = integrate_semi_infinite(
            |x| Ok(if x == 0.0 { 0.0 } else { x.powi(3) / x.exp_m1() }),
            0.0,
            1.0,
            &[1.0, 2.0, 4.0, 8.0],
            &cfg(),
            "x^3 bose",
        )
        .unwrap();
        let exact = std::f64::consts::PI.powi(4) / 15.0;
        assert!((est.value - exact).abs() / exact < cfg().rel_tol);
    }

    #[test]
    fn discontinuity_with_and_without_split() {
        let step = |x: f64| Ok(if x < 0.3 { 1.0 } else { 2.0 });
        let with = integrate_1d(step, 0.0, 1.0, &[0.3], &cfg(), "step split").unwrap();
        assert_relative_eq!(with.value, 1.7, max_relative = 1e-12);

        let mut tight = cfg();
        tight.rel_tol = 1e-13;
        tight.max_subdivisions = 40;
        let without = integrate_1d(step, 0.0, 1.0, &[], &tight, "step raw");
        match without {
            Err(Error::Convergence { .. }) => {}
            Ok(est) => assert!(est.error > 1e-13 * est.value.abs()),
            Err(e) => panic!("unexpected error {e}"),
        }
    }

    #[test]
    fn matsubara_zero_function() {
        let est = matsubara_sum(300.0, |_| Ok(Estimate::ZERO), 1e14, &cfg()).unwrap();
        assert_eq!(est.value, 0.0);
    }

    #[test]
    fn matsubara_matches_integral_for_cold_limit() {
        // f(ξ) = e^{-ξ/s}: sum at small T approaches ∫ = s.
        let s = 1e14;
        let f = |xi: f64| {
            Ok(Estimate {
                value: (-xi / s).exp(),
                error: 0.0,
            })
        };
        let cold = matsubara_sum(0.05, f, s, &cfg()).unwrap();
        let integral = matsubara_sum(0.0, f, s, &cfg()).unwrap();
        assert_relative_eq!(cold.value, integral.value, max_relative = 1e-4);
        assert_relative_eq!(integral.value, s, max_relative = 1e-6);
    }

    #[test]
    fn matsubara_classical_limit_is_half_first_term() {
        // At high T only the n = 0 term survives for a decaying f.
        let s = 1e13;
        let f = |xi: f64| {
            Ok(Estimate {
                value: (-xi / s).exp(),
                error: 0.0,
            })
        };
        let hot = matsubara_sum(1e6, f, s, &cfg()).unwrap();
        let step = 2.0 * std::f64::consts::PI * K_B * 1e6 / HBAR;
        assert_relative_eq!(hot.value, 0.5 * step, max_relative = 1e-3);
    }

    #[test]
    fn tolerance_monotonicity_on_fixed_integrand() {
        let f = |x: f64| Ok((x * 37.0).sin().powi(2) / (1.0 + x * x));
        let mut prev = f64::INFINITY;
        let mut c = cfg();
        c.rel_tol = 1e-3;
        for _ in 0..6 {
            let est = integrate_1d(f, 0.0, 10.0, &[], &c, "osc").unwrap();
            assert!(est.error <= prev);
            prev = est.error;
            c.rel_tol *= 0.5;
        }
    }
}
