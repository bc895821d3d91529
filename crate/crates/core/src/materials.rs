//! Dielectric-response models and optical-data ingestion.
//!
//! A [`DielectricModel`] provides the relative permittivity on the real
//! frequency axis, ε(ω), and on the imaginary axis, ε(iξ). The imaginary-axis
//! values feed the Matsubara evaluation of the equilibrium pressure: analytic
//! models substitute ω → iξ directly, tabulated data goes through the
//! Kramers-Kronig identity
//!
//! ```text
//! ε(iξ) = 1 + (2/π) ∫₀^∞ ω ε″(ω) / (ω² + ξ²) dω
//! ```
//!
//! evaluated with the adaptive quadrature engine, split at ω = ξ where the
//! integrand peaks.

use std::io::{Read, Write};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quadrature::{integrate_1d, QuadratureConfig};
use crate::waves::C;

/// Elementary charge, C (exact). Used for the eV → rad/s conversion.
pub const E_CHARGE: f64 = 1.602_176_634e-19;

/// ω [rad/s] per photon energy [eV].
pub const OMEGA_PER_EV: f64 = E_CHARGE / crate::waves::HBAR;

/// A single Lorentz oscillator ε-contribution ω_p²/(ω₀² − ω² − iγω).
/// ω₀ = 0 gives a Drude (free-carrier) term.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Oscillator {
    pub omega0: f64,
    pub omega_p: f64,
    pub gamma: f64,
}

/// One sample of tabulated optical data, canonicalized to (ω, ε′, ε″).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TabulatedSample {
    pub omega: f64,
    pub eps_re: f64,
    pub eps_im: f64,
}

/// Frequency-dependent complex permittivity.
#[derive(Debug, Clone, PartialEq)]
pub enum DielectricModel {
    Vacuum,
    /// Dispersion-free permittivity. A nonzero imaginary part is accepted on
    /// the real axis but has no causal continuation to the imaginary axis.
    Constant(Complex64),
    DrudeLorentz {
        eps_inf: f64,
        oscillators: Vec<Oscillator>,
    },
    /// Ideal reflector sentinel. Has no permittivity; only legal where the
    /// consuming operation documents closed-form coefficients
    /// (ρ_TE = −1, ρ_TM = +1, τ = 0).
    PerfectMirror,
    /// Samples strictly increasing in ω, ε″ ≥ 0 everywhere (passivity).
    Tabulated(Vec<TabulatedSample>),
}

/// ε(i·0⁺) limit, used by the n = 0 Matsubara term. The divergent cases are
/// distinguished because they reflect differently at ξ = 0: a Drude metal
/// keeps no TE reflection there, a dissipationless plasma does.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StaticEps {
    Finite(f64),
    /// ε(iξ) ~ A/ξ (free carriers with γ > 0): εξ² → 0, so r_TE(0) = 0 and
    /// r_TM(0) = 1.
    DrudeDivergent,
    /// ε(iξ) ~ ω_p²/ξ² (lossless plasma): εξ² → ω_p², TE keeps the plasma
    /// reflection at ξ = 0.
    PlasmaDivergent { omega_p: f64 },
}

impl DielectricModel {
    pub fn drude_lorentz(eps_inf: f64, oscillators: Vec<Oscillator>) -> Result<Self> {
        if !(eps_inf >= 1.0) {
            return Err(Error::InvalidSpec(format!(
                "DrudeLorentz eps_inf must be >= 1, got {eps_inf}"
            )));
        }
        for (i, o) in oscillators.iter().enumerate() {
            if !(o.omega0 >= 0.0 && o.omega_p > 0.0 && o.gamma >= 0.0) {
                return Err(Error::InvalidSpec(format!(
                    "oscillator {i}: need omega0 >= 0, omega_p > 0, gamma >= 0"
                )));
            }
        }
        Ok(DielectricModel::DrudeLorentz {
            eps_inf,
            oscillators,
        })
    }

    pub fn tabulated(samples: Vec<TabulatedSample>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::InvalidSpec("tabulated model needs samples".into()));
        }
        for (i, s) in samples.iter().enumerate() {
            if !(s.omega > 0.0) {
                return Err(Error::InvalidSpec(format!(
                    "sample {i}: omega must be > 0"
                )));
            }
            if s.eps_im < 0.0 {
                return Err(Error::InvalidSpec(format!(
                    "sample {i}: eps_im < 0 violates passivity"
                )));
            }
            if i > 0 && samples[i - 1].omega >= s.omega {
                return Err(Error::InvalidSpec(format!(
                    "samples must be strictly increasing in omega (index {i})"
                )));
            }
        }
        Ok(DielectricModel::Tabulated(samples))
    }

    /// Whether the model can dissipate energy anywhere on the real axis.
    pub fn is_lossy(&self) -> bool {
        match self {
            DielectricModel::Vacuum => false,
            DielectricModel::Constant(e) => e.im > 0.0,
            DielectricModel::DrudeLorentz { oscillators, .. } => {
                oscillators.iter().any(|o| o.gamma > 0.0)
            }
            DielectricModel::PerfectMirror => false,
            DielectricModel::Tabulated(s) => s.iter().any(|t| t.eps_im > 0.0),
        }
    }

    /// Highest structural frequency of the model, used by the ω-cutoff rule.
    pub fn max_resonance_omega(&self) -> Option<f64> {
        match self {
            DielectricModel::DrudeLorentz { oscillators, .. } => oscillators
                .iter()
                .map(|o| o.omega0.max(o.omega_p))
                .fold(None, |acc: Option<f64>, x| Some(acc.map_or(x, |a| a.max(x)))),
            DielectricModel::Tabulated(s) => s.last().map(|t| t.omega),
            _ => None,
        }
    }

    /// Relative permittivity ε(ω) on the real axis, ω > 0.
    pub fn permittivity(&self, omega: f64) -> Result<Complex64> {
        if !(omega > 0.0) {
            return Err(Error::domain(format!(
                "permittivity needs omega > 0, got {omega}"
            )));
        }
        match self {
            DielectricModel::Vacuum => Ok(Complex64::new(1.0, 0.0)),
            DielectricModel::Constant(e) => Ok(*e),
            DielectricModel::DrudeLorentz {
                eps_inf,
                oscillators,
            } => {
                let mut eps = Complex64::new(*eps_inf, 0.0);
                for o in oscillators {
                    let denom = Complex64::new(
                        o.omega0 * o.omega0 - omega * omega,
                        -o.gamma * omega,
                    );
                    eps += o.omega_p * o.omega_p / denom;
                }
                Ok(eps)
            }
            DielectricModel::PerfectMirror => Err(Error::UnsupportedModel(
                "PerfectMirror has closed-form scattering coefficients, not a permittivity",
            )),
            DielectricModel::Tabulated(samples) => Ok(interpolate_tabulated(samples, omega)),
        }
    }

    /// ε(iξ) on the imaginary axis, ξ > 0: real and ≥ 1 for passive models.
    ///
    /// A tabulated model whose ε″ vanishes identically has no imaginary-axis
    /// content and returns exactly 1 (the caller may warn; see
    /// [`DielectricModel::is_lossy`]).
    pub fn permittivity_imag_axis(&self, xi: f64) -> Result<f64> {
        if !(xi > 0.0) {
            return Err(Error::domain(format!(
                "permittivity_imag_axis needs xi > 0, got {xi}"
            )));
        }
        match self {
            DielectricModel::Vacuum => Ok(1.0),
            DielectricModel::Constant(e) => {
                if e.im != 0.0 {
                    Err(Error::UnsupportedModel(
                        "a constant complex permittivity has no causal imaginary-axis continuation",
                    ))
                } else if e.re < 1.0 {
                    Err(Error::UnsupportedModel(
                        "constant permittivity below 1 is not passive",
                    ))
                } else {
                    Ok(e.re)
                }
            }
            DielectricModel::DrudeLorentz {
                eps_inf,
                oscillators,
            } => {
                let mut eps = *eps_inf;
                for o in oscillators {
                    eps += o.omega_p * o.omega_p
                        / (o.omega0 * o.omega0 + xi * xi + o.gamma * xi);
                }
                Ok(eps)
            }
            DielectricModel::PerfectMirror => Err(Error::UnsupportedModel(
                "PerfectMirror has closed-form scattering coefficients, not a permittivity",
            )),
            DielectricModel::Tabulated(samples) => kramers_kronig_imag_axis(samples, xi),
        }
    }

    /// ξ → 0 limit of ε(iξ), for the half-weighted Matsubara zero term.
    pub fn eps_imag_axis_static(&self) -> Result<StaticEps> {
        match self {
            DielectricModel::Vacuum => Ok(StaticEps::Finite(1.0)),
            DielectricModel::Constant(e) => {
                if e.im != 0.0 || e.re < 1.0 {
                    Err(Error::UnsupportedModel(
                        "constant complex permittivity has no static imaginary-axis limit",
                    ))
                } else {
                    Ok(StaticEps::Finite(e.re))
                }
            }
            DielectricModel::DrudeLorentz {
                eps_inf,
                oscillators,
            } => {
                let mut eps = *eps_inf;
                let mut plasma_wp2 = 0.0f64;
                let mut has_drude = false;
                for o in oscillators {
                    if o.omega0 == 0.0 {
                        if o.gamma == 0.0 {
                            plasma_wp2 += o.omega_p * o.omega_p;
                        } else {
                            has_drude = true;
                        }
                    } else {
                        eps += o.omega_p * o.omega_p / (o.omega0 * o.omega0);
                    }
                }
                if plasma_wp2 > 0.0 {
                    Ok(StaticEps::PlasmaDivergent {
                        omega_p: plasma_wp2.sqrt(),
                    })
                } else if has_drude {
                    Ok(StaticEps::DrudeDivergent)
                } else {
                    Ok(StaticEps::Finite(eps))
                }
            }
            DielectricModel::PerfectMirror => Err(Error::UnsupportedModel(
                "PerfectMirror has closed-form scattering coefficients, not a permittivity",
            )),
            DielectricModel::Tabulated(samples) => {
                if samples.iter().all(|s| s.eps_im == 0.0) {
                    return Ok(StaticEps::Finite(1.0));
                }
                let cfg = kk_config();
                let est = integrate_1d(
                    |w| Ok(eps_im_at(samples, w) / w),
                    samples[0].omega,
                    samples[samples.len() - 1].omega,
                    &table_breaks(samples, samples[0].omega),
                    &cfg,
                    "KK static limit",
                )?;
                Ok(StaticEps::Finite(1.0 + 2.0 / std::f64::consts::PI * est.value))
            }
        }
    }
}

/// Piecewise-linear interpolation of (ε′, ε″) in log ω; constant-ε′/zero-ε″
/// extrapolation below the table, vacuum above.
fn interpolate_tabulated(samples: &[TabulatedSample], omega: f64) -> Complex64 {
    let first = &samples[0];
    let last = &samples[samples.len() - 1];
    if omega <= first.omega {
        return Complex64::new(first.eps_re, 0.0);
    }
    if omega >= last.omega {
        if omega == last.omega {
            return Complex64::new(last.eps_re, last.eps_im);
        }
        return Complex64::new(1.0, 0.0);
    }
    let idx = samples.partition_point(|s| s.omega < omega);
    let lo = &samples[idx - 1];
    let hi = &samples[idx];
    let t = (omega.ln() - lo.omega.ln()) / (hi.omega.ln() - lo.omega.ln());
    Complex64::new(
        lo.eps_re + t * (hi.eps_re - lo.eps_re),
        lo.eps_im + t * (hi.eps_im - lo.eps_im),
    )
}

fn eps_im_at(samples: &[TabulatedSample], omega: f64) -> f64 {
    let first = &samples[0];
    let last = &samples[samples.len() - 1];
    if omega < first.omega || omega > last.omega {
        return 0.0;
    }
    interpolate_tabulated(samples, omega).im
}

fn kk_config() -> QuadratureConfig {
    QuadratureConfig {
        rel_tol: 1e-8,
        abs_floor: 1e-300,
        max_subdivisions: 4000,
        ..QuadratureConfig::default()
    }
}

/// Interior table nodes: the interpolant has a kink at each of them, so they
/// seed panel boundaries. Thinned for very large tables.
fn table_breaks(samples: &[TabulatedSample], extra: f64) -> Vec<f64> {
    let n = samples.len();
    let stride = (n / 1024).max(1);
    let mut breaks: Vec<f64> = samples
        .iter()
        .skip(1)
        .step_by(stride)
        .map(|s| s.omega)
        .collect();
    breaks.push(extra);
    breaks
}

fn kramers_kronig_imag_axis(samples: &[TabulatedSample], xi: f64) -> Result<f64> {
    if samples.iter().all(|s| s.eps_im == 0.0) {
        return Ok(1.0);
    }
    let a = samples[0].omega;
    let b = samples[samples.len() - 1].omega;
    let cfg = kk_config();
    // the integrand ω ε″/(ω² + ξ²) peaks near ω ≈ ξ; the interpolation
    // kinks at the table nodes are seeded as breakpoints
    let est = integrate_1d(
        |w| Ok(w * eps_im_at(samples, w) / (w * w + xi * xi)),
        a,
        b,
        &table_breaks(samples, xi),
        &cfg,
        "Kramers-Kronig integral",
    )?;
    Ok(1.0 + 2.0 / std::f64::consts::PI * est.value)
}

/// Column schema of an optical data file.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OpticalSchema {
    /// `energy_eV,eps_re,eps_im`
    EnergyEvEps,
    /// `wavelength_um,n,k`, converted via ε = (n + ik)².
    WavelengthUmNk,
}

/// A parsed optical data file: schema plus raw rows with their 1-based source
/// line numbers.
#[derive(Debug, Clone)]
pub struct OpticalDataFile {
    pub schema: OpticalSchema,
    pub rows: Vec<(usize, [f64; 3])>,
}

/// Parse a UTF-8 CSV optical data file. `#` lines are comments; the header
/// must name the schema columns exactly.
pub fn parse_optical_data<R: Read>(reader: R) -> Result<OpticalDataFile> {
    let mut rdr = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .has_headers(true)
        .from_reader(reader);

    let headers = rdr
        .headers()
        .map_err(|e| Error::Ingest {
            line: 1,
            msg: format!("cannot read header: {e}"),
        })?
        .clone();
    let cols: Vec<&str> = headers.iter().collect();
    let schema = match cols.as_slice() {
        ["energy_eV", "eps_re", "eps_im"] => OpticalSchema::EnergyEvEps,
        ["wavelength_um", "n", "k"] => OpticalSchema::WavelengthUmNk,
        other => {
            return Err(Error::Ingest {
                line: 1,
                msg: format!(
                    "unknown header {:?}; expected energy_eV,eps_re,eps_im or wavelength_um,n,k",
                    other.join(",")
                ),
            })
        }
    };

    let mut rows = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(|e| Error::Ingest {
            line: 0,
            msg: format!("CSV parse error: {e}"),
        })?;
        let line = record.position().map(|p| p.line() as usize).unwrap_or(0);
        if record.len() != 3 {
            return Err(Error::Ingest {
                line,
                msg: format!("expected 3 columns, got {}", record.len()),
            });
        }
        let mut vals = [0.0f64; 3];
        for (i, field) in record.iter().enumerate() {
            vals[i] = field.parse::<f64>().map_err(|e| Error::Ingest {
                line,
                msg: format!("column {}: {e} (decimal point only)", i + 1),
            })?;
        }
        rows.push((line, vals));
    }
    if rows.is_empty() {
        return Err(Error::Ingest {
            line: 0,
            msg: "no data rows".into(),
        });
    }
    Ok(OpticalDataFile { schema, rows })
}

/// Canonicalize a parsed optical data file into a `Tabulated` model:
/// convert to (ω, ε′, ε″), sort ascending in ω, reject duplicates and
/// passivity violations with their source line numbers.
pub fn ingest_optical_data(file: &OpticalDataFile) -> Result<DielectricModel> {
    let mut converted: Vec<(usize, TabulatedSample)> = Vec::with_capacity(file.rows.len());
    for &(line, vals) in &file.rows {
        let sample = match file.schema {
            OpticalSchema::EnergyEvEps => {
                let [ev, eps_re, eps_im] = vals;
                TabulatedSample {
                    omega: ev * OMEGA_PER_EV,
                    eps_re,
                    eps_im,
                }
            }
            OpticalSchema::WavelengthUmNk => {
                let [lambda_um, n, k] = vals;
                let eps = Complex64::new(n, k) * Complex64::new(n, k);
                TabulatedSample {
                    omega: 2.0 * std::f64::consts::PI * C / (lambda_um * 1e-6),
                    eps_re: eps.re,
                    eps_im: eps.im,
                }
            }
        };
        if !(sample.omega > 0.0) || !sample.omega.is_finite() {
            return Err(Error::Ingest {
                line,
                msg: format!("converted omega not positive/finite: {}", sample.omega),
            });
        }
        if sample.eps_im < 0.0 {
            return Err(Error::Ingest {
                line,
                msg: format!("eps_im = {} < 0 violates passivity", sample.eps_im),
            });
        }
        converted.push((line, sample));
    }
    converted.sort_by(|a, b| a.1.omega.partial_cmp(&b.1.omega).unwrap());
    for w in converted.windows(2) {
        if w[0].1.omega == w[1].1.omega {
            return Err(Error::Ingest {
                line: w[1].0,
                msg: format!(
                    "duplicate omega {:.9e} after conversion (also line {})",
                    w[0].1.omega, w[0].0
                ),
            });
        }
    }
    DielectricModel::tabulated(converted.into_iter().map(|(_, s)| s).collect())
}

/// Emit a tabulated model as an `energy_eV,eps_re,eps_im` CSV such that
/// re-ingesting reproduces the samples bit-exactly. The energy value is
/// nudged by up to two ulps so that E · (e/ħ) rounds back to the stored ω.
pub fn emit_optical_data<W: Write>(samples: &[TabulatedSample], out: &mut W) -> Result<()> {
    let werr = |e: std::io::Error| Error::Ingest {
        line: 0,
        msg: format!("write error: {e}"),
    };
    writeln!(out, "# optical data emitted by neqslab").map_err(werr)?;
    writeln!(out, "energy_eV,eps_re,eps_im").map_err(werr)?;
    for s in samples {
        let ev = exact_preimage(s.omega, OMEGA_PER_EV);
        writeln!(out, "{},{},{}", ev, s.eps_re, s.eps_im).map_err(werr)?;
    }
    Ok(())
}

/// Find e with fl(e·k) == target bitwise, searching a few ulps around
/// target/k. Falls back to target/k when no exact preimage exists.
fn exact_preimage(target: f64, k: f64) -> f64 {
    let e0 = target / k;
    if e0 * k == target {
        return e0;
    }
    let mut up = e0;
    let mut down = e0;
    for _ in 0..4 {
        up = next_after_up(up);
        if up * k == target {
            return up;
        }
        down = next_after_down(down);
        if down * k == target {
            return down;
        }
    }
    e0
}

fn next_after_up(x: f64) -> f64 {
    f64::from_bits(x.to_bits() + 1)
}

fn next_after_down(x: f64) -> f64 {
    f64::from_bits(x.to_bits() - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn one_osc(omega0: f64, omega_p: f64, gamma: f64) -> DielectricModel {
        DielectricModel::drude_lorentz(
            1.0,
            vec![Oscillator {
                omega0,
                omega_p,
                gamma,
            }],
        )
        .unwrap()
    }

    #[test]
    fn vacuum_identity() {
        let m = DielectricModel::Vacuum;
        assert_eq!(m.permittivity(1e15).unwrap(), Complex64::new(1.0, 0.0));
        assert_eq!(m.permittivity_imag_axis(1e12).unwrap(), 1.0);
    }

    #[test]
    fn drude_lorentz_static_limit() {
        let m = one_osc(1e15, 1e15, 0.0);
        let eps = m.permittivity(1e9).unwrap();
        assert_relative_eq!(eps.re, 2.0, max_relative = 1e-6);
        assert!(eps.im.abs() < 1e-12);
    }

    #[test]
    fn drude_lorentz_imag_axis_closed_form() {
        let m = one_osc(1e15, 1e15, 0.0);
        assert_relative_eq!(m.permittivity_imag_axis(1e15).unwrap(), 1.5, max_relative = 1e-14);
    }

    #[test]
    fn perfect_mirror_is_unsupported() {
        let m = DielectricModel::PerfectMirror;
        assert!(matches!(
            m.permittivity(1e15),
            Err(Error::UnsupportedModel(_))
        ));
        assert!(matches!(
            m.permittivity_imag_axis(1e15),
            Err(Error::UnsupportedModel(_))
        ));
    }

    #[test]
    fn omega_domain_checked() {
        let m = DielectricModel::Vacuum;
        assert!(matches!(m.permittivity(0.0), Err(Error::Domain(_))));
        assert!(matches!(m.permittivity(-1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn tabulated_log_interpolation_by_hand() {
        // two-point table bracketing ω: linear in ln ω
        let samples = vec![
            TabulatedSample {
                omega: 1e14,
                eps_re: 2.0,
                eps_im: 0.2,
            },
            TabulatedSample {
                omega: 1e16,
                eps_re: 4.0,
                eps_im: 0.6,
            },
        ];
        let m = DielectricModel::tabulated(samples).unwrap();
        let omega = 1e15f64;
        let t = (omega.ln() - 1e14f64.ln()) / (1e16f64.ln() - 1e14f64.ln()); // = 0.5
        let eps = m.permittivity(omega).unwrap();
        assert_relative_eq!(eps.re, 2.0 + t * 2.0, max_relative = 1e-14);
        assert_relative_eq!(eps.im, 0.2 + t * 0.4, max_relative = 1e-14);
    }

    #[test]
    fn tabulated_extrapolation_rules() {
        let samples = vec![
            TabulatedSample {
                omega: 1e14,
                eps_re: 3.0,
                eps_im: 0.2,
            },
            TabulatedSample {
                omega: 1e15,
                eps_re: 2.0,
                eps_im: 0.1,
            },
        ];
        let m = DielectricModel::tabulated(samples).unwrap();
        let lo = m.permittivity(1e12).unwrap();
        assert_eq!(lo, Complex64::new(3.0, 0.0));
        let hi = m.permittivity(1e17).unwrap();
        assert_eq!(hi, Complex64::new(1.0, 0.0));
    }

    /// Synthetic table of a Lorentzian's ε″, dense enough for the KK route
    /// to reproduce the analytic ε(iξ) of the same oscillator.
    fn synthetic_table(model: &DielectricModel, n: usize, lo: f64, hi: f64) -> DielectricModel {
        let mut samples = Vec::with_capacity(n);
        let ratio = (hi / lo).powf(1.0 / (n - 1) as f64);
        let mut w = lo;
        for _ in 0..n {
            let eps = model.permittivity(w).unwrap();
            samples.push(TabulatedSample {
                omega: w,
                eps_re: eps.re,
                eps_im: eps.im.max(0.0),
            });
            w *= ratio;
        }
        DielectricModel::tabulated(samples).unwrap()
    }

    #[test]
    fn kramers_kronig_matches_analytic_lorentzian() {
        let analytic = one_osc(2e14, 3e14, 2e13);
        let table = synthetic_table(&analytic, 4000, 1e10, 1e19);
        let mut xi = 1e12;
        while xi <= 1.0000001e17 {
            let kk = table.permittivity_imag_axis(xi).unwrap();
            let exact = analytic.permittivity_imag_axis(xi).unwrap();
            assert!(
                (kk - exact).abs() / exact < 0.01,
                "xi={xi:.3e}: kk={kk}, exact={exact}"
            );
            xi *= 10.0;
        }
    }

    #[test]
    fn lossless_table_imag_axis_is_unity() {
        let samples = vec![
            TabulatedSample {
                omega: 1e14,
                eps_re: 2.0,
                eps_im: 0.0,
            },
            TabulatedSample {
                omega: 1e15,
                eps_re: 2.0,
                eps_im: 0.0,
            },
        ];
        let m = DielectricModel::tabulated(samples).unwrap();
        assert!(!m.is_lossy());
        assert_eq!(m.permittivity_imag_axis(1e14).unwrap(), 1.0);
    }

    #[test]
    fn ingest_ev_conversion() {
        let data = "# photon energies\nenergy_eV,eps_re,eps_im\n1.0,2.0,0.1\n";
        let file = parse_optical_data(data.as_bytes()).unwrap();
        let m = ingest_optical_data(&file).unwrap();
        if let DielectricModel::Tabulated(s) = &m {
            assert_relative_eq!(s[0].omega, 1.519267e15, max_relative = 1e-6);
            assert_eq!(s[0].eps_re, 2.0);
        } else {
            panic!("expected tabulated");
        }
    }

    #[test]
    fn ingest_wavelength_conversion() {
        let data = "wavelength_um,n,k\n1.0,1.0,0.0\n";
        let file = parse_optical_data(data.as_bytes()).unwrap();
        let m = ingest_optical_data(&file).unwrap();
        if let DielectricModel::Tabulated(s) = &m {
            assert_relative_eq!(s[0].omega, 1.883652e15, max_relative = 1e-6);
            assert_eq!(s[0].eps_re, 1.0);
            assert_eq!(s[0].eps_im, 0.0);
        } else {
            panic!("expected tabulated");
        }
    }

    #[test]
    fn ingest_sorts_unsorted_rows() {
        let data = "energy_eV,eps_re,eps_im\n2.0,3.0,0.1\n1.0,2.0,0.2\n";
        let file = parse_optical_data(data.as_bytes()).unwrap();
        let m = ingest_optical_data(&file).unwrap();
        if let DielectricModel::Tabulated(s) = &m {
            assert!(s[0].omega < s[1].omega);
            assert_eq!(s[0].eps_re, 2.0);
        } else {
            panic!("expected tabulated");
        }
    }

    #[test]
    fn ingest_rejects_duplicates_with_line_numbers() {
        let data = "energy_eV,eps_re,eps_im\n1.0,2.0,0.1\n1.0,2.5,0.2\n";
        let file = parse_optical_data(data.as_bytes()).unwrap();
        match ingest_optical_data(&file) {
            Err(Error::Ingest { line, msg }) => {
                assert_eq!(line, 3);
                assert!(msg.contains("line 2"));
            }
            other => panic!("expected duplicate rejection, got {other:?}"),
        }
    }

    #[test]
    fn ingest_rejects_negative_eps_im() {
        let data = "energy_eV,eps_re,eps_im\n1.0,2.0,-0.1\n";
        let file = parse_optical_data(data.as_bytes()).unwrap();
        assert!(matches!(
            ingest_optical_data(&file),
            Err(Error::Ingest { line: 2, .. })
        ));
    }

    #[test]
    fn emit_ingest_round_trip_bit_exact() {
        let data = "energy_eV,eps_re,eps_im\n0.1,2.123456789,0.0123456789\n1.7,3.25,0.5\n12.0,1.125,0.0625\n";
        let file = parse_optical_data(data.as_bytes()).unwrap();
        let m = ingest_optical_data(&file).unwrap();
        let samples = match &m {
            DielectricModel::Tabulated(s) => s.clone(),
            _ => unreachable!(),
        };
        let mut buf = Vec::new();
        emit_optical_data(&samples, &mut buf).unwrap();
        let file2 = parse_optical_data(buf.as_slice()).unwrap();
        let m2 = ingest_optical_data(&file2).unwrap();
        let samples2 = match &m2 {
            DielectricModel::Tabulated(s) => s.clone(),
            _ => unreachable!(),
        };
        assert_eq!(samples.len(), samples2.len());
        for (a, b) in samples.iter().zip(samples2.iter()) {
            assert_eq!(a.omega.to_bits(), b.omega.to_bits());
            assert_eq!(a.eps_re.to_bits(), b.eps_re.to_bits());
            assert_eq!(a.eps_im.to_bits(), b.eps_im.to_bits());
        }
    }

    proptest! {
        #[test]
        fn passivity_on_real_axis(
            omega in 1e11f64..1e17,
            omega0 in 1e13f64..1e16,
            omega_p in 1e13f64..1e16,
            gamma in 0.0f64..1e14,
        ) {
            let m = one_osc(omega0, omega_p, gamma);
            let eps = m.permittivity(omega).unwrap();
            prop_assert!(eps.im >= -1e-30);
        }

        #[test]
        fn imag_axis_real_and_monotone(
            omega0 in 1e13f64..1e16,
            omega_p in 1e13f64..1e16,
            gamma in 0.0f64..1e14,
        ) {
            let m = one_osc(omega0, omega_p, gamma);
            // geometric grid spanning 6 decades
            let mut prev = f64::INFINITY;
            let mut xi = 1e11;
            while xi <= 1.0000001e17 {
                let e = m.permittivity_imag_axis(xi).unwrap();
                prop_assert!(e >= 1.0);
                prop_assert!(e <= prev + 1e-12 * prev.abs().min(1e30));
                prev = e;
                xi *= 10.0;
            }
        }
    }
}
