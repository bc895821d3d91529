//! Distance/height sweeps with deterministic parallel execution.
//!
//! Rows are independent; each row's integrals run sequentially in a fixed
//! refinement order, and rows are collected by grid index, so the result is
//! bit-identical for any parallelism width. Per-row failures are recorded in
//! the row and the sweep continues.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::quadrature::observables::{
    observable_atom_force, observable_body_alone, observable_heat, observable_pressure,
    AtomForceSetup, BodyAloneKind, Layout, Observation, TermValue,
};
use crate::quadrature::QuadratureConfig;
use crate::scattering::SlabSpec;
use crate::waves::ThermalTriple;

/// An observable that can be swept over an abscissa (separation d for the
/// two-slab observables, atom height z_A for the atom force; the body-alone
/// observable has no geometry and repeats per row).
#[derive(Debug, Clone)]
pub enum Observable {
    Pressure {
        slab1: SlabSpec,
        slab2: SlabSpec,
        triple: ThermalTriple,
    },
    Heat {
        slab1: SlabSpec,
        slab2: SlabSpec,
        triple: ThermalTriple,
    },
    AtomForce {
        slab: SlabSpec,
        alpha: crate::quadrature::observables::Polarizability,
        triple: ThermalTriple,
    },
    BodyAlone {
        slab: SlabSpec,
        kind: BodyAloneKind,
        t_body: f64,
        t_env: f64,
    },
}

impl Observable {
    pub fn abscissa_name(&self) -> &'static str {
        match self {
            Observable::AtomForce { .. } => "z_A",
            _ => "d",
        }
    }

    /// Output unit of the observable value.
    pub fn unit(&self) -> &'static str {
        match self {
            Observable::Pressure { .. } => "Pa",
            Observable::Heat { .. } => "W/m^2",
            Observable::AtomForce { .. } => "N",
            Observable::BodyAlone { kind, .. } => match kind {
                BodyAloneKind::Heat => "W/m^2",
                BodyAloneKind::Force => "Pa",
            },
        }
    }

    /// Canonical term order for output columns.
    pub fn term_labels(&self) -> Vec<&'static str> {
        use crate::kernels::TermTag::*;
        let tags: &[crate::kernels::TermTag] = match self {
            Observable::Pressure { .. } => {
                &[EqT1, EqT2, AEw, B1, B2, B3, StefanBoltzmann]
            }
            Observable::Heat { .. } => &[AEw, B1, B2, B3],
            Observable::AtomForce { .. } => {
                &[PositionIndependent, PropagativeInterference, Evanescent]
            }
            Observable::BodyAlone { .. } => &[BodyAlone],
        };
        tags.iter().map(|t| t.label()).collect()
    }

    pub fn eval(&self, abscissa: f64, config: &QuadratureConfig) -> Result<Observation> {
        match self {
            Observable::Pressure {
                slab1,
                slab2,
                triple,
            } => {
                let layout = Layout::new(slab1.clone(), slab2.clone(), abscissa)?;
                observable_pressure(&layout, triple, config)
            }
            Observable::Heat {
                slab1,
                slab2,
                triple,
            } => {
                let layout = Layout::new(slab1.clone(), slab2.clone(), abscissa)?;
                observable_heat(&layout, triple, config)
            }
            Observable::AtomForce {
                slab,
                alpha,
                triple,
            } => {
                let setup = AtomForceSetup {
                    slab: slab.clone(),
                    alpha: *alpha,
                    z_a: abscissa,
                };
                observable_atom_force(&setup, triple, config)
            }
            Observable::BodyAlone {
                slab,
                kind,
                t_body,
                t_env,
            } => observable_body_alone(slab, *kind, *t_body, *t_env, config),
        }
    }
}

/// One sweep row: abscissa in meters, observable value, error estimate,
/// term breakdown, and the failure message if the row did not converge.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub abscissa: f64,
    pub value: f64,
    pub error: f64,
    pub terms: Vec<TermValue>,
    pub failure: Option<String>,
}

/// Table of sweep rows in grid order.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
}

/// Evaluate the observable on a strictly increasing abscissa grid.
/// `width` bounds the number of worker threads (0 = rayon default); the
/// output bytes are identical for every width.
pub fn sweep(
    observable: &Observable,
    grid: &[f64],
    width: usize,
    config: &QuadratureConfig,
) -> Result<SweepResult> {
    if grid.is_empty() {
        return Err(Error::domain("sweep grid is empty"));
    }
    for w in grid.windows(2) {
        if !(w[0] < w[1]) {
            return Err(Error::domain(format!(
                "sweep grid must be strictly increasing ({} !< {})",
                w[0], w[1]
            )));
        }
    }
    let row = |&x: &f64| -> SweepRow {
        match observable.eval(x, config) {
            Ok(obs) => SweepRow {
                abscissa: x,
                value: obs.value,
                error: obs.error,
                terms: obs.terms,
                failure: None,
            },
            Err(e) => SweepRow {
                abscissa: x,
                value: f64::NAN,
                error: f64::NAN,
                terms: Vec::new(),
                failure: Some(e.to_string()),
            },
        }
    };
    let rows = if width == 1 {
        grid.iter().map(row).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(width)
            .build()
            .map_err(|e| Error::domain(format!("thread pool: {e}")))?;
        pool.install(|| grid.par_iter().map(row).collect())
    };
    Ok(SweepResult { rows })
}
