//! Casimir-Lifshitz pressure, radiative heat transfer and atom-surface
//! forces between planar bodies held at three independent temperatures
//! (body 1, body 2, environment).
//!
//! The crate is organized bottom-up:
//!
//! - [`waves`]: mode kinematics (k_z branches, Bose factors, polarization
//!   scalars) and the physical constants;
//! - [`materials`]: dielectric models, optical-data ingestion, and the
//!   imaginary-axis permittivity;
//! - [`scattering`]: Fresnel and finite-slab amplitudes, translation rules,
//!   atomic scattering elements, reciprocity checks;
//! - [`kernels`]: pure per-(ω, k, p) integrands for every observable,
//!   including the unified diagonal nonequilibrium kernel used as an
//!   internal oracle;
//! - [`quadrature`]: the adaptive integration engine, Matsubara summation,
//!   observable assembly and deterministic parallel sweeps;
//! - [`validate`]: the runtime invariant suite behind the CLI `validate`
//!   command.

pub mod error;
pub mod kernels;
pub mod materials;
pub mod quadrature;
pub mod scattering;
pub mod validate;
pub mod waves;

pub use error::{Error, Result};
pub use kernels::{DeltaKind, SpectralPoint, TermTag};
pub use materials::{DielectricModel, Oscillator, TabulatedSample};
pub use quadrature::{
    observable_atom_force, observable_body_alone, observable_heat, observable_pressure, sweep,
    AtomForceSetup, BodyAloneKind, Layout, Observable, Observation, Polarizability,
    QuadratureConfig, SweepResult, SweepRow,
};
pub use scattering::{SlabSpec, Thickness};
pub use waves::{Polarization, ThermalTriple};
