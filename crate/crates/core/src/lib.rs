//! Linear electromagnetic response of a relativistic electron gas.
//!
//! All quantities are dimensionless. Frequencies and wavevectors enter
//! through `a = ω/2m` and `b = |q|/2m`; temperature, chemical potential and
//! single-particle energies are measured in units of the electron mass.
//!
//! The crate is layered bottom-up:
//!
//! * [`kinematics`]: the reduced variables and the absorption-region map;
//! * [`occupation`]: Fermi-Dirac occupation and integration cut-off;
//! * [`numerics`]: adaptive quadrature and bracketed root finding;
//! * [`vacuum`]: the vacuum polarisation scalar `C*`;
//! * [`medium_finite_t`] and [`medium_zero_t`]: the medium scalars `B*`, `D*`
//!   (and `A*`) as 1D integrals and as `T = 0` closed forms;
//! * [`responses`]: permittivity/permeability tensors, plasmon dispersion
//!   and metamaterial masks;
//! * [`nr_oracle`]: the nonrelativistic Lindhard imaginary part.

pub mod branch;
pub mod error;
pub mod kinematics;
pub mod medium_finite_t;
pub mod medium_zero_t;
pub mod numerics;
pub mod nr_oracle;
pub mod occupation;
pub mod parallel;
pub mod responses;
pub mod vacuum;

pub use branch::AbsorptionBranch;
pub use error::{Error, Result};
pub use kinematics::{
    classify_region, derive_point, region_boundaries, zero_t_subregion, FermiSurface,
    KinematicPoint, RegionBoundaries, RegionLabel, Subregion, SubregionLabel,
};
pub use medium_finite_t::{ResponseScalars, ScalarOptions};
pub use num_complex::Complex64;
pub use occupation::{n_fermi, x_cutoff, MediumState};
pub use parallel::Execution;
pub use responses::{
    assemble, dispersion, dispersion_at, evaluate, metamaterial_scan, response_at, DispersionBranch,
    DispersionMode, DispersionRoot, DispersionSample, MetamaterialCell, ResponseTensors,
};
pub use vacuum::{c_star, VacuumBranch, VacuumScalar};

/// Default fine-structure constant.
pub const ALPHA: f64 = 1.0 / 137.036;
