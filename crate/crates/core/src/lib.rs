//! Distance sets, power-norm spheres and character sums over prime fields.
//!
//! The crate is organised bottom-up:
//!
//! - [`field`]: `F_q`, additive and multiplicative characters, Gauss sums.
//! - [`vectorspace`]: `F_q^d`, point sets, the normalized Fourier transform.
//! - [`spheres`]: spheres `||x||_n = j`, their spectra and decay measurements.
//! - [`identities`]: exact character-sum identities and bound ratios.
//! - [`distance`]: distance sets, pair counts and coverage experiments.
//! - [`harness`]: suite configuration, orchestration and reports.

pub mod distance;
pub mod error;
pub mod field;
pub mod harness;
pub mod identities;
pub mod rng;
pub mod spheres;
pub mod vectorspace;

pub use distance::{
    coverage_experiment, distance_set, distance_set_between, incidence_audit, pair_count, two_set_coverage,
    two_set_experiment, CoverageResult, CoverageSummary, IncidenceAudit, PairCountResult,
};
pub use error::{Error, Result};
pub use field::{
    char_fourier, characters_of_order, gauss_sum, make_field, mult_character, nth_power_roots, CharacterTable,
    FieldElement, GaussSum, PrimeField,
};
pub use harness::{run_suite, ExperimentReport, OutputFormat, Suite, SuiteConfig};
pub use identities::{BoundCheck, IdentityCheck};
pub use num_complex::Complex64;
pub use spheres::{
    constant_sweep, decay_report, sphere_points, sphere_spectrum, DecayReport, RadiusPolicy, Regime, SphereSpec,
};
pub use vectorspace::{
    fourier_transform, norm_n, plancherel_residual, sample_point_set, PointSet, Space, SpectralFunction, Vector,
};
