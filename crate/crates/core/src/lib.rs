//! Periodic-point counts of involution-commuting systems and their halving
//! quotients.
//!
//! A system `T` with an involution `ι` commuting with it descends to the
//! quotient by `ι`. This crate counts what happens to periodic orbits under
//! that quotient, builds explicit finite systems realizing prescribed counts,
//! and studies the zeta functions involved.
//!
//! - [`arith`]: count sequences, divisors, Möbius inversion.
//! - [`combinatorics`]: behavior decompositions, bounds, existence recursion.
//! - [`system`]: explicit systems, the metric, quotients, doubling.
//! - [`series`], [`zeta`], [`rationality`]: exact power series and zeta functions.
//! - [`boundary`]: the natural-boundary family.
//! - [`reproduce`]: fixed worked examples with golden output.

pub mod arith;
pub mod boundary;
pub mod cli;
pub mod combinatorics;
pub mod error;
pub mod format;
pub mod rationality;
pub mod reproduce;
pub mod series;
pub mod system;
pub mod zeta;

pub use arith::{
    divisors, euler_congruence_holds, fixed_points_from_orbits, mobius, orbits_from_fixed_points,
    sigma, CountSequence,
};
pub use boundary::{c_sequence, natural_boundary_sequences, AuxiliarySequence};
pub use combinatorics::{
    big_system_counts, check_bounds, check_constraints, check_existence_hypotheses, decompose,
    growth_sequences, quotient_counts, BehaviorDecomposition, Bound, BoundViolation, GrowthSpec,
    RawBehavior,
};
pub use error::{Error, Result};
pub use rationality::{rationality_probe, RationalityReport, Verdict};
pub use series::PowerSeries;
pub use system::{
    build_system, classify_orbits, count_orbits, cross_check, distance, double_system, quotient, Dynamics,
    FiniteSystem, Point, PointKind, QuotientSystem,
};
pub use zeta::{
    doubling_zeta_identity_check, log_derivative_counts, phi_series, theta_series,
    zeta_from_fixed_points, zeta_from_orbits,
};
