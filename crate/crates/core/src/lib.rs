//! Bohr and Bohr–Rogosinski radii for Ma–Minda starlike and convex classes.
//!
//! [`series`] holds truncated power-series arithmetic, [`catalog`] the named
//! `ψ` presets, [`extremal`] the extremal functions and Koebe radii,
//! [`radius`] the radius solver and [`oracle`] the Monte-Carlo verification
//! of the underlying majorant inequalities.

pub mod catalog;
pub mod error;
pub mod extremal;
pub mod oracle;
pub mod radius;
pub mod series;

pub use catalog::{bell_numbers, janowski_coeff_bound, si, PsiId, PsiSpec, BOOTH_K};
pub use error::{Counterexample, Error, Result};
pub use extremal::{build_f0, build_l0, koebe_radius, ExtremalPair, Family};
pub use oracle::{
    bohr_operator, run_axiom_suite, run_br_monte_carlo, run_tail_monte_carlo, run_weighted_monte_carlo,
    sample_schwarz, verify_bohr_operator_axioms, verify_br_inequality, verify_tail_inequality, verify_weighted,
    SchwarzSample, TailRunConfig, VerificationReport, WeightedRunConfig,
};
pub use radius::{
    solve, solve_janowski_exact, solve_with, sweep, JanowskiProblem, Mode, RadiusProblem, RadiusResult, SweepAxis,
    SweepTable, DEFAULT_TOL, ONE_THIRD,
};
pub use series::{TruncatedSeries, DEFAULT_ORDER};
