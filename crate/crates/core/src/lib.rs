//! Concentration inequalities driven by zero-bias couplings.
//!
//! The crate is split into four layers:
//!
//! * [`bounds`] evaluates the closed-form tail bounds (zero-bias one- and
//!   two-sided bounds, the `t log t` bound, the Bernstein family, Bennett,
//!   and the mean-based Hoeffding-statistic bound) and compares them.
//! * [`zerobias`] builds exact zero-bias distributions for finite discrete
//!   mean-zero laws, samples them, and couples independent sums.
//! * [`permstat`] handles Hoeffding's permutation statistic
//!   `Y = sum_i a_{i, pi(i)}`: moments, coupling constants and samplers for
//!   the uniform, fixed-point-free involution and cycle-type laws.
//! * [`oracle`] provides ground truth: exact enumeration, Monte Carlo with
//!   Clopper-Pearson intervals, Chernoff optimisation and domination reports.

pub mod bounds;
pub mod error;
pub mod formats;
pub mod oracle;
pub mod permstat;
pub mod rng;
pub mod zerobias;

pub use bounds::{BoundInput, BoundKind, BoundValue};
pub use error::{Error, Result};
pub use permstat::{CycleType, PermLaw, Permutation, SquareMatrix};
pub use zerobias::{DiscreteDist, PiecewiseDensity};
