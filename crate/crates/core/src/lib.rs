//! Social choice over metric spaces.
//!
//! Voters submit *ideal points* in a metric space; the ideal point doubles as
//! a ballot (voters prefer outcomes closer to it) and as a proposal. This
//! crate aggregates ideal points under two families of rules:
//!
//! * **Condorcet aggregation** — an outcome that beats every other outcome in
//!   a pairwise voter-majority comparison by distance.
//! * **L_p aggregation** (`1 <= p <= inf`) — the outcome minimizing the sum of
//!   p-th powers of distances to the voter ideal points (the maximum distance
//!   for `p = inf`), together with the *reduced* form `limit of L_q as q -> p`
//!   which refines ties at `p = 1` and `p = inf`.
//!
//! Six settings are supported, each with its own metric space:
//!
//! | setting             | outcome space          | metric                          |
//! |---------------------|------------------------|---------------------------------|
//! | `plurality`         | alternatives           | discrete 0/1                    |
//! | `line`              | real numbers           | absolute difference             |
//! | `budget`            | probability simplex    | Euclidean                       |
//! | `ranking`           | permutations           | adjacent swaps (Kendall tau)    |
//! | `committee`         | subsets                | symmetric difference (Hamming)  |
//! | `committee_fixed_k` | size-k subsets         | symmetric difference (Hamming)  |
//! | `legislation`       | sentence sequences     | weighted edits (swap = 1/l^2)   |
//!
//! Numeric code is generic over the scalar type through [`scalar::Real`];
//! `f64` aliases are exported at the crate root. Integer-valued metrics stay
//! exact (`u64`), and the legislation metric is computed as an exact integer
//! numerator over `l^2`.
//!
//! Exact solvers refuse oversized instances instead of approximating; the
//! brute-force reference implementations in [`oracle`] double as ground truth
//! for the specialized solvers, and [`axioms`] provides an executable harness
//! for the majoritarity / monotonicity / uniqueness properties of every rule.

pub mod aggregation;
pub mod axioms;
pub mod committee;
pub mod election;
pub mod error;
mod finite;
pub mod legislation;
pub mod line;
pub mod metrics;
pub mod oracle;
pub mod plurality;
pub mod point;
pub mod ranking;
pub mod result;
pub mod scalar;
pub mod simplex;
pub mod solve;

pub use aggregation::{AggregationSpec, Exponent, Method, TieBreak};
pub use election::{Election, ElectionDraft, Setting};
pub use error::{Error, Result};
pub use point::Point;
pub use result::{AggregationResult, Diagnostics, NoWinnerReason};
pub use scalar::Real;
pub use solve::aggregate;

/// Default scalar type used by the CLI and the `*64` aliases.
pub type Scalar = f64;

pub type Point64 = Point<f64>;
pub type Election64 = Election<f64>;
pub type Spec64 = AggregationSpec<f64>;
pub type Result64 = AggregationResult<f64>;

pub type Point32 = Point<f32>;
pub type Election32 = Election<f32>;
