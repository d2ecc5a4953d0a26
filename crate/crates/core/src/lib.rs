//! Winner determination for NP-hard voting rules under semi-random
//! preference models.
//!
//! The crate is organised bottom-up:
//!
//! * [`ranking`], [`majority`], [`digraph`]: rankings, profiles, distances and
//!   pairwise majority structure.
//! * [`rules`]: exact Dodgson, Young, Kemeny, Chamberlin-Courant and Monroe
//!   solvers, all bounded by an explicit [`Budget`].
//! * [`greedy`]: the polynomial-time certified Dodgson algorithm.
//! * [`models`]: α-IC and partial alternative randomization, with exact pmfs,
//!   samplers and expected majority graphs.
//! * [`reductions`]: X3C → Dodgson, padded semi-random profiles, the
//!   randomized X3C algorithm, and the feedback-arc-set machinery behind Kemeny.
//! * [`experiments`]: seeded Monte-Carlo checks of the concentration bounds.

pub mod budget;
pub mod digraph;
pub mod error;
pub mod experiments;
pub mod greedy;
pub mod io;
pub mod majority;
pub mod models;
pub mod ranking;
pub mod rational;
pub mod reductions;
pub mod rules;

pub use budget::Budget;
pub use digraph::Digraph;
pub use error::{Error, Result};
pub use majority::{condorcet_winner, deficit, weighted_wmg, wmg, SupportMatrix, Wmg};
pub use ranking::{Alternative, Permutation, Profile, Ranking, WeightedProfile};
pub use rational::Rational;
