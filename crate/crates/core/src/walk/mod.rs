//! Continuous-time quantum walks `U(t) = exp(itA)`: exact character-sum
//! rows, class amplitudes for Hamming-scheme graphs and Mullin's coset
//! formula for Hamming quotients.

mod mullin;
mod row;
mod scheme_row;
mod time;

pub use mullin::{coset_enumerators, mullin_entry, mullin_row_norm, mullin_verdict, MullinEvaluator, UnitCircleValue};
pub use row::{is_uniform_mixing, transition_row, TransitionRow, EXACT_BUFFER_CAP};
pub use scheme_row::{scheme_transition_class, SchemeRow};
pub use time::WalkTime;

pub use crate::dense::{dense_transition, is_local_uniform_mixing, is_uniform_mixing_dense, Adjacency, DenseWalk};
