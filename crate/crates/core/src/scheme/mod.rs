//! The Hamming association scheme: Krawtchouk eigenvalues, congruence
//! conditions for uniform mixing of distance-graph unions, and the families
//! of graphs those conditions produce.

mod conditions;
mod graphs;
mod krawtchouk;

pub use conditions::{
    binomial_residue, certified_time, eigenvalue_gaps, kummer_carries, main3_condition, main4_condition,
    scheme_graph_condition, theta_congruence_condition, CongruenceResult,
};
pub use graphs::{
    enumerate_families, filter_sum_closed_form, filter_sums, union_class_graph, union_class_graph_in,
    FamilyInstance, SchemeGraphSpec, UnionClassGraph,
};
pub use krawtchouk::{krawtchouk, krawtchouk_gf, verify_recurrences, KrawtchoukTable, RecurrenceReport};
