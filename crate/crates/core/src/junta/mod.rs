//! The restriction digraph `G_f` and single-variable no-junta restrictions.

pub mod checks;
pub mod digraph;
pub mod dot;
pub mod pivot;

pub use checks::{check_closure, check_transitivity, check_two_cycles, Violation};
pub use digraph::{build_digraph, u1, Edge, RestrictionDigraph};
pub use dot::emit_dot;
pub use pivot::{
    find_nojunta_restriction, verify_theorem_nojunta, verify_theorem_nojunta_parallel, NoJuntaCertificate,
    NoJuntaReport,
};
