//! Degree lower bounds: the symmetric bound with its CRT witness, second-moment
//! accounting for symmetric subfunctions, and the non-symmetric bound.

pub mod crt;
pub mod indicator;
pub mod moment;
pub mod nonsym;
pub mod symmetric;

pub use crt::solve_crt;
pub use indicator::{count_indicator, monte_carlo_lemma4, IndicatorCount, IndicatorMode};
pub use moment::{
    delta_upper_bound, expected_indicator, p_symmetric, restriction_count, second_moment_ratio,
    EmpiricalMoments, SecondMomentReport,
};
pub use nonsym::{
    corollary_dmax, subfunction_arity, verify_nonsym_bound, CorollaryInput, CorollaryReport,
    FoundRestriction, NonSymReport, SearchMode,
};
pub use symmetric::{
    construct_crt_witness, crt_witness_for_profile, exhaustive_sym_scan, exhaustive_sym_scan_parallel,
    profile_bits, sym_bound_for_profile, verify_sym_bound, CrtWitness, SymBoundReport, SymFinding,
    SymScanSummary,
};
