pub mod bounds;
pub mod enumerate;
pub mod error;
pub mod junta;
pub mod modpoly;
pub mod restriction;
pub mod symmetry;
pub mod table;
pub mod varset;

pub use enumerate::{enumerate_functions, random_function, FunctionFilter, Partition};
pub use error::{Error, Result};
pub use restriction::{Restriction, Subfunction};
pub use symmetry::SymmetryProfile;
pub use table::{TableFile, TruthTable, MAX_VARS};
pub use varset::VarSet;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/truth-tables.md")]
    mod truth_tables {}
    #[doc = include_str!("../../../book/src/restrictions.md")]
    mod restrictions {}
    #[doc = include_str!("../../../book/src/polynomials.md")]
    mod polynomials {}
    #[doc = include_str!("../../../book/src/symmetric-bound.md")]
    mod symmetric_bound {}
    #[doc = include_str!("../../../book/src/random-functions.md")]
    mod random_functions {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
