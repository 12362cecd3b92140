//! Multilinear representations over `Z` and `Z_m`, symmetric spectra and
//! the periodicity of binomial coefficients modulo `m`.

pub mod binom;
pub mod modulus;
pub mod poly;
pub mod symmetric;

pub use binom::{binom_mod, binom_mod_u64, check_periodicity, period_l};
pub use modulus::{Modulus, PrimePower, Ring};
pub use poly::{
    degree_crt_check, degree_integers, degree_mod, mobius_transform, prime_power_degrees, MultilinearPoly,
    Term,
};
pub use symmetric::{symmetric_spectrum, SymmetricSpectrum};
