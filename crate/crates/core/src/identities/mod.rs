//! Exact verifiers for the sieve identities: linear sieve weights, Ramaré's
//! identity and the coefficients `a_r`, and Heath-Brown's identity.

mod beta;
mod heath_brown;
mod ramare;

pub use beta::{beta_sieve_coefficients, SieveCoefficients, SieveSign};
pub use heath_brown::{
    all_dyadic_cases, binomial, heath_brown_decomposition, heath_brown_eval, sample_dyadic_cases,
    truncation_for, FactorKind, HeathBrownDecomposition, HeathBrownTerm, GENERATOR_LOG_X,
};
pub use ramare::{
    convolution_coefficients, exact_to_c64, extraction_defect, presieve_split, ramare_coefficients,
    ramare_identity_eval, tau_bound_violations, Exact, ExtractionDefect, IdentityFunction,
    RamareDecomposition, RamareParams,
};
