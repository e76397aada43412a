//! Segmented factorization sieve and the arithmetic functions evaluated on
//! its output.

mod cache;
mod functions;
mod periodic;
mod primes;
mod table;

pub use cache::{read_prime_cache, write_prime_cache};
pub use functions::{evaluate_function, ArithmeticFunctionId};
pub use periodic::{evaluate_periodic_multiplicative, PeriodicMultiplicativeFunction, PrimePowerRule};
pub use primes::{base_primes, for_each_prime, is_prime, isqrt, prime_count_between};
pub use table::{
    divisor_k_prime_power, factor_interval, FactorEntry, FactorTable, Interval, PrimePower, Sieve,
    SieveConfig, DEFAULT_SEGMENT_LEN, WINDOW_LIMIT,
};
