//! Dirichlet polynomials `Σ_{N<n<=2N} a(n) n^{-s}` on vertical lines.

mod grid;
mod mean;
mod poly;
mod report;

pub use grid::{eval_grid, product_modulus, Grid};
pub use mean::{
    large_value_measure, mean_square_exact, mean_value_integral, mvt_ratio, pointwise_prime_decay,
    random_sign_polynomial, zeta_partial_sup, DecayRow, LargeValueReport, MeanValueConfig, MeanValueResult,
    SupReport, CONVERGENCE_TOL, MAX_HALVINGS,
};
pub use poly::{DirichletPolynomial, PolySupport, COMPENSATED_ABOVE};
pub use report::DirichletRecord;
