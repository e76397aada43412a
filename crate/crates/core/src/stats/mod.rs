//! Short-interval experiments: window sums with main terms and long-window
//! proxies, the Landau-Ramanujan constant, rational approximation and
//! twisted sums, and the counterexample pair for the comparison principle.

mod counterexample;
mod experiments;
mod landau;
mod rational;
mod report;
mod twisted;
mod window;

pub use counterexample::{counterexample_pair_report, CounterexampleReport};
pub use experiments::{
    divisor_window_report, e2_window_report, mobius_bound_report, periodic_multiplicative_report,
    two_squares_window_report, DivisorMainTerm, DivisorReport, E2Report, E2Split, MobiusSummary,
    MobiusWindow, PeriodicReport, EULER_GAMMA,
};
pub use landau::{
    dirichlet_beta, hurwitz_zeta, landau_ramanujan_accelerated, landau_ramanujan_constant,
    landau_ramanujan_direct, landau_ramanujan_truncated, zeta, LandauRamanujan, DIRECT_CUTOFF,
};
pub use rational::{rational_approx, RationalApproximation};
pub use report::{write_csv, ExperimentReport, WindowRow};
pub use twisted::{e, frac_mul, twisted_sum_report, twisted_windows, Arc, TwistedReport, TwistedSummary};
pub use window::{
    comparison_defect, mertens, seeded_starts, short_sum, short_sum_periodic, window_length, window_pair, Term,
    WindowReport,
};
