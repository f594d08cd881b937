//! The Rogers dilogarithm and the numeric dilogarithm identities of the
//! Y-system: domain sums, constancy and the 0/∞ limit.

pub mod identities;
pub mod rogers;

pub use identities::{
    dilog_sum, domain_sum, verify_constancy, verify_identities, zero_infinity_limit, ConstancyReport, Domain,
    IdentityReport, IdentitySuite, LimitReport, LimitTerm, LIMIT_ARGUMENT_FACTOR, LIMIT_SUM_REL_TOL, LIMIT_TS,
};
pub use rogers::{l_of_ratio, rogers_l, rogers_normalized, verify_five_term, FiveTermReport, PI2_6};
