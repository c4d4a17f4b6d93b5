//! Shared inputs for the benchmarks.

use psidiff::{build_pair, Family, PartialQuotients, DEFAULT_SEARCH_BOUND};
use num_rational::BigRational;

/// The golden and silver ratios, the pair most benchmarks profile.
pub fn golden_silver() -> (PartialQuotients, PartialQuotients) {
    (PartialQuotients::golden(), PartialQuotients::silver())
}

/// `θ` and the extremal `ω` for exponent 1/2 and tolerance 0.003.
pub fn extremal() -> (PartialQuotients, PartialQuotients) {
    let pair = build_pair(
        Family::Sqrt2,
        &BigRational::new(1.into(), 2.into()),
        &BigRational::new(3.into(), 1000.into()),
        DEFAULT_SEARCH_BOUND,
    )
    .expect("the default construction succeeds");
    (pair.base, pair.omega)
}
