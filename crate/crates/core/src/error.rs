use thiserror::Error;

/// Errors raised by the QFI engine. Every variant is a domain violation of
/// the caller's input; none of them indicate an internal failure.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum QfiError {
    #[error("interaction order k = {k} must satisfy 1 <= k <= N = {n}")]
    InvalidOrder { n: usize, k: usize },

    #[error("sector m = {m} lies outside [0, {n}]")]
    SectorOutOfRange { n: usize, m: usize },

    #[error("interaction order k = {0} must be even")]
    OddOrder(usize),

    #[error("party count N = {n} is odd; the even-k asymptotic form needs integer N/2")]
    OddPartyCount { n: usize },

    #[error("party count N = {n} exceeds the brute-force cap of {max}")]
    TooLarge { n: usize, max: usize },

    #[error("party count N = {n} is below the minimum {min} for this closed form")]
    TooSmall { n: usize, min: usize },

    #[error("{name} = {value} lies outside {range}")]
    OutOfDomain {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("local extremes must satisfy delta_M > delta_m (got {delta_max} <= {delta_min})")]
    DegenerateExtremes { delta_max: f64, delta_min: f64 },

    #[error("a local extreme equals zero (delta_M = {delta_max}, delta_m = {delta_min}); no scenario applies")]
    ZeroExtreme { delta_max: f64, delta_min: f64 },

    #[error("probe branches are identical: {0}")]
    IdenticalBranches(String),

    #[error("probe branches differ in length ({0} vs {1})")]
    BranchLengthMismatch(usize, usize),

    #[error("fit needs at least 3 points, got {0}")]
    TooFewPoints(usize),

    #[error("fit point N = {n} has non-positive value {value}")]
    NonPositiveValue { n: f64, value: f64 },

    #[error("fit points must have distinct N; {0} appears twice")]
    DuplicateAbscissa(f64),

    #[error("grid bound violated: {0}")]
    InvalidGrid(String),

    #[error("product window check failed for k = {k} at N = {n}: {reason}")]
    WindowViolation {
        k: usize,
        n: usize,
        reason: &'static str,
    },
}

pub type Result<T> = std::result::Result<T, QfiError>;

pub(crate) fn check_order(n: usize, k: usize) -> Result<()> {
    if k == 0 || k > n {
        return Err(QfiError::InvalidOrder { n, k });
    }
    Ok(())
}

pub(crate) fn check_sector(n: usize, m: usize) -> Result<()> {
    if m > n {
        return Err(QfiError::SectorOutOfRange { n, m });
    }
    Ok(())
}

pub(crate) fn check_unit_interval(name: &'static str, value: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&value) {
        return Err(QfiError::OutOfDomain {
            name,
            value,
            range: "[0, 1]",
        });
    }
    Ok(())
}
