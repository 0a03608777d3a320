use alloc::string::String;

/// Errors raised by the model, the fitters and the pattern generator.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An input lies outside the domain of the operation.
    #[error("{quantity} = {value} is out of range: {expected}")]
    Domain {
        /// Name of the offending quantity.
        quantity: &'static str,
        /// The rejected value.
        value: f64,
        /// Human-readable description of the admissible range.
        expected: &'static str,
    },

    /// An arccos argument left [-1, 1] by more than the clamping tolerance.
    #[error("arccos argument {0} lies outside [-1, 1]")]
    ArccosRange(f64),

    /// A geometric construction collapsed (zero-length ray, zero denominator).
    #[error("degenerate configuration: {0}")]
    Degenerate(&'static str),

    /// Parameters do not match the spring variant they are applied to.
    #[error("configuration mismatch: {0}")]
    Configuration(&'static str),

    /// The compression law was evaluated in the tension region.
    #[error("z_tilde = {z_tilde} exceeds the free extension {z_tilde_0}; use the tension model")]
    Region {
        /// Requested extension ratio.
        z_tilde: f64,
        /// Free extension ratio of the spring.
        z_tilde_0: f64,
    },

    /// Two independent computations that must agree did not.
    #[error("internal consistency check failed: {0}")]
    Consistency(String),

    /// A measurement row cannot be normalized.
    #[error("row {row}: z = {z} mm is not below the helix length {limit} mm")]
    RowOutOfRange {
        /// Zero-based index of the offending row.
        row: usize,
        /// Extension of that row in mm.
        z: f64,
        /// Upper bound `lambda * l_f` in mm.
        limit: f64,
    },

    /// A measurement series violates its ordering or sign invariants.
    #[error("invalid measurement series: {0}")]
    Series(String),

    /// Not enough data points in a fitting region.
    #[error("{region} fit needs at least {needed} points, found {found}")]
    InsufficientData {
        /// Region name (`compression` or `tension`).
        region: &'static str,
        /// Minimum number of points.
        needed: usize,
        /// Points available.
        found: usize,
    },

    /// The force never changes sign, so no free extension can be located.
    #[error("force does not cross zero; cannot locate the free extension")]
    NoZeroCrossing,

    /// Least-squares design matrix is rank deficient.
    #[error("rank-deficient design matrix: basis `{0}` is collinear with the others")]
    RankDeficient(&'static str),

    /// Friction calibration has no positive solution.
    #[error("friction calibration failed: {0}")]
    Calibration(&'static str),
}

/// Crate-wide result alias.
pub type Result<T, E = Error> = core::result::Result<T, E>;

pub(crate) fn domain(quantity: &'static str, value: f64, expected: &'static str) -> Error {
    Error::Domain {
        quantity,
        value,
        expected,
    }
}
