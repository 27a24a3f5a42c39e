use serde::Serialize;
use thiserror::Error;

use crate::lattice::DivisorClass;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid surface: {0}")]
    InvalidSurface(String),

    #[error("divisor has {found} exceptional coefficients, surface has {expected} blown-up points")]
    ConfigMismatch { expected: usize, found: usize },

    #[error("integer overflow")]
    Overflow,

    #[error("parity violation: {0}")]
    ParityViolation(String),

    #[error("unsupported surface: {0}")]
    UnsupportedSurface(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("invalid polarization: {0}")]
    InvalidPolarization(String),

    #[error("wall search exceeded its budget: {bound} = {value} (limit {limit})")]
    SearchBoundsExceeded {
        bound: &'static str,
        value: u128,
        limit: u128,
    },

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("vanishing assumption violated: h0({class}) = 0 but the class is effective")]
    AssumptionViolated { class: DivisorClass },

    #[error("search box holds {points} classes, limit is {limit}")]
    BoxTooLarge { points: u128, limit: u128 },
}

impl Error {
    /// Stable machine-readable tag, used in JSON error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidSurface(_) => "invalid-surface",
            Error::ConfigMismatch { .. } => "config-mismatch",
            Error::Overflow => "overflow",
            Error::ParityViolation(_) => "parity-violation",
            Error::UnsupportedSurface(_) => "unsupported-surface",
            Error::InvalidInput(_) => "invalid-input",
            Error::InvalidPolarization(_) => "invalid-polarization",
            Error::SearchBoundsExceeded { .. } => "search-bounds-exceeded",
            Error::NotApplicable(_) => "not-applicable",
            Error::AssumptionViolated { .. } => "assumption-violated",
            Error::BoxTooLarge { .. } => "box-too-large",
        }
    }
}

/// Non-fatal findings attached to results.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Warning {
    /// The subscheme length came out negative: no bundle realizes the datum.
    NegativeLength { length: i64 },
    /// A wall class orthogonal to the polarization.
    BoundaryWall { zeta: DivisorClass },
    /// A vanishing statement twisted by the ideal of Z could not be screened.
    UnscreenedVanishing { class: DivisorClass },
    /// The family dimension exceeds the expected moduli dimension.
    FamilyExceedsModuli { family_dim: i64, moduli_dim: i64 },
}

pub(crate) fn add(a: i64, b: i64) -> Result<i64> {
    a.checked_add(b).ok_or(Error::Overflow)
}

pub(crate) fn sub(a: i64, b: i64) -> Result<i64> {
    a.checked_sub(b).ok_or(Error::Overflow)
}

pub(crate) fn mul(a: i64, b: i64) -> Result<i64> {
    a.checked_mul(b).ok_or(Error::Overflow)
}

pub(crate) fn narrow(v: i128) -> Result<i64> {
    i64::try_from(v).map_err(|_| Error::Overflow)
}
