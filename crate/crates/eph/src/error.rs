use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EphError {
    #[error("operands live in Clifford algebras of different signature")]
    SignatureMismatch,
    #[error("element is a zero divisor")]
    ZeroDivisor,
    #[error("all-zero quadruple is not a cycle")]
    ZeroCycle,
    #[error("cannot normalise: {0}")]
    NotNormalizable(&'static str),
    #[error("focus undefined: n·k = 0")]
    FocusUndefined,
    #[error("ghost cycle undefined: {0}")]
    GhostUndefined(&'static str),
    #[error("negative radicand")]
    NegativeRadicand,
    #[error("square root is not representable in the exact backend")]
    IrrationalRoot,
    #[error("cycle is flat (k = 0)")]
    FlatCycle,
    #[error("degenerate denominator")]
    DegenerateDenominator,
    #[error("length from the parabolic centre is undefined in parabolic point space")]
    UndefinedParabolicCentreLength,
    #[error("points share the same ordinate")]
    CoincidentOrdinates,
    #[error("element maps e1 to the lower half-plane; needs the flip")]
    NotFactorable,
    #[error("parameter must be nonzero")]
    ZeroParameter,
    #[error("path leaves the upper half-plane")]
    NonPositiveV,
    #[error("parabolic Cayley transform is not a similarity; use the cycle map")]
    ParabolicNotSimilarity,
    #[error("cycle has no real points")]
    EmptyLocus,
    #[error("jet division by a jet with zero leading coefficient")]
    DivisionLeadingZero,
    #[error("jet square root needs a positive square leading coefficient")]
    SqrtNonPositiveLead,
    #[error("n is not recoverable from a matrix built with s = 0")]
    UnrecoverableN,
    #[error("operation needs a non-parabolic cycle space")]
    ParabolicCycleSpace,
    #[error("determinant is not 1")]
    NotUnimodular,
    #[error("{0}")]
    Invalid(&'static str),
}

pub type Result<T> = std::result::Result<T, EphError>;
