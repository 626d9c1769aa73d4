use std::fmt;

/// Errors shared by all modules of the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// An element id appears that is not part of the ground set.
    UnknownElement(String),
    /// The same element id occurs twice in a ground set or file.
    DuplicateElement(String),
    /// The input relation contains a directed cycle; the witness is one cycle.
    CycleDetected(Vec<String>),
    /// An operation over a poset was given an empty ground set.
    EmptyPoset,
    /// Two structures that must share a ground set do not.
    GroundSetMismatch,
    /// The given blocks do not partition the ground set.
    NotAPartition,
    /// A sequence claimed to be a linear extension is not one.
    NotAnExtension,
    /// The dimension search gave up at the configured cap.
    ExceedsCap { max_k: usize },
    /// Scaling factor must be strictly positive.
    NonpositiveFactor,
    /// A denominator of zero was supplied for a rational number.
    ZeroDenominator,
    /// An interval was given with left endpoint greater than the right.
    InvalidInterval,
    /// A length constraint was malformed (empty set, negative length, lo > hi).
    InvalidConstraint(String),
    /// Fewer than two distinct endpoint values; no gap exists.
    AllEndpointsEqual,
    /// The poset contains a 2+2; the witness lists (a, b, c, d) with a < b, c < d.
    NotIntervalOrder { witness: [String; 4] },
    /// Shift amount for a compression is zero, negative, or above half the minimum gap.
    EpsilonTooLarge,
    /// Identical zero-length intervals cannot be separated.
    IrreducibleTwins { elements: Vec<String> },
    /// A choice function repeats a value.
    NotInjective,
    /// A choice function leaves the interval of the named element.
    OutOfInterval(String),
    /// The representation must be distinguishing for this operation.
    NotDistinguishing,
    /// Interval lengths fall outside the class the operation handles.
    LengthsOutOfClass(String),
    /// A zero-length interval is present where only positive lengths are allowed.
    ZeroLengthPresent,
    /// A family passed in as a realizer does not realize its poset.
    NotARealizer,
    /// A checkpoint file failed validation.
    CheckpointCorrupt(String),
    /// A text format failed to parse; line numbers are 1-based.
    Parse { line: usize, msg: String },
    /// An internal consistency check failed; indicates a bug, not bad input.
    InternalContradiction(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::UnknownElement(id) => write!(f, "unknown element: {}", id),
            Error::DuplicateElement(id) => write!(f, "duplicate element: {}", id),
            Error::CycleDetected(cycle) => {
                write!(f, "relation contains a cycle: {}", cycle.join(" < "))
            }
            Error::EmptyPoset => write!(f, "poset has no elements"),
            Error::GroundSetMismatch => write!(f, "ground sets do not match"),
            Error::NotAPartition => write!(f, "blocks do not partition the ground set"),
            Error::NotAnExtension => write!(f, "sequence is not a linear extension"),
            Error::ExceedsCap { max_k } => {
                write!(f, "dimension exceeds the configured cap {}", max_k)
            }
            Error::NonpositiveFactor => write!(f, "scaling factor must be positive"),
            Error::ZeroDenominator => write!(f, "rational denominator is zero"),
            Error::InvalidInterval => write!(f, "interval has left endpoint above right"),
            Error::InvalidConstraint(msg) => write!(f, "invalid length constraint: {}", msg),
            Error::AllEndpointsEqual => {
                write!(f, "fewer than two distinct endpoint values")
            }
            Error::NotIntervalOrder { witness } => write!(
                f,
                "not an interval order: {} < {} and {} < {} form a 2+2",
                witness[0], witness[1], witness[2], witness[3]
            ),
            Error::EpsilonTooLarge => {
                write!(f, "shift must be positive and at most half the minimum gap")
            }
            Error::IrreducibleTwins { elements } => write!(
                f,
                "identical zero-length intervals cannot be separated: {}",
                elements.join(", ")
            ),
            Error::NotInjective => write!(f, "choice function repeats a value"),
            Error::OutOfInterval(id) => {
                write!(f, "choice function leaves the interval of {}", id)
            }
            Error::NotDistinguishing => write!(f, "representation is not distinguishing"),
            Error::LengthsOutOfClass(msg) => write!(f, "lengths outside class: {}", msg),
            Error::ZeroLengthPresent => write!(f, "zero-length interval not allowed here"),
            Error::NotARealizer => write!(f, "family does not realize the poset"),
            Error::CheckpointCorrupt(msg) => write!(f, "checkpoint corrupt: {}", msg),
            Error::Parse { line, msg } => write!(f, "parse error at line {}: {}", line, msg),
            Error::InternalContradiction(msg) => {
                write!(f, "internal contradiction: {}", msg)
            }
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
