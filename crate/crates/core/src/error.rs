use std::fmt;

/// A syntax or semantic error in signature or map text, carrying the 1-based
/// character position where it was detected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    /// Expected one thing, found another (`None` is end of input).
    Unexpected {
        expected: &'static str,
        found: Option<char>,
    },
    /// Trailing input after a complete value.
    Trailing(char),
    NumberTooLarge,
    /// Well-formed but meaningless (period < 2, MINUS with genus 0, ...).
    Semantic(String),
}

impl ParseError {
    pub(crate) fn unexpected(position: usize, expected: &'static str, found: Option<char>) -> Self {
        Self {
            position,
            kind: ParseErrorKind::Unexpected { expected, found },
        }
    }

    pub(crate) fn semantic(position: usize, msg: impl Into<String>) -> Self {
        Self {
            position,
            kind: ParseErrorKind::Semantic(msg.into()),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at position {}: ", self.position)?;
        match &self.kind {
            ParseErrorKind::Unexpected {
                expected,
                found: Some(c),
            } => {
                write!(f, "expected {expected}, found {c:?}")
            }
            ParseErrorKind::Unexpected {
                expected,
                found: None,
            } => {
                write!(f, "expected {expected}, found end of input")
            }
            ParseErrorKind::Trailing(c) => write!(f, "unexpected trailing input {c:?}"),
            ParseErrorKind::NumberTooLarge => write!(f, "number too large"),
            ParseErrorKind::Semantic(msg) => f.write_str(msg),
        }
    }
}

impl std::error::Error for ParseError {}

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error {0}")]
    Parse(#[from] ParseError),
    #[error("orbifold measure {0} is not positive")]
    NonPositiveMeasure(String),
    #[error("kernel genus {0} is not an integer: no torsion-free kernel of this index")]
    NonIntegralGenus(String),
    #[error("image lists do not match the signature: {0}")]
    Structure(String),
    #[error("order {0} is odd: no central involution")]
    OddOrder(u64),
    #[error("power {power} is trivial in C_{modulus}")]
    TrivialPower { power: u64, modulus: u64 },
    #[error("epimorphism is not a valid smooth epimorphism: {0}")]
    InvalidEpimorphism(String),
    #[error("period {period} of generator x{index} disagrees with the order {order} of its image")]
    Smoothness {
        index: usize,
        period: u64,
        order: u64,
    },
    #[error("period {period} does not divide the group order {modulus}")]
    PeriodNotDividing { period: u64, modulus: u64 },
    #[error("genus {genus} is outside the supported search range [3, {cap}]")]
    GenusOutOfRange { genus: u64, cap: u64 },
    #[error("oracle disagreement: {0}")]
    Disagreement(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
