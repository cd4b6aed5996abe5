use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(u32, u32),
    #[error("point {point} outside 1..={degree}")]
    PointOutOfRange { point: u32, degree: u32 },
    #[error("point {0} listed twice")]
    DuplicatePoint(u32),
    #[error("image {0} hit twice, map is not injective")]
    NotInjective(u32),
    #[error("expected a total map")]
    NotTotal,
    #[error("{name}: index {index} outside 1..={max}")]
    IndexOutOfRange { name: String, index: u32, max: u32 },
    #[error("degree {degree} below minimum {min}")]
    DegreeTooSmall { degree: u32, min: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonoidError {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("closure exceeded {cap} elements")]
    Capped { cap: usize },
    #[error("{family} needs n >= {min}, got {n}")]
    DegreeTooSmall { family: String, n: u32, min: u32 },
    #[error("no closed-form {what} for {family}")]
    NoFormula { family: String, what: &'static str },
    #[error("rank {rank} exceeds degree {degree}")]
    RankOutOfRange { rank: usize, degree: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("presentations are built for n >= 4, got {0}")]
    DegreeTooSmall(u32),
    #[error("unknown letter {0:?}")]
    UnknownLetter(String),
    #[error("letter id {0} outside the alphabet")]
    BadLetterId(usize),
    #[error("duplicate letter {0:?}")]
    DuplicateLetter(String),
    #[error("replacement for {0:?} mentions the letter itself")]
    SelfReferentialReplacement(String),
    #[error("relation has the wrong shape: {0}")]
    BadShape(String),
    #[error("alphabets differ: {0}")]
    AlphabetMismatch(String),
    #[error("relation is not a consequence of the presentation: {0}")]
    NotAConsequence(String),
    #[error("consequence check was indeterminate: {0}")]
    Indeterminate(String),
    #[error("relation index {0} out of range")]
    NoSuchRelation(usize),
    #[error("no explicit forms for family {0}")]
    NoForms(String),
    #[error("forms construction failed: {0}")]
    Forms(String),
    #[error("invalid presentation file: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CongruenceError {
    #[error("enumeration was capped; no answer available")]
    Indeterminate,
    #[error("word uses letter id {0} outside the alphabet")]
    BadLetter(usize),
    #[error("assignment images do not generate the monoid ({closure} vs {monoid} elements)")]
    NotGenerating { closure: usize, monoid: usize },
    #[error("alphabets differ: {0}")]
    AlphabetMismatch(String),
    #[error(transparent)]
    Monoid(#[from] MonoidError),
}
