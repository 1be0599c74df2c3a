use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("non-multilinear product: supports overlap in letters {0:?}")]
    NonMultilinear(Vec<u32>),

    #[error("letter {letter} is not the minimal letter of the support (minimum is {min})")]
    NotMinimal { letter: u32, min: u32 },

    #[error("letter map is not a bijection on the support: {0}")]
    NotBijection(String),

    #[error("letters {0:?} are not contained in the support")]
    LettersOutsideSupport(Vec<u32>),

    #[error("input is not a representation: {0}")]
    NotRepresentation(String),

    #[error("table too large: n = {n} exceeds the configured bound {bound}")]
    TableTooLarge { n: usize, bound: usize },

    #[error("input not a character: {0}")]
    NotCharacter(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("not a complex: d∘d ≠ 0 at degree {degree}")]
    NotAComplex { degree: i64 },

    #[error("vector is not in the subspace: {0}")]
    NotInSubspace(String),

    #[error("1-dimensionality violated at degree {degree}: {detail}")]
    NotProportional { degree: usize, detail: String },

    #[error("unknown dimension kind '{0}'")]
    UnknownKind(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("integer overflow in exact kernel: {0}")]
    Overflow(String),
}
