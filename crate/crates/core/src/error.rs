use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// A parse failure with a 0-based character offset into the input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at position {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
    pub expected: Vec<String>,
}

impl ParseError {
    pub fn new(position: usize, message: impl Into<String>) -> Self {
        ParseError {
            position,
            message: message.into(),
            expected: Vec::new(),
        }
    }

    pub fn expecting(mut self, expected: &[&str]) -> Self {
        self.expected = expected.iter().map(|s| s.to_string()).collect();
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element enumeration exceeded the cap of {cap} elements")]
    CapExceeded { cap: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("element {0} is not a member of the group")]
    NotMember(String),
    #[error("subgroup is not normal: {0}")]
    NotNormal(String),
    #[error("generator images do not define a homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("coset enumeration did not complete within {max_cosets} cosets")]
    CosetLimitExceeded { max_cosets: usize },
    #[error("invalid word: {0}")]
    InvalidWord(String),
    #[error("coset table is incomplete")]
    IncompleteTable,
    #[error("integer overflow in exact arithmetic")]
    Overflow,
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("crossed module axioms fail: {0}")]
    AxiomsFail(String),
    #[error("module_zero requires an abelian group: {0}")]
    NotAbelianModule(String),
    #[error("kernel is not central: {0}")]
    KernelNotCentral(String),
    #[error("map is not surjective: {0}")]
    NotSurjective(String),
    #[error("transversal mode requires an injective morphism")]
    TransversalModeInvalid,
    #[error("morphism is not compatible: {0}")]
    NotCompatible(String),
    #[error("factor system violates the cocycle conditions: {0}")]
    CocycleViolation(String),
    #[error("unknown group name {0:?}")]
    UnknownName(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}
