use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the library reports.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: {0} vs {1}")]
    SpecMismatch(String, String),
    #[error("operation requires a quotient ring, got {0}")]
    NotQuotient(String),
    #[error("{0} is not divisible by 1 - t (coefficient sum is {1})")]
    NotDivisible(String, String),
    #[error("product of factors {product} does not equal the modulus {modulus}")]
    FactorMismatch { product: String, modulus: String },
    #[error("bad modulus {0}: {1}")]
    BadModulus(String, String),
    #[error("cannot parse polynomial {input:?} at byte {pos}: {msg}")]
    PolyParse { input: String, pos: usize, msg: String },

    #[error("context mismatch: {0}")]
    ContextMismatch(String),
    #[error("vector is not in the image of the affine embedding: {0}")]
    NotInImage(String),
    #[error("wrong context: {0}")]
    WrongContext(String),
    #[error("vector {0} has two or more odd coordinates")]
    NotInModel(String),
    #[error("unsupported ideal: {0}")]
    UnsupportedIdeal(String),
    #[error("invalid generator set: {0}")]
    BadGenerators(String),

    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("table is not a left quasigroup")]
    NotLeftQuasigroup,
    #[error("table is not a quandle: {0}")]
    NotQuandle(String),
    #[error("table is not medial")]
    NotMedial,
    #[error("group closure exceeded the cap of {0} elements")]
    ClosureLimitExceeded(usize),
    #[error("the given elements do not generate the quandle (they generate {generated} of {size})")]
    NotGenerating { generated: usize, size: usize },
    #[error("not an automorphism: {0}")]
    NotAutomorphism(String),
    #[error("table would have {size} elements, over the limit of {limit}")]
    SizeLimit { size: usize, limit: usize },
    #[error("quandle is not right-cancellative: {0}")]
    NotCancellative(String),
    #[error("malformed table: {0}")]
    TableFormat(String),
}
