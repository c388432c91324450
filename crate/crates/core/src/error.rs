use thiserror::Error;

/// Errors raised by field arithmetic, transforms and constructors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported extension degree {0} (supported: 1..=28)")]
    UnsupportedDegree(u32),
    #[error("modulus 0x{modulus:x} is reducible over F_2")]
    ReducibleModulus { modulus: u64 },
    #[error("modulus 0x{modulus:x} does not have degree {degree}")]
    ModulusDegree { modulus: u64, degree: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("{k} does not divide {n}")]
    NotADivisor { k: u32, n: u32 },
    #[error("element 0x{elem:x} does not lie in the subfield of degree {degree}")]
    NotInSubfield { elem: u32, degree: u32 },
    #[error("the zero element is not allowed here")]
    ZeroElement,
    #[error("dimension too small: {0}")]
    DimensionTooSmall(String),
    #[error("the semilinear equation has no solution")]
    NoSolution,
    #[error("bentness requires an even number of variables, got {0}")]
    OddDimension(u32),
    #[error("function is not bent (|W({beta})| = {value})")]
    NotBent { beta: u32, value: i64 },
    #[error("operands live over different domains")]
    FieldMismatch,
    #[error("degree {degree} out of range for {tau} variables")]
    DegreeOutOfRange { degree: u32, tau: u32 },
    #[error("generator monomial must be non-zero")]
    ZeroMask,
    #[error("coefficient u_{0} is zero")]
    ZeroCoefficient(usize),
    #[error("arity mismatch: polynomial has {expected} variables, got {got} coefficients")]
    ArityMismatch { expected: u32, got: usize },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("lambda must be a non-zero element of the subfield")]
    BadLambda,
    #[error("coefficients are not linearly independent over F_2")]
    NotIndependent,
    #[error("element 0x{0:x} is not normal")]
    NotNormal(u32),
    #[error("polynomial is not rotation symmetric")]
    NotRotationSymmetric,
    #[error("quadratic base function is not bent for these coefficients")]
    BaseNotBent,
    #[error("bad dimension: {0}")]
    BadDimension(String),
    #[error("lambda does not satisfy lambda + lambda^(2^(3k)) = 1")]
    LambdaConstraintViolated,
    #[error("gcd({k}, {m}) != 1")]
    GcdViolated { k: u32, m: u32 },
    #[error("matrix is singular, not a permutation")]
    SingularPermutation,
    #[error("bad divisor s={s} for m={m}: need s | m and m/s odd")]
    BadDivisor { s: u32, m: u32 },
    #[error("{value} has no inverse modulo {modulus}")]
    NoModularInverse { value: u64, modulus: u64 },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
