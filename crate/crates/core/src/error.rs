use thiserror::Error;

/// Everything that can go wrong in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("characteristic must be odd, got {0}")]
    EvenCharacteristic(u32),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {0} exceeds the supported bound")]
    TooLarge(u64),
    #[error("modulus is not a monic irreducible polynomial of the requested degree")]
    ReducibleModulus,
    #[error("alpha is a square in GF(q)")]
    AlphaIsSquare,
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("zero has no multiplicative order")]
    ZeroElement,
    #[error("parse error: {0}")]
    Parse(String),

    #[error("first-type circle needs a nonzero radius")]
    ZeroRadius,
    #[error("second-type circle needs a nonzero center coefficient")]
    ZeroCenter,
    #[error("points must be pairwise distinct")]
    CoincidentPoints,
    #[error("Möbius map has ad - bc = 0")]
    SingularMap,

    #[error("the two circles are identical")]
    IdenticalCircles,
    #[error("carrier circles are not tangent")]
    NotTangent,
    #[error("carrier circles are not intersecting")]
    NotIntersecting,
    #[error("carrier circles are not disjoint")]
    NotDisjoint,
    #[error("the carrier pair carries no Steiner chain")]
    NoChains,
    #[error("standard pair is degenerate (gamma^2 = conj(gamma)^2)")]
    DegenerateGamma,
    #[error("q = {q} is outside the sweep bound {bound}")]
    BoundExceeded { q: u64, bound: u64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
