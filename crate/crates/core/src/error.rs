use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("derivative lowers a zero degree in factor {factor}")]
    DegreeUnderflow { factor: usize },
    #[error("shape or degree mismatch: {0}")]
    ShapeMismatch(String),
    #[error("point has all coordinates zero")]
    ZeroPoint,
    #[error("needs algebraic numbers of degree > 2: {0}")]
    UnsupportedExtension(String),
    #[error("the two divisors coincide (polynomials are proportional)")]
    IdenticalDivisors,
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("hyperplanes are linearly dependent")]
    DependentHyperplanes,
    #[error("projection center lies on the quadric")]
    CenterOnQuadric,
    #[error("plane is degenerate: {0}")]
    DegeneratePlane(String),
    #[error("ambient dimension {r} is too small (need r >= 3)")]
    AmbientTooSmall { r: usize },
    #[error("locus of points on more than r hyperplanes is not finite")]
    InfiniteLocus,
    #[error("singular sections at indices {indices:?}")]
    SingularSection { indices: Vec<usize> },
    #[error("curve class ({0}, {1}) is not a rational curve class")]
    UnsupportedClass(u32, u32),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// True for errors that report a violated mathematical precondition, as
    /// opposed to malformed input.
    pub fn is_hypothesis(&self) -> bool {
        matches!(
            self,
            Error::HypothesisViolated(_)
                | Error::SingularMatrix
                | Error::IdenticalDivisors
                | Error::DependentHyperplanes
                | Error::CenterOnQuadric
                | Error::DegeneratePlane(_)
                | Error::AmbientTooSmall { .. }
                | Error::InfiniteLocus
                | Error::SingularSection { .. }
                | Error::UnsupportedClass(..)
                | Error::UnsupportedExtension(_)
                | Error::DegreeUnderflow { .. }
                | Error::ZeroPoint
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
