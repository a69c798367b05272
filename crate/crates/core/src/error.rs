use thiserror::Error;

/// Which axiom of a candidate pair failed validation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxiomKind {
    /// `B ≠ ε·B*`.
    Symmetry,
    /// `A*BA ≠ B`.
    Isometry,
    /// `A` is singular.
    SingularA,
    /// `B` is singular (degenerate form).
    SingularB,
}

impl std::fmt::Display for AxiomKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AxiomKind::Symmetry => write!(f, "symmetry (B = eps*B^*)"),
            AxiomKind::Isometry => write!(f, "isometry (A^*BA = B)"),
            AxiomKind::SingularA => write!(f, "invertibility of A"),
            AxiomKind::SingularB => write!(
                f,
                "nondegeneracy of B (classification with degenerate forms is a wild problem \
                 and is rejected)"
            ),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("singular matrix: {0}")]
    Singular(String),

    #[error("axiom violated: {0}")]
    Axiom(AxiomKind),

    #[error("no such canonical block: {0}")]
    Existence(String),

    #[error("unresolved factor: {0}")]
    UnresolvedFactor(String),

    #[error("pairing violation: {0}")]
    PairingViolation(String),

    #[error("internal construction bug (please report): {0}")]
    ConstructionBug(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
    pub(crate) fn shape(msg: impl Into<String>) -> Self {
        Error::Shape(msg.into())
    }
    pub(crate) fn singular(msg: impl Into<String>) -> Self {
        Error::Singular(msg.into())
    }
    pub(crate) fn bug(msg: impl Into<String>) -> Self {
        Error::ConstructionBug(msg.into())
    }
    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}
