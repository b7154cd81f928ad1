use fiberstab_core::basecurve::BaseCurveError;
use fiberstab_core::cbf::CbfError;
use fiberstab_core::fujita::FujitaError;
use fiberstab_core::git::GitError;
use fiberstab_core::lattice::LatticeError;
use fiberstab_core::lct::LctError;
use fiberstab_core::zariski::ZariskiError;
use fiberstab_core::ScalarError;
use thiserror::Error;

/// Malformed input documents.
#[derive(Debug, Error)]
pub enum FormatError {
    #[error("invalid scalar {0}")]
    Scalar(String),
    #[error("{0}")]
    Schema(String),
    #[error("invalid model: {0}")]
    Lattice(#[from] LatticeError),
    #[error("invalid form: {0}")]
    Git(#[from] GitError),
    #[error("invalid graph: {0}")]
    Graph(#[from] BaseCurveError),
}

/// Everything that ends a command with exit code 1.
#[derive(Debug, Error)]
pub enum DomainError {
    #[error("{0}")]
    Format(#[from] FormatError),
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Scalar(#[from] ScalarError),
    #[error("{0}")]
    Lattice(#[from] LatticeError),
    #[error("{0}")]
    Zariski(#[from] ZariskiError),
    #[error("{0}")]
    Fujita(#[from] FujitaError),
    #[error("{0}")]
    Git(#[from] GitError),
    #[error("{0}")]
    Lct(#[from] LctError),
    #[error("{0}")]
    BaseCurve(#[from] BaseCurveError),
    #[error("{0}")]
    Cbf(#[from] CbfError),
    #[error("unknown configuration {0}")]
    UnknownConfig(String),
}

impl DomainError {
    /// Stable machine-readable kind.
    pub fn kind(&self) -> &'static str {
        match self {
            DomainError::Format(_) | DomainError::Json(_) => "invalid-input",
            DomainError::Io { .. } => "io",
            DomainError::Scalar(_) => "scalar",
            DomainError::Lattice(_) => "lattice",
            DomainError::Zariski(_) => "zariski",
            DomainError::Fujita(_) => "fujita",
            DomainError::Git(_) => "git",
            DomainError::Lct(_) => "lct",
            DomainError::BaseCurve(_) => "basecurve",
            DomainError::Cbf(_) => "cbf",
            DomainError::UnknownConfig(_) => "unknown-config",
        }
    }
}
