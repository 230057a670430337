use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("duplicate coordinate `{0}`")]
    DuplicateCoordinate(String),
    #[error("chart mismatch: expected [{expected}], found [{found}]")]
    ChartMismatch { expected: String, found: String },
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("smooth map invariant violated: {0}")]
    MapInvariant(String),
    #[error("inverse check failed: {0}")]
    InverseCheck(String),
    #[error("missing presentation data: {0}")]
    Missing(String),
    #[error("presentation is not source-adapted: {0}")]
    NotSourceAdapted(String),
    #[error("composable-pairs chart is not in fibered layout: {0}")]
    Layout(String),
    #[error("unknown example `{0}`")]
    UnknownExample(String),
    #[error("{what} (certificate: {certificate})")]
    Precondition { what: String, certificate: String },
    #[error("morphisms are not composable: {0}")]
    NotComposable(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("i/o: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn precondition(what: impl Into<String>, certificate: impl ToString) -> Self {
        Error::Precondition {
            what: what.into(),
            certificate: certificate.to_string(),
        }
    }
}
