use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The source text does not match the expression grammar.
    #[error("syntax error at byte {offset}: expected {expected}")]
    Syntax { offset: usize, expected: String },

    /// An identifier other than `x`, `pi` or a known function name.
    #[error("unknown identifier `{name}` at byte {offset}")]
    UnknownIdentifier { name: String, offset: usize },

    /// Evaluation left the real domain (division by zero, ln of a
    /// non-positive value, square root of a negative value, ...).
    #[error("domain error: {what} in `{subtree}` at x = {x}")]
    Domain {
        what: String,
        subtree: String,
        x: f64,
    },

    /// A parameter violates an operator or rule precondition.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// The theorem id does not apply to the requested operator family.
    #[error("theorem {theorem} does not apply to operator family {family}")]
    Pairing { theorem: String, family: String },

    /// The tridiagonal eigenvalue iteration hit its sweep cap. This
    /// signals a bug in the rule construction, not a user error.
    #[error("symmetric tridiagonal eigensolver failed to converge within {0} sweeps")]
    EigenConvergence(usize),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl Error {
    /// Process exit code for the CLI: 2 for input/flag errors, 3 for
    /// numeric domain errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain { .. } => 3,
            _ => 2,
        }
    }
}
