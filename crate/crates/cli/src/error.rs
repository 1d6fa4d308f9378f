use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{message} at line {line}, column {column}")]
    Parse { line: usize, column: usize, message: String },
    #[error("unknown kind {0:?}, expected \"trinomial\" or \"type1\"")]
    UnknownKind(String),
    #[error("{what} is {value}, above TRICL_MAX_BLOCK = {limit}")]
    TooLarge { what: String, value: usize, limit: usize },
    #[error("TRICL_MAX_BLOCK must be a positive integer, got {0:?}")]
    BadLimit(String),
    #[error("this command needs a {expected} spec, got {actual}")]
    WrongKind { expected: &'static str, actual: &'static str },
    #[error("class group is not finitely generated (the variety is not rational)")]
    NotFinitelyGenerated,
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Core(#[from] tricl_core::Error),
}

impl CliError {
    /// 2 invalid input, 3 group not finitely generated, 4 iteration not
    /// admitted, 5 internal mismatch.
    pub fn exit_code(&self) -> u8 {
        use tricl_core::Error as E;
        match self {
            CliError::NotFinitelyGenerated | CliError::Core(E::NotRational) => 3,
            CliError::Core(E::IterationNotAdmitted(_)) => 4,
            CliError::Core(E::InternalConsistency(_)) => 5,
            _ => 2,
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        let message = e.to_string();
        // serde_json appends the position itself; keep only the message
        let message = match message.rfind(" at line ") {
            Some(p) => message[..p].to_string(),
            None => message,
        };
        CliError::Parse { line: e.line(), column: e.column(), message }
    }
}
