use thiserror::Error;

pub const EXIT_IO: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_SUB_THRESHOLD: i32 = 3;
pub const EXIT_VERIFY_FAILED: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("{0}")]
    SubThreshold(String),

    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Core(timetrap::Error),
}

impl From<timetrap::Error> for CliError {
    fn from(e: timetrap::Error) -> Self {
        match e {
            timetrap::Error::SubThreshold { mass, q } => CliError::SubThreshold(format!(
                "kick q = {q} is below the pair threshold eA >= 2m = {}; no real trap momentum exists",
                2.0 * mass
            )),
            timetrap::Error::InvalidInput(msg) | timetrap::Error::InvalidSchedule(msg) => CliError::Config(msg),
            other => CliError::Core(other),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => EXIT_CONFIG,
            CliError::SubThreshold(_) => EXIT_SUB_THRESHOLD,
            CliError::VerificationFailed(_) => EXIT_VERIFY_FAILED,
            CliError::Io(_) | CliError::Core(_) => EXIT_IO,
        }
    }
}
