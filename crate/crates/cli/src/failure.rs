use std::fmt;

/// Why a command stopped; each kind maps to one process exit code.
#[derive(Debug)]
pub enum Failure {
    /// A checked claim did not hold (exit 1).
    Claim(String),
    /// Bad flags, unreadable input or an unparsable value (exit 2).
    Usage(String),
    /// The channel lies outside what the simulator handles (exit 3).
    Unsupported(String),
    /// Anything else, e.g. an output file that cannot be written (exit 1).
    Other(anyhow::Error),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Claim(_) | Failure::Other(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Unsupported(_) => 3,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Claim(m) | Failure::Usage(m) | Failure::Unsupported(m) => f.write_str(m),
            Failure::Other(e) => write!(f, "{e:#}"),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Other(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Other(e.into())
    }
}

pub fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

impl From<ic_feedback::RegionError> for Failure {
    fn from(e: ic_feedback::RegionError) -> Self {
        Failure::Other(e.into())
    }
}

impl From<ic_feedback::SimError> for Failure {
    fn from(e: ic_feedback::SimError) -> Self {
        use ic_feedback::SimError;
        match e {
            SimError::UnsupportedRegime(_) => Failure::Unsupported(e.to_string()),
            SimError::TooFewBlocks(_) => Failure::Usage(e.to_string()),
            SimError::DecodingAmbiguity { .. } => Failure::Claim(e.to_string()),
            _ => Failure::Other(e.into()),
        }
    }
}

impl From<ic_feedback::GaussianError> for Failure {
    fn from(e: ic_feedback::GaussianError) -> Self {
        use ic_feedback::GaussianError;
        match e {
            GaussianError::UnsupportedCase(_) => Failure::Other(e.into()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}
