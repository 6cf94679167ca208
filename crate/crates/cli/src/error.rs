use std::fmt;

use hbar::flow::FlowError;
use hbar::group::GroupError;
use hbar::io::FormatError;
use hbar::languages::LanguageError;
use hbar::saturation::SaturationError;
use hbar::semigroup::SemigroupError;

/// Process exit status classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitKind {
    /// Malformed or invalid input.
    Input,
    /// A resource cap was exceeded.
    Cap,
    /// An internal consistency check failed.
    Internal,
}

impl ExitKind {
    pub fn code(self) -> i32 {
        match self {
            ExitKind::Input => 2,
            ExitKind::Cap => 3,
            ExitKind::Internal => 1,
        }
    }
}

#[derive(Debug)]
pub struct CliError {
    pub kind: ExitKind,
    pub message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        CliError {
            kind: ExitKind::Input,
            message: message.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

fn semigroup_kind(e: &SemigroupError) -> ExitKind {
    match e {
        SemigroupError::CapExceeded { .. } => ExitKind::Cap,
        _ => ExitKind::Input,
    }
}

fn saturation_kind(e: &SaturationError) -> ExitKind {
    match e {
        SaturationError::CapExceeded { .. } | SaturationError::TupleCapExceeded { .. } => {
            ExitKind::Cap
        }
        SaturationError::StrategiesDisagree { .. } => ExitKind::Internal,
        _ => ExitKind::Input,
    }
}

macro_rules! classify {
    ($ty:ty, |$e:ident| $body:expr) => {
        impl From<$ty> for CliError {
            fn from($e: $ty) -> Self {
                CliError {
                    kind: $body,
                    message: $e.to_string(),
                }
            }
        }
    };
}

classify!(SemigroupError, |e| semigroup_kind(&e));
classify!(SaturationError, |e| saturation_kind(&e));
classify!(GroupError, |e| match e {
    GroupError::CapExceeded { .. } => ExitKind::Cap,
    _ => ExitKind::Input,
});
classify!(FormatError, |e| match &e {
    FormatError::Semigroup(inner) => semigroup_kind(inner),
    _ => ExitKind::Input,
});
classify!(LanguageError, |e| match &e {
    LanguageError::Saturation(inner) => saturation_kind(inner),
    LanguageError::Semigroup(inner) => semigroup_kind(inner),
    _ => ExitKind::Input,
});
classify!(FlowError, |e| match &e {
    FlowError::CapExceeded { .. }
    | FlowError::StateExplosion { .. }
    | FlowError::TransitionCapExceeded { .. } => ExitKind::Cap,
    FlowError::AxiomViolation { .. } | FlowError::NotAChain(_) => ExitKind::Internal,
    FlowError::Saturation(inner) => saturation_kind(inner),
    FlowError::Semigroup(inner) => semigroup_kind(inner),
});
