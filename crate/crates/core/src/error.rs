use thiserror::Error;

/// Errors raised by the fusion engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum FusionError {
    #[error("frame must contain at least one singleton")]
    EmptyFrame,

    #[error("frame has {0} singletons, at most 64 are supported")]
    FrameTooLarge(usize),

    #[error("frame singleton names must be non-empty")]
    EmptySingletonName,

    #[error("singleton '{0}' appears more than once in the frame")]
    DuplicateSingleton(String),

    #[error("unknown singleton '{0}'")]
    UnknownSingleton(String),

    #[error("masses sum to {sum:.12}, expected 1 (tolerance 1e-9)")]
    NonUnitSum { sum: f64 },

    #[error("negative mass {mass} on {set}")]
    NegativeMass { set: String, mass: f64 },

    #[error("mass on {set} is not a finite number")]
    NonFiniteMass { set: String },

    #[error("the empty set cannot carry mass in an input")]
    EmptyFocalSet,

    #[error("focal set bits {bits:#x} reach beyond a frame of {frame_len} singletons")]
    OutOfFrame { bits: u64, frame_len: usize },

    #[error("sources are defined over different frames")]
    FrameMismatch,

    #[error("no sources given")]
    EmptySourceList,

    #[error("{got} sources given, at least {required} required")]
    TooFewSources { required: usize, got: usize },

    #[error("{got} sources exceed the cap of {cap}")]
    TooManySources { got: usize, cap: usize },

    #[error("reliability factor {0} is outside [0, 1]")]
    AlphaOutOfRange(f64),

    #[error("total conflict: normalization is undefined")]
    TotalConflict,

    #[error("importance weights must be at least 1")]
    ZeroWeight,

    #[error("malformed conflict tuple: {0}")]
    MalformedTuple(&'static str),
}

pub type Result<T, E = FusionError> = std::result::Result<T, E>;
