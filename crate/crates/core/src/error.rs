use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("table has {found} rows or columns, expected {expected}")]
    Shape { expected: usize, found: usize },
    #[error("entry ({row},{col}) = {value} is out of range for {size} elements")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
        size: usize,
    },
    #[error("index {index} is out of range for a carrier of size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("subset has width {found}, expected {expected}")]
    WidthMismatch { expected: usize, found: usize },
    #[error("{0} must be nonempty")]
    EmptySubset(&'static str),
    #[error("{what}: size {size} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("hypothesis failed: {0}")]
    Hypothesis(String),
    #[error("internal verification failed: {0}")]
    Verification(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid family parameters: {0}")]
    Family(String),
    #[error("{0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Enumeration limits shared by every exhaustive sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest carrier for which all subsets are enumerated.
    pub subset_cap: usize,
    /// Largest number of maps an enveloping closure may discover.
    pub enveloping_cap: usize,
}

pub const DEFAULT_SUBSET_CAP: usize = 16;
pub const DEFAULT_ENVELOPING_CAP: usize = 20_000;

impl Default for Limits {
    fn default() -> Self {
        Limits {
            subset_cap: DEFAULT_SUBSET_CAP,
            enveloping_cap: DEFAULT_ENVELOPING_CAP,
        }
    }
}

impl Limits {
    /// Defaults, with `PSG_CAP` (decimal) overriding the subset cap.
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        if let Some(cap) = std::env::var("PSG_CAP")
            .ok()
            .and_then(|v| v.trim().parse().ok())
        {
            limits.subset_cap = cap;
        }
        limits
    }

    pub fn check_subsets(&self, what: &'static str, size: usize) -> Result<()> {
        if size > self.subset_cap || size >= 64 {
            Err(Error::CapExceeded {
                what,
                size,
                cap: self.subset_cap.min(63),
            })
        } else {
            Ok(())
        }
    }
}
