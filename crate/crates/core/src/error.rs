use crate::sequence::PathReport;

/// Errors shared across the engine.
///
/// Condition violations on candidate paths are *not* errors: they are
/// reported through [`PathReport`]. This type covers structural problems
/// (malformed bases, unresolvable foci), domain preconditions (incoherent
/// inputs, base mismatches) and exhausted enumeration budgets.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid base: {0}")]
    Base(String),

    #[error("structural error at action {index}: {reason}")]
    Structure { index: usize, reason: String },

    #[error("not a path ({0})")]
    NotAPath(PathReport),

    #[error("not a chronicle ({0})")]
    NotAChronicle(PathReport),

    #[error("invalid design: {0}")]
    Design(String),

    #[error("invalid net: {0}")]
    Net(String),

    #[error("incoherent chronicles: `{left}` vs `{right}`")]
    NotAClique { left: String, right: String },

    #[error("cut-net is cyclic through {0}")]
    CyclicNet(String),

    #[error("cut-net is disconnected")]
    DisconnectedNet,

    #[error("cut-net has an uncut address {0}")]
    OpenNet(String),

    #[error("cut-net has no design with a positive base")]
    NoMainDesign,

    #[error("cut-net has {0} designs with a positive base")]
    MultipleMainDesigns(usize),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("enumeration budget of {budget} nodes exceeded")]
    Budget { budget: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
