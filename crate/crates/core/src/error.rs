use thiserror::Error;

/// Errors produced by graph construction, linear algebra and classification.
#[derive(Debug, Error)]
pub enum Error {
    #[error("loop edge at vertex {0}")]
    LoopEdge(usize),

    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),

    #[error("vertex id {id} out of range for graph on {n} vertices")]
    VertexOutOfRange { id: usize, n: usize },

    #[error("gain not unit modulus: re^2 + im^2 = {norm}")]
    NonUnitGain { norm: String },

    #[error("exact and angle gains must not be mixed in one graph")]
    MixedGainModes,

    #[error("matrix contains approximate entries; exact arithmetic required")]
    ExpectedExactEntries,

    #[error("matrix contains a non-finite entry at ({0}, {1})")]
    NonFiniteEntry(usize, usize),

    #[error("matrix is not Hermitian at ({0}, {1})")]
    NotHermitian(usize, usize),

    #[error("vertex sequence is not a cycle: {0}")]
    NotACycle(String),

    #[error("cycle length {0} is below 3")]
    CycleTooShort(usize),

    #[error("ambiguous type boundary: |{quantity}| = {value:e} is within tolerance {tol:e}")]
    AmbiguousTypeBoundary {
        quantity: &'static str,
        value: f64,
        tol: f64,
    },

    #[error("cycle type {cycle_type} requires {required} length, got {length}")]
    TypeParityMismatch {
        cycle_type: char,
        required: &'static str,
        length: usize,
    },

    #[error("cycles are not pairwise vertex-disjoint; contraction is undefined")]
    CyclesNotDisjoint,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("generator output failed its own optimality certification")]
    CertificationFailed,

    #[error("invalid graph file: {0}")]
    GraphFormat(String),
}

pub type Result<T> = std::result::Result<T, Error>;
