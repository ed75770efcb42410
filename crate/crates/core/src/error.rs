use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid image: {0}")]
    InvalidImage(String),

    #[error("image side {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("malformed PGM: {0}")]
    Pgm(String),

    #[error("invalid key: {0}")]
    InvalidKey(String),

    #[error("{0} is not invertible modulo 2^{1}")]
    NotInvertible(u64, u32),

    #[error("invalid circuit: {0}")]
    Circuit(String),

    #[error("malformed netlist at line {line}: {msg}")]
    Netlist { line: usize, msg: String },

    #[error("simulation error: {0}")]
    Simulation(String),

    #[error("width {width} exceeds the {mode} limit of {limit} qubits")]
    TooWide {
        width: usize,
        limit: usize,
        mode: &'static str,
    },

    #[error("invalid noise parameter: {0}")]
    Noise(String),

    #[error("metric undefined: {0}")]
    Metric(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
