pub mod cipher;
pub mod cli;
pub mod error;
pub mod metrics;
pub mod qcircuit;
pub mod qimage;
pub mod qsim;
pub mod synth;

pub use error::{Error, Result};
