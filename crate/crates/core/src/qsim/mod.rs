//! Statevector and density-matrix simulation, Kraus noise and fidelity.

mod density;
mod fidelity;
mod noise;
mod statevector;
mod sweep;

pub use density::{run_density, DensityMatrix, MAX_DENSITY_QUBITS};
pub use fidelity::{pure_state_fidelity, state_fidelity, uhlmann_fidelity};
pub use noise::{apply_noise_channel, CompositionMode, Kraus, NoiseChannel, NoiseSpec};
pub use statevector::{run_statevector, sample_counts, Counts, StateVector, MAX_STATEVECTOR_QUBITS};
pub use sweep::{gamma_grid, noise_sweep, noise_sweep_all, parse_gamma_grid, sweep_csv, SweepPoint};
