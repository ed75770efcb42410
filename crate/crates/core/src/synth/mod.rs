//! Circuit compression: disjoint two-level minimization of the per-bit
//! control patterns, and ancilla factoring of repeated control patterns.

mod cover;
mod encoder;
mod factor;
mod report;

pub use cover::{minimize_cover, Cover, Cube, EXACT_MAX_VARS};
pub use encoder::{append_cover, bit_plane, bit_plane_covers, synthesize_minimized_encoder};
pub use factor::{factor_shared_controls, factor_with_policy, FactorPolicy};
pub use report::{SynthReport, SynthRow};
