//! Logistic-map diffusion, affine coordinate scramble, and their circuits.

mod circuits;
mod key;
mod keystream;
mod transform;

pub use circuits::{
    append_adder, append_diffusion, append_gat, append_gat_inverse, append_load_constant,
    append_minimized_diffusion, append_subtractor, build_adder_mod_circuit, build_decryption_circuit,
    build_diffusion_circuit, build_encoder, build_encryption_circuit, build_gat_circuit,
    build_gat_inverse_circuit, CipherCircuit, Compression, GatLayout, InverseGatLayout,
};
pub use key::{keyspace_summary, EncryptionKey, KeyspaceSummary, DELTA_MAX, DELTA_MIN, MAX_ORDER};
pub use keystream::{diffuse, logistic_keystream, Keystream};
pub use transform::{decrypt, encrypt, gat_forward, gat_inverse, mod_inverse, permute, unpermute};
