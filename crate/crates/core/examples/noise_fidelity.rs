//! Fidelity of the encoded test image under each single-qubit noise channel.

use neqr_cipher::qimage::{neqr_state, GrayImage};
use neqr_cipher::qsim::{gamma_grid, noise_sweep_all, CompositionMode};

fn main() -> neqr_cipher::Result<()> {
    let image = GrayImage::new(1, vec![255, 0, 200, 100])?;
    let state = neqr_state(&image)?;
    let grid = gamma_grid(0.0, 1.0, 0.25)?;
    println!("{:<18} {:>6} {:>10} {:>10}", "channel", "gamma", "fidelity", "trace");
    for p in noise_sweep_all(&state, &grid, CompositionMode::PerQubit)? {
        println!("{:<18} {:>6.2} {:>10.6} {:>10.6}", p.channel, p.gamma, p.fidelity, p.trace);
    }
    Ok(())
}
