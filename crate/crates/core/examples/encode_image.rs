//! Prepare the NEQR state of the 2x2 test image, sample it and read the image back.

use neqr_cipher::qimage::{build_naive_neqr_circuit, reconstruct_image, GrayImage, BasisIndex};
use neqr_cipher::qsim::{run_statevector, sample_counts};

fn main() -> neqr_cipher::Result<()> {
    let image = GrayImage::new(1, vec![255, 0, 200, 100])?;
    let circuit = build_naive_neqr_circuit(&image);
    println!("{} qubits, {} gates", circuit.width(), circuit.len());

    let state = run_statevector(&circuit, None)?;
    for k in state.support() {
        let idx = BasisIndex::from_index(k, image.order())?;
        println!("|{}>  amplitude {}", idx.bitstring(image.order()), state.amplitude(k));
    }

    let counts = sample_counts(&state, 8192, 7)?;
    for (bits, n) in &counts {
        println!("{bits}  {n}");
    }
    let (restored, coverage) = reconstruct_image(&counts, image.order())?;
    println!("restored {:?}, complete: {}", restored.pixels(), coverage.is_complete());
    Ok(())
}
