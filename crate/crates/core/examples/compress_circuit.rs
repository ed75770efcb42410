//! Boolean-cover minimization and shared-control factoring of the NEQR encoder.

use neqr_cipher::cipher::{build_encoder, Compression, EncryptionKey};
use neqr_cipher::qimage::GrayImage;
use neqr_cipher::qsim::run_statevector;
use neqr_cipher::synth::{bit_plane_covers, SynthReport};

fn main() -> neqr_cipher::Result<()> {
    let image = GrayImage::new(1, vec![255, 0, 200, 100])?;
    for (bit, cover) in bit_plane_covers(image.pixels(), 2).iter().enumerate() {
        let cubes: Vec<String> = cover.cubes.iter().map(|c| c.to_string()).collect();
        println!("value bit {bit}: {} cube(s) [{}]", cover.len(), cubes.join(" + "));
    }

    let naive = run_statevector(&build_encoder(&image, Compression::Naive), None)?;
    for comp in [Compression::Minimized, Compression::Factored] {
        let c = build_encoder(&image, comp);
        let state = run_statevector(&c, None)?.truncate(naive.width(), 0.0)?;
        println!("{:<10} {} gates on {} qubits, same state: {}", comp.name(), c.len(), c.width(), state == naive);
    }

    let report = SynthReport::build(&image, Some(&EncryptionKey::reference()))?;
    print!("\n{}", report.to_table());
    Ok(())
}
