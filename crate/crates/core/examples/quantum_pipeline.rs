//! Encryption and decryption as circuits, checked against the classical cipher.

use neqr_cipher::cipher::{build_decryption_circuit, build_encryption_circuit, encrypt, Compression, EncryptionKey};
use neqr_cipher::qimage::GrayImage;
use neqr_cipher::qsim::run_statevector;

fn main() -> neqr_cipher::Result<()> {
    let key = EncryptionKey::reference();
    let plain = GrayImage::new(1, vec![255, 0, 200, 100])?;
    let classical = encrypt(&plain, &key)?;
    for comp in Compression::ALL {
        let enc = build_encryption_circuit(&plain, &key, comp)?;
        let cipher = enc.read_image(&run_statevector(&enc.circuit, None)?)?;
        let dec = build_decryption_circuit(&cipher, &key, comp)?;
        let restored = dec.read_image(&run_statevector(&dec.circuit, None)?)?;
        println!(
            "{:<10} encrypt {:>3} gates / {:>2} qubits -> {:?} (classical {:?}); decrypt {:>3} gates -> {:?}",
            comp.name(),
            enc.circuit.len(),
            enc.circuit.width(),
            cipher.pixels(),
            classical.pixels(),
            dec.circuit.len(),
            restored.pixels()
        );
    }
    Ok(())
}
