//! Sensitivity of the ciphertext to a one-pixel change and to a key change.

use neqr_cipher::cipher::{encrypt, EncryptionKey};
use neqr_cipher::metrics::{differential_image, MetricReport};
use neqr_cipher::qimage::GrayImage;

fn main() -> neqr_cipher::Result<()> {
    let key = EncryptionKey::reference();
    let plain = GrayImage::new(1, vec![255, 0, 200, 100])?;
    let cipher = encrypt(&plain, &key)?;

    let mut changed = plain.clone();
    changed.set(0, 0, 254);
    let c_pixel = encrypt(&changed, &key)?;
    println!("one-pixel change {:?} vs {:?}", cipher.pixels(), c_pixel.pixels());
    print!("{}", MetricReport::compute(&cipher, &c_pixel)?.to_table());

    let c_key = encrypt(&plain, &key.with_l0(0.6)?)?;
    println!("\nkey change {:?} vs {:?}", cipher.pixels(), c_key.pixels());
    print!("{}", MetricReport::compute(&cipher, &c_key)?.to_table());
    println!("difference image {:?}", differential_image(&cipher, &c_key)?.pixels());
    Ok(())
}
