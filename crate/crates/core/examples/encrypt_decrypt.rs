//! Encrypt and decrypt a random 16x16 image with a random key, then with the reference key.

use neqr_cipher::cipher::{decrypt, encrypt, logistic_keystream, EncryptionKey};
use neqr_cipher::metrics::correlation_coefficient;
use neqr_cipher::qimage::GrayImage;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> neqr_cipher::Result<()> {
    let key = EncryptionKey::reference();
    let plain = GrayImage::new(1, vec![255, 0, 200, 100])?;
    let ks = logistic_keystream(&key);
    println!("reference key {key}");
    println!("keystream J {:?}, T {:?}", ks.j(), ks.t());
    let cipher = encrypt(&plain, &key)?;
    println!("{:?} -> {:?}", plain.pixels(), cipher.pixels());
    assert_eq!(decrypt(&cipher, &key)?, plain);

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let key = EncryptionKey::random(4, &mut rng)?;
    // a smooth gradient with a little noise
    let pixels = (0..256).map(|i| ((i % 16) * 12 + (i / 16) * 3 + rng.gen_range(0..8)) as u8).collect();
    let plain = GrayImage::new(4, pixels)?;
    let cipher = encrypt(&plain, &key)?;
    println!("random key {key}");
    println!("correlation plain vs cipher: {:.4}", correlation_coefficient(&plain, &cipher)?);
    println!("round trip ok: {}", decrypt(&cipher, &key)? == plain);
    Ok(())
}
