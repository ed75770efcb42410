use super::{diffuse, logistic_keystream, EncryptionKey};
use crate::error::{Error, Result};
use crate::qimage::GrayImage;

/// Inverse of `a` modulo `2^n` by the extended Euclidean algorithm.
pub fn mod_inverse(a: u64, n: u32) -> Result<u64> {
    if n == 0 || n > 63 {
        return Err(Error::InvalidKey(format!("modulus 2^{n} unsupported")));
    }
    let m = 1i128 << n;
    let (mut r0, mut r1) = (m, a as i128 % m);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return Err(Error::NotInvertible(a, n));
    }
    Ok(s0.rem_euclid(m) as u64)
}

/// `X' = (sX + P) mod 2^n`, `Y' = (tY + Q) mod 2^n`.
pub fn gat_forward(y: u64, x: u64, key: &EncryptionKey) -> (u64, u64) {
    let mask = (1u64 << key.order()) - 1;
    let x2 = key.s().wrapping_mul(x).wrapping_add(key.p()) & mask;
    let y2 = key.t().wrapping_mul(y).wrapping_add(key.q()) & mask;
    (y2, x2)
}

/// `X = s^-1 (X' + (!P + 1)) mod 2^n`, and likewise for `Y`.
pub fn gat_inverse(y2: u64, x2: u64, key: &EncryptionKey) -> (u64, u64) {
    let n = key.order();
    let mask = (1u64 << n) - 1;
    let s_inv = mod_inverse(key.s(), n).expect("validated key has odd s");
    let t_inv = mod_inverse(key.t(), n).expect("validated key has odd t");
    let neg = |v: u64| (!v).wrapping_add(1);
    let x = s_inv.wrapping_mul(x2.wrapping_add(neg(key.p()))) & mask;
    let y = t_inv.wrapping_mul(y2.wrapping_add(neg(key.q()))) & mask;
    (y, x)
}

fn check_order(image: &GrayImage, key: &EncryptionKey) -> Result<()> {
    if image.order() != key.order() {
        return Err(Error::InvalidKey(format!(
            "key is for order {} but the image has order {}",
            key.order(),
            image.order()
        )));
    }
    Ok(())
}

/// Moves the pixel at `(Y, X)` to `gat_forward(Y, X)`.
pub fn permute(image: &GrayImage, key: &EncryptionKey) -> Result<GrayImage> {
    check_order(image, key)?;
    let side = image.side();
    let mut out = GrayImage::zeros(image.order())?;
    for y in 0..side {
        for x in 0..side {
            let (y2, x2) = gat_forward(y as u64, x as u64, key);
            out.set(y2 as usize, x2 as usize, image.get(y, x));
        }
    }
    Ok(out)
}

/// Inverse of [`permute`], placing each pixel through `gat_inverse`.
pub fn unpermute(image: &GrayImage, key: &EncryptionKey) -> Result<GrayImage> {
    check_order(image, key)?;
    let side = image.side();
    let mut out = GrayImage::zeros(image.order())?;
    for y2 in 0..side {
        for x2 in 0..side {
            let (y, x) = gat_inverse(y2 as u64, x2 as u64, key);
            out.set(y as usize, x as usize, image.get(y2, x2));
        }
    }
    Ok(out)
}

/// Diffusion with the logistic keystream, then the affine scramble.
pub fn encrypt(image: &GrayImage, key: &EncryptionKey) -> Result<GrayImage> {
    check_order(image, key)?;
    permute(&diffuse(image, &logistic_keystream(key))?, key)
}

pub fn decrypt(image: &GrayImage, key: &EncryptionKey) -> Result<GrayImage> {
    check_order(image, key)?;
    diffuse(&unpermute(image, key)?, &logistic_keystream(key))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_examples() {
        assert_eq!(mod_inverse(1, 5).unwrap(), 1);
        assert_eq!(mod_inverse(3, 2).unwrap(), 3);
        assert_eq!(mod_inverse(5, 4).unwrap(), 13);
        assert!(matches!(mod_inverse(6, 4), Err(Error::NotInvertible(6, 4))));
        assert!(mod_inverse(0, 4).is_err());
    }

    #[test]
    fn inverse_exhaustive_against_search() {
        for n in 1..=8u32 {
            let m = 1u64 << n;
            for a in (1..m).step_by(2) {
                let brute = (1..m).find(|b| a * b % m == 1).unwrap();
                assert_eq!(mod_inverse(a, n).unwrap(), brute, "a={a} n={n}");
            }
        }
    }

    #[test]
    fn gat_examples() {
        let k = EncryptionKey::reference();
        assert_eq!(gat_forward(0, 0, &k), (1, 1));
        assert_eq!(gat_inverse(1, 1, &k), (0, 0));
        let k2 = EncryptionKey::new(2, 1, 1, 1, 1, 0.5, 3.9).unwrap();
        assert_eq!(gat_forward(3, 3, &k2), (0, 0));
        let k3 = EncryptionKey::new(3, 5, 1, 3, 1, 0.5, 3.9).unwrap();
        assert_eq!(gat_forward(0, 6, &k3).1, 7);
        assert_eq!(gat_inverse(0, 7, &k3).1, 6);
    }

    #[test]
    fn reference_ciphertext() {
        let img = GrayImage::new(1, vec![255, 0, 200, 100]).unwrap();
        let k = EncryptionKey::reference();
        let c = encrypt(&img, &k).unwrap();
        assert_eq!(c.pixels(), &[213, 37, 237, 78]);
        assert_eq!(decrypt(&c, &k).unwrap(), img);

        let mut changed = img.clone();
        changed.set(0, 0, 254);
        assert_eq!(encrypt(&changed, &k).unwrap().pixels(), &[213, 37, 237, 79]);

        let k6 = k.with_l0(0.6).unwrap();
        assert_eq!(encrypt(&img, &k6).unwrap().pixels(), &[113, 22, 222, 234]);
        assert_ne!(decrypt(&c, &k6).unwrap(), img);
    }

    #[test]
    fn order_mismatch_rejected() {
        let img = GrayImage::zeros(2).unwrap();
        assert!(matches!(encrypt(&img, &EncryptionKey::reference()), Err(Error::InvalidKey(_))));
    }
}
