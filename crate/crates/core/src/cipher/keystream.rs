use super::EncryptionKey;
use crate::error::{Error, Result};
use crate::qimage::GrayImage;

/// Per-pixel diffusion bytes; `t` is `j` reversed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Keystream {
    j: Vec<u8>,
    t: Vec<u8>,
}

impl Keystream {
    pub fn from_j(j: Vec<u8>) -> Self {
        let t = j.iter().rev().copied().collect();
        Self { j, t }
    }

    pub fn zeros(len: usize) -> Self {
        Self::from_j(vec![0; len])
    }

    pub fn j(&self) -> &[u8] {
        &self.j
    }

    pub fn t(&self) -> &[u8] {
        &self.t
    }

    pub fn len(&self) -> usize {
        self.j.len()
    }

    pub fn is_empty(&self) -> bool {
        self.j.is_empty()
    }

    /// Net byte XORed into each pixel, `J ^ T`.
    pub fn combined(&self) -> Vec<u8> {
        self.j.iter().zip(&self.t).map(|(a, b)| a ^ b).collect()
    }
}

/// `J[eta] = round(L_eta * 256) mod 256` for `eta = 0 .. 4^n - 1`, iterating
/// `L <- delta * L * (1 - L)` from `L0` after each byte is taken.
pub fn logistic_keystream(key: &EncryptionKey) -> Keystream {
    let len = 1usize << (2 * key.order());
    let mut l = key.l0();
    let mut j = Vec::with_capacity(len);
    for _ in 0..len {
        j.push(((l * 256.0 + 0.5).floor() as u64 % 256) as u8);
        l = key.delta() * l * (1.0 - l);
    }
    Keystream::from_j(j)
}

/// XORs `J[eta] ^ T[eta]` into every pixel. Self-inverse.
pub fn diffuse(image: &GrayImage, ks: &Keystream) -> Result<GrayImage> {
    if ks.len() != image.len() {
        return Err(Error::Dimension(format!(
            "keystream of {} bytes for {} pixels",
            ks.len(),
            image.len()
        )));
    }
    let pixels = image
        .pixels()
        .iter()
        .zip(ks.combined())
        .map(|(&p, k)| p ^ k)
        .collect();
    GrayImage::new(image.order(), pixels)
}
