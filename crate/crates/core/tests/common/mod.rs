//! Independent reference computations. None of these call into the
//! library's implementations of the quantities they check.

#![allow(dead_code)]

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

pub const PLAIN: [u8; 4] = [255, 0, 200, 100];
pub const L0: f64 = 0.5557924316949603;
pub const DELTA: f64 = 3.9816188727791215;

/// Keystream bytes from exact rational iteration of the logistic map,
/// starting from the exact values of the given doubles.
pub fn keystream_exact(l0: f64, delta: f64, count: usize) -> Vec<u8> {
    let mut l = BigRational::from_float(l0).unwrap();
    let d = BigRational::from_float(delta).unwrap();
    let one = BigRational::from_integer(1.into());
    let half = BigRational::new(1.into(), 2.into());
    let scale = BigRational::from_integer(256.into());
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let rounded = (&l * &scale + &half).floor().to_integer().to_u64().unwrap();
        out.push((rounded % 256) as u8);
        l = &d * &l * (&one - &l);
    }
    out
}

/// Encryption by the defining formulas: diffuse at the original
/// coordinate, then move the pixel to `((tY + Q) mod m, (sX + P) mod m)`.
#[allow(clippy::too_many_arguments)]
pub fn encrypt_oracle(pixels: &[u8], n: u32, p: u64, q: u64, s: u64, t: u64, l0: f64, delta: f64) -> Vec<u8> {
    let m = 1u64 << n;
    let j = keystream_exact(l0, delta, pixels.len());
    let mut out = vec![0u8; pixels.len()];
    for (eta, &v) in pixels.iter().enumerate() {
        let (y, x) = (eta as u64 / m, eta as u64 % m);
        let (y2, x2) = ((t * y + q) % m, (s * x + p) % m);
        out[(y2 * m + x2) as usize] = v ^ j[eta] ^ j[pixels.len() - 1 - eta];
    }
    out
}

pub fn mod_inverse_search(a: u64, n: u32) -> Option<u64> {
    let m = 1u64 << n;
    (1..m).find(|b| a * b % m == 1)
}

/// Pearson correlation from exact integer sums.
pub fn pearson(a: &[u8], b: &[u8]) -> f64 {
    let n = a.len() as i128;
    let sa: i128 = a.iter().map(|&x| x as i128).sum();
    let sb: i128 = b.iter().map(|&x| x as i128).sum();
    let sab: i128 = a.iter().zip(b).map(|(&x, &y)| x as i128 * y as i128).sum();
    let saa: i128 = a.iter().map(|&x| (x as i128).pow(2)).sum();
    let sbb: i128 = b.iter().map(|&x| (x as i128).pow(2)).sum();
    (n * sab - sa * sb) as f64 / (((n * saa - sa * sa) * (n * sbb - sb * sb)) as f64).sqrt()
}

pub fn abs_diffs(a: &[u8], b: &[u8]) -> Vec<u8> {
    a.iter().zip(b).map(|(&x, &y)| (x as i16 - y as i16).unsigned_abs() as u8).collect()
}

/// (NPCR %, UACI %) from the definitions.
pub fn npcr_uaci(a: &[u8], b: &[u8]) -> (f64, f64) {
    let d = abs_diffs(a, b);
    let changed = d.iter().filter(|&&x| x != 0).count() as f64;
    let sum: f64 = d.iter().map(|&x| x as f64).sum();
    let n = a.len() as f64;
    (100.0 * changed / n, 100.0 * sum / (255.0 * n))
}

/// Sparse NEQR state `{index: amplitude}` from the defining sum, with
/// index `v * 4^n + Y * 2^n + X`.
pub fn neqr_support(pixels: &[u8], n: u32) -> Vec<(usize, f64)> {
    let amp = 1.0 / (1u64 << n) as f64;
    pixels
        .iter()
        .enumerate()
        .map(|(eta, &v)| (((v as usize) << (2 * n)) | eta, amp))
        .collect()
}

pub type Op = [[Complex64; 2]; 2];

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Single-qubit Kraus sets, by channel name.
pub fn kraus_ops(channel: &str, g: f64) -> Vec<Op> {
    let (k, s) = ((1.0 - g).sqrt(), g.sqrt());
    let o = c(0.0, 0.0);
    let id = [[c(k, 0.0), o], [o, c(k, 0.0)]];
    match channel {
        "amplitude_damping" => vec![[[c(1.0, 0.0), o], [o, c(k, 0.0)]], [[o, c(s, 0.0)], [o, o]]],
        "phase_damping" => vec![id, [[c(s, 0.0), o], [o, o]], [[o, o], [o, c(s, 0.0)]]],
        "bit_flip" => vec![id, [[o, c(s, 0.0)], [c(s, 0.0), o]]],
        "phase_flip" => vec![id, [[c(s, 0.0), o], [o, c(-s, 0.0)]]],
        "bit_phase_flip" => vec![id, [[o, c(0.0, -s)], [c(0.0, s), o]]],
        "depolarizing" => {
            let p = (g / 3.0).sqrt();
            vec![
                id,
                [[o, c(p, 0.0)], [c(p, 0.0), o]],
                [[o, c(0.0, -p)], [c(0.0, p), o]],
                [[c(p, 0.0), o], [o, c(-p, 0.0)]],
            ]
        }
        other => panic!("unknown channel {other}"),
    }
}

pub const CHANNELS: [&str; 6] = [
    "amplitude_damping",
    "phase_damping",
    "bit_flip",
    "phase_flip",
    "bit_phase_flip",
    "depolarizing",
];

/// `<psi| E(|psi><psi|) |psi>` for `E` the channel on every qubit, using
///
///   F = sum_{j,k,j',k'} psi_j^* psi_k psi_j' psi_k'^* prod_q T[j_q k_q j'_q k'_q]
///
/// with `T[a b c d] = sum_m K_m[a][b] conj(K_m[c][d])`. Exact for any
/// product channel and any sparse pure state.
pub fn fidelity_oracle(support: &[(usize, f64)], width: usize, ops: &[Op]) -> f64 {
    let mut t = [[[[c(0.0, 0.0); 2]; 2]; 2]; 2];
    for k in ops {
        for a in 0..2 {
            for b in 0..2 {
                for cc in 0..2 {
                    for d in 0..2 {
                        t[a][b][cc][d] += k[a][b] * k[cc][d].conj();
                    }
                }
            }
        }
    }
    let mut f = Complex64::zero();
    for &(j, aj) in support {
        for &(k, ak) in support {
            for &(j2, aj2) in support {
                for &(k2, ak2) in support {
                    let mut prod = c(aj * ak * aj2 * ak2, 0.0);
                    for q in 0..width {
                        prod *= t[j >> q & 1][k >> q & 1][j2 >> q & 1][k2 >> q & 1];
                    }
                    f += prod;
                }
            }
        }
    }
    f.re
}

/// Smallest number of pairwise-disjoint cubes whose union is `on`, by
/// enumeration of cube subsets in order of size.
pub fn min_disjoint_cover(on: &[u32], vars: usize) -> usize {
    let on_mask: u64 = on.iter().fold(0, |m, &x| m | 1 << x);
    if on_mask == 0 {
        return 0;
    }
    let mut cubes = Vec::new();
    for care in 0u32..1 << vars {
        for value in 0u32..1 << vars {
            if value & !care != 0 {
                continue;
            }
            let mask: u64 = (0u32..1 << vars)
                .filter(|&m| m & care == value)
                .fold(0, |a, m| a | 1 << m);
            if mask & !on_mask == 0 {
                cubes.push(mask);
            }
        }
    }
    fn search(cubes: &[u64], left: u64, k: usize) -> bool {
        if left == 0 {
            return true;
        }
        if k == 0 {
            return false;
        }
        let low = left & left.wrapping_neg();
        cubes
            .iter()
            .filter(|&&c| c & low != 0 && c & !left == 0)
            .any(|&c| search(cubes, left & !c, k - 1))
    }
    (1..).find(|&k| search(&cubes, on_mask, k)).unwrap()
}
