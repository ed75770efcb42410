use std::fmt;
use std::fs;
use std::path::Path;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DELTA_MIN: f64 = 3.85;
pub const DELTA_MAX: f64 = 4.0;
pub const MAX_ORDER: u32 = 15;

/// Affine scramble parameters `P, Q, s, t` and logistic-map parameters
/// `L0, delta` for grid order `n`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EncryptionKey {
    n: u32,
    p: u64,
    q: u64,
    s: u64,
    t: u64,
    l0: f64,
    delta: f64,
}

impl EncryptionKey {
    pub fn new(n: u32, p: u64, q: u64, s: u64, t: u64, l0: f64, delta: f64) -> Result<Self> {
        let key = Self {
            n,
            p,
            q,
            s,
            t,
            l0,
            delta,
        };
        key.validate()?;
        Ok(key)
    }

    /// Key used for the 2x2 worked example.
    pub fn reference() -> Self {
        Self::new(1, 1, 1, 1, 1, 0.5557924316949603, 3.9816188727791215).expect("valid")
    }

    /// Uniformly random valid key for order `n`.
    pub fn random<R: Rng + ?Sized>(n: u32, rng: &mut R) -> Result<Self> {
        check_order(n)?;
        let m = 1u64 << n;
        let l0 = loop {
            let l: f64 = rng.gen();
            if l > 0.0 {
                break l;
            }
        };
        Self::new(
            n,
            rng.gen_range(1..m),
            rng.gen_range(1..m),
            rng.gen_range(0..m / 2) * 2 + 1,
            rng.gen_range(0..m / 2) * 2 + 1,
            l0,
            rng.gen_range(DELTA_MIN..=DELTA_MAX),
        )
    }

    fn validate(&self) -> Result<()> {
        check_order(self.n)?;
        let m = 1u64 << self.n;
        for (name, v) in [("P", self.p), ("Q", self.q)] {
            if v == 0 || v >= m {
                return Err(Error::InvalidKey(format!("{name}={v} must lie in [1, {}]", m - 1)));
            }
        }
        for (name, v) in [("s", self.s), ("t", self.t)] {
            if v % 2 == 0 {
                return Err(Error::InvalidKey(format!("{name}={v} must be odd")));
            }
        }
        if !(self.l0 > 0.0 && self.l0 < 1.0) {
            return Err(Error::InvalidKey(format!("L0={} must lie in (0, 1)", self.l0)));
        }
        if !(DELTA_MIN..=DELTA_MAX).contains(&self.delta) {
            return Err(Error::InvalidKey(format!(
                "delta={} must lie in [{DELTA_MIN}, {DELTA_MAX}]",
                self.delta
            )));
        }
        Ok(())
    }

    pub fn order(&self) -> u32 {
        self.n
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn s(&self) -> u64 {
        self.s
    }

    pub fn t(&self) -> u64 {
        self.t
    }

    pub fn l0(&self) -> f64 {
        self.l0
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn with_l0(&self, l0: f64) -> Result<Self> {
        Self::new(self.n, self.p, self.q, self.s, self.t, l0, self.delta)
    }

    pub fn to_json(&self) -> String {
        let file = KeyFile {
            n: self.n,
            p: self.p,
            q: self.q,
            s: self.s,
            t: self.t,
            l0: Real::Text(sig17(self.l0)),
            delta: Real::Text(sig17(self.delta)),
        };
        serde_json::to_string_pretty(&file).expect("serializable") + "\n"
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let f: KeyFile = serde_json::from_str(text)?;
        Self::new(f.n, f.p, f.q, f.s, f.t, f.l0.value("L0")?, f.delta.value("delta")?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&fs::read_to_string(path)?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        fs::write(path, self.to_json())?;
        Ok(())
    }
}

impl fmt::Display for EncryptionKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n={} P={} Q={} s={} t={} L0={} delta={}",
            self.n,
            self.p,
            self.q,
            self.s,
            self.t,
            sig17(self.l0),
            sig17(self.delta)
        )
    }
}

fn check_order(n: u32) -> Result<()> {
    if n == 0 || n > MAX_ORDER {
        return Err(Error::InvalidKey(format!("order {n} outside 1..={MAX_ORDER}")));
    }
    Ok(())
}

/// Positional decimal with 17 significant digits, enough to round-trip
/// any f64.
fn sig17(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let int_digits = x.abs().log10().floor() as i32 + 1;
    let decimals = (17 - int_digits).max(0) as usize;
    format!("{x:.decimals$}")
}

#[derive(Serialize, Deserialize)]
struct KeyFile {
    n: u32,
    #[serde(rename = "P")]
    p: u64,
    #[serde(rename = "Q")]
    q: u64,
    s: u64,
    t: u64,
    #[serde(rename = "L0")]
    l0: Real,
    delta: Real,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Real {
    Number(f64),
    Text(String),
}

impl Real {
    fn value(&self, name: &str) -> Result<f64> {
        match self {
            Real::Number(x) => Ok(*x),
            Real::Text(s) => s
                .trim()
                .parse()
                .map_err(|_| Error::InvalidKey(format!("{name}={s:?} is not a number"))),
        }
    }
}

/// Size of the key space under both ways of combining its parts.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct KeyspaceSummary {
    pub order: u32,
    /// log2 of the number of distinct (P, Q, s mod 2^n, t mod 2^n).
    pub affine_bits: f64,
    /// log2 of the number of distinct double-precision (L0, delta).
    pub logistic_bits: f64,
    /// log2(affine + logistic).
    pub additive_bits: f64,
    /// log2(affine * logistic).
    pub multiplicative_bits: f64,
}

pub fn keyspace_summary(n: u32) -> Result<KeyspaceSummary> {
    check_order(n)?;
    let m = (1u64 << n) as f64;
    let affine = 2.0 * (m - 1.0).log2() + 2.0 * (m / 2.0).log2();
    // doubles strictly inside (0, 1), and in [3.85, 4]
    let l0_count = (1.0f64.to_bits() - 1) as f64;
    let delta_count = (DELTA_MAX.to_bits() - DELTA_MIN.to_bits() + 1) as f64;
    let logistic = l0_count.log2() + delta_count.log2();
    let (hi, lo) = if affine > logistic { (affine, logistic) } else { (logistic, affine) };
    Ok(KeyspaceSummary {
        order: n,
        affine_bits: affine,
        logistic_bits: logistic,
        additive_bits: hi + (1.0 + (lo - hi).exp2()).log2(),
        multiplicative_bits: affine + logistic,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn rejects_invalid_fields() {
        let ok = |p, q, s, t, l0, d| EncryptionKey::new(2, p, q, s, t, l0, d);
        assert!(ok(1, 1, 1, 1, 0.5, 3.9).is_ok());
        assert!(ok(0, 1, 1, 1, 0.5, 3.9).is_err());
        assert!(ok(1, 4, 1, 1, 0.5, 3.9).is_err());
        assert!(ok(1, 1, 2, 1, 0.5, 3.9).is_err());
        assert!(ok(1, 1, 1, 4, 0.5, 3.9).is_err());
        assert!(ok(1, 1, 1, 1, 0.0, 3.9).is_err());
        assert!(ok(1, 1, 1, 1, 1.0, 3.9).is_err());
        assert!(ok(1, 1, 1, 1, f64::NAN, 3.9).is_err());
        assert!(ok(1, 1, 1, 1, 0.5, 3.84).is_err());
        assert!(ok(1, 1, 1, 1, 0.5, 4.01).is_err());
        assert!(EncryptionKey::new(0, 1, 1, 1, 1, 0.5, 3.9).is_err());
    }

    #[test]
    fn json_is_bit_exact() {
        let k = EncryptionKey::reference();
        let text = k.to_json();
        assert!(text.contains("\"0.55579243169496029\""), "{text}");
        assert!(text.contains("\"3.9816188727791215\""), "{text}");
        assert_eq!(EncryptionKey::from_json(&text).unwrap(), k);

        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        for n in 1..=6 {
            let k = EncryptionKey::random(n, &mut rng).unwrap();
            let back = EncryptionKey::from_json(&k.to_json()).unwrap();
            assert_eq!(back.l0().to_bits(), k.l0().to_bits());
            assert_eq!(back.delta().to_bits(), k.delta().to_bits());
        }
    }

    #[test]
    fn json_numbers_accepted() {
        let k = EncryptionKey::from_json(
            r#"{"n":1,"P":1,"Q":1,"s":1,"t":1,"L0":0.5557924316949603,"delta":3.9816188727791215}"#,
        )
        .unwrap();
        assert_eq!(k, EncryptionKey::reference());
        assert!(matches!(
            EncryptionKey::from_json(r#"{"n":1,"P":1,"Q":1,"s":2,"t":1,"L0":"0.5","delta":"3.9"}"#),
            Err(Error::InvalidKey(_))
        ));
    }

    #[test]
    fn keyspace_conventions() {
        let ks = keyspace_summary(1).unwrap();
        // P, Q, s, t each have a single choice at n = 1
        assert_eq!(ks.affine_bits, 0.0);
        assert!(ks.multiplicative_bits >= ks.additive_bits);
        let ks8 = keyspace_summary(8).unwrap();
        assert!((ks8.affine_bits - (2.0 * 255f64.log2() + 14.0)).abs() < 1e-12);
    }
}
