//! Single-qubit Kraus channels and their composition over a register.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::Serialize;

use super::DensityMatrix;
use crate::error::{Error, Result};

pub type Kraus = [[Complex64; 2]; 2];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NoiseChannel {
    AmplitudeDamping,
    PhaseDamping,
    BitFlip,
    PhaseFlip,
    BitPhaseFlip,
    Depolarizing,
}

impl NoiseChannel {
    pub const ALL: [NoiseChannel; 6] = [
        NoiseChannel::AmplitudeDamping,
        NoiseChannel::PhaseDamping,
        NoiseChannel::BitFlip,
        NoiseChannel::PhaseFlip,
        NoiseChannel::BitPhaseFlip,
        NoiseChannel::Depolarizing,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NoiseChannel::AmplitudeDamping => "amplitude_damping",
            NoiseChannel::PhaseDamping => "phase_damping",
            NoiseChannel::BitFlip => "bit_flip",
            NoiseChannel::PhaseFlip => "phase_flip",
            NoiseChannel::BitPhaseFlip => "bit_phase_flip",
            NoiseChannel::Depolarizing => "depolarizing",
        }
    }

    /// Kraus operators for noise rate `gamma` in [0, 1].
    pub fn kraus(self, gamma: f64) -> Result<Vec<Kraus>> {
        if !(0.0..=1.0).contains(&gamma) {
            return Err(Error::Noise(format!("gamma {gamma} outside [0, 1]")));
        }
        let z = Complex64::new(0.0, 0.0);
        let re = |x: f64| Complex64::new(x, 0.0);
        let im = |x: f64| Complex64::new(0.0, x);
        let keep = (1.0 - gamma).sqrt();
        let g = gamma.sqrt();
        let ops = match self {
            NoiseChannel::AmplitudeDamping => vec![
                [[re(1.0), z], [z, re(keep)]],
                [[z, re(g)], [z, z]],
            ],
            NoiseChannel::PhaseDamping => vec![
                [[re(keep), z], [z, re(keep)]],
                [[re(g), z], [z, z]],
                [[z, z], [z, re(g)]],
            ],
            NoiseChannel::BitFlip => vec![
                [[re(keep), z], [z, re(keep)]],
                [[z, re(g)], [re(g), z]],
            ],
            NoiseChannel::PhaseFlip => vec![
                [[re(keep), z], [z, re(keep)]],
                [[re(g), z], [z, re(-g)]],
            ],
            NoiseChannel::BitPhaseFlip => vec![
                [[re(keep), z], [z, re(keep)]],
                [[z, im(-g)], [im(g), z]],
            ],
            NoiseChannel::Depolarizing => {
                let p = (gamma / 3.0).sqrt();
                vec![
                    [[re(keep), z], [z, re(keep)]],
                    [[z, re(p)], [re(p), z]],
                    [[z, im(-p)], [im(p), z]],
                    [[re(p), z], [z, re(-p)]],
                ]
            }
        };
        Ok(ops)
    }
}

impl fmt::Display for NoiseChannel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for NoiseChannel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.replace('-', "_").to_ascii_lowercase();
        NoiseChannel::ALL
            .into_iter()
            .find(|c| c.name() == norm)
            .ok_or_else(|| Error::Noise(format!("unknown channel {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CompositionMode {
    /// The single-qubit channel applied independently to every listed
    /// qubit, summing over all Kraus-index combinations. CPTP.
    #[default]
    PerQubit,
    /// `sum_m (K_m ⊗ ... ⊗ K_m) rho (K_m ⊗ ... ⊗ K_m)^dag` over m in {0, 1}:
    /// the same Kraus index on every qubit and only the first two operators.
    /// Not trace-preserving in general.
    MatchedIndex,
}

impl FromStr for CompositionMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cptp" | "per-qubit" | "per_qubit" => Ok(CompositionMode::PerQubit),
            "paper" | "matched" | "matched-index" => Ok(CompositionMode::MatchedIndex),
            other => Err(Error::Noise(format!("unknown noise mode {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NoiseSpec {
    pub channel: NoiseChannel,
    pub gamma: f64,
    pub qubits: Vec<usize>,
    pub mode: CompositionMode,
}

impl NoiseSpec {
    /// Channel on every qubit of a `width`-qubit register.
    pub fn all_qubits(channel: NoiseChannel, gamma: f64, width: usize, mode: CompositionMode) -> Self {
        Self {
            channel,
            gamma,
            qubits: (0..width).collect(),
            mode,
        }
    }
}

pub fn apply_noise_channel(rho: &DensityMatrix, spec: &NoiseSpec) -> Result<DensityMatrix> {
    let ops = spec.channel.kraus(spec.gamma)?;
    if let Some(q) = spec.qubits.iter().find(|&&q| q >= rho.width()) {
        return Err(Error::Noise(format!(
            "qubit {q} outside {}-qubit register",
            rho.width()
        )));
    }
    match spec.mode {
        CompositionMode::PerQubit => {
            let mut cur = rho.clone();
            for &q in &spec.qubits {
                let mut acc: Option<DensityMatrix> = None;
                for k in &ops {
                    let mut term = cur.clone();
                    sandwich(&mut term, k, q);
                    acc = Some(match acc {
                        None => term,
                        Some(mut a) => {
                            add_into(&mut a, &term);
                            a
                        }
                    });
                }
                cur = acc.expect("at least one Kraus operator");
            }
            Ok(cur)
        }
        CompositionMode::MatchedIndex => {
            let mut acc: Option<DensityMatrix> = None;
            for k in ops.iter().take(2) {
                let mut term = rho.clone();
                for &q in &spec.qubits {
                    sandwich(&mut term, k, q);
                }
                acc = Some(match acc {
                    None => term,
                    Some(mut a) => {
                        add_into(&mut a, &term);
                        a
                    }
                });
            }
            Ok(acc.expect("at least two Kraus operators"))
        }
    }
}

/// In place `rho <- K_q rho K_q^dag` with K acting on qubit `q`.
fn sandwich(rho: &mut DensityMatrix, k: &Kraus, q: usize) {
    let dim = rho.dim();
    let bit = 1usize << q;
    let data = rho.data_mut();
    // rows
    for r0 in (0..dim).filter(|r| r & bit == 0) {
        let r1 = r0 | bit;
        for c in 0..dim {
            let a = data[r0 * dim + c];
            let b = data[r1 * dim + c];
            data[r0 * dim + c] = k[0][0] * a + k[0][1] * b;
            data[r1 * dim + c] = k[1][0] * a + k[1][1] * b;
        }
    }
    // columns, multiplying by K^dag on the right
    let kc = [
        [k[0][0].conj(), k[0][1].conj()],
        [k[1][0].conj(), k[1][1].conj()],
    ];
    for r in 0..dim {
        let row = &mut data[r * dim..(r + 1) * dim];
        for c0 in (0..dim).filter(|c| c & bit == 0) {
            let c1 = c0 | bit;
            let a = row[c0];
            let b = row[c1];
            row[c0] = a * kc[0][0] + b * kc[0][1];
            row[c1] = a * kc[1][0] + b * kc[1][1];
        }
    }
}

fn add_into(acc: &mut DensityMatrix, term: &DensityMatrix) {
    for (a, b) in acc.data_mut().iter_mut().zip(term.data()) {
        *a += b;
    }
}
