use std::collections::BTreeMap;
use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use rand::distributions::{Distribution, WeightedIndex};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::qcircuit::{Circuit, Gate};

/// Statevector simulation refuses registers wider than this.
pub const MAX_STATEVECTOR_QUBITS: usize = 24;

/// Measurement histogram keyed by MSB-first bitstring.
pub type Counts = BTreeMap<String, u64>;

/// Amplitudes over `2^width` basis states. Basis index bit `q` is qubit `q`.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    width: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    pub fn zero(width: usize) -> Result<Self> {
        check_width(width)?;
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << width];
        amps[0] = Complex64::new(1.0, 0.0);
        Ok(Self { width, amps })
    }

    pub fn basis(width: usize, index: usize) -> Result<Self> {
        check_width(width)?;
        if index >= 1 << width {
            return Err(Error::Simulation(format!(
                "basis index {index} out of range for {width} qubits"
            )));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << width];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(Self { width, amps })
    }

    /// Wraps raw amplitudes; the caller is responsible for normalization.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let n = amps.len();
        if !n.is_power_of_two() {
            return Err(Error::Simulation(format!(
                "amplitude vector length {n} is not a power of two"
            )));
        }
        let width = n.trailing_zeros() as usize;
        check_width(width)?;
        Ok(Self { width, amps })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amps[index]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Indices with nonzero amplitude, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.amps.len())
            .filter(|&i| self.amps[i] != Complex64::new(0.0, 0.0))
            .collect()
    }

    pub fn inner(&self, other: &StateVector) -> Complex64 {
        assert_eq!(self.width, other.width);
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// |<self|other>|^2
    pub fn fidelity(&self, other: &StateVector) -> f64 {
        self.inner(other).norm_sqr()
    }

    /// Drops the top `width - keep` qubits, which must be exactly |0>
    /// (within `tol` in amplitude).
    pub fn truncate(&self, keep: usize, tol: f64) -> Result<StateVector> {
        if keep > self.width {
            return Err(Error::Simulation("cannot truncate to a wider register".into()));
        }
        let low = 1usize << keep;
        if let Some(i) = (low..self.amps.len()).find(|&i| self.amps[i].norm() > tol) {
            return Err(Error::Simulation(format!(
                "qubits above {keep} are not clean: amplitude {} at index {i}",
                self.amps[i]
            )));
        }
        Ok(StateVector {
            width: keep,
            amps: self.amps[..low].to_vec(),
        })
    }

    /// Maximum amplitude difference after removing a global phase chosen
    /// from the largest component.
    pub fn distance_up_to_phase(&self, other: &StateVector) -> f64 {
        assert_eq!(self.width, other.width);
        let pivot = (0..self.amps.len())
            .max_by(|&a, &b| self.amps[a].norm().total_cmp(&self.amps[b].norm()))
            .unwrap_or(0);
        let phase = if other.amps[pivot].norm() > 0.0 && self.amps[pivot].norm() > 0.0 {
            let r = self.amps[pivot] / other.amps[pivot];
            r / r.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b * phase).norm())
            .fold(0.0, f64::max)
    }

    pub fn bitstring(&self, index: usize) -> String {
        format!("{index:0width$b}", width = self.width)
    }
}

fn check_width(width: usize) -> Result<()> {
    if width > MAX_STATEVECTOR_QUBITS {
        Err(Error::TooWide {
            width,
            limit: MAX_STATEVECTOR_QUBITS,
            mode: "statevector",
        })
    } else {
        Ok(())
    }
}

/// Applies the circuit's gates in order, starting from `initial` or |0...0>.
///
/// Hadamards are applied without their 1/sqrt(2) factor and the state is
/// rescaled once at the end by 2^(-k/2), so circuits whose ideal amplitudes
/// are dyadic (such as NEQR encoders) reproduce them bit-exactly.
pub fn run_statevector(circuit: &Circuit, initial: Option<&StateVector>) -> Result<StateVector> {
    let mut state = match initial {
        Some(s) => {
            if s.width != circuit.width() {
                return Err(Error::Simulation(format!(
                    "circuit width {} does not match state width {}",
                    circuit.width(),
                    s.width
                )));
            }
            s.clone()
        }
        None => StateVector::zero(circuit.width())?,
    };
    let mut pending_h = 0u32;
    for g in circuit.gates() {
        match g {
            Gate::H(q) => {
                apply_single(&mut state.amps, *q, |a, b| (a + b, a - b));
                pending_h += 1;
            }
            Gate::Sx(q) => {
                let p = Complex64::new(0.5, 0.5);
                let m = Complex64::new(0.5, -0.5);
                apply_single(&mut state.amps, *q, |a, b| (p * a + m * b, m * a + p * b));
            }
            Gate::Rz(q, theta) => {
                let lo = Complex64::from_polar(1.0, -theta / 2.0);
                let hi = Complex64::from_polar(1.0, theta / 2.0);
                apply_single(&mut state.amps, *q, |a, b| (lo * a, hi * b));
            }
            Gate::X(_) | Gate::Cx { .. } | Gate::Mcx { .. } => apply_controlled_x(&mut state.amps, g),
        }
    }
    let mut scale = Complex64::from_polar(1.0, circuit.global_phase());
    if pending_h > 0 {
        let mut s = 0.5f64.powi((pending_h / 2) as i32);
        if pending_h % 2 == 1 {
            s *= FRAC_1_SQRT_2;
        }
        scale *= s;
    }
    if scale != Complex64::new(1.0, 0.0) {
        for a in &mut state.amps {
            *a *= scale;
        }
    }
    Ok(state)
}

fn apply_single<F>(amps: &mut [Complex64], q: usize, f: F)
where
    F: Fn(Complex64, Complex64) -> (Complex64, Complex64),
{
    let bit = 1usize << q;
    for i in 0..amps.len() {
        if i & bit == 0 {
            let (a, b) = f(amps[i], amps[i | bit]);
            amps[i] = a;
            amps[i | bit] = b;
        }
    }
}

fn apply_controlled_x(amps: &mut [Complex64], g: &Gate) {
    let bit = 1usize << g.target();
    let controls = g.controls();
    for i in 0..amps.len() {
        if i & bit == 0 && controls.iter().all(|c| c.is_satisfied(i)) {
            amps.swap(i, i | bit);
        }
    }
}

/// Multinomial sample of `shots` outcomes from |amplitude|^2, reproducible
/// for a given seed.
pub fn sample_counts(state: &StateVector, shots: u64, seed: u64) -> Result<Counts> {
    if shots == 0 {
        return Err(Error::Simulation("shots must be positive".into()));
    }
    let support: Vec<usize> = (0..state.amps.len())
        .filter(|&i| state.amps[i].norm_sqr() > 0.0)
        .collect();
    let weights: Vec<f64> = support.iter().map(|&i| state.amps[i].norm_sqr()).collect();
    let dist = WeightedIndex::new(&weights)
        .map_err(|e| Error::Simulation(format!("cannot sample state: {e}")))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hits = vec![0u64; support.len()];
    for _ in 0..shots {
        hits[dist.sample(&mut rng)] += 1;
    }
    Ok(support
        .iter()
        .zip(hits)
        .filter(|(_, n)| *n > 0)
        .map(|(&i, n)| (state.bitstring(i), n))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcircuit::Control;

    #[test]
    fn hadamard_on_zero() {
        let mut c = Circuit::new(1);
        c.push(Gate::H(0));
        let s = run_statevector(&c, None).unwrap();
        assert_eq!(s.amplitude(0), Complex64::new(FRAC_1_SQRT_2, 0.0));
        assert_eq!(s.amplitude(1), Complex64::new(FRAC_1_SQRT_2, 0.0));
    }

    #[test]
    fn two_hadamards_are_exactly_half() {
        let mut c = Circuit::new(2);
        c.extend([Gate::H(0), Gate::H(1)]);
        let s = run_statevector(&c, None).unwrap();
        assert!(s.amplitudes().iter().all(|a| *a == Complex64::new(0.5, 0.0)));
    }

    #[test]
    fn hh_is_identity() {
        let mut c = Circuit::new(1);
        c.extend([Gate::H(0), Gate::H(0)]);
        let s = run_statevector(&c, None).unwrap();
        assert_eq!(s, StateVector::zero(1).unwrap());
    }

    #[test]
    fn sx_squared_is_x() {
        let mut c = Circuit::new(1);
        c.extend([Gate::Sx(0), Gate::Sx(0)]);
        let s = run_statevector(&c, None).unwrap();
        assert!((s.amplitude(1) - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn negative_control_cx() {
        let mut c = Circuit::new(2);
        c.push(Gate::Cx {
            control: Control::neg(0),
            target: 1,
        });
        let s = run_statevector(&c, None).unwrap();
        assert_eq!(s.support(), vec![0b10]);
    }

    #[test]
    fn width_mismatch_rejected() {
        let c = Circuit::new(2);
        let s = StateVector::zero(3).unwrap();
        assert!(run_statevector(&c, Some(&s)).is_err());
        assert!(StateVector::zero(MAX_STATEVECTOR_QUBITS + 1).is_err());
    }

    #[test]
    fn basis_state_sampling_is_deterministic() {
        let s = StateVector::basis(4, 0b0110).unwrap();
        let counts = sample_counts(&s, 100, 7).unwrap();
        assert_eq!(counts.len(), 1);
        assert_eq!(counts["0110"], 100);
        assert!(sample_counts(&s, 0, 7).is_err());
    }

    #[test]
    fn same_seed_same_counts() {
        let mut c = Circuit::new(3);
        c.extend([Gate::H(0), Gate::H(1), Gate::H(2)]);
        let s = run_statevector(&c, None).unwrap();
        let a = sample_counts(&s, 1000, 42).unwrap();
        assert_eq!(a, sample_counts(&s, 1000, 42).unwrap());
        assert_eq!(a.values().sum::<u64>(), 1000);
    }

    #[test]
    fn truncate_checks_ancillas() {
        let s = StateVector::basis(3, 0b100).unwrap();
        assert!(s.truncate(2, 1e-12).is_err());
        let s = StateVector::basis(3, 0b011).unwrap();
        assert_eq!(s.truncate(2, 1e-12).unwrap().support(), vec![3]);
    }
}
