//! Gray images on a `2^n x 2^n` grid and their NEQR encoding.
//!
//! Basis convention: index `k = v * 4^n + Y * 2^n + X`, so qubits `0..n`
//! hold X, `n..2n` hold Y and `2n..2n+8` hold the pixel value bits
//! `c0..c7`. Bitstrings are printed MSB first: `c7..c0 y(n-1)..y0 x(n-1)..x0`.

mod pgm;

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qcircuit::{Circuit, Control, Gate};
use crate::qsim::{Counts, StateVector};

pub use pgm::{read_pgm, read_pgm_file, write_pgm, write_pgm_file, PgmFormat};

/// Number of value qubits.
pub const VALUE_BITS: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GrayImage {
    order: u32,
    pixels: Vec<u8>,
}

impl GrayImage {
    /// Row-major pixels for a `2^order`-sided image.
    pub fn new(order: u32, pixels: Vec<u8>) -> Result<Self> {
        if order == 0 || order > 15 {
            return Err(Error::InvalidImage(format!("order {order} outside 1..=15")));
        }
        let want = 1usize << (2 * order);
        if pixels.len() != want {
            return Err(Error::InvalidImage(format!(
                "{} pixels for order {order}, expected {want}",
                pixels.len()
            )));
        }
        Ok(Self { order, pixels })
    }

    /// Builds from a side length, which must be a power of two >= 2.
    pub fn from_side(side: usize, pixels: Vec<u8>) -> Result<Self> {
        if side < 2 || !side.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(side));
        }
        Self::new(side.trailing_zeros(), pixels)
    }

    pub fn zeros(order: u32) -> Result<Self> {
        Self::new(order, vec![0; 1 << (2 * order)])
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn side(&self) -> usize {
        1 << self.order
    }

    pub fn len(&self) -> usize {
        self.pixels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pixels.is_empty()
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn into_pixels(self) -> Vec<u8> {
        self.pixels
    }

    pub fn get(&self, y: usize, x: usize) -> u8 {
        self.pixels[y * self.side() + x]
    }

    pub fn set(&mut self, y: usize, x: usize, v: u8) {
        let side = self.side();
        self.pixels[y * side + x] = v;
    }

    pub fn same_shape(&self, other: &GrayImage) -> Result<()> {
        if self.order == other.order {
            Ok(())
        } else {
            Err(Error::Dimension(format!(
                "{0}x{0} vs {1}x{1} images",
                self.side(),
                other.side()
            )))
        }
    }
}

/// Qubit positions of the NEQR register for grid order `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NeqrLayout {
    pub order: u32,
}

impl NeqrLayout {
    pub fn new(order: u32) -> Self {
        Self { order }
    }

    pub fn coord_bits(&self) -> usize {
        2 * self.order as usize
    }

    pub fn width(&self) -> usize {
        self.coord_bits() + VALUE_BITS
    }

    /// Qubit for bit `j` of the linear coordinate `Y * 2^n + X`.
    pub fn coord_qubit(&self, j: usize) -> usize {
        debug_assert!(j < self.coord_bits());
        j
    }

    pub fn coord_qubits(&self) -> Vec<usize> {
        (0..self.coord_bits()).collect()
    }

    /// Qubit for value bit `c^i`.
    pub fn value_qubit(&self, i: usize) -> usize {
        debug_assert!(i < VALUE_BITS);
        self.coord_bits() + i
    }

    pub fn value_qubits(&self) -> Vec<usize> {
        (0..VALUE_BITS).map(|i| self.value_qubit(i)).collect()
    }

    /// Controls selecting coordinate `eta` exactly.
    pub fn coordinate_controls(&self, eta: usize) -> Vec<Control> {
        (0..self.coord_bits())
            .map(|j| Control::on(self.coord_qubit(j), eta >> j & 1 == 1))
            .collect()
    }
}

/// A basis state `|v>|Y>|X>` of the NEQR register.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisIndex {
    pub value: u8,
    pub y: usize,
    pub x: usize,
}

impl BasisIndex {
    pub fn index(&self, order: u32) -> usize {
        let n = order as usize;
        ((self.value as usize) << (2 * n)) | (self.y << n) | self.x
    }

    pub fn from_index(k: usize, order: u32) -> Result<Self> {
        let n = order as usize;
        if k >> (2 * n + VALUE_BITS) != 0 {
            return Err(Error::Simulation(format!(
                "basis index {k} exceeds {} qubits",
                2 * n + VALUE_BITS
            )));
        }
        let mask = (1usize << n) - 1;
        Ok(Self {
            value: (k >> (2 * n)) as u8,
            y: (k >> n) & mask,
            x: k & mask,
        })
    }

    pub fn bitstring(&self, order: u32) -> String {
        let n = order as usize;
        format!(
            "{:08b}{:0n$b}{:0n$b}",
            self.value,
            self.y,
            self.x,
            n = n
        )
    }

    pub fn parse_bitstring(bits: &str, order: u32) -> Result<Self> {
        let n = order as usize;
        let want = 2 * n + VALUE_BITS;
        if bits.len() != want || !bits.bytes().all(|b| b == b'0' || b == b'1') {
            return Err(Error::Simulation(format!(
                "bitstring {bits:?} is not {want} binary digits"
            )));
        }
        let k = usize::from_str_radix(bits, 2).expect("validated binary");
        Self::from_index(k, order)
    }
}

/// The NEQR state `2^-n * sum |f(Y,X)>|Y>|X>`.
pub fn neqr_state(image: &GrayImage) -> Result<StateVector> {
    let layout = NeqrLayout::new(image.order());
    let mut amps = vec![Complex64::new(0.0, 0.0); 1usize << layout.width()];
    let amp = Complex64::new(1.0 / image.side() as f64, 0.0);
    let side = image.side();
    for (eta, &v) in image.pixels().iter().enumerate() {
        let b = BasisIndex {
            value: v,
            y: eta / side,
            x: eta % side,
        };
        amps[b.index(image.order())] = amp;
    }
    StateVector::from_amplitudes(amps)
}

/// Hadamards on the coordinate qubits, then one fully-controlled X per set
/// value bit of every pixel. Zero bits emit no gate.
pub fn build_naive_neqr_circuit(image: &GrayImage) -> Circuit {
    let layout = NeqrLayout::new(image.order());
    let mut c = Circuit::new(layout.width());
    for q in layout.coord_qubits() {
        c.push(Gate::H(q));
    }
    for (eta, &v) in image.pixels().iter().enumerate() {
        for i in 0..VALUE_BITS {
            if v >> i & 1 == 1 {
                c.push(Gate::controlled_x(
                    layout.coordinate_controls(eta),
                    layout.value_qubit(i),
                ));
            }
        }
    }
    c
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Coverage {
    /// Coordinates `(y, x)` with no observed shots; their pixel is 0.
    pub missing: Vec<(usize, usize)>,
    /// Coordinates where more than one value was observed.
    pub ambiguous: Vec<(usize, usize)>,
}

impl Coverage {
    pub fn is_complete(&self) -> bool {
        self.missing.is_empty()
    }
}

/// Rebuilds an image from measured NEQR bitstrings: each coordinate takes
/// its most frequent value, ties resolved toward the smaller value.
pub fn reconstruct_image(counts: &Counts, order: u32) -> Result<(GrayImage, Coverage)> {
    let side = 1usize << order;
    let mut tallies: Vec<BTreeMap<u8, u64>> = vec![BTreeMap::new(); side * side];
    for (bits, &n) in counts {
        let b = BasisIndex::parse_bitstring(bits, order)?;
        *tallies[b.y * side + b.x].entry(b.value).or_default() += n;
    }
    let mut image = GrayImage::zeros(order)?;
    let mut coverage = Coverage::default();
    for (eta, t) in tallies.iter().enumerate() {
        let (y, x) = (eta / side, eta % side);
        // BTreeMap iterates ascending, so max_by_key with a reversed value
        // key keeps the smallest value among equal counts.
        match t.iter().filter(|(_, &n)| n > 0).max_by_key(|(&v, &n)| (n, std::cmp::Reverse(v))) {
            Some((&v, _)) => image.set(y, x, v),
            None => coverage.missing.push((y, x)),
        }
        if t.values().filter(|&&n| n > 0).count() > 1 {
            coverage.ambiguous.push((y, x));
        }
    }
    Ok((image, coverage))
}

/// Noise-free histogram proportional to the state's probabilities.
pub fn perfect_counts(state: &StateVector, shots: u64) -> Counts {
    state
        .support()
        .into_iter()
        .map(|k| {
            let p = state.amplitude(k).norm_sqr();
            (state.bitstring(k), (p * shots as f64).round() as u64)
        })
        .filter(|(_, n)| *n > 0)
        .collect()
}
