//! Reversible circuits for the cipher stages.
//!
//! Coordinate registers follow the NEQR convention: bit `j` of the linear
//! coordinate `Y * 2^n + X` lives on the `j`-th qubit of the register, so
//! the low `n` qubits hold `X` and the high `n` hold `Y`.

use super::{logistic_keystream, mod_inverse, EncryptionKey, Keystream};
use crate::error::{Error, Result};
use crate::qcircuit::{Circuit, Control, Gate};
use crate::qimage::{build_naive_neqr_circuit, GrayImage, NeqrLayout, VALUE_BITS};
use crate::qsim::StateVector;
use crate::synth::{append_cover, bit_plane_covers, factor_shared_controls, synthesize_minimized_encoder};

/// How the coordinate-controlled stages are realized.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Compression {
    /// One fully-controlled X per set bit.
    Naive,
    /// Minimized disjoint covers per bit-plane.
    Minimized,
    /// Minimized, then shared control patterns computed into an ancilla.
    Factored,
}

impl Compression {
    pub const ALL: [Compression; 3] = [Compression::Naive, Compression::Minimized, Compression::Factored];

    pub fn name(self) -> &'static str {
        match self {
            Compression::Naive => "naive",
            Compression::Minimized => "minimized",
            Compression::Factored => "factored",
        }
    }
}

fn maj(c: &mut Circuit, x: usize, y: usize, z: usize) {
    c.push(Gate::cx(z, y));
    c.push(Gate::cx(z, x));
    c.push(Gate::ccx(x, y, z));
}

fn uma(c: &mut Circuit, x: usize, y: usize, z: usize) {
    c.push(Gate::ccx(x, y, z));
    c.push(Gate::cx(z, x));
    c.push(Gate::cx(x, y));
}

/// `|a>|b> -> |a>|(a + b) mod 2^n>` by a ripple-carry (MAJ/UMA) chain.
/// The top carry is never computed; `carry` is a clean ancilla that is
/// returned to zero, and is not needed when `n == 1`.
pub fn append_adder(c: &mut Circuit, a: &[usize], b: &[usize], carry: Option<usize>) {
    let n = a.len();
    assert!(n >= 1 && b.len() == n, "adder registers must have equal nonzero width");
    if n == 1 {
        c.push(Gate::cx(a[0], b[0]));
        return;
    }
    let cin = carry.expect("adders wider than one bit need a carry ancilla");
    maj(c, cin, b[0], a[0]);
    for i in 1..n - 1 {
        maj(c, a[i - 1], b[i], a[i]);
    }
    c.push(Gate::cx(a[n - 1], b[n - 1]));
    c.push(Gate::cx(a[n - 2], b[n - 1]));
    for i in (1..n - 1).rev() {
        uma(c, a[i - 1], b[i], a[i]);
    }
    uma(c, cin, b[0], a[0]);
}

/// `|a>|b> -> |a>|(b - a) mod 2^n>`.
pub fn append_subtractor(c: &mut Circuit, a: &[usize], b: &[usize], carry: Option<usize>) {
    let mut tmp = Circuit::new(c.width());
    append_adder(&mut tmp, a, b, carry);
    // every gate in the adder is self-inverse
    c.extend(tmp.gates().iter().rev().cloned());
}

/// Standalone adder: `a` on qubits `0..n`, `b` on `n..2n`, carry ancilla
/// at `2n` when `n >= 2`.
pub fn build_adder_mod_circuit(n: usize) -> Circuit {
    assert!(n >= 1);
    let mut c = Circuit::new(2 * n);
    let carry = (n >= 2).then(|| c.add_ancilla());
    let a: Vec<usize> = (0..n).collect();
    let b: Vec<usize> = (n..2 * n).collect();
    append_adder(&mut c, &a, &b, carry);
    c
}

/// X gates writing the constant `value` into a zeroed register.
pub fn append_load_constant(c: &mut Circuit, reg: &[usize], value: u64) {
    for (j, &q) in reg.iter().enumerate() {
        if value >> j & 1 == 1 {
            c.push(Gate::X(q));
        }
    }
}

/// Registers used by the forward affine scramble.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GatLayout {
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    pub x_out: Vec<usize>,
    pub y_out: Vec<usize>,
    pub carry: Option<usize>,
}

impl GatLayout {
    /// `X` on `0..n`, `Y` on `n..2n`, outputs on `2n..3n` and `3n..4n`,
    /// carry at `4n` for `n >= 2`.
    pub fn standalone(n: usize) -> Self {
        Self::with_outputs(0, n, 2 * n)
    }

    /// Coordinates on `coords..coords+2n`, outputs and carry packed from
    /// `offset` upward.
    pub fn with_outputs(coords: usize, n: usize, offset: usize) -> Self {
        Self {
            x: (coords..coords + n).collect(),
            y: (coords + n..coords + 2 * n).collect(),
            x_out: (offset..offset + n).collect(),
            y_out: (offset + n..offset + 2 * n).collect(),
            carry: (n >= 2).then_some(offset + 2 * n),
        }
    }

    /// Qubits needed: the highest index used plus one.
    pub fn width(&self) -> usize {
        self.x
            .iter()
            .chain(&self.y)
            .chain(&self.x_out)
            .chain(&self.y_out)
            .chain(self.carry.iter())
            .max()
            .map_or(0, |m| m + 1)
    }

    /// Output coordinate register in NEQR bit order (X bits, then Y bits).
    pub fn output_coords(&self) -> Vec<usize> {
        self.x_out.iter().chain(&self.y_out).copied().collect()
    }
}

/// Loads `P`, `Q` into the zeroed output registers, then adds `X` into
/// the first `s mod 2^n` times and `Y` into the second `t mod 2^n` times,
/// leaving `(sX + P) mod 2^n` and `(tY + Q) mod 2^n`.
pub fn append_gat(c: &mut Circuit, key: &EncryptionKey, layout: &GatLayout) {
    let mask = (1u64 << key.order()) - 1;
    append_load_constant(c, &layout.x_out, key.p());
    append_load_constant(c, &layout.y_out, key.q());
    for _ in 0..key.s() & mask {
        append_adder(c, &layout.x, &layout.x_out, layout.carry);
    }
    for _ in 0..key.t() & mask {
        append_adder(c, &layout.y, &layout.y_out, layout.carry);
    }
}

/// Forward scramble on [`GatLayout::standalone`].
pub fn build_gat_circuit(key: &EncryptionKey) -> Circuit {
    let layout = GatLayout::standalone(key.order() as usize);
    let mut c = Circuit::new(layout.width());
    if let Some(q) = layout.carry {
        c.mark_ancilla(q);
    }
    append_gat(&mut c, key, &layout);
    c
}

/// Registers used by the inverse scramble. The scratch registers start
/// and end at zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InverseGatLayout {
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    pub scratch_x: Vec<usize>,
    pub scratch_y: Vec<usize>,
    pub x_out: Vec<usize>,
    pub y_out: Vec<usize>,
    pub carry: Option<usize>,
}

impl InverseGatLayout {
    /// Scrambled coordinates from `coords`, then scratch, outputs and
    /// carry packed from `offset` upward.
    pub fn new(n: usize, coords: usize, offset: usize) -> Self {
        let r = |k: usize| (offset + k * n..offset + (k + 1) * n).collect();
        Self {
            x: (coords..coords + n).collect(),
            y: (coords + n..coords + 2 * n).collect(),
            scratch_x: r(0),
            scratch_y: r(1),
            x_out: r(2),
            y_out: r(3),
            carry: (n >= 2).then_some(offset + 4 * n),
        }
    }

    pub fn standalone(n: usize) -> Self {
        Self::new(n, 0, 2 * n)
    }

    pub fn width(&self) -> usize {
        [&self.x, &self.y, &self.scratch_x, &self.scratch_y, &self.x_out, &self.y_out]
            .into_iter()
            .flatten()
            .chain(self.carry.iter())
            .max()
            .map_or(0, |m| m + 1)
    }

    pub fn output_coords(&self) -> Vec<usize> {
        self.x_out.iter().chain(&self.y_out).copied().collect()
    }

    fn ancillas(&self) -> impl Iterator<Item = usize> + '_ {
        self.scratch_x.iter().chain(&self.scratch_y).copied().chain(self.carry)
    }
}

/// Computes `s^-1 (X' + (!P + 1))` into `x_out` (and the `Y` analogue):
/// the scratch register is loaded with the two's complement of `P`, `X'`
/// is added once, the difference is added `s^-1` times into the output,
/// and the scratch is then uncomputed.
pub fn append_gat_inverse(c: &mut Circuit, key: &EncryptionKey, layout: &InverseGatLayout) -> Result<()> {
    let n = key.order();
    let mask = (1u64 << n) - 1;
    let paths = [
        (&layout.x, &layout.scratch_x, &layout.x_out, key.p(), mod_inverse(key.s(), n)?),
        (&layout.y, &layout.scratch_y, &layout.y_out, key.q(), mod_inverse(key.t(), n)?),
    ];
    for (input, scratch, out, offset, inv) in paths {
        let neg = (!offset).wrapping_add(1) & mask;
        append_load_constant(c, scratch, neg);
        append_adder(c, input, scratch, layout.carry);
        for _ in 0..inv {
            append_adder(c, scratch, out, layout.carry);
        }
        append_subtractor(c, input, scratch, layout.carry);
        append_load_constant(c, scratch, neg);
    }
    Ok(())
}

/// Inverse scramble on [`InverseGatLayout::standalone`].
pub fn build_gat_inverse_circuit(key: &EncryptionKey) -> Result<Circuit> {
    let layout = InverseGatLayout::standalone(key.order() as usize);
    let mut c = Circuit::new(layout.width());
    for q in layout.ancillas() {
        c.mark_ancilla(q);
    }
    append_gat_inverse(&mut c, key, &layout)?;
    Ok(c)
}

fn controls_for(coords: &[usize], eta: usize) -> Vec<Control> {
    coords.iter().enumerate().map(|(j, &q)| Control::on(q, eta >> j & 1 == 1)).collect()
}

/// Two stages of coordinate-controlled X gates: value bit `i` at `eta`
/// flips when bit `i` of `J[eta]`, then of `T[eta]`, is set.
pub fn append_diffusion(c: &mut Circuit, ks: &Keystream, coords: &[usize], values: &[usize]) {
    assert_eq!(ks.len(), 1 << coords.len());
    assert_eq!(values.len(), VALUE_BITS);
    for stage in [ks.j(), ks.t()] {
        for (eta, &k) in stage.iter().enumerate() {
            for (i, &v) in values.iter().enumerate() {
                if k >> i & 1 == 1 {
                    c.push(Gate::controlled_x(controls_for(coords, eta), v));
                }
            }
        }
    }
}

/// Both stages merged (`J ^ T`) and each bit-plane minimized.
pub fn append_minimized_diffusion(c: &mut Circuit, ks: &Keystream, coords: &[usize], values: &[usize]) {
    assert_eq!(ks.len(), 1 << coords.len());
    for (i, cover) in bit_plane_covers(&ks.combined(), coords.len()).iter().enumerate() {
        append_cover(c, cover, coords, values[i]);
    }
}

/// Naive diffusion stages acting on an NEQR register of order `n`.
pub fn build_diffusion_circuit(ks: &Keystream, n: u32) -> Circuit {
    let layout = NeqrLayout::new(n);
    let mut c = Circuit::new(layout.width());
    append_diffusion(&mut c, ks, &layout.coord_qubits(), &layout.value_qubits());
    c
}

/// NEQR preparation of `image` under the chosen compression.
pub fn build_encoder(image: &GrayImage, compression: Compression) -> Circuit {
    match compression {
        Compression::Naive => build_naive_neqr_circuit(image),
        Compression::Minimized => synthesize_minimized_encoder(image),
        Compression::Factored => factor_shared_controls(&synthesize_minimized_encoder(image)),
    }
}

/// A circuit whose output image is read from `values` at coordinates
/// `coords` (NEQR bit order).
#[derive(Clone, Debug)]
pub struct CipherCircuit {
    pub circuit: Circuit,
    pub coords: Vec<usize>,
    pub values: Vec<usize>,
    pub order: u32,
}

impl CipherCircuit {
    /// Image carried by a simulated output state. Every coordinate must
    /// appear with a single value.
    pub fn read_image(&self, state: &StateVector) -> Result<GrayImage> {
        let side = 1usize << self.order;
        let mut px: Vec<Option<u8>> = vec![None; side * side];
        for k in state.support() {
            if state.amplitude(k).norm_sqr() < 1e-12 {
                continue;
            }
            let eta = self.coords.iter().enumerate().fold(0, |a, (j, &q)| a | (k >> q & 1) << j);
            let v = self.values.iter().enumerate().fold(0u8, |a, (i, &q)| a | ((k >> q & 1) as u8) << i);
            match px[eta] {
                Some(old) if old != v => {
                    return Err(Error::Simulation(format!(
                        "coordinate {eta} carries both {old} and {v}"
                    )))
                }
                _ => px[eta] = Some(v),
            }
        }
        let pixels = px
            .into_iter()
            .enumerate()
            .map(|(eta, p)| p.ok_or_else(|| Error::Simulation(format!("coordinate {eta} absent"))))
            .collect::<Result<Vec<u8>>>()?;
        GrayImage::new(self.order, pixels)
    }
}

fn append_stage_diffusion(c: &mut Circuit, ks: &Keystream, coords: &[usize], values: &[usize], compression: Compression) {
    match compression {
        Compression::Naive => append_diffusion(c, ks, coords, values),
        _ => append_minimized_diffusion(c, ks, coords, values),
    }
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

/// Prepare `image`, diffuse its values, then write the scrambled
/// coordinates into a fresh register. The ciphertext is read from the
/// value register at the scrambled coordinates.
pub fn build_encryption_circuit(image: &GrayImage, key: &EncryptionKey, compression: Compression) -> Result<CipherCircuit> {
    check_order(image, key)?;
    let neqr = NeqrLayout::new(image.order());
    let n = image.order() as usize;
    let mut c = match compression {
        Compression::Naive => build_naive_neqr_circuit(image),
        _ => synthesize_minimized_encoder(image),
    };
    let layout = GatLayout::with_outputs(0, n, c.width());
    c.set_width(layout.width());
    if let Some(q) = layout.carry {
        c.mark_ancilla(q);
    }
    let ks = logistic_keystream(key);
    append_stage_diffusion(&mut c, &ks, &neqr.coord_qubits(), &neqr.value_qubits(), compression);
    append_gat(&mut c, key, &layout);
    if compression == Compression::Factored {
        c = factor_shared_controls(&c);
    }
    Ok(CipherCircuit {
        circuit: c,
        coords: layout.output_coords(),
        values: neqr.value_qubits(),
        order: image.order(),
    })
}

/// Prepare the ciphertext, recover the original coordinates through the
/// inverse scramble, then undo the diffusion controlled on them.
pub fn build_decryption_circuit(cipher: &GrayImage, key: &EncryptionKey, compression: Compression) -> Result<CipherCircuit> {
    check_order(cipher, key)?;
    let neqr = NeqrLayout::new(cipher.order());
    let n = cipher.order() as usize;
    let mut c = match compression {
        Compression::Naive => build_naive_neqr_circuit(cipher),
        _ => synthesize_minimized_encoder(cipher),
    };
    let layout = InverseGatLayout::new(n, 0, c.width());
    c.set_width(layout.width());
    for q in layout.ancillas() {
        c.mark_ancilla(q);
    }
    append_gat_inverse(&mut c, key, &layout)?;
    let ks = logistic_keystream(key);
    let coords = layout.output_coords();
    append_stage_diffusion(&mut c, &ks, &coords, &neqr.value_qubits(), compression);
    if compression == Compression::Factored {
        c = factor_shared_controls(&c);
    }
    Ok(CipherCircuit {
        circuit: c,
        coords,
        values: neqr.value_qubits(),
        order: cipher.order(),
    })
}
