use rayon::prelude::*;

use super::{minimize_cover, Cover};
use crate::qcircuit::{Circuit, Control, Gate};
use crate::qimage::{GrayImage, NeqrLayout, VALUE_BITS};

/// ON-set of bit `bit` across a per-coordinate byte table.
pub fn bit_plane(values: &[u8], bit: usize) -> Vec<u32> {
    values
        .iter()
        .enumerate()
        .filter(|(_, &v)| v >> bit & 1 == 1)
        .map(|(eta, _)| eta as u32)
        .collect()
}

/// Minimized cover for each of the eight bit-planes of `values`
/// (indexed by linear coordinate).
pub fn bit_plane_covers(values: &[u8], coord_vars: usize) -> Vec<Cover> {
    (0..VALUE_BITS)
        .into_par_iter()
        .map(|i| minimize_cover(&bit_plane(values, i), coord_vars).expect("coordinates in range"))
        .collect()
}

/// One controlled-X per cube on `target`: dashes drop out of the control
/// list and 0-literals become negative controls.
pub fn append_cover(circuit: &mut Circuit, cover: &Cover, coord_qubits: &[usize], target: usize) {
    assert_eq!(coord_qubits.len(), cover.vars);
    for cube in &cover.cubes {
        let controls = (0..cover.vars)
            .filter_map(|j| cube.literal(j).map(|b| Control::on(coord_qubits[j], b)))
            .collect();
        circuit.push(Gate::controlled_x(controls, target));
    }
}

/// NEQR encoder with each value bit-plane realized by its minimized
/// disjoint cover.
pub fn synthesize_minimized_encoder(image: &GrayImage) -> Circuit {
    let layout = NeqrLayout::new(image.order());
    let mut c = Circuit::new(layout.width());
    let coords = layout.coord_qubits();
    for &q in &coords {
        c.push(Gate::H(q));
    }
    for (i, cover) in bit_plane_covers(image.pixels(), coords.len()).iter().enumerate() {
        append_cover(&mut c, cover, &coords, layout.value_qubit(i));
    }
    c
}
