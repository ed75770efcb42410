use serde::Serialize;

use super::{Circuit, Gate};

/// Number of gates in the list. Identity gates are never materialized, so
/// this is the elementary-gate count once the circuit is in basis form.
pub fn quantum_cost(circuit: &Circuit) -> usize {
    circuit.len()
}

/// Number of time steps under as-soon-as-possible layering: a gate starts
/// one step after the latest gate on any of its qubits.
pub fn circuit_depth(circuit: &Circuit) -> usize {
    let mut level = vec![0usize; circuit.width()];
    let mut depth = 0;
    for g in circuit.gates() {
        let qs = g.qubits();
        let step = qs.iter().map(|&q| level[q]).max().unwrap_or(0) + 1;
        for q in qs {
            level[q] = step;
        }
        depth = depth.max(step);
    }
    depth
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GateCounts {
    pub h: usize,
    pub x: usize,
    pub sx: usize,
    pub rz: usize,
    pub cx: usize,
    pub toffoli: usize,
    /// Three or more controls.
    pub mcx: usize,
}

impl GateCounts {
    pub fn of(circuit: &Circuit) -> Self {
        let mut c = Self::default();
        for g in circuit.gates() {
            match g {
                Gate::H(_) => c.h += 1,
                Gate::X(_) => c.x += 1,
                Gate::Sx(_) => c.sx += 1,
                Gate::Rz(..) => c.rz += 1,
                Gate::Cx { .. } => c.cx += 1,
                Gate::Mcx { controls, .. } if controls.len() == 2 => c.toffoli += 1,
                Gate::Mcx { .. } => c.mcx += 1,
            }
        }
        c
    }

    pub fn total(&self) -> usize {
        self.h + self.x + self.sx + self.rz + self.cx + self.toffoli + self.mcx
    }
}
