use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_8, PI};

use super::{decompose_multi_controls, lower_negative_controls, Circuit, Gate};

/// Lowers a circuit over {H, X, CX, MCX} to the basis {X, SX, RZ, CX}.
///
/// Wide gates go through the clean-ancilla chain, negative controls are
/// X-conjugated, every Toffoli is replaced by the 6-CX template and every H
/// by `RZ(pi/2) SX RZ(pi/2)`. Global phase is tracked on the circuit. A
/// final [`peephole`] pass cancels adjacent inverse pairs.
pub fn transpile_to_basis(circuit: &Circuit) -> Circuit {
    let lowered = lower_negative_controls(&decompose_multi_controls(circuit));
    let mut out = lowered.with_gates(Vec::new());
    for g in lowered.gates() {
        match g {
            Gate::H(q) => push_h(&mut out, *q),
            Gate::Mcx { controls, target } => {
                debug_assert_eq!(controls.len(), 2);
                push_toffoli(&mut out, controls[0].qubit, controls[1].qubit, *target);
            }
            other => out.push(other.clone()),
        }
    }
    peephole(&out)
}

// H = e^{i pi/4} RZ(pi/2) SX RZ(pi/2)
fn push_h(c: &mut Circuit, q: usize) {
    c.push(Gate::Rz(q, FRAC_PI_2));
    c.push(Gate::Sx(q));
    c.push(Gate::Rz(q, FRAC_PI_2));
    c.add_global_phase(FRAC_PI_4);
}

// T = e^{i pi/8} RZ(pi/4)
fn push_t(c: &mut Circuit, q: usize, dagger: bool) {
    let sign = if dagger { -1.0 } else { 1.0 };
    c.push(Gate::Rz(q, sign * FRAC_PI_4));
    c.add_global_phase(sign * FRAC_PI_8);
}

fn push_toffoli(c: &mut Circuit, a: usize, b: usize, t: usize) {
    push_h(c, t);
    c.push(Gate::cx(b, t));
    push_t(c, t, true);
    c.push(Gate::cx(a, t));
    push_t(c, t, false);
    c.push(Gate::cx(b, t));
    push_t(c, t, true);
    c.push(Gate::cx(a, t));
    push_t(c, b, false);
    push_t(c, t, false);
    push_h(c, t);
    c.push(Gate::cx(a, b));
    push_t(c, a, false);
    push_t(c, b, true);
    c.push(Gate::cx(a, b));
}

/// Cancels adjacent self-inverse pairs (X·X, identical CX·CX) and merges
/// adjacent RZ rotations on the same qubit. Adjacent means no other gate
/// touches any of the involved qubits in between.
pub fn peephole(circuit: &Circuit) -> Circuit {
    let mut slots: Vec<Option<Gate>> = Vec::with_capacity(circuit.len());
    // per-qubit stack of live slot indices
    let mut last: Vec<Vec<usize>> = vec![Vec::new(); circuit.width()];
    let mut phase = circuit.global_phase();

    for g in circuit.gates() {
        let qs = g.qubits();
        let prev = last[qs[0]].last().copied();
        let shared = prev.filter(|&p| qs.iter().all(|&q| last[q].last() == Some(&p)));
        if let Some(p) = shared {
            let prev_gate = slots[p].as_ref().expect("live slot");
            let same_support = prev_gate.qubits().len() == qs.len();
            match (prev_gate, g) {
                (Gate::X(_), Gate::X(_)) => {
                    remove(&mut slots, &mut last, p);
                    continue;
                }
                (a @ Gate::Cx { .. }, b @ Gate::Cx { .. }) if a == b => {
                    remove(&mut slots, &mut last, p);
                    continue;
                }
                (Gate::Rz(q, a), Gate::Rz(_, b)) if same_support => {
                    let (q, mut angle) = (*q, a + b);
                    // RZ has period 4pi; RZ(theta + 2pi) = -RZ(theta)
                    angle %= 4.0 * PI;
                    if angle.abs() < 1e-12 {
                        remove(&mut slots, &mut last, p);
                    } else if (angle.abs() - 2.0 * PI).abs() < 1e-12 {
                        phase += PI;
                        remove(&mut slots, &mut last, p);
                    } else {
                        slots[p] = Some(Gate::Rz(q, angle));
                    }
                    continue;
                }
                _ => {}
            }
        }
        let idx = slots.len();
        slots.push(Some(g.clone()));
        for q in qs {
            last[q].push(idx);
        }
    }

    let mut out = circuit.with_gates(slots.into_iter().flatten().collect());
    out.add_global_phase(phase - circuit.global_phase());
    out
}

fn remove(slots: &mut [Option<Gate>], last: &mut [Vec<usize>], idx: usize) {
    let g = slots[idx].take().expect("live slot");
    for q in g.qubits() {
        let popped = last[q].pop();
        debug_assert_eq!(popped, Some(idx));
    }
}
