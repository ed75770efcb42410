use super::{Circuit, Control, Gate, Polarity};
use crate::error::{Error, Result};

/// Expands a controlled-X with `c` controls into X, CX and positive-control
/// Toffolis.
///
/// Negative controls are conjugated with X. For `c >= 3` a clean ancilla
/// chain is used: `c - 1` Toffolis compute the conjunction into
/// `ancillas[..c-1]`, one CX copies it onto the target, and the chain is
/// uncomputed, for `2(c - 1)` Toffolis in total. `c = 2` is returned as a
/// single Toffoli and `c = 1` as a single CX.
pub fn decompose_mcx(gate: &Gate, ancillas: &[usize]) -> Result<Vec<Gate>> {
    let controls = match gate {
        Gate::Cx { control, .. } => vec![*control],
        Gate::Mcx { controls, .. } => controls.clone(),
        Gate::X(_) => {
            return Err(Error::Circuit(
                "decompose_mcx needs at least one control; use a plain X".into(),
            ))
        }
        other => {
            return Err(Error::Circuit(format!(
                "decompose_mcx expects a controlled-X, got {other}"
            )))
        }
    };
    let target = gate.target();
    let c = controls.len();
    if c >= 3 && ancillas.len() < c - 1 {
        return Err(Error::Circuit(format!(
            "{c}-control gate needs {} clean ancillas, {} given",
            c - 1,
            ancillas.len()
        )));
    }

    let flips: Vec<Gate> = controls
        .iter()
        .filter(|ctl| ctl.polarity == Polarity::Negative)
        .map(|ctl| Gate::X(ctl.qubit))
        .collect();
    let qs: Vec<usize> = controls.iter().map(|ctl| ctl.qubit).collect();

    let mut out = flips.clone();
    match c {
        1 => out.push(Gate::cx(qs[0], target)),
        2 => out.push(Gate::ccx(qs[0], qs[1], target)),
        _ => {
            let mut chain = Vec::with_capacity(c - 1);
            chain.push(Gate::ccx(qs[0], qs[1], ancillas[0]));
            for i in 1..c - 1 {
                chain.push(Gate::ccx(ancillas[i - 1], qs[i + 1], ancillas[i]));
            }
            out.extend(chain.iter().cloned());
            out.push(Gate::cx(ancillas[c - 2], target));
            out.extend(chain.into_iter().rev());
        }
    }
    out.extend(flips);
    Ok(out)
}

/// Replaces every gate with three or more controls by its ancilla-chain
/// expansion. A single pool of `max(c) - 1` ancillas is appended to the
/// register and shared by all expansions.
pub fn decompose_multi_controls(circuit: &Circuit) -> Circuit {
    let widest = circuit
        .gates()
        .iter()
        .map(Gate::control_count)
        .max()
        .unwrap_or(0);
    let mut out = circuit.with_gates(Vec::new());
    if widest < 3 {
        out.extend(circuit.gates().iter().cloned());
        return out;
    }
    let pool: Vec<usize> = (0..widest - 1).map(|_| out.add_ancilla()).collect();
    for g in circuit.gates() {
        if g.control_count() >= 3 {
            let expanded = decompose_mcx(g, &pool).expect("pool sized for widest gate");
            out.extend(expanded);
        } else {
            out.push(g.clone());
        }
    }
    out
}

/// Rewrites negative controls as X-conjugated positive controls.
pub fn lower_negative_controls(circuit: &Circuit) -> Circuit {
    let mut gates = Vec::with_capacity(circuit.len());
    for g in circuit.gates() {
        let negs: Vec<usize> = g
            .controls()
            .iter()
            .filter(|c| c.polarity == Polarity::Negative)
            .map(|c| c.qubit)
            .collect();
        if negs.is_empty() {
            gates.push(g.clone());
            continue;
        }
        gates.extend(negs.iter().map(|&q| Gate::X(q)));
        let positive = g.controls().iter().map(|c| Control::pos(c.qubit)).collect();
        gates.push(Gate::controlled_x(positive, g.target()));
        gates.extend(negs.iter().map(|&q| Gate::X(q)));
    }
    circuit.with_gates(gates)
}
