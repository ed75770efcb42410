use std::collections::{BTreeMap, BTreeSet};

use crate::qcircuit::{Circuit, Control, Gate};

/// When a shared control pattern is worth computing into an ancilla.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FactorPolicy {
    /// Minimum number of gates sharing the pattern.
    pub min_group: usize,
    /// Minimum number of controls in the pattern.
    pub min_controls: usize,
}

impl Default for FactorPolicy {
    fn default() -> Self {
        Self {
            min_group: 3,
            min_controls: 2,
        }
    }
}

/// Rewrites groups of controlled-X gates with an identical control pattern
/// as compute-into-ancilla, CX fan-out, uncompute.
///
/// Grouping only happens inside runs of mutually commuting controlled-X
/// gates (no gate in the run targets a qubit another gate in the run uses
/// as a control), so reordering within a run is exact. A single ancilla is
/// appended on first use and shared by every group.
pub fn factor_shared_controls(circuit: &Circuit) -> Circuit {
    factor_with_policy(circuit, FactorPolicy::default())
}

pub fn factor_with_policy(circuit: &Circuit, policy: FactorPolicy) -> Circuit {
    let mut out = circuit.with_gates(Vec::new());
    let mut ancilla: Option<usize> = None;
    let gates = circuit.gates();
    let mut i = 0;
    while i < gates.len() {
        let end = commuting_run_end(gates, i);
        if end == i {
            out.push(gates[i].clone());
            i += 1;
            continue;
        }
        emit_run(&mut out, &gates[i..end], policy, &mut ancilla);
        i = end;
    }
    out
}

/// Exclusive end of the commuting controlled-X run starting at `start`,
/// or `start` if `gates[start]` does not begin one.
fn commuting_run_end(gates: &[Gate], start: usize) -> usize {
    let mut controls = BTreeSet::new();
    let mut targets = BTreeSet::new();
    let mut end = start;
    for g in &gates[start..] {
        if !g.is_x_family() {
            break;
        }
        let t = g.target();
        if controls.contains(&t) || g.controls().iter().any(|c| targets.contains(&c.qubit)) {
            break;
        }
        targets.insert(t);
        controls.extend(g.controls().iter().map(|c| c.qubit));
        end += 1;
    }
    end
}

fn emit_run(out: &mut Circuit, run: &[Gate], policy: FactorPolicy, ancilla: &mut Option<usize>) {
    let mut groups: BTreeMap<Vec<Control>, Vec<usize>> = BTreeMap::new();
    for (k, g) in run.iter().enumerate() {
        let mut key = g.controls().to_vec();
        key.sort();
        groups.entry(key).or_default().push(k);
    }
    let qualifies = |pattern: &Vec<Control>, members: &Vec<usize>| {
        pattern.len() >= policy.min_controls && members.len() >= policy.min_group
    };
    let mut emitted = vec![false; run.len()];
    for (k, g) in run.iter().enumerate() {
        if emitted[k] {
            continue;
        }
        let mut key = g.controls().to_vec();
        key.sort();
        let members = &groups[&key];
        if !qualifies(&key, members) {
            out.push(g.clone());
            emitted[k] = true;
            continue;
        }
        let a = *ancilla.get_or_insert_with(|| out.add_ancilla());
        let compute = Gate::controlled_x(key.clone(), a);
        out.push(compute.clone());
        for &m in members {
            out.push(Gate::cx(a, run[m].target()));
            emitted[m] = true;
        }
        out.push(compute);
    }
}
