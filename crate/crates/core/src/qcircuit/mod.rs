//! Gate-level circuit representation.
//!
//! Controlled-X gates carry per-control polarity so that minimized covers
//! (where a `0` literal means "control on |0>") stay faithful until the
//! circuit is lowered to a hardware basis by [`transpile_to_basis`].

mod decompose;
mod metrics;
mod netlist;
mod transpile;

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

pub use decompose::{decompose_mcx, decompose_multi_controls, lower_negative_controls};
pub use metrics::{circuit_depth, quantum_cost, GateCounts};
pub use netlist::{dump_netlist, load_netlist};
pub use transpile::{peephole, transpile_to_basis};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Polarity {
    /// Fires when the control qubit is |1>.
    Positive,
    /// Fires when the control qubit is |0>.
    Negative,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Control {
    pub qubit: usize,
    pub polarity: Polarity,
}

impl Control {
    pub fn pos(qubit: usize) -> Self {
        Self {
            qubit,
            polarity: Polarity::Positive,
        }
    }

    pub fn neg(qubit: usize) -> Self {
        Self {
            qubit,
            polarity: Polarity::Negative,
        }
    }

    /// Control that fires when `qubit` holds `bit`.
    pub fn on(qubit: usize, bit: bool) -> Self {
        if bit {
            Self::pos(qubit)
        } else {
            Self::neg(qubit)
        }
    }

    pub fn is_satisfied(&self, basis: usize) -> bool {
        let set = (basis >> self.qubit) & 1 == 1;
        match self.polarity {
            Polarity::Positive => set,
            Polarity::Negative => !set,
        }
    }
}

impl fmt::Display for Control {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = match self.polarity {
            Polarity::Positive => '+',
            Polarity::Negative => '-',
        };
        write!(f, "{}{}", self.qubit, sign)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Gate {
    H(usize),
    X(usize),
    Sx(usize),
    Rz(usize, f64),
    Cx { control: Control, target: usize },
    /// X on `target` with two or more controls. Two controls is a Toffoli.
    Mcx { controls: Vec<Control>, target: usize },
}

impl Gate {
    /// Controlled-X with the narrowest representation for the control count.
    pub fn controlled_x(mut controls: Vec<Control>, target: usize) -> Gate {
        controls.sort();
        match controls.len() {
            0 => Gate::X(target),
            1 => Gate::Cx {
                control: controls[0],
                target,
            },
            _ => Gate::Mcx { controls, target },
        }
    }

    pub fn cx(control: usize, target: usize) -> Gate {
        Gate::Cx {
            control: Control::pos(control),
            target,
        }
    }

    pub fn ccx(c0: usize, c1: usize, target: usize) -> Gate {
        Gate::Mcx {
            controls: vec![Control::pos(c0), Control::pos(c1)],
            target,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Gate::H(_) => "H",
            Gate::X(_) => "X",
            Gate::Sx(_) => "SX",
            Gate::Rz(..) => "RZ",
            Gate::Cx { .. } => "CX",
            Gate::Mcx { .. } => "MCX",
        }
    }

    pub fn target(&self) -> usize {
        match self {
            Gate::H(q) | Gate::X(q) | Gate::Sx(q) | Gate::Rz(q, _) => *q,
            Gate::Cx { target, .. } | Gate::Mcx { target, .. } => *target,
        }
    }

    pub fn controls(&self) -> &[Control] {
        match self {
            Gate::Cx { control, .. } => std::slice::from_ref(control),
            Gate::Mcx { controls, .. } => controls,
            _ => &[],
        }
    }

    /// Target first, then controls.
    pub fn qubits(&self) -> Vec<usize> {
        let mut qs = vec![self.target()];
        qs.extend(self.controls().iter().map(|c| c.qubit));
        qs
    }

    /// True for X, CX and MCX: gates that permute basis states.
    pub fn is_x_family(&self) -> bool {
        matches!(self, Gate::X(_) | Gate::Cx { .. } | Gate::Mcx { .. })
    }

    pub fn control_count(&self) -> usize {
        self.controls().len()
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.name(), self.target())?;
        for c in self.controls() {
            write!(f, " {c}")?;
        }
        if let Gate::Rz(_, angle) = self {
            write!(f, " {angle:?}")?;
        }
        Ok(())
    }
}

/// Ordered gate list over `width` qubits.
///
/// `global_phase` accumulates the phase dropped by basis templates, so a
/// transpiled circuit simulates to exactly the same state as its source.
#[derive(Clone, Debug, PartialEq)]
pub struct Circuit {
    width: usize,
    gates: Vec<Gate>,
    ancillas: BTreeSet<usize>,
    global_phase: f64,
}

impl Circuit {
    pub fn new(width: usize) -> Self {
        Self {
            width,
            gates: Vec::new(),
            ancillas: BTreeSet::new(),
            global_phase: 0.0,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn ancillas(&self) -> &BTreeSet<usize> {
        &self.ancillas
    }

    /// Qubits that are not ancillas, in index order.
    pub fn data_width(&self) -> usize {
        self.width - self.ancillas.len()
    }

    pub fn global_phase(&self) -> f64 {
        self.global_phase
    }

    pub fn add_global_phase(&mut self, phase: f64) {
        self.global_phase += phase;
    }

    /// Appends a fresh qubit expected to start and end in |0>.
    pub fn add_ancilla(&mut self) -> usize {
        let q = self.width;
        self.width += 1;
        self.ancillas.insert(q);
        q
    }

    pub(crate) fn mark_ancilla(&mut self, qubit: usize) {
        assert!(qubit < self.width);
        self.ancillas.insert(qubit);
    }

    /// Appends a gate. Panics on out-of-range or overlapping qubit indices;
    /// use [`Circuit::try_push`] for untrusted input.
    pub fn push(&mut self, gate: Gate) {
        if let Err(e) = self.check(&gate) {
            panic!("{e}");
        }
        self.gates.push(gate);
    }

    pub fn try_push(&mut self, gate: Gate) -> Result<()> {
        self.check(&gate)?;
        self.gates.push(gate);
        Ok(())
    }

    pub fn extend<I: IntoIterator<Item = Gate>>(&mut self, gates: I) {
        for g in gates {
            self.push(g);
        }
    }

    /// Appends another circuit acting on the same qubit indices.
    pub fn append(&mut self, other: &Circuit) {
        assert!(other.width <= self.width, "appended circuit is wider");
        self.extend(other.gates.iter().cloned());
        self.global_phase += other.global_phase;
    }

    /// Same register and phase, different gates.
    pub(crate) fn with_gates(&self, gates: Vec<Gate>) -> Circuit {
        Circuit {
            width: self.width,
            gates,
            ancillas: self.ancillas.clone(),
            global_phase: self.global_phase,
        }
    }

    pub(crate) fn set_width(&mut self, width: usize) {
        assert!(width >= self.width);
        self.width = width;
    }

    fn check(&self, gate: &Gate) -> Result<()> {
        let qs = gate.qubits();
        if let Some(q) = qs.iter().find(|&&q| q >= self.width) {
            return Err(Error::Circuit(format!(
                "{gate}: qubit {q} out of range for width {}",
                self.width
            )));
        }
        let mut seen = BTreeSet::new();
        if !qs.iter().all(|q| seen.insert(*q)) {
            return Err(Error::Circuit(format!("{gate}: repeated qubit")));
        }
        if let Gate::Rz(_, a) = gate {
            if !a.is_finite() {
                return Err(Error::Circuit(format!("{gate}: non-finite angle")));
            }
        }
        Ok(())
    }

    /// Counts by control arity, ignoring uncontrolled gates.
    pub fn controlled_gate_count(&self) -> usize {
        self.gates.iter().filter(|g| g.control_count() > 0).count()
    }

    /// Gates with two or more controls (Toffoli and wider).
    pub fn multi_controlled_count(&self) -> usize {
        self.gates.iter().filter(|g| g.control_count() >= 2).count()
    }

    /// Classical action on a computational-basis index. Only valid for
    /// circuits made of X-family gates.
    pub fn apply_classical(&self, mut basis: usize) -> Option<usize> {
        for g in &self.gates {
            if !g.is_x_family() {
                return None;
            }
            if g.controls().iter().all(|c| c.is_satisfied(basis)) {
                basis ^= 1 << g.target();
            }
        }
        Some(basis)
    }
}
