//! Line-oriented text netlist.
//!
//! ```text
//! qubits 11
//! ancilla 10
//! phase 0.7853981633974483
//! H 0
//! CX 9 0-
//! MCX 4 0+ 1-
//! RZ 3 -0.7853981633974483
//! ```
//!
//! One gate per line: `NAME target [control(+|-) ...] [angle]`. Header lines
//! (`qubits`, `ancilla`, `phase`) precede the gates. `#` starts a comment.

use std::fmt::Write as _;

use super::{Circuit, Control, Gate};
use crate::error::{Error, Result};

pub fn dump_netlist(circuit: &Circuit) -> String {
    let mut s = String::new();
    writeln!(s, "qubits {}", circuit.width()).unwrap();
    for a in circuit.ancillas() {
        writeln!(s, "ancilla {a}").unwrap();
    }
    if circuit.global_phase() != 0.0 {
        writeln!(s, "phase {:?}", circuit.global_phase()).unwrap();
    }
    for g in circuit.gates() {
        writeln!(s, "{g}").unwrap();
    }
    s
}

pub fn load_netlist(text: &str) -> Result<Circuit> {
    let mut circuit: Option<Circuit> = None;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let err = |msg: String| Error::Netlist { line: line_no, msg };
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let head = parts.next().unwrap();
        let rest: Vec<&str> = parts.collect();

        if head == "qubits" {
            if circuit.is_some() {
                return Err(err("duplicate qubits header".into()));
            }
            let w = single_usize(&rest).map_err(err)?;
            circuit = Some(Circuit::new(w));
            continue;
        }
        let c = circuit
            .as_mut()
            .ok_or_else(|| err("missing `qubits` header".into()))?;
        match head {
            "ancilla" => {
                let q = single_usize(&rest).map_err(err)?;
                if q >= c.width() {
                    return Err(err(format!("ancilla {q} out of range")));
                }
                c.mark_ancilla(q);
            }
            "phase" => {
                let p: f64 = rest
                    .first()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| err("bad phase".into()))?;
                c.add_global_phase(p);
            }
            _ => {
                let gate = parse_gate(head, &rest).map_err(err)?;
                c.try_push(gate).map_err(|e| err(e.to_string()))?;
            }
        }
    }
    circuit.ok_or(Error::Netlist {
        line: 0,
        msg: "empty netlist".into(),
    })
}

fn single_usize(rest: &[&str]) -> std::result::Result<usize, String> {
    match rest {
        [v] => v.parse().map_err(|_| format!("expected integer, got {v:?}")),
        _ => Err("expected exactly one integer".into()),
    }
}

fn parse_control(tok: &str) -> std::result::Result<Control, String> {
    let (num, sign) = tok.split_at(tok.len().saturating_sub(1));
    let q: usize = num
        .parse()
        .map_err(|_| format!("bad control {tok:?}"))?;
    match sign {
        "+" => Ok(Control::pos(q)),
        "-" => Ok(Control::neg(q)),
        _ => Err(format!("control {tok:?} lacks +/- polarity")),
    }
}

fn parse_gate(name: &str, args: &[&str]) -> std::result::Result<Gate, String> {
    let target: usize = args
        .first()
        .ok_or("missing target")?
        .parse()
        .map_err(|_| format!("bad target {:?}", args[0]))?;
    let rest = &args[1..];
    let no_extra = |g: Gate| {
        if rest.is_empty() {
            Ok(g)
        } else {
            Err(format!("{name} takes only a target"))
        }
    };
    match name {
        "H" => no_extra(Gate::H(target)),
        "X" => no_extra(Gate::X(target)),
        "SX" => no_extra(Gate::Sx(target)),
        "RZ" => match rest {
            [a] => a
                .parse()
                .map(|a| Gate::Rz(target, a))
                .map_err(|_| format!("bad angle {a:?}")),
            _ => Err("RZ needs exactly one angle".into()),
        },
        "CX" => match rest {
            [c] => Ok(Gate::Cx {
                control: parse_control(c)?,
                target,
            }),
            _ => Err("CX needs exactly one control".into()),
        },
        "MCX" => {
            if rest.len() < 2 {
                return Err("MCX needs at least two controls".into());
            }
            let controls = rest
                .iter()
                .map(|t| parse_control(t))
                .collect::<std::result::Result<Vec<_>, _>>()?;
            Ok(Gate::Mcx { controls, target })
        }
        other => Err(format!("unknown gate {other:?}")),
    }
}
