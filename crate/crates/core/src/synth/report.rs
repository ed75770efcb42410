use std::fmt::Write;

use rayon::prelude::*;
use serde::Serialize;

use crate::cipher::{build_decryption_circuit, build_encoder, build_encryption_circuit, encrypt, Compression, EncryptionKey};
use crate::error::Result;
use crate::qcircuit::{circuit_depth, quantum_cost, transpile_to_basis, Circuit};
use crate::qimage::GrayImage;

/// Cost figures for one circuit variant.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SynthRow {
    pub circuit: &'static str,
    pub variant: &'static str,
    pub width: usize,
    pub gates: usize,
    /// Gates with at least one control.
    pub controlled: usize,
    /// Gates with two or more controls.
    pub multi_controlled: usize,
    /// Gate count after lowering to {H, X, SX, RZ, CX} and peephole cleanup.
    pub basis_cost: usize,
    pub basis_depth: usize,
    /// `basis_cost` relative to the naive variant of the same circuit.
    pub cost_ratio: f64,
    pub depth_ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SynthReport {
    pub rows: Vec<SynthRow>,
}

fn measure(circuit: &'static str, variant: Compression, c: &Circuit) -> SynthRow {
    let basis = transpile_to_basis(c);
    SynthRow {
        circuit,
        variant: variant.name(),
        width: c.width(),
        gates: c.len(),
        controlled: c.controlled_gate_count(),
        multi_controlled: c.multi_controlled_count(),
        basis_cost: quantum_cost(&basis),
        basis_depth: circuit_depth(&basis),
        cost_ratio: 1.0,
        depth_ratio: 1.0,
    }
}

impl SynthReport {
    /// Naive, minimized and factored variants of the encoder and, when a
    /// key is given, of the encryption and decryption circuits.
    pub fn build(image: &GrayImage, key: Option<&EncryptionKey>) -> Result<Self> {
        let cipher = key.map(|k| encrypt(image, k)).transpose()?;
        let mut jobs: Vec<(&'static str, Compression)> = Vec::new();
        for comp in Compression::ALL {
            jobs.push(("neqr", comp));
        }
        if key.is_some() {
            for name in ["encryption", "decryption"] {
                for comp in Compression::ALL {
                    jobs.push((name, comp));
                }
            }
        }
        let mut rows = jobs
            .into_par_iter()
            .map(|(name, comp)| {
                let c = match name {
                    "neqr" => build_encoder(image, comp),
                    "encryption" => build_encryption_circuit(image, key.expect("keyed"), comp)?.circuit,
                    _ => build_decryption_circuit(cipher.as_ref().expect("keyed"), key.expect("keyed"), comp)?.circuit,
                };
                Ok(measure(name, comp, &c))
            })
            .collect::<Result<Vec<_>>>()?;
        for chunk in rows.chunks_mut(Compression::ALL.len()) {
            let (cost, depth) = (chunk[0].basis_cost as f64, chunk[0].basis_depth as f64);
            for r in chunk.iter_mut() {
                r.cost_ratio = if cost > 0.0 { r.basis_cost as f64 / cost } else { 1.0 };
                r.depth_ratio = if depth > 0.0 { r.basis_depth as f64 / depth } else { 1.0 };
            }
        }
        Ok(Self { rows })
    }

    pub fn row(&self, circuit: &str, variant: Compression) -> Option<&SynthRow> {
        self.rows.iter().find(|r| r.circuit == circuit && r.variant == variant.name())
    }

    pub const CSV_HEADER: &'static str =
        "circuit,variant,width,gates,controlled,multi_controlled,basis_cost,basis_depth,cost_ratio,depth_ratio";

    pub fn to_csv(&self) -> String {
        let mut s = format!("{}\n", Self::CSV_HEADER);
        for r in &self.rows {
            writeln!(
                s,
                "{},{},{},{},{},{},{},{},{:.4},{:.4}",
                r.circuit,
                r.variant,
                r.width,
                r.gates,
                r.controlled,
                r.multi_controlled,
                r.basis_cost,
                r.basis_depth,
                r.cost_ratio,
                r.depth_ratio
            )
            .unwrap();
        }
        s
    }

    pub fn to_table(&self) -> String {
        let mut s = format!(
            "{:<11} {:<10} {:>5} {:>6} {:>6} {:>6} {:>7} {:>6} {:>6} {:>6}\n",
            "circuit", "variant", "width", "gates", "ctrl", "ctrl2+", "cost", "depth", "cost%", "depth%"
        );
        for r in &self.rows {
            writeln!(
                s,
                "{:<11} {:<10} {:>5} {:>6} {:>6} {:>6} {:>7} {:>6} {:>6.1} {:>6.1}",
                r.circuit,
                r.variant,
                r.width,
                r.gates,
                r.controlled,
                r.multi_controlled,
                r.basis_cost,
                r.basis_depth,
                100.0 * r.cost_ratio,
                100.0 * r.depth_ratio
            )
            .unwrap();
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn test_image_report() {
        let img = GrayImage::new(1, vec![255, 0, 200, 100]).unwrap();
        let r = SynthReport::build(&img, Some(&EncryptionKey::reference())).unwrap();
        assert_eq!(r.rows.len(), 9);
        let naive = r.row("neqr", Compression::Naive).unwrap();
        let min = r.row("neqr", Compression::Minimized).unwrap();
        let fac = r.row("neqr", Compression::Factored).unwrap();
        assert_eq!(naive.controlled, 14);
        assert!(min.controlled < naive.controlled);
        assert!(fac.multi_controlled < min.multi_controlled);
        assert!(fac.cost_ratio <= 0.6, "{}", r.to_table());
        assert_eq!(r.to_csv().lines().count(), 10);
    }

    #[test]
    fn unkeyed_report_has_encoder_rows_only() {
        let img = GrayImage::zeros(1).unwrap();
        let r = SynthReport::build(&img, None).unwrap();
        assert_eq!(r.rows.len(), 3);
    }
}
