use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use super::{run_statevector, StateVector};
use crate::error::{Error, Result};
use crate::qcircuit::Circuit;

/// Density-matrix mode refuses registers wider than this (16M entries).
pub const MAX_DENSITY_QUBITS: usize = 12;

/// Row-major `2^w x 2^w` complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    width: usize,
    data: Vec<Complex64>,
}

impl DensityMatrix {
    pub fn from_pure(state: &StateVector) -> Result<Self> {
        let w = state.width();
        check_width(w)?;
        let amps = state.amplitudes();
        let dim = amps.len();
        let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
        for (r, a) in amps.iter().enumerate() {
            if *a == Complex64::new(0.0, 0.0) {
                continue;
            }
            for (c, b) in amps.iter().enumerate() {
                data[r * dim + c] = a * b.conj();
            }
        }
        Ok(Self { width: w, data })
    }

    pub fn from_rows(width: usize, data: Vec<Complex64>) -> Result<Self> {
        check_width(width)?;
        if data.len() != 1 << (2 * width) {
            return Err(Error::Dimension(format!(
                "{} entries for a {width}-qubit density matrix",
                data.len()
            )));
        }
        Ok(Self { width, data })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn dim(&self) -> usize {
        1 << self.width
    }

    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.data[r * self.dim() + c]
    }

    pub(crate) fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub(crate) fn data_mut(&mut self) -> &mut [Complex64] {
        &mut self.data
    }

    pub fn trace(&self) -> Complex64 {
        let d = self.dim();
        (0..d).map(|i| self.data[i * d + i]).sum()
    }

    /// Tr(rho^2), assuming Hermiticity.
    pub fn purity(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn hermitian_defect(&self) -> f64 {
        let d = self.dim();
        let mut worst = 0.0f64;
        for r in 0..d {
            for c in r..d {
                worst = worst.max((self.data[r * d + c] - self.data[c * d + r].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_defect() <= tol
    }

    /// <psi|rho|psi>
    pub fn expectation(&self, psi: &StateVector) -> Complex64 {
        assert_eq!(psi.width(), self.width);
        let d = self.dim();
        let a = psi.amplitudes();
        let nz: Vec<usize> = (0..d).filter(|&i| a[i] != Complex64::new(0.0, 0.0)).collect();
        let mut acc = Complex64::new(0.0, 0.0);
        for &r in &nz {
            for &c in &nz {
                acc += a[r].conj() * self.data[r * d + c] * a[c];
            }
        }
        acc
    }

    pub fn to_matrix(&self) -> DMatrix<Complex64> {
        let d = self.dim();
        DMatrix::from_row_slice(d, d, &self.data)
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        let m = self.to_matrix();
        let h = (&m + m.adjoint()) * Complex64::new(0.5, 0.0);
        SymmetricEigen::new(h).eigenvalues.iter().copied().collect()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues().into_iter().fold(f64::INFINITY, f64::min)
    }

    /// Hermitian within `tol`, unit trace within `tol`, eigenvalues >= -1e-9.
    pub fn validate(&self, tol: f64) -> Result<()> {
        let defect = self.hermitian_defect();
        if defect > tol {
            return Err(Error::Simulation(format!("not Hermitian (defect {defect:e})")));
        }
        let tr = self.trace();
        if (tr.re - 1.0).abs() > tol || tr.im.abs() > tol {
            return Err(Error::Simulation(format!("trace {tr} is not 1")));
        }
        let min = self.min_eigenvalue();
        if min < -1e-9 {
            return Err(Error::Simulation(format!("negative eigenvalue {min:e}")));
        }
        Ok(())
    }
}

fn check_width(width: usize) -> Result<()> {
    if width > MAX_DENSITY_QUBITS {
        Err(Error::TooWide {
            width,
            limit: MAX_DENSITY_QUBITS,
            mode: "density-matrix",
        })
    } else {
        Ok(())
    }
}

/// Noiseless density-matrix evolution: each gate is applied as `U rho U^dag`
/// through its action on columns and rows. Independent of the statevector
/// path except for gate semantics.
pub fn run_density(circuit: &Circuit) -> Result<DensityMatrix> {
    check_width(circuit.width())?;
    let dim = 1usize << circuit.width();
    let mut rho = DensityMatrix::from_pure(&StateVector::zero(circuit.width())?)?;
    // rho' = U rho U^dag: apply U to every column, then conj(U) to every row
    let mut col = vec![Complex64::new(0.0, 0.0); dim];
    for g in circuit.gates() {
        let mut single = Circuit::new(circuit.width());
        single.push(g.clone());
        for c in 0..dim {
            for r in 0..dim {
                col[r] = rho.data[r * dim + c];
            }
            let out = run_statevector(&single, Some(&StateVector::from_amplitudes(col.clone())?))?;
            for r in 0..dim {
                rho.data[r * dim + c] = out.amplitude(r);
            }
        }
        for r in 0..dim {
            let row: Vec<Complex64> = rho.data[r * dim..(r + 1) * dim].iter().map(|z| z.conj()).collect();
            let out = run_statevector(&single, Some(&StateVector::from_amplitudes(row)?))?;
            for c in 0..dim {
                rho.data[r * dim + c] = out.amplitude(c).conj();
            }
        }
    }
    // global phase cancels in U rho U^dag
    Ok(rho)
}
