use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use super::{DensityMatrix, StateVector};
use crate::error::{Error, Result};

const HERMITIAN_TOL: f64 = 1e-8;
const PURITY_TOL: f64 = 1e-9;
// eigenvalues below this fraction of the largest are roundoff; their square
// roots would otherwise contribute ~1e-8 each
const EIGEN_CUTOFF: f64 = 1e-12;

/// Uhlmann fidelity `[Tr sqrt(sqrt(rho) sigma sqrt(rho))]^2`, clamped to [0, 1].
///
/// When either argument is a pure state the overlap `<psi|other|psi>` is
/// returned directly; [`uhlmann_fidelity`] always takes the general route.
pub fn state_fidelity(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    check_pair(rho, sigma)?;
    if let Some(psi) = pure_vector(rho) {
        return Ok(clamp(sigma.expectation(&psi).re));
    }
    if let Some(psi) = pure_vector(sigma) {
        return Ok(clamp(rho.expectation(&psi).re));
    }
    uhlmann_fidelity(rho, sigma)
}

/// `<psi|sigma|psi>` for a pure reference.
pub fn pure_state_fidelity(psi: &StateVector, sigma: &DensityMatrix) -> Result<f64> {
    if psi.width() != sigma.width() {
        return Err(Error::Dimension(format!(
            "{}-qubit state vs {}-qubit density matrix",
            psi.width(),
            sigma.width()
        )));
    }
    Ok(clamp(sigma.expectation(psi).re))
}

/// General path through two Hermitian eigendecompositions.
pub fn uhlmann_fidelity(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    check_pair(rho, sigma)?;
    let sqrt_rho = psd_sqrt(&hermitize(rho.to_matrix()));
    let inner = hermitize(&sqrt_rho * sigma.to_matrix() * &sqrt_rho);
    let eig = SymmetricEigen::new(inner);
    let cut = eig.eigenvalues.iter().fold(0.0f64, |m, &l| m.max(l)) * EIGEN_CUTOFF;
    let tr: f64 = eig.eigenvalues.iter().filter(|&&l| l > cut).map(|&l| l.sqrt()).sum();
    Ok(clamp(tr * tr))
}

fn check_pair(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<()> {
    if rho.width() != sigma.width() {
        return Err(Error::Dimension(format!(
            "{}-qubit vs {}-qubit density matrices",
            rho.width(),
            sigma.width()
        )));
    }
    for (name, m) in [("rho", rho), ("sigma", sigma)] {
        let d = m.hermitian_defect();
        if d > HERMITIAN_TOL {
            return Err(Error::Simulation(format!(
                "{name} is not Hermitian (defect {d:e})"
            )));
        }
    }
    Ok(())
}

/// Recovers |psi> from a unit-trace rank-one matrix.
fn pure_vector(m: &DensityMatrix) -> Option<StateVector> {
    let tr = m.trace();
    if (tr.re - 1.0).abs() > PURITY_TOL || (m.purity() - 1.0).abs() > PURITY_TOL {
        return None;
    }
    let d = m.dim();
    let pivot = (0..d).max_by(|&a, &b| m.get(a, a).re.total_cmp(&m.get(b, b).re))?;
    let scale = m.get(pivot, pivot).re.sqrt();
    let amps = (0..d).map(|r| m.get(r, pivot) / scale).collect();
    StateVector::from_amplitudes(amps).ok()
}

fn hermitize(m: DMatrix<Complex64>) -> DMatrix<Complex64> {
    (&m + m.adjoint()) * Complex64::new(0.5, 0.0)
}

fn psd_sqrt(m: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let eig = SymmetricEigen::new(m.clone());
    let cut = eig.eigenvalues.iter().fold(0.0f64, |m, &l| m.max(l)) * EIGEN_CUTOFF;
    let roots = eig.eigenvalues.map(|l| Complex64::new(if l > cut { l.sqrt() } else { 0.0 }, 0.0));
    let v = &eig.eigenvectors;
    v * DMatrix::from_diagonal(&roots) * v.adjoint()
}

fn clamp(f: f64) -> f64 {
    f.clamp(0.0, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qsim::{apply_noise_channel, CompositionMode, NoiseChannel, NoiseSpec};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_state(width: usize, rng: &mut impl Rng) -> StateVector {
        let mut amps: Vec<Complex64> = (0..1 << width)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let n: f64 = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        amps.iter_mut().for_each(|a| *a /= n);
        StateVector::from_amplitudes(amps).unwrap()
    }

    fn random_mixed(width: usize, rng: &mut impl Rng) -> DensityMatrix {
        let rho = DensityMatrix::from_pure(&random_state(width, rng)).unwrap();
        let spec = NoiseSpec::all_qubits(
            NoiseChannel::ALL[rng.gen_range(0..6)],
            rng.gen_range(0.05..0.9),
            width,
            CompositionMode::PerQubit,
        );
        apply_noise_channel(&rho, &spec).unwrap()
    }

    #[test]
    fn self_fidelity_is_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let rho = random_mixed(3, &mut rng);
        assert!((uhlmann_fidelity(&rho, &rho).unwrap() - 1.0).abs() < 1e-8);
        let pure = DensityMatrix::from_pure(&random_state(3, &mut rng)).unwrap();
        assert!((state_fidelity(&pure, &pure).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn orthogonal_states() {
        let a = DensityMatrix::from_pure(&StateVector::basis(2, 1).unwrap()).unwrap();
        let b = DensityMatrix::from_pure(&StateVector::basis(2, 2).unwrap()).unwrap();
        assert!(state_fidelity(&a, &b).unwrap() < 1e-12);
        assert!(uhlmann_fidelity(&a, &b).unwrap() < 1e-12);
    }

    // Dual-path oracle: the pure-state shortcut and the general Uhlmann
    // route must agree.
    #[test]
    fn fast_path_matches_general_path() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for width in 1..=4 {
            for _ in 0..5 {
                let psi = random_state(width, &mut rng);
                let rho = DensityMatrix::from_pure(&psi).unwrap();
                let sigma = random_mixed(width, &mut rng);
                let fast = pure_state_fidelity(&psi, &sigma).unwrap();
                let general = uhlmann_fidelity(&rho, &sigma).unwrap();
                assert!((fast - general).abs() < 1e-8, "{fast} vs {general}");
                assert!((state_fidelity(&rho, &sigma).unwrap() - fast).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn symmetric_and_bounded() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let a = random_mixed(3, &mut rng);
            let b = random_mixed(3, &mut rng);
            let ab = uhlmann_fidelity(&a, &b).unwrap();
            let ba = uhlmann_fidelity(&b, &a).unwrap();
            assert!((ab - ba).abs() < 1e-8);
            assert!((0.0..=1.0).contains(&ab));
        }
    }

    #[test]
    fn non_hermitian_rejected() {
        let mut data = vec![Complex64::new(0.0, 0.0); 4];
        data[0] = Complex64::new(1.0, 0.0);
        data[1] = Complex64::new(0.3, 0.0);
        let bad = DensityMatrix::from_rows(1, data).unwrap();
        let good = DensityMatrix::from_pure(&StateVector::zero(1).unwrap()).unwrap();
        assert!(state_fidelity(&bad, &good).is_err());
        assert!(uhlmann_fidelity(&good, &bad).is_err());
    }
}
