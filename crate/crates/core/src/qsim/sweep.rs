use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use super::{
    apply_noise_channel, pure_state_fidelity, CompositionMode, DensityMatrix, NoiseChannel,
    NoiseSpec, StateVector,
};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SweepPoint {
    pub channel: NoiseChannel,
    pub gamma: f64,
    pub fidelity: f64,
    /// Re Tr of the noisy state; exactly what the composition produced.
    pub trace: f64,
}

/// Points `start, start + step, ...` up to `stop` inclusive.
pub fn gamma_grid(start: f64, stop: f64, step: f64) -> Result<Vec<f64>> {
    let in_range = |g: f64| (0.0..=1.0).contains(&g);
    if !in_range(start) || !in_range(stop) || stop < start {
        return Err(Error::Noise(format!(
            "gamma range {start}:{stop} must lie within [0, 1] and ascend"
        )));
    }
    if start == stop {
        return Ok(vec![start]);
    }
    if step <= 0.0 || !step.is_finite() {
        return Err(Error::Noise(format!("gamma step {step} must be positive")));
    }
    let intervals = ((stop - start) / step + 1e-9).floor() as usize;
    let mut grid: Vec<f64> = (0..=intervals).map(|i| start + i as f64 * step).collect();
    // snap the final point when the step divides the range exactly
    if let Some(last) = grid.last_mut() {
        if (*last - stop).abs() < 1e-9 {
            *last = stop;
        }
    }
    Ok(grid)
}

/// Parses `a:b:step` or a single value.
pub fn parse_gamma_grid(spec: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    let num = |s: &str| {
        s.trim()
            .parse::<f64>()
            .map_err(|_| Error::Noise(format!("bad gamma value {s:?}")))
    };
    match parts.as_slice() {
        [g] => gamma_grid(num(g)?, num(g)?, 1.0),
        [a, b, s] => gamma_grid(num(a)?, num(b)?, num(s)?),
        _ => Err(Error::Noise(format!("gamma grid {spec:?} is not a:b:step"))),
    }
}

/// Fidelity between `|psi><psi|` and its image under `channel` applied to
/// every qubit, for each gamma in `grid`.
pub fn noise_sweep(
    state: &StateVector,
    channel: NoiseChannel,
    grid: &[f64],
    mode: CompositionMode,
) -> Result<Vec<SweepPoint>> {
    let rho = DensityMatrix::from_pure(state)?;
    grid.par_iter()
        .map(|&gamma| {
            let spec = NoiseSpec::all_qubits(channel, gamma, state.width(), mode);
            let noisy = apply_noise_channel(&rho, &spec)?;
            Ok(SweepPoint {
                channel,
                gamma,
                fidelity: pure_state_fidelity(state, &noisy)?,
                trace: noisy.trace().re,
            })
        })
        .collect()
}

/// All six channels, rows in channel order then ascending gamma.
pub fn noise_sweep_all(
    state: &StateVector,
    grid: &[f64],
    mode: CompositionMode,
) -> Result<Vec<SweepPoint>> {
    let per_channel: Vec<Vec<SweepPoint>> = NoiseChannel::ALL
        .par_iter()
        .map(|&ch| noise_sweep(state, ch, grid, mode))
        .collect::<Result<_>>()?;
    Ok(per_channel.into_iter().flatten().collect())
}

pub fn sweep_csv(points: &[SweepPoint]) -> String {
    let mut s = String::from("channel,gamma,fidelity,trace\n");
    for p in points {
        writeln!(s, "{},{},{:.12},{:.12}", p.channel, p.gamma, p.fidelity, p.trace).unwrap();
    }
    s
}
