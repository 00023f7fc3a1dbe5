use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{QabnError, Result};
use crate::network::{PureState, StepOperator, Trajectory};

use super::cycle::detect_state_cycle_orbit;
use super::density::{reduced_states, trace_distance, ReducedState};

/// Default sample length when the state period is longer.
pub const DEFAULT_HORIZON: u64 = 10_000;
/// Distinct reduced states kept per qubit in a summary.
pub const MAX_VISITED: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Horizon {
    /// One full state period, capped at [`DEFAULT_HORIZON`].
    Auto,
    Steps(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum HorizonKind {
    FullPeriod,
    Sampled,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VisitedState {
    pub label: &'static str,
    pub rho00: f64,
    pub rho01_re: f64,
    pub rho01_im: f64,
    pub rho11: f64,
}

impl From<&ReducedState> for VisitedState {
    fn from(r: &ReducedState) -> VisitedState {
        VisitedState {
            label: r.label(1e-9),
            rho00: r.rho00(),
            rho01_re: r.rho01().re,
            rho01_im: r.rho01().im,
            rho11: r.rho11(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QubitSummary {
    pub qubit: usize,
    pub frozen: bool,
    pub visited: Vec<VisitedState>,
    /// More than [`MAX_VISITED`] distinct states were seen.
    pub truncated: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FrozenCoreReport {
    pub frozen: Vec<usize>,
    pub islands: Vec<Vec<usize>>,
    /// Steps `0..=horizon` were sampled.
    pub horizon: u64,
    pub horizon_kind: HorizonKind,
    pub qubits: Vec<QubitSummary>,
}

impl FrozenCoreReport {
    /// Index of the island holding `qubit`; `None` for frozen qubits.
    pub fn island_of(&self, qubit: usize) -> Option<usize> {
        self.islands.iter().position(|isl| isl.contains(&qubit))
    }
}

/// Maximal contiguous runs of unfrozen positions.
pub fn islands(frozen: &[bool]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut run = Vec::new();
    for (i, &f) in frozen.iter().enumerate() {
        if f {
            if !run.is_empty() {
                out.push(std::mem::take(&mut run));
            }
        } else {
            run.push(i);
        }
    }
    if !run.is_empty() {
        out.push(run);
    }
    out
}

/// A qubit is frozen when its reduced state stays within `tol` (trace
/// distance) of its initial reduced state at every sampled step.
pub fn frozen_cores(op: &StepOperator, initial: &PureState, horizon: Horizon, tol: f64) -> Result<FrozenCoreReport> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(QabnError::Domain(format!("tolerance must be positive, got {tol}")));
    }
    let (horizon, kind) = match horizon {
        Horizon::Steps(0) => return Err(QabnError::Domain("horizon must be at least 1".into())),
        Horizon::Steps(h) => (h, HorizonKind::Sampled),
        Horizon::Auto => {
            let period = detect_state_cycle_orbit(op, initial)?.state_period;
            match period.to_u64() {
                Some(p) if p <= DEFAULT_HORIZON => (p, HorizonKind::FullPeriod),
                _ => (DEFAULT_HORIZON, HorizonKind::Sampled),
            }
        }
    };

    let q = op.qubit_count();
    let start = reduced_states(initial);
    let mut frozen = vec![true; q];
    let mut visited: Vec<Vec<ReducedState>> = start.iter().map(|r| vec![*r]).collect();
    let mut truncated = vec![false; q];

    let mut traj = Trajectory::new(op, initial, horizon)?;
    while traj.step() < horizon {
        traj.advance();
        for (i, r) in reduced_states(traj.current()).iter().enumerate() {
            if trace_distance(r, &start[i]) >= tol {
                frozen[i] = false;
            }
            if !visited[i].iter().any(|v| trace_distance(v, r) < tol) {
                if visited[i].len() < MAX_VISITED {
                    visited[i].push(*r);
                } else {
                    truncated[i] = true;
                }
            }
        }
    }

    let qubits = (0..q)
        .map(|i| QubitSummary {
            qubit: i,
            frozen: frozen[i],
            visited: visited[i].iter().map(VisitedState::from).collect(),
            truncated: truncated[i],
        })
        .collect();
    Ok(FrozenCoreReport {
        frozen: (0..q).filter(|&i| frozen[i]).collect(),
        islands: islands(&frozen),
        horizon,
        horizon_kind: kind,
        qubits,
    })
}
