use serde::Serialize;

use crate::error::{QabnError, Result};
use crate::network::{build_step_operator, initial_state, NetworkSpec, PureState, StepOperator, Trajectory};

use super::cycle::{window_period, IM_TOL};
use super::density::{reduced_states, trace_distance, ReducedState};
use super::frozen::{frozen_cores, FrozenCoreReport, Horizon};
use super::info::multipartite_mutual_information;

/// Steps simulated after the perturbation by default.
pub const DEFAULT_WINDOW: u64 = 120;
/// Latest step at which a perturbation may be applied.
pub const MAX_PERTURB_STEP: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PerturbOp {
    BitFlip,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerturbOptions {
    pub window: u64,
    /// Trace-distance threshold for divergence.
    pub tol: f64,
    pub im_tol: f64,
}

impl Default for PerturbOptions {
    fn default() -> PerturbOptions {
        PerturbOptions { window: DEFAULT_WINDOW, tol: 1e-9, im_tol: IM_TOL }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PerturbationReport {
    /// Qubits flipped, in order, all at `step`.
    pub qubits: Vec<usize>,
    pub step: u64,
    pub op: PerturbOp,
    /// Last step compared.
    pub last_step: u64,
    /// First step at which each qubit's reduced state differs from baseline.
    pub first_divergence: Vec<Option<u64>>,
    pub island_crossing: bool,
    pub im_cycle_preserved: bool,
    pub baseline_im_period: Option<u64>,
    pub perturbed_im_period: Option<u64>,
    pub frozen: Vec<usize>,
    pub islands: Vec<Vec<usize>>,
}

impl PerturbationReport {
    pub fn qubit(&self) -> usize {
        self.qubits[0]
    }

    pub fn diverging(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.first_divergence.iter().enumerate().filter_map(|(i, d)| d.map(|t| (i, t)))
    }
}

// Frozen qubits sit in no island and each count as their own region.
fn region(cores: &FrozenCoreReport, qubit: usize) -> (bool, usize) {
    match cores.island_of(qubit) {
        Some(i) => (true, i),
        None => (false, qubit),
    }
}

struct Run {
    reduced: Vec<Vec<ReducedState>>,
    im: Vec<f64>,
}

fn run(op: &StepOperator, initial: &PureState, flip: Option<(u64, &[usize])>, last: u64) -> Result<Run> {
    let mut traj = Trajectory::new(op, initial, last)?;
    let mut out = Run { reduced: Vec::with_capacity(last as usize + 1), im: Vec::with_capacity(last as usize + 1) };
    loop {
        if let Some((step, qubits)) = flip {
            if traj.step() == step {
                for &q in qubits {
                    *traj.current_mut() = traj.current().bit_flip(q)?;
                }
            }
        }
        out.reduced.push(reduced_states(traj.current()));
        out.im.push(multipartite_mutual_information(traj.current())?);
        if traj.step() == last {
            return Ok(out);
        }
        traj.advance();
    }
}

/// Flip `qubits` (in order) at `step` and compare against the unperturbed
/// run for `opts.window` further steps. Runs are compared after the flip is
/// applied, so a divergence can be reported at `step` itself.
pub fn perturb_trajectory(
    op: &StepOperator,
    initial: &PureState,
    step: u64,
    qubits: &[usize],
    opts: PerturbOptions,
) -> Result<PerturbationReport> {
    let q = op.qubit_count();
    if qubits.is_empty() {
        return Err(QabnError::Domain("no qubit to perturb".into()));
    }
    if let Some(&bad) = qubits.iter().find(|&&i| i >= q) {
        return Err(QabnError::OutOfRange { what: "qubit", index: bad, limit: q });
    }
    if step > MAX_PERTURB_STEP {
        return Err(QabnError::OutOfRange {
            what: "perturbation step",
            index: step as usize,
            limit: MAX_PERTURB_STEP as usize + 1,
        });
    }
    if !(opts.tol > 0.0 && opts.im_tol > 0.0) {
        return Err(QabnError::Domain("tolerances must be positive".into()));
    }
    let last = step + opts.window;

    let (base, pert) = rayon::join(|| run(op, initial, None, last), || run(op, initial, Some((step, qubits)), last));
    let (base, pert) = (base?, pert?);
    let cores = frozen_cores(op, initial, Horizon::Auto, opts.tol)?;

    let first_divergence: Vec<Option<u64>> = (0..q)
        .map(|i| {
            (step as usize..=last as usize)
                .find(|&t| trace_distance(&base.reduced[t][i], &pert.reduced[t][i]) > opts.tol)
                .map(|t| t as u64)
        })
        .collect();

    let home: Vec<_> = qubits.iter().map(|&p| region(&cores, p)).collect();
    let island_crossing = first_divergence
        .iter()
        .enumerate()
        .any(|(i, d)| d.is_some() && !qubits.contains(&i) && !home.contains(&region(&cores, i)));

    let baseline_im_period = window_period(&base.im[step as usize..], opts.im_tol);
    let perturbed_im_period = window_period(&pert.im[step as usize..], opts.im_tol);

    Ok(PerturbationReport {
        qubits: qubits.to_vec(),
        step,
        op: PerturbOp::BitFlip,
        last_step: last,
        first_divergence,
        island_crossing,
        im_cycle_preserved: baseline_im_period.is_some() && baseline_im_period == perturbed_im_period,
        baseline_im_period,
        perturbed_im_period,
        frozen: cores.frozen,
        islands: cores.islands,
    })
}

/// Single bit flip with default options.
pub fn perturb(spec: &NetworkSpec, step: u64, qubit: usize, op: PerturbOp) -> Result<PerturbationReport> {
    let PerturbOp::BitFlip = op;
    let w = build_step_operator(spec)?;
    perturb_trajectory(&w, &initial_state(spec)?, step, &[qubit], PerturbOptions::default())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig6() -> NetworkSpec {
        NetworkSpec::parse("XNOR:1,NOR:2", &[4, 1, 0, 3, 2], "(-,+)(+0,0)").unwrap()
    }

    #[test]
    fn double_flip_is_no_perturbation() {
        let s = fig6();
        let w = build_step_operator(&s).unwrap();
        let r = perturb_trajectory(&w, &initial_state(&s).unwrap(), 3, &[2, 2], PerturbOptions::default()).unwrap();
        assert!(r.first_divergence.iter().all(Option::is_none));
        assert!(!r.island_crossing);
        assert!(r.im_cycle_preserved);
    }

    #[test]
    fn divergence_never_precedes_the_flip() {
        let s = fig6();
        for qubit in 0..5 {
            let r = perturb(&s, 4, qubit, PerturbOp::BitFlip).unwrap();
            assert!(r.diverging().all(|(_, t)| t >= 4));
        }
    }

    #[test]
    fn flipping_a_basis_qubit_diverges_immediately() {
        let s = NetworkSpec::parse("OR", &[0, 1, 2], "(11,0)").unwrap();
        let r = perturb(&s, 2, 0, PerturbOp::BitFlip).unwrap();
        assert_eq!(r.first_divergence[0], Some(2));
        assert_eq!(r.qubit(), 0);
    }

    #[test]
    fn out_of_range_arguments() {
        let s = fig6();
        assert!(matches!(perturb(&s, 0, 5, PerturbOp::BitFlip), Err(QabnError::OutOfRange { .. })));
        assert!(matches!(perturb(&s, MAX_PERTURB_STEP + 1, 0, PerturbOp::BitFlip), Err(QabnError::OutOfRange { .. })));
    }
}
