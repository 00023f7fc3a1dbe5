//! Measurements on trajectories: reduced states and entropies, I_m, exact
//! state cycles, frozen cores, perturbations and I_m spectra.

mod cycle;
mod density;
mod frozen;
mod info;
mod perturb;
mod spectrum;

pub use cycle::{
    detect_im_cycle, detect_state_cycle_iterative, detect_state_cycle_orbit, divisors, exact_im_period, window_period,
    CycleMethod, CycleReport, IterativeOutcome, EXACT_IM_WORK_LIMIT, IM_TOL, ORBIT_WALK_LIMIT, STATE_TOL,
};
pub use density::{
    entropy_of_spectrum, reduced_qubit_state, reduced_states, trace_distance, von_neumann_entropy, DensityMatrix,
    DensityOperator, ReducedState, DENSITY_QUBIT_LIMIT, EIGEN_ZERO, PSD_SLACK,
};
pub use frozen::{
    frozen_cores, islands, FrozenCoreReport, Horizon, HorizonKind, QubitSummary, VisitedState, DEFAULT_HORIZON,
    MAX_VISITED,
};
pub use info::{im_series, multipartite_mutual_information, ImSeries};
pub use perturb::{
    perturb, perturb_trajectory, PerturbOp, PerturbOptions, PerturbationReport, DEFAULT_WINDOW, MAX_PERTURB_STEP,
};
pub use spectrum::{dft_spectrum, spectrum_of, SpectrumBin, SpectrumReport};

use crate::error::Result;
use crate::network::{PureState, StepOperator, Trajectory};

/// `step,qubit,rho00_re,rho01_re,rho01_im,rho11_re` rows for steps
/// `0..=steps`.
pub fn reduced_trace_csv(op: &StepOperator, initial: &PureState, steps: u64) -> Result<String> {
    let mut out = String::from("step,qubit,rho00_re,rho01_re,rho01_im,rho11_re\n");
    for (t, state) in Trajectory::new(op, initial, steps)?.enumerate() {
        for (i, r) in reduced_states(&state).iter().enumerate() {
            out.push_str(&format!(
                "{t},{i},{:.12},{:.12},{:.12},{:.12}\n",
                r.rho00(),
                r.rho01().re,
                r.rho01().im,
                r.rho11()
            ));
        }
    }
    Ok(out)
}
