use serde::Serialize;

use crate::error::{QabnError, Result};
use crate::network::{PureState, StepOperator, Trajectory};

use super::density::{reduced_states, PSD_SLACK};

/// `sum_i S(rho_i)` for a pure global state, in bits, clamped at 0.
pub fn multipartite_mutual_information(state: &PureState) -> Result<f64> {
    let mut total = 0.0;
    for r in reduced_states(state) {
        total += r.entropy()?;
    }
    if total < -PSD_SLACK {
        return Err(QabnError::Numerical(format!("negative mutual information {total}")));
    }
    Ok(total.max(0.0))
}

/// I_m values indexed by time step.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ImSeries {
    pub points: Vec<(u64, f64)>,
}

impl ImSeries {
    pub fn from_values(start: u64, values: &[f64]) -> ImSeries {
        ImSeries { points: values.iter().enumerate().map(|(i, &v)| (start + i as u64, v)).collect() }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn values(&self) -> Vec<f64> {
        self.points.iter().map(|&(_, v)| v).collect()
    }

    /// Points with step `>= from`.
    pub fn tail(&self, from: u64) -> ImSeries {
        ImSeries { points: self.points.iter().copied().filter(|&(t, _)| t >= from).collect() }
    }

    /// `step,value` rows with a header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("step,value\n");
        for (t, v) in &self.points {
            out.push_str(&format!("{t},{v:.12}\n"));
        }
        out
    }
}

/// I_m at steps `0..=steps`.
pub fn im_series(op: &StepOperator, initial: &PureState, steps: u64) -> Result<ImSeries> {
    let mut traj = Trajectory::new(op, initial, steps)?;
    let mut points = Vec::with_capacity(steps as usize + 1);
    loop {
        points.push((traj.step(), multipartite_mutual_information(traj.current())?));
        if traj.step() == steps {
            break;
        }
        traj.advance();
    }
    Ok(ImSeries { points })
}
