use std::collections::HashSet;

use num_bigint::BigUint;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::{Serialize, Serializer};

use crate::error::{QabnError, Result};
use crate::network::{PureState, StepOperator, Trajectory};

use super::info::{multipartite_mutual_information, ImSeries};

/// Elementwise state equality used by the iterative search.
pub const STATE_TOL: f64 = 1e-10;
/// I_m equality.
pub const IM_TOL: f64 = 1e-9;
/// Orbit walks touching more basis indices than this give up.
pub const ORBIT_WALK_LIMIT: usize = 1 << 26;
/// Budget, in `period * 2^q` amplitude visits, for an exact I_m period.
pub const EXACT_IM_WORK_LIMIT: u128 = 1 << 28;

// amplitudes are moved, never recomputed, so this only absorbs input rounding
const AMP_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CycleMethod {
    OrbitOracle,
    Iterative,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CycleReport {
    #[serde(serialize_with = "serialize_big")]
    pub state_period: BigUint,
    pub im_period: Option<u64>,
    pub preperiod: u64,
    pub method: CycleMethod,
}

// JSON numbers beyond u64 lose precision in most readers.
fn serialize_big<S: Serializer>(n: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    match n.to_u64() {
        Some(v) => s.serialize_u64(v),
        None => s.serialize_str(&n.to_string()),
    }
}

impl CycleReport {
    /// True unless both periods are known and the I_m period fails to divide.
    pub fn periods_consistent(&self) -> bool {
        match self.im_period {
            Some(p) => p > 0 && (&self.state_period % BigUint::from(p)).bits() == 0,
            None => true,
        }
    }
}

/// Outcome of the step-by-step search.
#[derive(Debug, Clone, PartialEq)]
pub enum IterativeOutcome {
    Found(CycleReport),
    Exceeded { max_steps: u64 },
}

impl IterativeOutcome {
    pub fn period(&self) -> Option<&BigUint> {
        match self {
            IterativeOutcome::Found(r) => Some(&r.state_period),
            IterativeOutcome::Exceeded { .. } => None,
        }
    }
}

/// Divisors of `n` in ascending order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() <= AMP_TOL
}

/// Smallest `d | n` with `seq[j + d] == seq[j]` cyclically.
fn minimal_rotation(seq: &[Complex64]) -> u64 {
    let n = seq.len();
    divisors(n as u64)
        .into_iter()
        .find(|&d| {
            let d = d as usize;
            (0..n).all(|j| close(seq[(j + d) % n], seq[j]))
        })
        .unwrap_or(n as u64)
}

/// Exact period from the cycle structure of `W`: each cycle through the
/// support contributes the minimal rotation of its amplitude sequence, and
/// the period is their lcm.
pub fn detect_state_cycle_orbit(op: &StepOperator, initial: &PureState) -> Result<CycleReport> {
    if initial.qubit_count() != op.qubit_count() {
        return Err(QabnError::SizeMismatch { state: initial.qubit_count(), operator: op.qubit_count() });
    }
    let mut seen: HashSet<usize> = HashSet::new();
    let mut period = BigUint::one();
    let mut walked = 0usize;
    let mut seq = Vec::new();
    for (start, _) in initial.nonzero() {
        if seen.contains(&start) {
            continue;
        }
        seq.clear();
        let mut b = start;
        loop {
            seen.insert(b);
            seq.push(initial.amplitude(b));
            walked += 1;
            if walked > ORBIT_WALK_LIMIT {
                return Err(QabnError::Resource(format!("orbit walk exceeded {ORBIT_WALK_LIMIT} basis indices")));
            }
            b = op.image(b);
            if b == start {
                break;
            }
        }
        period = period.lcm(&BigUint::from(minimal_rotation(&seq)));
    }
    Ok(CycleReport { state_period: period, im_period: None, preperiod: 0, method: CycleMethod::OrbitOracle })
}

/// Step until the state returns to `initial` within `tol` elementwise.
/// Bijective dynamics make the initial state the first repeat.
pub fn detect_state_cycle_iterative(
    op: &StepOperator,
    initial: &PureState,
    max_steps: u64,
    tol: f64,
) -> Result<IterativeOutcome> {
    if max_steps == 0 {
        return Err(QabnError::Domain("max_steps must be at least 1".into()));
    }
    let mut traj = Trajectory::new(op, initial, max_steps)?;
    while traj.step() < max_steps {
        traj.advance();
        if traj.current().approx_eq(initial, tol) {
            return Ok(IterativeOutcome::Found(CycleReport {
                state_period: BigUint::from(traj.step()),
                im_period: None,
                preperiod: 0,
                method: CycleMethod::Iterative,
            }));
        }
    }
    Ok(IterativeOutcome::Exceeded { max_steps })
}

/// Smallest `p` with `|I_m(t+p) - I_m(t)| < tol` across the series, requiring
/// at least three full repetitions.
pub fn detect_im_cycle(series: &ImSeries, tol: f64) -> Option<u64> {
    window_period(&series.values(), tol)
}

/// [`detect_im_cycle`] over raw values.
pub fn window_period(values: &[f64], tol: f64) -> Option<u64> {
    let n = values.len();
    if n < 2 {
        return None;
    }
    (1..=n / 3).find(|&p| (0..n - p).all(|t| (values[t + p] - values[t]).abs() < tol)).map(|p| p as u64)
}

/// I_m period over one full state period, as the smallest divisor `d` of
/// `state_period` for which the cyclic series is `d`-invariant. `None` when
/// the work would exceed [`EXACT_IM_WORK_LIMIT`].
pub fn exact_im_period(
    op: &StepOperator,
    initial: &PureState,
    state_period: &BigUint,
    tol: f64,
) -> Result<Option<u64>> {
    let Some(p) = state_period.to_u64() else { return Ok(None) };
    if p as u128 * (initial.dimension() as u128) > EXACT_IM_WORK_LIMIT {
        return Ok(None);
    }
    let mut traj = Trajectory::new(op, initial, p)?;
    let mut values = Vec::with_capacity(p as usize);
    for _ in 0..p {
        values.push(multipartite_mutual_information(traj.current())?);
        traj.advance();
    }
    let n = p as usize;
    Ok(divisors(p).into_iter().find(|&d| {
        let d = d as usize;
        (0..n).all(|t| (values[(t + d) % n] - values[t]).abs() < tol)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::{build_step_operator, initial_state, NetworkSpec};

    fn net(funcs: &str, wiring: &[usize], input: &str) -> (StepOperator, PureState) {
        let s = NetworkSpec::parse(funcs, wiring, input).unwrap();
        (build_step_operator(&s).unwrap(), initial_state(&s).unwrap())
    }

    #[test]
    fn divisor_lists() {
        assert_eq!(divisors(1), [1]);
        assert_eq!(divisors(12), [1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(49), [1, 7, 49]);
    }

    #[test]
    fn or_cycle_periods() {
        let (w, s) = net("OR", &[0, 1, 2], "(11,0)");
        let r = detect_state_cycle_orbit(&w, &s).unwrap();
        assert_eq!(r.state_period, BigUint::from(2u32));
        assert_eq!(r.preperiod, 0);
        let it = detect_state_cycle_iterative(&w, &s, 10, STATE_TOL).unwrap();
        assert_eq!(it.period(), Some(&BigUint::from(2u32)));

        let (w, s) = net("OR", &[0, 1, 2], "(00,0)");
        assert_eq!(detect_state_cycle_orbit(&w, &s).unwrap().state_period, BigUint::one());
    }

    #[test]
    fn identity_operator_has_period_one() {
        let (w, s) = net("CONST0:2", &[0, 1, 2], "(+-,+)");
        assert_eq!(detect_state_cycle_orbit(&w, &s).unwrap().state_period, BigUint::one());
        assert_eq!(detect_state_cycle_iterative(&w, &s, 1, STATE_TOL).unwrap().period(), Some(&BigUint::one()));
    }

    #[test]
    fn symmetric_amplitudes_shorten_the_period() {
        // NOT with the x-wire fed back: W has 2-cycles, but |+> on x is invariant
        let (w, s) = net("CONST0:1", &[1, 0], "(+,+)");
        assert_eq!(detect_state_cycle_orbit(&w, &s).unwrap().state_period, BigUint::one());
        let (w, s) = net("CONST0:1", &[1, 0], "(1,0)");
        assert_eq!(detect_state_cycle_orbit(&w, &s).unwrap().state_period, BigUint::from(2u32));
    }

    #[test]
    fn iterative_reports_exceeded() {
        let (w, s) = net("OR", &[0, 1, 2], "(11,0)");
        assert_eq!(
            detect_state_cycle_iterative(&w, &s, 1, STATE_TOL).unwrap(),
            IterativeOutcome::Exceeded { max_steps: 1 }
        );
        assert!(detect_state_cycle_iterative(&w, &s, 0, STATE_TOL).is_err());
    }

    #[test]
    fn im_cycle_detection() {
        assert_eq!(detect_im_cycle(&ImSeries::from_values(0, &[0.3; 10]), IM_TOL), Some(1));
        let tone: Vec<f64> = (0..60).map(|t| [0.0, 1.0, 2.0, 1.0, 0.5, 0.25][t % 6]).collect();
        assert_eq!(window_period(&tone, IM_TOL), Some(6));
        // only two repetitions of period 6
        assert_eq!(window_period(&tone[..12], IM_TOL), None);
        assert_eq!(window_period(&[1.0], IM_TOL), None);
    }

    #[test]
    fn exact_im_period_divides_state_period() {
        let (w, s) = net("XNOR:1,NOR:2", &[4, 1, 0, 3, 2], "(-,+)(+0,0)");
        let mut r = detect_state_cycle_orbit(&w, &s).unwrap();
        r.im_period = exact_im_period(&w, &s, &r.state_period, IM_TOL).unwrap();
        assert!(r.im_period.is_some());
        assert!(r.periods_consistent());
    }

    #[test]
    fn report_serializes_small_period_as_number() {
        let r = CycleReport {
            state_period: BigUint::from(6u32),
            im_period: Some(3),
            preperiod: 0,
            method: CycleMethod::OrbitOracle,
        };
        let j = serde_json::to_string(&r).unwrap();
        assert_eq!(j, r#"{"state_period":6,"im_period":3,"preperiod":0,"method":"orbit-oracle"}"#);
        let big = CycleReport { state_period: BigUint::from(u64::MAX) * 3u32, ..r };
        assert!(serde_json::to_string(&big).unwrap().contains("\"55340232221128654845\""));
    }
}
