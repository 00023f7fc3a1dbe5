use num_complex::Complex64;

use crate::boolean::TruthTable;
use crate::error::{QabnError, Result};
use crate::oracle::{build_bit_oracle, tensor_network_oracle};
use crate::perm::BasisPermutation;

use super::layout::QubitLayout;
use super::spec::{check_wiring, NetworkSpec};
use super::state::PureState;

/// Operators up to this many qubits keep a materialized index table.
pub const TABLE_QUBIT_LIMIT: usize = 20;

/// Route bits between steps: `new_bit[j] = old_bit[wiring[j]]`.
fn rewire(b: usize, wiring: &[usize]) -> usize {
    let q = wiring.len();
    wiring.iter().enumerate().fold(0, |acc, (j, &src)| acc | (((b >> (q - 1 - src)) & 1) << (q - 1 - j)))
}

/// Inverse routing: `old_bit[wiring[j]] = new_bit[j]`.
fn unwire(b: usize, wiring: &[usize]) -> usize {
    let q = wiring.len();
    wiring.iter().enumerate().fold(0, |acc, (j, &src)| acc | (((b >> (q - 1 - j)) & 1) << (q - 1 - src)))
}

/// The basis relabeling induced by a wiring list.
pub fn build_wiring_permutation(wiring: &[usize], layout: &QubitLayout) -> Result<BasisPermutation> {
    let q = layout.qubit_count();
    check_wiring(wiring, q)?;
    if q > TABLE_QUBIT_LIMIT {
        return Err(QabnError::Resource(format!("{q} qubits exceeds the table limit {TABLE_QUBIT_LIMIT}")));
    }
    Ok(BasisPermutation::from_vec((0..1usize << q).map(|b| rewire(b, wiring)).collect())
        .expect("rewiring a permutation of qubits permutes the basis"))
}

/// One synchronous step `W = P . U_F`: every oracle fires, then the outputs
/// are routed to the next step's inputs.
#[derive(Debug, Clone, PartialEq)]
pub struct StepOperator {
    qubits: usize,
    // (table, first qubit of the block)
    blocks: Vec<(TruthTable, usize)>,
    wiring: Vec<usize>,
    table: Option<BasisPermutation>,
}

impl StepOperator {
    pub fn qubit_count(&self) -> usize {
        self.qubits
    }

    pub fn wiring(&self) -> &[usize] {
        &self.wiring
    }

    /// The full index table, present when `q <= TABLE_QUBIT_LIMIT`.
    pub fn index_map(&self) -> Option<&BasisPermutation> {
        self.table.as_ref()
    }

    fn apply_oracles(&self, mut b: usize) -> usize {
        let q = self.qubits;
        for &(table, start) in &self.blocks {
            let k = table.arity();
            let ancilla_shift = q - 1 - (start + k);
            let x = (b >> (ancilla_shift + 1)) & ((1 << k) - 1);
            b ^= (table.output(x) as usize) << ancilla_shift;
        }
        b
    }

    /// Image of basis index `b` under one step.
    #[inline]
    pub fn image(&self, b: usize) -> usize {
        match &self.table {
            Some(t) => t.image(b),
            None => rewire(self.apply_oracles(b), &self.wiring),
        }
    }

    /// Preimage of `b`; the oracle layer is an involution.
    pub fn preimage(&self, b: usize) -> usize {
        self.apply_oracles(unwire(b, &self.wiring))
    }

    fn check(&self, state: &PureState) -> Result<()> {
        if state.qubit_count() != self.qubits {
            return Err(QabnError::SizeMismatch { state: state.qubit_count(), operator: self.qubits });
        }
        Ok(())
    }

    /// `state_{t+1}[image(b)] = state_t[b]`.
    pub fn apply(&self, state: &PureState) -> Result<PureState> {
        self.check(state)?;
        Ok(state.relabel(|b| self.image(b)))
    }

    pub fn apply_inverse(&self, state: &PureState) -> Result<PureState> {
        self.check(state)?;
        Ok(state.relabel(|b| self.preimage(b)))
    }

    pub(crate) fn apply_in_place(&self, state: &mut PureState, scratch: &mut Vec<Complex64>) {
        match &self.table {
            Some(t) => state.relabel_with_table(t.as_slice(), scratch),
            None => *state = state.relabel(|b| self.image(b)),
        }
    }
}

/// Compile a network into its step operator.
pub fn build_step_operator(spec: &NetworkSpec) -> Result<StepOperator> {
    spec.validate()?;
    let layout = spec.layout();
    let q = layout.qubit_count();
    let blocks: Vec<(TruthTable, usize)> =
        spec.functions.iter().zip(&layout.blocks).map(|(f, b)| (f.table, b.start())).collect();
    let table = if q <= TABLE_QUBIT_LIMIT {
        let oracles: Vec<_> = spec.functions.iter().map(|f| build_bit_oracle(&f.table)).collect();
        let u_f = tensor_network_oracle(&oracles)?;
        Some(u_f.then(&build_wiring_permutation(&spec.wiring, &layout)?))
    } else {
        None
    };
    Ok(StepOperator { qubits: q, blocks, wiring: spec.wiring.clone(), table })
}

/// A lazily produced trajectory `state_0, state_1, …, state_steps`.
pub struct Trajectory<'a> {
    op: &'a StepOperator,
    current: PureState,
    scratch: Vec<Complex64>,
    step: u64,
    last: u64,
    started: bool,
}

impl<'a> Trajectory<'a> {
    pub fn new(op: &'a StepOperator, initial: &PureState, steps: u64) -> Result<Trajectory<'a>> {
        op.check(initial)?;
        Ok(Trajectory { op, current: initial.clone(), scratch: Vec::new(), step: 0, last: steps, started: false })
    }

    /// Current time index.
    pub fn step(&self) -> u64 {
        self.step
    }

    pub fn current(&self) -> &PureState {
        &self.current
    }

    pub fn current_mut(&mut self) -> &mut PureState {
        &mut self.current
    }

    /// Move one step forward without bound checks or cloning.
    pub fn advance(&mut self) {
        self.op.apply_in_place(&mut self.current, &mut self.scratch);
        self.step += 1;
    }
}

impl Iterator for Trajectory<'_> {
    type Item = PureState;

    fn next(&mut self) -> Option<PureState> {
        if !self.started {
            self.started = true;
            return Some(self.current.clone());
        }
        if self.step >= self.last {
            return None;
        }
        self.advance();
        Some(self.current.clone())
    }
}

pub fn evolve<'a>(state: &PureState, op: &'a StepOperator, steps: u64) -> Result<Trajectory<'a>> {
    Trajectory::new(op, state, steps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::spec::Symbol;

    fn spec(funcs: &str, wiring: &[usize], input: &str) -> NetworkSpec {
        NetworkSpec::parse(funcs, wiring, input).unwrap()
    }

    #[test]
    fn identity_wiring_is_identity_permutation() {
        let s = spec("AND", &[0, 1, 2], "(00,0)");
        assert!(build_wiring_permutation(&[0, 1, 2], &s.layout()).unwrap().is_identity());
    }

    #[test]
    fn transposition_swaps_top_bits() {
        let s = spec("AND", &[0, 1, 2], "(00,0)");
        let p = build_wiring_permutation(&[1, 0, 2], &s.layout()).unwrap();
        for b in 0..8usize {
            let hi = (b >> 2) & 1;
            let mid = (b >> 1) & 1;
            assert_eq!(p.image(b), (mid << 2) | (hi << 1) | (b & 1));
        }
        assert!(build_wiring_permutation(&[1, 1, 2], &s.layout()).is_err());
    }

    #[test]
    fn self_wired_positions() {
        let w = [6, 1, 3, 2, 0, 5, 4, 7];
        let fixed: Vec<usize> = (0..w.len()).filter(|&j| w[j] == j).collect();
        assert_eq!(fixed, [1, 5, 7]);
        // a single 1 on a fixed wire stays put
        let s = spec("XNOR:1,NOR:2,NAND:2", &w, "(0,0)(00,0)(00,0)");
        let p = build_wiring_permutation(&w, &s.layout()).unwrap();
        for j in [1, 5, 7] {
            assert_eq!(p.image(1 << (7 - j)), 1 << (7 - j));
        }
        // output 0 feeds input 4
        assert_eq!(p.image(1 << 7), 1 << 3);
    }

    #[test]
    fn or_network_alternates() {
        let w = build_step_operator(&spec("OR", &[0, 1, 2], "(11,0)")).unwrap();
        assert_eq!(w.image(6), 7);
        assert_eq!(w.image(7), 6);
    }

    #[test]
    fn const0_network_is_identity() {
        let w = build_step_operator(&spec("CONST0:2,CONST0:1", &[0, 1, 2, 3, 4], "(00,0)(0,0)")).unwrap();
        assert!(w.index_map().unwrap().is_identity());
    }

    #[test]
    fn routed_and_or_or_network_fixes_zero() {
        let w = build_step_operator(&spec("AND,OR,OR", &[3, 0, 6, 4, 1, 8, 7, 2, 5], "(00,0)(00,0)(00,0)")).unwrap();
        assert_eq!(w.image(0), 0);
        // x1a output feeds x1b input: |1 0 0 ...> -> |0 1 0 ...>
        assert_eq!(w.image(1 << 8), 1 << 7);
    }

    #[test]
    fn single_function_identity_wiring_equals_its_oracle() {
        for (name, t) in crate::boolean::FunctionCatalog.entries() {
            let k = t.arity();
            let f = crate::boolean::FunctionRef::new(name, t);
            let input = format!("({},0)", "0".repeat(k));
            let s = NetworkSpec::new(
                vec![f],
                (0..=k).collect(),
                crate::network::InputStateExpr::parse(&input).unwrap(),
                None,
            )
            .unwrap();
            let w = build_step_operator(&s).unwrap();
            assert_eq!(w.index_map().unwrap(), &build_bit_oracle(&t).index_map);
        }
    }

    #[test]
    fn trajectory_lengths_and_period_two() {
        let s = spec("OR", &[0, 1, 2], "(11,0)");
        let w = build_step_operator(&s).unwrap();
        let init = PureState::product(&s.input.symbols()).unwrap();
        let states: Vec<_> = evolve(&init, &w, 0).unwrap().collect();
        assert_eq!(states, vec![init.clone()]);
        let states: Vec<_> = evolve(&init, &w, 4).unwrap().collect();
        assert_eq!(states.len(), 5);
        assert_eq!(states[0], states[2]);
        assert_eq!(states[1], states[3]);
        assert_ne!(states[0], states[1]);
        assert_eq!(states[1], PureState::basis(3, 7).unwrap());
    }

    #[test]
    fn size_mismatch_is_reported() {
        let w = build_step_operator(&spec("OR", &[0, 1, 2], "(11,0)")).unwrap();
        let s = PureState::product(&[Symbol::Zero; 4]).unwrap();
        assert!(matches!(w.apply(&s), Err(QabnError::SizeMismatch { .. })));
    }

    #[test]
    fn on_the_fly_matches_table() {
        let s = spec("XNOR:1,NOR:2,NAND:2", &[6, 1, 3, 2, 0, 5, 4, 7], "(0,+)(-+,0)(0-,0)");
        let mut w = build_step_operator(&s).unwrap();
        let table = w.table.take().unwrap();
        for b in 0..table.len() {
            assert_eq!(w.image(b), table.image(b));
            assert_eq!(w.preimage(table.image(b)), b);
        }
    }
}
