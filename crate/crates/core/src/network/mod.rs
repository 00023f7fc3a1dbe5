//! Quantum autonomous Boolean networks: definition, qubit layout, input
//! states and the fixed one-step evolution operator.

mod layout;
mod random;
mod spec;
mod state;
mod step;

pub use layout::{Block, QubitLayout};
pub use random::{count_wirings, factorial, random_network};
pub use spec::{check_wiring, InputGroup, InputStateExpr, NetworkSpec, Symbol};
pub use state::{PureState, DENSE_QUBIT_LIMIT, MAX_QUBITS, SPARSE_SUPPORT_LIMIT};
pub use step::{build_step_operator, build_wiring_permutation, evolve, StepOperator, Trajectory, TABLE_QUBIT_LIMIT};

use crate::error::Result;

/// Qubit layout of a network.
pub fn layout(spec: &NetworkSpec) -> QubitLayout {
    spec.layout()
}

/// Parse an input expression against a layout and build the product state.
pub fn parse_input(text: &str, layout: &QubitLayout) -> Result<PureState> {
    let expr = InputStateExpr::parse(text)?;
    expr.check_layout(layout)?;
    PureState::product(&expr.symbols())
}

/// The initial state named by a spec.
pub fn initial_state(spec: &NetworkSpec) -> Result<PureState> {
    PureState::product(&spec.input.symbols())
}
