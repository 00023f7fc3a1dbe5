use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::boolean::{FunctionCatalog, FunctionRef};
use crate::error::{QabnError, Result};

use super::spec::{InputGroup, InputStateExpr, NetworkSpec, Symbol};

/// `q!` as an exact integer.
pub fn factorial(q: usize) -> BigUint {
    (1..=q).fold(BigUint::from(1u32), |acc, i| acc * BigUint::from(i))
}

/// Number of bijective output-to-input wirings, `q!`.
pub fn count_wirings(spec: &NetworkSpec) -> BigUint {
    factorial(spec.qubit_count())
}

/// A network drawn deterministically from `seed`: catalog functions with
/// arities picked from `arities`, a uniform wiring and uniform input symbols.
pub fn random_network(seed: u64, n: usize, arities: &[usize]) -> Result<NetworkSpec> {
    if n == 0 {
        return Err(QabnError::Domain("a network needs at least one function".into()));
    }
    if arities.is_empty() || arities.iter().any(|k| !(1..=2).contains(k)) {
        return Err(QabnError::Domain(format!("arities {arities:?} must be drawn from {{1, 2}}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let by_arity = [FunctionCatalog.entries_of_arity(1), FunctionCatalog.entries_of_arity(2)];

    let functions: Vec<FunctionRef> = (0..n)
        .map(|_| {
            let k = arities[rng.gen_range(0..arities.len())];
            let (name, table) = by_arity[k - 1][rng.gen_range(0..by_arity[k - 1].len())];
            FunctionRef::new(name, table)
        })
        .collect();

    let q: usize = functions.iter().map(|f| f.arity() + 1).sum();
    let mut wiring: Vec<usize> = (0..q).collect();
    wiring.shuffle(&mut rng);

    let mut symbol = || Symbol::ALL[rng.gen_range(0..4)];
    let groups =
        functions.iter().map(|f| InputGroup { x: (0..f.arity()).map(|_| symbol()).collect(), y: symbol() }).collect();

    NetworkSpec::new(functions, wiring, InputStateExpr { groups }, Some(seed))
}
