//! Classical synchronous autonomous Boolean networks: state graphs,
//! attractors, basins and frozen cores.

use std::collections::{BTreeMap, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::islands;
use crate::boolean::{FunctionRef, TruthTable};
use crate::error::{QabnError, Result};

/// Largest network whose full state graph is built.
pub const STATE_GRAPH_LIMIT: usize = 22;
/// Largest network accepted by the ensemble sampler.
pub const ENSEMBLE_LIMIT: usize = 20;

/// One variable: `x_i' = f(x_inputs[0], x_inputs[1], ...)`, first input most
/// significant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicalNode {
    pub function: FunctionRef,
    pub inputs: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicalNet {
    nodes: Vec<ClassicalNode>,
}

impl ClassicalNet {
    pub fn new(nodes: Vec<ClassicalNode>) -> Result<ClassicalNet> {
        let n = nodes.len();
        if n == 0 {
            return Err(QabnError::Domain("a classical network needs at least one variable".into()));
        }
        if n > 63 {
            return Err(QabnError::Resource(format!("{n} variables do not fit a 64-bit state")));
        }
        for (i, node) in nodes.iter().enumerate() {
            if node.inputs.len() != node.function.arity() {
                return Err(QabnError::Arity { expected: node.function.arity(), got: node.inputs.len() });
            }
            if let Some(&bad) = node.inputs.iter().find(|&&j| j >= n) {
                return Err(QabnError::Domain(format!("variable {i} reads x{bad}, but there are only {n} variables")));
            }
        }
        Ok(ClassicalNet { nodes })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[ClassicalNode] {
        &self.nodes
    }

    fn bit(&self, state: u64, i: usize) -> u64 {
        (state >> (self.nodes.len() - 1 - i)) & 1
    }

    /// Synchronous update on a packed state, `x1` in the most significant
    /// of the low `n` bits.
    pub fn step_bits(&self, state: u64) -> u64 {
        let n = self.nodes.len();
        self.nodes.iter().enumerate().fold(0, |acc, (i, node)| {
            let x = node.inputs.iter().fold(0usize, |a, &j| (a << 1) | self.bit(state, j) as usize);
            acc | ((node.function.table.output(x) as u64) << (n - 1 - i))
        })
    }

    pub fn pack(&self, state: &[bool]) -> Result<u64> {
        if state.len() != self.nodes.len() {
            return Err(QabnError::SizeMismatch { state: state.len(), operator: self.nodes.len() });
        }
        Ok(state.iter().fold(0, |acc, &b| (acc << 1) | b as u64))
    }

    pub fn unpack(&self, state: u64) -> Vec<bool> {
        (0..self.nodes.len()).map(|i| self.bit(state, i) == 1).collect()
    }

    pub fn format_state(&self, state: u64) -> String {
        (0..self.nodes.len()).map(|i| if self.bit(state, i) == 1 { '1' } else { '0' }).collect()
    }
}

pub fn classical_step(net: &ClassicalNet, state: &[bool]) -> Result<Vec<bool>> {
    Ok(net.unpack(net.step_bits(net.pack(state)?)))
}

/// Transient length and cycle length of the trajectory from `initial`.
pub fn trajectory_cycle(net: &ClassicalNet, initial: u64) -> (u64, u64) {
    let mut seen: HashMap<u64, u64> = HashMap::new();
    let mut x = initial;
    let mut t = 0u64;
    loop {
        if let Some(&first) = seen.get(&x) {
            return (first, t - first);
        }
        seen.insert(x, t);
        x = net.step_bits(x);
        t += 1;
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Attractor {
    /// Cycle states in update order, starting from the smallest.
    pub states: Vec<u64>,
    pub basin_size: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateGraph {
    pub n: usize,
    pub successor: Vec<u32>,
    pub attractors: Vec<Attractor>,
    /// Attractor id of every state.
    pub basin: Vec<u32>,
}

const UNSEEN: u32 = u32::MAX;
const ON_PATH: u32 = u32::MAX - 1;

/// Build the full successor map and collect attractors in order of first
/// discovery when scanning states `0, 1, 2, ...`.
pub fn enumerate_attractors(net: &ClassicalNet) -> Result<StateGraph> {
    let n = net.len();
    if n > STATE_GRAPH_LIMIT {
        return Err(QabnError::Resource(format!(
            "state graph for {n} variables exceeds the limit of {STATE_GRAPH_LIMIT}"
        )));
    }
    let size = 1usize << n;
    let successor: Vec<u32> = (0..size as u64).into_par_iter().map(|s| net.step_bits(s) as u32).collect();

    let mut basin = vec![UNSEEN; size];
    let mut attractors: Vec<Attractor> = Vec::new();
    let mut path = Vec::new();
    for s in 0..size {
        if basin[s] != UNSEEN {
            continue;
        }
        path.clear();
        let mut x = s;
        while basin[x] == UNSEEN {
            basin[x] = ON_PATH;
            path.push(x);
            x = successor[x] as usize;
        }
        let id = if basin[x] == ON_PATH {
            let at = path.iter().position(|&p| p == x).expect("revisited state is on the path");
            let mut cycle: Vec<u64> = path[at..].iter().map(|&p| p as u64).collect();
            let min_at = (0..cycle.len()).min_by_key(|&i| cycle[i]).expect("cycle is nonempty");
            cycle.rotate_left(min_at);
            attractors.push(Attractor { states: cycle, basin_size: 0 });
            (attractors.len() - 1) as u32
        } else {
            basin[x]
        };
        for &p in &path {
            basin[p] = id;
        }
        attractors[id as usize].basin_size += path.len() as u64;
    }
    Ok(StateGraph { n, successor, attractors, basin })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AttractorSummary {
    pub states: Vec<String>,
    pub length: usize,
    pub basin_size: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AttractorReport {
    pub variables: usize,
    pub attractors: Vec<AttractorSummary>,
}

impl StateGraph {
    pub fn report(&self, net: &ClassicalNet) -> AttractorReport {
        AttractorReport {
            variables: self.n,
            attractors: self
                .attractors
                .iter()
                .map(|a| AttractorSummary {
                    states: a.states.iter().map(|&s| net.format_state(s)).collect(),
                    length: a.states.len(),
                    basin_size: a.basin_size,
                })
                .collect(),
        }
    }

    /// Graphviz rendering of the state graph, clustered by basin.
    pub fn to_dot(&self, net: &ClassicalNet) -> String {
        let mut out = String::from("digraph states {\n  node [shape=box, fontname=monospace];\n");
        for (id, _) in self.attractors.iter().enumerate() {
            out.push_str(&format!("  subgraph cluster_{id} {{\n    label=\"attractor {}\";\n", id + 1));
            for s in (0..self.successor.len()).filter(|&s| self.basin[s] as usize == id) {
                out.push_str(&format!("    s{} [label=\"{}\"];\n", s, net.format_state(s as u64)));
            }
            out.push_str("  }\n");
        }
        for (s, &t) in self.successor.iter().enumerate() {
            out.push_str(&format!("  s{s} -> s{t};\n"));
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassicalFrozen {
    pub frozen: Vec<usize>,
    pub islands: Vec<Vec<usize>>,
}

/// Variables constant across every row of a recorded trajectory.
pub fn frozen_from_trajectory(rows: &[Vec<bool>]) -> Result<ClassicalFrozen> {
    let Some(first) = rows.first() else {
        return Err(QabnError::Domain("empty trajectory".into()));
    };
    if let Some(bad) = rows.iter().find(|r| r.len() != first.len()) {
        return Err(QabnError::SizeMismatch { state: bad.len(), operator: first.len() });
    }
    let frozen: Vec<bool> = (0..first.len()).map(|i| rows.iter().all(|r| r[i] == first[i])).collect();
    Ok(ClassicalFrozen { frozen: (0..frozen.len()).filter(|&i| frozen[i]).collect(), islands: islands(&frozen) })
}

/// Frozen variables over steps `0..=horizon` from `initial`.
pub fn classical_frozen_cores(net: &ClassicalNet, initial: &[bool], horizon: u64) -> Result<ClassicalFrozen> {
    if horizon == 0 {
        return Err(QabnError::Domain("horizon must be at least 1".into()));
    }
    let mut x = net.pack(initial)?;
    let mut rows = vec![net.unpack(x)];
    for _ in 0..horizon {
        x = net.step_bits(x);
        rows.push(net.unpack(x));
    }
    frozen_from_trajectory(&rows)
}

/// Uniformly random net: every variable gets a uniform `k`-input truth table
/// and `k` inputs, distinct whenever `k <= n`.
pub fn random_classical_net(rng: &mut impl Rng, n: usize, k: usize) -> Result<ClassicalNet> {
    let nodes = (0..n)
        .map(|_| {
            let table = TruthTable::from_bits(k, rng.gen_range(0..1u32 << (1 << k)) as u16)?;
            let inputs = if k <= n {
                rand::seq::index::sample(rng, n, k).into_vec()
            } else {
                (0..k).map(|_| rng.gen_range(0..n)).collect()
            };
            Ok(ClassicalNode { function: FunctionRef::from_table(table), inputs })
        })
        .collect::<Result<Vec<_>>>()?;
    ClassicalNet::new(nodes)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnsembleStats {
    pub seed: u64,
    pub n: usize,
    pub k: usize,
    pub samples: usize,
    pub median: f64,
    pub mean: f64,
    pub min: u64,
    pub max: u64,
    /// Attractor length to number of samples.
    pub histogram: BTreeMap<u64, usize>,
}

/// Attractor lengths reached from random initial states of random nets.
/// Sample `i` draws from its own ChaCha stream, so results do not depend on
/// scheduling.
pub fn ensemble_cycle_stats(seed: u64, n: usize, k: usize, samples: usize) -> Result<EnsembleStats> {
    if n == 0 || n > ENSEMBLE_LIMIT {
        return Err(QabnError::Resource(format!("ensemble size n={n} must be in 1..={ENSEMBLE_LIMIT}")));
    }
    if !(1..=crate::boolean::MAX_ARITY).contains(&k) {
        return Err(QabnError::Domain(format!("arity {k} is outside 1..={}", crate::boolean::MAX_ARITY)));
    }
    if samples == 0 {
        return Err(QabnError::Domain("samples must be at least 1".into()));
    }
    let mut lengths: Vec<u64> = (0..samples as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i);
            let net = random_classical_net(&mut rng, n, k)?;
            let start = rng.gen_range(0..1u64 << n);
            Ok(trajectory_cycle(&net, start).1)
        })
        .collect::<Result<_>>()?;

    let mut histogram = BTreeMap::new();
    for &l in &lengths {
        *histogram.entry(l).or_insert(0) += 1;
    }
    lengths.sort_unstable();
    let mid = samples / 2;
    let median = if samples % 2 == 1 { lengths[mid] as f64 } else { 0.5 * (lengths[mid - 1] + lengths[mid]) as f64 };
    Ok(EnsembleStats {
        seed,
        n,
        k,
        samples,
        median,
        mean: lengths.iter().sum::<u64>() as f64 / samples as f64,
        min: lengths[0],
        max: lengths[samples - 1],
        histogram,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn node(name: &str, inputs: &[usize]) -> ClassicalNode {
        ClassicalNode { function: FunctionRef::parse(name).unwrap(), inputs: inputs.to_vec() }
    }

    fn and_or_or() -> ClassicalNet {
        ClassicalNet::new(vec![node("AND", &[1, 2]), node("OR", &[0, 2]), node("OR", &[0, 1])]).unwrap()
    }

    fn bits(s: &str) -> Vec<bool> {
        s.chars().map(|c| c == '1').collect()
    }

    #[test]
    fn and_or_or_transitions() {
        let net = and_or_or();
        for (from, to) in
            [("001", "010"), ("010", "001"), ("000", "000"), ("111", "111"), ("100", "011"), ("011", "111")]
        {
            assert_eq!(classical_step(&net, &bits(from)).unwrap(), bits(to), "{from}");
        }
    }

    #[test]
    fn and_or_or_attractors() {
        let net = and_or_or();
        let g = enumerate_attractors(&net).unwrap();
        let r = g.report(&net);
        let got: Vec<(Vec<String>, u64)> = r.attractors.iter().map(|a| (a.states.clone(), a.basin_size)).collect();
        let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        assert_eq!(got, vec![(s(&["000"]), 1), (s(&["001", "010"]), 2), (s(&["111"]), 5)]);
        assert_eq!(trajectory_cycle(&net, 0b100), (2, 1));
        assert!(g.to_dot(&net).contains("s4 -> s3;"));
    }

    #[test]
    fn constant_net_has_one_fixed_point() {
        let net = ClassicalNet::new((0..4).map(|i| node("CONST0:2", &[i, (i + 1) % 4])).collect()).unwrap();
        let g = enumerate_attractors(&net).unwrap();
        assert_eq!(g.attractors, vec![Attractor { states: vec![0], basin_size: 16 }]);
        let f = classical_frozen_cores(&net, &[false; 4], 3).unwrap();
        assert_eq!(f.frozen, [0, 1, 2, 3]);
        assert!(f.islands.is_empty());
    }

    #[test]
    fn seven_variable_fixture() {
        let rows: Vec<Vec<bool>> = [
            "0101001", "1011110", "0111101", "1111010", "0101111", "1001100", "0011011", "1011010", "1101111",
            "0101101",
        ]
        .iter()
        .map(|r| bits(r))
        .collect();
        let f = frozen_from_trajectory(&rows).unwrap();
        assert_eq!(f.frozen, [3]);
        assert_eq!(f.islands, vec![vec![0, 1, 2], vec![4, 5, 6]]);
    }

    #[test]
    fn validation_and_guards() {
        assert!(ClassicalNet::new(vec![node("AND", &[0])]).is_err());
        assert!(ClassicalNet::new(vec![node("AND", &[0, 1])]).is_err());
        let big = ClassicalNet::new((0..23).map(|i| node("ID:1", &[i])).collect()).unwrap();
        assert!(matches!(enumerate_attractors(&big), Err(QabnError::Resource(_))));
        assert!(matches!(ensemble_cycle_stats(0, 21, 2, 1), Err(QabnError::Resource(_))));
    }

    #[test]
    fn ensemble_is_deterministic_and_bounded() {
        let a = ensemble_cycle_stats(11, 8, 2, 50).unwrap();
        assert_eq!(a, ensemble_cycle_stats(11, 8, 2, 50).unwrap());
        assert_eq!(a.histogram.values().sum::<usize>(), 50);
        let one = ensemble_cycle_stats(3, 1, 2, 64).unwrap();
        assert!(one.histogram.keys().all(|l| [1, 2].contains(l)));
    }
}
