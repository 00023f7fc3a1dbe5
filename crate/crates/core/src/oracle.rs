//! Unitary oracles for classical Boolean functions.
//!
//! Every oracle here is a basis permutation (bit oracle) or a diagonal sign
//! pattern (phase oracle), so both are stored exactly as integer data.
//! Within a bit oracle's block the logical inputs occupy the high bits and
//! the ancilla `y` is the least significant bit.

use serde::{Deserialize, Serialize};

use crate::boolean::TruthTable;
use crate::error::{QabnError, Result};
use crate::perm::BasisPermutation;

/// `|x>|y> -> |x>|y xor f(x)>` on `k + 1` qubits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BitOracle {
    pub table: TruthTable,
    pub index_map: BasisPermutation,
}

impl BitOracle {
    pub fn qubit_count(&self) -> usize {
        self.table.arity() + 1
    }
}

/// `|x> -> (-1)^f(x) |x>` on `k` qubits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhaseOracle {
    pub qubit_count: usize,
    pub signs: Vec<i8>,
}

pub fn build_bit_oracle(table: &TruthTable) -> BitOracle {
    let map = (0..2 * table.len())
        .map(|b| {
            let x = b >> 1;
            b ^ table.output(x) as usize
        })
        .collect();
    BitOracle { table: *table, index_map: BasisPermutation::from_vec(map).expect("bit oracle is a bijection") }
}

pub fn build_phase_oracle(table: &TruthTable) -> PhaseOracle {
    PhaseOracle {
        qubit_count: table.arity(),
        signs: (0..table.len()).map(|x| if table.output(x) == 0 { 1 } else { -1 }).collect(),
    }
}

/// `U_f1 (x) U_f2 (x) ... (x) U_fn` with the first oracle on the most
/// significant block.
pub fn tensor_network_oracle(oracles: &[BitOracle]) -> Result<BasisPermutation> {
    let (first, rest) =
        oracles.split_first().ok_or_else(|| QabnError::Domain("cannot tensor an empty list of oracles".into()))?;
    Ok(rest.iter().fold(first.index_map.clone(), |acc, o| acc.tensor(&o.index_map)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolean::{FunctionCatalog, FunctionRef};

    fn table(name: &str) -> TruthTable {
        FunctionRef::parse(name).unwrap().table
    }

    #[test]
    fn or_oracle_swaps_the_11_rows() {
        let o = build_bit_oracle(&table("OR:2"));
        assert_eq!(o.index_map.image(6), 7);
        assert_eq!(o.index_map.image(7), 6);
        assert_eq!(o.index_map.image(0), 0);
        assert_eq!(o.index_map.image(2), 3);
        assert_eq!(o.qubit_count(), 3);
    }

    #[test]
    fn const0_oracle_is_identity() {
        assert!(build_bit_oracle(&table("CONST0:1")).index_map.is_identity());
    }

    #[test]
    fn one_input_xor_is_cnot() {
        let o = build_bit_oracle(&table("XOR:1"));
        assert_eq!(o.index_map.as_slice(), &[0, 1, 3, 2]);
    }

    #[test]
    fn phase_oracles() {
        assert_eq!(build_phase_oracle(&table("CONST0:1")).signs, vec![1, 1]);
        assert_eq!(build_phase_oracle(&table("AND:2")).signs, vec![1, 1, 1, -1]);
        assert_eq!(build_phase_oracle(&table("NOT:1")).signs, vec![-1, 1]);
    }

    #[test]
    fn tensor_examples() {
        let or = build_bit_oracle(&table("OR:2"));
        assert_eq!(tensor_network_oracle(std::slice::from_ref(&or)).unwrap(), or.index_map);

        let c0 = build_bit_oracle(&table("CONST0:1"));
        assert!(tensor_network_oracle(&[c0.clone(), c0]).unwrap().is_identity());

        let and = build_bit_oracle(&table("AND:2"));
        let both = tensor_network_oracle(&[and, or]).unwrap();
        assert_eq!(both.image(0b110110), 0b111111);

        assert!(tensor_network_oracle(&[]).is_err());
    }

    #[test]
    fn every_catalog_oracle_is_an_involution_preserving_inputs() {
        for (name, t) in FunctionCatalog.entries() {
            let o = build_bit_oracle(&t);
            assert!(o.index_map.is_involution(), "{name}");
            for b in 0..o.index_map.len() {
                assert_eq!(o.index_map.image(b) >> 1, b >> 1, "{name}");
            }
            // dense form: exactly one 1 per row and column, symmetric (M = M^T = M^-1)
            let m = o.index_map.to_dense();
            for i in 0..m.len() {
                assert_eq!(m[i].iter().map(|&v| v as usize).sum::<usize>(), 1);
                assert_eq!(m.iter().map(|row| row[i] as usize).sum::<usize>(), 1);
                for (j, row) in m.iter().enumerate() {
                    assert_eq!(m[i][j], row[i]);
                }
            }
        }
    }

    // Swapping tensor order and relabeling indices (hi, lo) -> (lo, hi) gives
    // the same operator.
    #[test]
    fn disjoint_blocks_commute() {
        let entries = FunctionCatalog.entries();
        for (_, a) in &entries {
            for (_, b) in &entries {
                let oa = build_bit_oracle(a);
                let ob = build_bit_oracle(b);
                let (na, nb) = (oa.index_map.len(), ob.index_map.len());
                let ab = tensor_network_oracle(&[oa.clone(), ob.clone()]).unwrap();
                let ba = tensor_network_oracle(&[ob, oa]).unwrap();
                // (ia * nb + ib) in AB is (ib * na + ia) in BA
                let relabel = |i: usize| (i % nb) * na + i / nb;
                for i in 0..na * nb {
                    assert_eq!(relabel(ab.image(i)), ba.image(relabel(i)));
                }
            }
        }
    }
}
