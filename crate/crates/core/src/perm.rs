//! Permutations of computational-basis indices.

use serde::{Deserialize, Serialize};

use crate::error::{QabnError, Result};

/// A bijection on `0..len`, where entry `b` is the image of basis index `b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisPermutation {
    map: Vec<usize>,
}

impl BasisPermutation {
    pub fn identity(len: usize) -> BasisPermutation {
        BasisPermutation { map: (0..len).collect() }
    }

    /// Validate and wrap an image table.
    pub fn from_vec(map: Vec<usize>) -> Result<BasisPermutation> {
        let mut seen = vec![false; map.len()];
        for (b, &image) in map.iter().enumerate() {
            if image >= map.len() || std::mem::replace(&mut seen[image], true) {
                return Err(QabnError::Domain(format!("entry {b} -> {image} breaks bijectivity")));
            }
        }
        Ok(BasisPermutation { map })
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    #[inline]
    pub fn image(&self, b: usize) -> usize {
        self.map[b]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }

    /// `self` followed by `next`: `b -> next(self(b))`.
    pub fn then(&self, next: &BasisPermutation) -> BasisPermutation {
        assert_eq!(self.len(), next.len(), "composing permutations of different sizes");
        BasisPermutation { map: self.map.iter().map(|&b| next.map[b]).collect() }
    }

    pub fn inverse(&self) -> BasisPermutation {
        let mut inv = vec![0; self.len()];
        for (b, &image) in self.map.iter().enumerate() {
            inv[image] = b;
        }
        BasisPermutation { map: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(b, &image)| b == image)
    }

    pub fn is_involution(&self) -> bool {
        self.map.iter().enumerate().all(|(b, &image)| self.map[image] == b)
    }

    /// Kronecker product: `self` acts on the high-order factor.
    pub fn tensor(&self, low: &BasisPermutation) -> BasisPermutation {
        let n = low.len();
        let mut map = Vec::with_capacity(self.len() * n);
        for &hi in &self.map {
            map.extend(low.map.iter().map(|&lo| hi * n + lo));
        }
        BasisPermutation { map }
    }

    /// The orbit of `start`, beginning with `start` itself.
    pub fn cycle_of(&self, start: usize) -> Vec<usize> {
        let mut cycle = vec![start];
        let mut b = self.map[start];
        while b != start {
            cycle.push(b);
            b = self.map[b];
        }
        cycle
    }

    /// Disjoint cycle decomposition, each cycle starting at its smallest index.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let cycle = self.cycle_of(start);
            for &b in &cycle {
                seen[b] = true;
            }
            out.push(cycle);
        }
        out
    }

    /// Scatter `input` so that `output[image(b)] = input[b]`.
    pub fn scatter<T: Copy>(&self, input: &[T], output: &mut [T]) {
        assert_eq!(input.len(), self.len());
        assert_eq!(output.len(), self.len());
        for (b, &image) in self.map.iter().enumerate() {
            output[image] = input[b];
        }
    }

    /// Dense 0/1 matrix `M` with `M[image(b)][b] = 1`.
    pub fn to_dense(&self) -> Vec<Vec<u8>> {
        let mut m = vec![vec![0u8; self.len()]; self.len()];
        for (b, &image) in self.map.iter().enumerate() {
            m[image][b] = 1;
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_bijections() {
        assert!(BasisPermutation::from_vec(vec![0, 0]).is_err());
        assert!(BasisPermutation::from_vec(vec![0, 2]).is_err());
        assert!(BasisPermutation::from_vec(vec![1, 0]).is_ok());
    }

    #[test]
    fn inverse_and_compose() {
        let p = BasisPermutation::from_vec(vec![2, 0, 3, 1]).unwrap();
        assert!(p.then(&p.inverse()).is_identity());
        assert!(p.inverse().then(&p).is_identity());
        assert!(!p.is_involution());
    }

    #[test]
    fn cycles_cover_everything() {
        let p = BasisPermutation::from_vec(vec![1, 2, 0, 3, 5, 4]).unwrap();
        assert_eq!(p.cycles(), vec![vec![0, 1, 2], vec![3], vec![4, 5]]);
    }

    #[test]
    fn tensor_orders_factors() {
        let swap = BasisPermutation::from_vec(vec![1, 0]).unwrap();
        let id = BasisPermutation::identity(2);
        // swap on the high bit: 0<->2, 1<->3
        assert_eq!(swap.tensor(&id).as_slice(), &[2, 3, 0, 1]);
        assert_eq!(id.tensor(&swap).as_slice(), &[1, 0, 3, 2]);
    }
}
