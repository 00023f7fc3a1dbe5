use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::{QabnError, Result};

use super::spec::Symbol;

/// Above this many qubits amplitudes are kept in a sparse map.
pub const DENSE_QUBIT_LIMIT: usize = 14;
/// Largest number of nonzero amplitudes a sparse state may hold.
pub const SPARSE_SUPPORT_LIMIT: usize = 1 << 22;
/// Basis indices are `usize`; leave headroom for shifts.
pub const MAX_QUBITS: usize = 62;

#[derive(Debug, Clone, PartialEq)]
enum Amplitudes {
    Dense(Vec<Complex64>),
    Sparse(BTreeMap<usize, Complex64>),
}

/// A pure state on `q` qubits; qubit 0 is the most significant index bit.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    qubits: usize,
    amps: Amplitudes,
}

impl PureState {
    /// Tensor product of single-qubit symbols, qubit 0 first.
    pub fn product(symbols: &[Symbol]) -> Result<PureState> {
        let q = symbols.len();
        if q == 0 || q > MAX_QUBITS {
            return Err(QabnError::Resource(format!("{q} qubits is outside 1..={MAX_QUBITS}")));
        }
        if q <= DENSE_QUBIT_LIMIT {
            let mut v = vec![Complex64::new(1.0, 0.0)];
            for s in symbols {
                let (a0, a1) = s.amplitudes();
                v = v.iter().flat_map(|&c| [c * a0, c * a1]).collect();
            }
            return Ok(PureState { qubits: q, amps: Amplitudes::Dense(v) });
        }
        let superposed = symbols.iter().filter(|s| !s.is_basis()).count();
        if superposed >= usize::BITS as usize || (1usize << superposed) > SPARSE_SUPPORT_LIMIT {
            return Err(QabnError::Resource(format!(
                "{superposed} superposed qubits exceed the sparse support limit of {SPARSE_SUPPORT_LIMIT}"
            )));
        }
        let mut map = BTreeMap::from([(0usize, Complex64::new(1.0, 0.0))]);
        for s in symbols {
            let (a0, a1) = s.amplitudes();
            let mut next = BTreeMap::new();
            for (&b, &c) in &map {
                if a0 != 0.0 {
                    next.insert(b << 1, c * a0);
                }
                if a1 != 0.0 {
                    next.insert((b << 1) | 1, c * a1);
                }
            }
            map = next;
        }
        Ok(PureState { qubits: q, amps: Amplitudes::Sparse(map) })
    }

    /// The computational basis state `|index>`.
    pub fn basis(qubits: usize, index: usize) -> Result<PureState> {
        if qubits == 0 || qubits > MAX_QUBITS || index >> qubits != 0 {
            return Err(QabnError::Domain(format!("basis index {index} on {qubits} qubits")));
        }
        let one = Complex64::new(1.0, 0.0);
        let amps = if qubits <= DENSE_QUBIT_LIMIT {
            let mut v = vec![Complex64::new(0.0, 0.0); 1 << qubits];
            v[index] = one;
            Amplitudes::Dense(v)
        } else {
            Amplitudes::Sparse(BTreeMap::from([(index, one)]))
        };
        Ok(PureState { qubits, amps })
    }

    /// Wrap a dense amplitude vector; its length must be a power of two and
    /// its norm one within 1e-12.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<PureState> {
        let len = amps.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(QabnError::Domain(format!("{len} amplitudes is not 2^q for q >= 1")));
        }
        let qubits = len.trailing_zeros() as usize;
        let state = PureState { qubits, amps: Amplitudes::Dense(amps) };
        let norm = state.norm_sqr();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(QabnError::Numerical(format!("squared norm {norm} is not 1")));
        }
        Ok(state)
    }

    pub fn qubit_count(&self) -> usize {
        self.qubits
    }

    pub fn dimension(&self) -> usize {
        1 << self.qubits
    }

    pub fn is_dense(&self) -> bool {
        matches!(self.amps, Amplitudes::Dense(_))
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        match &self.amps {
            Amplitudes::Dense(v) => v[index],
            Amplitudes::Sparse(m) => m.get(&index).copied().unwrap_or_default(),
        }
    }

    /// `(index, amplitude)` for every stored nonzero amplitude, ascending.
    pub fn nonzero(&self) -> Box<dyn Iterator<Item = (usize, Complex64)> + '_> {
        match &self.amps {
            Amplitudes::Dense(v) => Box::new(v.iter().copied().enumerate().filter(|(_, c)| *c != Complex64::default())),
            Amplitudes::Sparse(m) => Box::new(m.iter().map(|(&b, &c)| (b, c))),
        }
    }

    pub fn support_len(&self) -> usize {
        self.nonzero().count()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.nonzero().map(|(_, c)| c.norm_sqr()).sum()
    }

    /// Dense copy of the amplitudes.
    pub fn to_vec(&self) -> Vec<Complex64> {
        match &self.amps {
            Amplitudes::Dense(v) => v.clone(),
            Amplitudes::Sparse(m) => {
                let mut v = vec![Complex64::default(); self.dimension()];
                for (&b, &c) in m {
                    v[b] = c;
                }
                v
            }
        }
    }

    /// Elementwise comparison within `tol`.
    pub fn approx_eq(&self, other: &PureState, tol: f64) -> bool {
        if self.qubits != other.qubits {
            return false;
        }
        match (&self.amps, &other.amps) {
            (Amplitudes::Dense(a), Amplitudes::Dense(b)) => a.iter().zip(b).all(|(x, y)| (x - y).norm() <= tol),
            _ => {
                let mut indices: Vec<usize> = self.nonzero().chain(other.nonzero()).map(|(b, _)| b).collect();
                indices.sort_unstable();
                indices.dedup();
                indices.into_iter().all(|b| (self.amplitude(b) - other.amplitude(b)).norm() <= tol)
            }
        }
    }

    /// Relabel basis states: the amplitude at `b` moves to `image(b)`.
    pub fn relabel(&self, image: impl Fn(usize) -> usize) -> PureState {
        let amps = match &self.amps {
            Amplitudes::Dense(v) => {
                let mut out = vec![Complex64::default(); v.len()];
                for (b, &c) in v.iter().enumerate() {
                    out[image(b)] = c;
                }
                Amplitudes::Dense(out)
            }
            Amplitudes::Sparse(m) => Amplitudes::Sparse(m.iter().map(|(&b, &c)| (image(b), c)).collect()),
        };
        PureState { qubits: self.qubits, amps }
    }

    /// In-place relabeling through a lookup table; `scratch` is reused storage.
    pub(crate) fn relabel_with_table(&mut self, table: &[usize], scratch: &mut Vec<Complex64>) {
        match &mut self.amps {
            Amplitudes::Dense(v) => {
                scratch.clear();
                scratch.resize(v.len(), Complex64::default());
                for (b, &c) in v.iter().enumerate() {
                    scratch[table[b]] = c;
                }
                std::mem::swap(v, scratch);
            }
            Amplitudes::Sparse(m) => {
                *m = m.iter().map(|(&b, &c)| (table[b], c)).collect();
            }
        }
    }

    /// Apply X to `qubit`.
    pub fn bit_flip(&self, qubit: usize) -> Result<PureState> {
        if qubit >= self.qubits {
            return Err(QabnError::OutOfRange { what: "qubit", index: qubit, limit: self.qubits });
        }
        let mask = 1usize << (self.qubits - 1 - qubit);
        Ok(self.relabel(|b| b ^ mask))
    }

    /// Bit mask of `qubit` inside a basis index.
    pub fn qubit_mask(&self, qubit: usize) -> usize {
        1usize << (self.qubits - 1 - qubit)
    }
}
