//! Single-qubit reduced states, von Neumann entropy and trace distance, plus
//! a small full-density-matrix backend used to cross-check the pure-state
//! path.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{QabnError, Result};
use crate::network::{PureState, StepOperator};

/// Eigenvalues below this are treated as exact zeros in entropies.
pub const EIGEN_ZERO: f64 = 1e-12;
/// Most negative eigenvalue tolerated before a state is rejected as non-PSD.
pub const PSD_SLACK: f64 = 1e-10;
/// The density backend materializes `4^q` entries; keep it small.
pub const DENSITY_QUBIT_LIMIT: usize = 6;

/// Anything whose spectrum defines an entropy.
pub trait DensityOperator {
    fn eigenvalues(&self) -> Vec<f64>;
}

/// `-sum(l log2 l)` over eigenvalues, with `0 log 0 = 0`.
pub fn von_neumann_entropy(rho: &impl DensityOperator) -> Result<f64> {
    entropy_of_spectrum(&rho.eigenvalues())
}

pub fn entropy_of_spectrum(eigenvalues: &[f64]) -> Result<f64> {
    let mut s = 0.0;
    for &l in eigenvalues {
        if !(-PSD_SLACK..=1.0 + PSD_SLACK).contains(&l) {
            return Err(QabnError::Numerical(format!("eigenvalue {l} outside [0, 1]")));
        }
        if l > EIGEN_ZERO {
            s -= l * l.log2();
        }
    }
    Ok(s.max(0.0))
}

/// A 2x2 density matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedState {
    pub m: [[Complex64; 2]; 2],
}

impl ReducedState {
    pub fn new(m: [[Complex64; 2]; 2]) -> ReducedState {
        ReducedState { m }
    }

    pub fn from_real(r00: f64, r01: f64, r11: f64) -> ReducedState {
        let c = |x| Complex64::new(x, 0.0);
        ReducedState { m: [[c(r00), c(r01)], [c(r01), c(r11)]] }
    }

    pub fn maximally_mixed() -> ReducedState {
        ReducedState::from_real(0.5, 0.0, 0.5)
    }

    pub fn trace(&self) -> Complex64 {
        self.m[0][0] + self.m[1][1]
    }

    pub fn rho00(&self) -> f64 {
        self.m[0][0].re
    }

    pub fn rho11(&self) -> f64 {
        self.m[1][1].re
    }

    pub fn rho01(&self) -> Complex64 {
        self.m[0][1]
    }

    /// Largest deviation from Hermiticity.
    pub fn hermiticity_error(&self) -> f64 {
        let diag = self.m[0][0].im.abs().max(self.m[1][1].im.abs());
        diag.max((self.m[0][1] - self.m[1][0].conj()).norm())
    }

    /// Checks Hermiticity and unit trace within 1e-12 and eigenvalues in
    /// `[-1e-10, 1 + 1e-10]`.
    pub fn validate(&self) -> Result<()> {
        if self.hermiticity_error() > 1e-12 {
            return Err(QabnError::Numerical(format!("not Hermitian: {:?}", self.m)));
        }
        if (self.trace() - Complex64::new(1.0, 0.0)).norm() > 1e-12 {
            return Err(QabnError::Numerical(format!("trace {} is not 1", self.trace())));
        }
        let [lo, hi] = self.spectrum();
        if lo < -PSD_SLACK || hi > 1.0 + PSD_SLACK {
            return Err(QabnError::Numerical(format!("eigenvalues {lo}, {hi} outside [0, 1]")));
        }
        Ok(())
    }

    /// Eigenvalues, ascending.
    pub fn spectrum(&self) -> [f64; 2] {
        hermitian_2x2_eigenvalues(self.m[0][0].re, self.m[1][1].re, self.m[0][1])
    }

    pub fn entropy(&self) -> Result<f64> {
        von_neumann_entropy(self)
    }

    /// Name the state if it is one of the four input states or I/2.
    pub fn label(&self, tol: f64) -> &'static str {
        let known = [
            ("0", ReducedState::from_real(1.0, 0.0, 0.0)),
            ("1", ReducedState::from_real(0.0, 0.0, 1.0)),
            ("+", ReducedState::from_real(0.5, 0.5, 0.5)),
            ("-", ReducedState::from_real(0.5, -0.5, 0.5)),
            ("I/2", ReducedState::maximally_mixed()),
        ];
        known
            .iter()
            .find(|(_, k)| trace_distance(self, k) < tol)
            .map(|(name, _)| *name)
            .unwrap_or(if self.spectrum()[0] > EIGEN_ZERO { "mixed" } else { "pure" })
    }
}

impl DensityOperator for ReducedState {
    fn eigenvalues(&self) -> Vec<f64> {
        self.spectrum().to_vec()
    }
}

fn hermitian_2x2_eigenvalues(a: f64, d: f64, off: Complex64) -> [f64; 2] {
    let mean = 0.5 * (a + d);
    let radius = (0.25 * (a - d) * (a - d) + off.norm_sqr()).sqrt();
    [mean - radius, mean + radius]
}

/// `(1/2) sum |eigenvalues of (a - b)|`.
pub fn trace_distance(a: &ReducedState, b: &ReducedState) -> f64 {
    let d00 = a.m[0][0].re - b.m[0][0].re;
    let d11 = a.m[1][1].re - b.m[1][1].re;
    let d01 = a.m[0][1] - b.m[0][1];
    let [l0, l1] = hermitian_2x2_eigenvalues(d00, d11, d01);
    0.5 * (l0.abs() + l1.abs())
}

/// Partial trace of a pure state down to qubit `i`.
pub fn reduced_qubit_state(state: &PureState, i: usize) -> Result<ReducedState> {
    let q = state.qubit_count();
    if i >= q {
        return Err(QabnError::OutOfRange { what: "qubit", index: i, limit: q });
    }
    let mask = state.qubit_mask(i);
    let mut m = [[Complex64::default(); 2]; 2];
    for (b, c) in state.nonzero() {
        if b & mask == 0 {
            m[0][0] += c.norm_sqr();
            let partner = state.amplitude(b | mask);
            m[0][1] += c * partner.conj();
        } else {
            m[1][1] += c.norm_sqr();
        }
    }
    m[1][0] = m[0][1].conj();
    Ok(ReducedState { m })
}

/// Reduced states of every qubit.
pub fn reduced_states(state: &PureState) -> Vec<ReducedState> {
    (0..state.qubit_count()).map(|i| reduced_qubit_state(state, i).expect("index in range")).collect()
}

/// Full `2^q x 2^q` density matrix; reference path for small networks.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    qubits: usize,
    rho: DMatrix<Complex64>,
}

impl DensityMatrix {
    pub fn from_pure(state: &PureState) -> Result<DensityMatrix> {
        let q = state.qubit_count();
        if q > DENSITY_QUBIT_LIMIT {
            return Err(QabnError::Resource(format!(
                "density backend is limited to {DENSITY_QUBIT_LIMIT} qubits, got {q}"
            )));
        }
        let psi = DMatrix::from_vec(1 << q, 1, state.to_vec());
        Ok(DensityMatrix { qubits: q, rho: &psi * psi.adjoint() })
    }

    pub fn qubit_count(&self) -> usize {
        self.qubits
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.rho
    }

    /// `rho -> W rho W^dagger` with `W` as an explicit permutation matrix.
    pub fn evolve(&self, op: &StepOperator) -> Result<DensityMatrix> {
        if op.qubit_count() != self.qubits {
            return Err(QabnError::SizeMismatch { state: self.qubits, operator: op.qubit_count() });
        }
        let n = 1 << self.qubits;
        let mut w = DMatrix::<Complex64>::zeros(n, n);
        for b in 0..n {
            w[(op.image(b), b)] = Complex64::new(1.0, 0.0);
        }
        Ok(DensityMatrix { qubits: self.qubits, rho: &w * &self.rho * w.adjoint() })
    }

    pub fn reduced(&self, i: usize) -> Result<ReducedState> {
        if i >= self.qubits {
            return Err(QabnError::OutOfRange { what: "qubit", index: i, limit: self.qubits });
        }
        let mask = 1usize << (self.qubits - 1 - i);
        let mut m = [[Complex64::default(); 2]; 2];
        for b in 0..1usize << self.qubits {
            if b & mask != 0 {
                continue;
            }
            for (r, row) in [b, b | mask].into_iter().enumerate() {
                for (c, col) in [b, b | mask].into_iter().enumerate() {
                    m[r][c] += self.rho[(row, col)];
                }
            }
        }
        Ok(ReducedState { m })
    }

    pub fn entropy(&self) -> Result<f64> {
        von_neumann_entropy(self)
    }

    /// `sum_i S(rho_i) - S(rho)`.
    pub fn multipartite_mutual_information(&self) -> Result<f64> {
        let mut total = 0.0;
        for i in 0..self.qubits {
            total += self.reduced(i)?.entropy()?;
        }
        Ok(total - self.entropy()?)
    }
}

impl DensityOperator for DensityMatrix {
    // nalgebra's Hermitian eigensolver can return non-finite values on
    // exactly sparse inputs; the SVD is robust. For Hermitian rho with every
    // eigenvalue above -1, the singular values of rho + I are exactly the
    // shifted eigenvalues, so negative eigenvalues stay detectable.
    fn eigenvalues(&self) -> Vec<f64> {
        let n = self.rho.nrows();
        let shifted = &self.rho + DMatrix::<Complex64>::identity(n, n);
        shifted.singular_values().iter().map(|s| s - 1.0).collect()
    }
}
