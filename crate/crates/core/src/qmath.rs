//! Scalar and small-matrix numeric kernels.
//!
//! Base-2 entropy terms plus dense complex 2x2/4x4 algebra. The dense types
//! exist for the oracle paths (literal Kraus sums, projector statistics,
//! correlation-matrix traces); the production code works on X-state
//! parameters directly and never touches them.

use num_complex::Complex64;

use crate::{Error, Result};

/// Tolerance below which slightly negative probabilities produced by
/// floating-point channel algebra are clamped to zero.
pub const EPS_POS: f64 = 1e-12;

/// `x * log2(x)` with the continuous extension `xlogx(0) = 0`.
///
/// Values in `[-EPS_POS, 0)` are treated as rounding noise and clamped to
/// zero; anything more negative is a domain error.
pub fn xlogx(x: f64) -> Result<f64> {
    if x < -EPS_POS {
        return Err(Error::EntropyDomain(x));
    }
    if x <= 0.0 {
        return Ok(0.0);
    }
    Ok(x * x.log2())
}

/// A discrete probability distribution: nonnegative weights summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbDist {
    weights: Vec<f64>,
}

impl ProbDist {
    /// Validates the weights, clamping rounding-level negatives to zero.
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidDistribution("empty weight list".into()));
        }
        let mut clamped = weights;
        for w in &mut clamped {
            if !w.is_finite() {
                return Err(Error::InvalidDistribution(format!("non-finite weight {w}")));
            }
            if *w < -EPS_POS {
                return Err(Error::InvalidDistribution(format!("negative weight {w}")));
            }
            if *w < 0.0 {
                *w = 0.0;
            }
        }
        let sum: f64 = clamped.iter().sum();
        if (sum - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidDistribution(format!("weights sum to {sum}")));
        }
        Ok(Self { weights: clamped })
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }
}

/// Shannon entropy of `d` in bits.
pub fn shannon(d: &ProbDist) -> f64 {
    -d.weights
        .iter()
        .map(|&w| xlogx(w).expect("ProbDist weights are nonnegative"))
        .sum::<f64>()
}

const C_ZERO: Complex64 = Complex64::new(0.0, 0.0);
const C_ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Dense complex 2x2 matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CMat2(pub [Complex64; 4]);

impl CMat2 {
    pub const fn zeros() -> Self {
        CMat2([C_ZERO; 4])
    }

    pub const fn identity() -> Self {
        CMat2([C_ONE, C_ZERO, C_ZERO, C_ONE])
    }

    /// Real diagonal matrix `diag(a, b)`.
    pub fn diag(a: f64, b: f64) -> Self {
        CMat2([Complex64::new(a, 0.0), C_ZERO, C_ZERO, Complex64::new(b, 0.0)])
    }

    pub const fn pauli_x() -> Self {
        CMat2([C_ZERO, C_ONE, C_ONE, C_ZERO])
    }

    pub const fn pauli_y() -> Self {
        CMat2([
            C_ZERO,
            Complex64::new(0.0, -1.0),
            Complex64::new(0.0, 1.0),
            C_ZERO,
        ])
    }

    pub const fn pauli_z() -> Self {
        CMat2([C_ONE, C_ZERO, C_ZERO, Complex64::new(-1.0, 0.0)])
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.0[2 * row + col]
    }

    pub fn mul(&self, other: &CMat2) -> CMat2 {
        let mut out = CMat2::zeros();
        for i in 0..2 {
            for j in 0..2 {
                let mut acc = C_ZERO;
                for k in 0..2 {
                    acc += self.get(i, k) * other.get(k, j);
                }
                out.0[2 * i + j] = acc;
            }
        }
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> CMat2 {
        let mut out = CMat2::zeros();
        for i in 0..2 {
            for j in 0..2 {
                out.0[2 * i + j] = self.get(j, i).conj();
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        self.0[0] + self.0[3]
    }

    pub fn scale(&self, k: f64) -> CMat2 {
        let mut out = *self;
        for e in &mut out.0 {
            *e *= k;
        }
        out
    }

    pub fn add(&self, other: &CMat2) -> CMat2 {
        let mut out = *self;
        for (e, o) in out.0.iter_mut().zip(other.0.iter()) {
            *e += o;
        }
        out
    }

    pub fn sub(&self, other: &CMat2) -> CMat2 {
        let mut out = *self;
        for (e, o) in out.0.iter_mut().zip(other.0.iter()) {
            *e -= o;
        }
        out
    }

    /// Largest entry modulus (max norm).
    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|e| e.norm()).fold(0.0, f64::max)
    }
}

/// Dense complex 4x4 matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CMat4(pub [Complex64; 16]);

impl CMat4 {
    pub const fn zeros() -> Self {
        CMat4([C_ZERO; 16])
    }

    pub fn identity() -> Self {
        let mut out = CMat4::zeros();
        for i in 0..4 {
            out.0[4 * i + i] = C_ONE;
        }
        out
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.0[4 * row + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.0[4 * row + col] = value;
    }

    pub fn mul(&self, other: &CMat4) -> CMat4 {
        let mut out = CMat4::zeros();
        for i in 0..4 {
            for j in 0..4 {
                let mut acc = C_ZERO;
                for k in 0..4 {
                    acc += self.get(i, k) * other.get(k, j);
                }
                out.0[4 * i + j] = acc;
            }
        }
        out
    }

    pub fn adjoint(&self) -> CMat4 {
        let mut out = CMat4::zeros();
        for i in 0..4 {
            for j in 0..4 {
                out.0[4 * i + j] = self.get(j, i).conj();
            }
        }
        out
    }

    /// Entrywise complex conjugate (no transpose).
    pub fn conj(&self) -> CMat4 {
        let mut out = *self;
        for e in &mut out.0 {
            *e = e.conj();
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..4).map(|i| self.get(i, i)).sum()
    }

    pub fn scale(&self, k: f64) -> CMat4 {
        let mut out = *self;
        for e in &mut out.0 {
            *e *= k;
        }
        out
    }

    pub fn add(&self, other: &CMat4) -> CMat4 {
        let mut out = *self;
        for (e, o) in out.0.iter_mut().zip(other.0.iter()) {
            *e += o;
        }
        out
    }

    pub fn sub(&self, other: &CMat4) -> CMat4 {
        let mut out = *self;
        for (e, o) in out.0.iter_mut().zip(other.0.iter()) {
            *e -= o;
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|e| e.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &CMat4) -> f64 {
        self.sub(other).max_abs()
    }
}

/// Kronecker product `a (x) b` in the basis order {|00>, |01>, |10>, |11>}:
/// qubit A indexes the outer 2x2 block structure, qubit B the inner.
pub fn tensor2x2(a: &CMat2, b: &CMat2) -> CMat4 {
    let mut out = CMat4::zeros();
    for ai in 0..2 {
        for aj in 0..2 {
            for bi in 0..2 {
                for bj in 0..2 {
                    out.0[4 * (2 * ai + bi) + (2 * aj + bj)] = a.get(ai, aj) * b.get(bi, bj);
                }
            }
        }
    }
    out
}
