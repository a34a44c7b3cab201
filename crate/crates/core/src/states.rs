//! The X-state data model.
//!
//! An X-state is a two-qubit density matrix whose only nonzero entries sit on
//! the main diagonal and the anti-diagonal, all of them real:
//!
//! ```text
//!         | r11   .    .   r14 |
//!   rho = |  .   r22  r23   .  |      basis order {|00>, |01>, |10>, |11>}
//!         |  .   r23  r33   .  |
//!         | r14   .    .   r44 |
//! ```
//!
//! The module provides the two initial families studied here (a pure
//! `cos a |00> + sin a |11>` state and a rank-two Bell mixture), the Bloch
//! decomposition `(c1, c2, c3, r, s)`, dense export for the oracle paths and
//! validation diagnostics.

use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::qmath::CMat4;
use crate::{Error, Result};

/// Which initial family a parameter value refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// `cos(alpha)|00> + sin(alpha)|11>`, parameterized by `alpha`.
    Pure,
    /// `v |psi><psi| + (1 - v) |phi><phi|` with the two triplet Bell states.
    Mixed,
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pure" => Ok(Family::Pure),
            "mixed" => Ok(Family::Mixed),
            other => Err(Error::InvalidGrid(format!(
                "unknown family '{other}' (expected pure|mixed)"
            ))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Pure => "pure",
            Family::Mixed => "mixed",
        })
    }
}

/// Real two-qubit X-shaped density matrix.
///
/// Invariants (enforced by [`XState::new`], reported by [`validate`]):
/// unit trace within 1e-9, diagonals above -1e-12, and block positivity
/// `r14^2 <= r11 r44` and `r23^2 <= r22 r33` within 1e-12.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct XState {
    pub r11: f64,
    pub r22: f64,
    pub r33: f64,
    pub r44: f64,
    pub r14: f64,
    pub r23: f64,
}

impl XState {
    /// Builds an X-state, rejecting parameter sets that fail validation.
    pub fn new(r11: f64, r22: f64, r33: f64, r44: f64, r14: f64, r23: f64) -> Result<Self> {
        let state = XState {
            r11,
            r22,
            r33,
            r44,
            r14,
            r23,
        };
        let diag = validate(&state);
        if diag.pass {
            Ok(state)
        } else {
            Err(Error::InvalidState(diag.to_string()))
        }
    }

    pub fn trace(&self) -> f64 {
        self.r11 + self.r22 + self.r33 + self.r44
    }

    /// The maximally mixed state `I/4`.
    pub fn maximally_mixed() -> Self {
        XState {
            r11: 0.25,
            r22: 0.25,
            r33: 0.25,
            r44: 0.25,
            r14: 0.0,
            r23: 0.0,
        }
    }

    /// Draws a valid X-state uniformly: diagonals from a flat Dirichlet,
    /// then each coherence uniform inside its positivity bound.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let mut diag = [0.0f64; 4];
        let mut sum = 0.0;
        for d in &mut diag {
            let u: f64 = rng.gen();
            // Exp(1) variates normalize to a flat Dirichlet on the simplex.
            *d = (-(1.0 - u).ln()).max(1e-300);
            sum += *d;
        }
        for d in &mut diag {
            *d /= sum;
        }
        let f14: f64 = rng.gen_range(-1.0..=1.0);
        let f23: f64 = rng.gen_range(-1.0..=1.0);
        XState {
            r11: diag[0],
            r22: diag[1],
            r33: diag[2],
            r44: diag[3],
            r14: f14 * (diag[0] * diag[3]).sqrt(),
            r23: f23 * (diag[1] * diag[2]).sqrt(),
        }
    }

    /// JSON with 17-significant-digit floats:
    /// `{"r11":..., "r22":..., "r33":..., "r44":..., "r14":..., "r23":...}`.
    pub fn to_json(&self) -> String {
        crate::jsonfmt::to_json_string(self).expect("XState serialization cannot fail")
    }

    /// Parses and validates the JSON form produced by [`XState::to_json`].
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: XState = serde_json::from_str(text)?;
        XState::new(raw.r11, raw.r22, raw.r33, raw.r44, raw.r14, raw.r23)
    }
}

/// The pure family `cos(alpha)|00> + sin(alpha)|11>` as a density matrix.
///
/// Entangled for `alpha` in the open interval; the closed endpoints are
/// accepted and give product states.
pub fn pure_family(alpha: f64) -> Result<XState> {
    if !(0.0..=FRAC_PI_2).contains(&alpha) {
        return Err(Error::ParamOutOfRange {
            name: "alpha",
            value: alpha,
            lo: 0.0,
            hi: FRAC_PI_2,
        });
    }
    let (sin, cos) = alpha.sin_cos();
    Ok(XState {
        r11: cos * cos,
        r22: 0.0,
        r33: 0.0,
        r44: sin * sin,
        r14: cos * sin,
        r23: 0.0,
    })
}

/// The rank-two Bell mixture `v |psi><psi| + (1 - v) |phi><phi|` with
/// `|psi> = (|00> + |11>)/sqrt(2)` and `|phi> = (|01> + |10>)/sqrt(2)`.
///
/// Separable exactly at `v = 1/2`.
pub fn mixed_family(v: f64) -> Result<XState> {
    if !(0.0..=1.0).contains(&v) {
        return Err(Error::ParamOutOfRange {
            name: "v",
            value: v,
            lo: 0.0,
            hi: 1.0,
        });
    }
    let half_v = 0.5 * v;
    let half_w = 0.5 * (1.0 - v);
    Ok(XState {
        r11: half_v,
        r22: half_w,
        r33: half_w,
        r44: half_v,
        r14: half_v,
        r23: half_w,
    })
}

/// Bloch parameters of an X-state: correlation coefficients
/// `c_i = <sigma_i (x) sigma_i>` and local z-polarizations
/// `r = <sigma_z (x) I>`, `s = <I (x) sigma_z>`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BlochX {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub r: f64,
    pub s: f64,
}

/// Extracts the Bloch parameters of `rho`.
pub fn bloch_extract(rho: &XState) -> BlochX {
    BlochX {
        c1: 2.0 * (rho.r23 + rho.r14),
        c2: 2.0 * (rho.r23 - rho.r14),
        c3: rho.r11 - rho.r22 - rho.r33 + rho.r44,
        r: rho.r11 + rho.r22 - rho.r33 - rho.r44,
        s: rho.r11 - rho.r22 + rho.r33 - rho.r44,
    }
}

/// Rebuilds the X-state with the given Bloch parameters.
///
/// Fails if the parameter combination does not describe a positive matrix.
pub fn bloch_assemble(b: &BlochX) -> Result<XState> {
    XState::new(
        0.25 * (1.0 + b.c3 + b.r + b.s),
        0.25 * (1.0 - b.c3 + b.r - b.s),
        0.25 * (1.0 - b.c3 - b.r + b.s),
        0.25 * (1.0 + b.c3 - b.r - b.s),
        0.25 * (b.c1 - b.c2),
        0.25 * (b.c1 + b.c2),
    )
}

/// Dense Hermitian 4x4 form of `rho` for the oracle paths.
pub fn to_dense(rho: &XState) -> CMat4 {
    let mut m = CMat4::zeros();
    let re = |x: f64| Complex64::new(x, 0.0);
    m.set(0, 0, re(rho.r11));
    m.set(1, 1, re(rho.r22));
    m.set(2, 2, re(rho.r33));
    m.set(3, 3, re(rho.r44));
    m.set(0, 3, re(rho.r14));
    m.set(3, 0, re(rho.r14));
    m.set(1, 2, re(rho.r23));
    m.set(2, 1, re(rho.r23));
    m
}

/// Validation diagnostics for a candidate X-state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateDiagnostics {
    /// Sum of the diagonal entries.
    pub trace: f64,
    /// Smaller of the two block determinants `r11 r44 - r14^2` and
    /// `r22 r33 - r23^2`.
    pub min_block_det: f64,
    /// Most negative diagonal entry.
    pub min_diagonal: f64,
    /// True iff all X-state invariants hold.
    pub pass: bool,
}

impl fmt::Display for StateDiagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "trace = {}, min block det = {}, min diagonal = {} => {}",
            self.trace,
            self.min_block_det,
            self.min_diagonal,
            if self.pass { "pass" } else { "fail" }
        )
    }
}

/// Checks unit trace, diagonal nonnegativity and 2x2 block positivity.
pub fn validate(rho: &XState) -> StateDiagnostics {
    let trace = rho.trace();
    let det_outer = rho.r11 * rho.r44 - rho.r14 * rho.r14;
    let det_inner = rho.r22 * rho.r33 - rho.r23 * rho.r23;
    let min_block_det = det_outer.min(det_inner);
    let min_diagonal = rho.r11.min(rho.r22).min(rho.r33).min(rho.r44);
    let finite = [rho.r11, rho.r22, rho.r33, rho.r44, rho.r14, rho.r23]
        .iter()
        .all(|x| x.is_finite());
    let pass = finite
        && (trace - 1.0).abs() <= 1e-9
        && min_diagonal >= -1e-12
        && min_block_det >= -1e-12;
    StateDiagnostics {
        trace,
        min_block_det,
        min_diagonal,
        pass,
    }
}

/// Proptest generator for valid X-states, shared by the unit tests of the
/// other modules.
#[cfg(test)]
pub(crate) fn arb_xstate() -> impl proptest::strategy::Strategy<Value = XState> {
    use proptest::prelude::*;
    (
        prop::array::uniform4(1e-6f64..=0.999_999),
        -1.0f64..=1.0,
        -1.0f64..=1.0,
    )
        .prop_map(|(us, f14, f23)| {
            let mut diag = us.map(|u| -(1.0 - u).ln());
            let sum: f64 = diag.iter().sum();
            for d in &mut diag {
                *d /= sum;
            }
            XState {
                r11: diag[0],
                r22: diag[1],
                r33: diag[2],
                r44: diag[3],
                r14: f14 * (diag[0] * diag[3]).sqrt(),
                r23: f23 * (diag[1] * diag[2]).sqrt(),
            }
        })
}
