//! Single-qubit decoherence channels applied one-sided to qubit B.
//!
//! Four channels, each with two Kraus operators:
//!
//! | channel | E0                  | E1                  | noiseless at |
//! |---------|---------------------|---------------------|--------------|
//! | PF      | sqrt(p) I           | sqrt(1-p) sigma_z   | p = 1        |
//! | BF      | sqrt(p) I           | sqrt(1-p) sigma_x   | p = 1        |
//! | AD      | diag(1, sqrt(1-d))  | [[0, sqrt(d)],[0,0]]| d = 0        |
//! | PD      | diag(1, sqrt(1-d))  | diag(0, sqrt(d))    | d = 0        |
//!
//! All four preserve the X shape and the realness of the entries, so the
//! production path is a closed-form update of the six state parameters
//! ([`apply_one_sided`]); the literal Kraus sum on dense matrices
//! ([`apply_one_sided_dense`]) is kept as a test oracle.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::qmath::{tensor2x2, CMat2, CMat4};
use crate::states::{to_dense, XState};
use crate::{Error, Result};

/// The four supported channel types.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ChannelKind {
    /// Amplitude damping, strength `d`.
    Ad,
    /// Phase damping, strength `d`.
    Pd,
    /// Phase flip, strength `p` (`p = 1` noiseless).
    Pf,
    /// Bit flip, strength `p` (`p = 1` noiseless).
    Bf,
}

impl ChannelKind {
    pub const ALL: [ChannelKind; 4] = [
        ChannelKind::Ad,
        ChannelKind::Pd,
        ChannelKind::Pf,
        ChannelKind::Bf,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ChannelKind::Ad => "ad",
            ChannelKind::Pd => "pd",
            ChannelKind::Pf => "pf",
            ChannelKind::Bf => "bf",
        }
    }

    /// Conventional symbol for the strength parameter: `d` for the damping
    /// channels, `p` for the flip channels.
    pub fn strength_symbol(self) -> &'static str {
        match self {
            ChannelKind::Ad | ChannelKind::Pd => "d",
            ChannelKind::Pf | ChannelKind::Bf => "p",
        }
    }
}

impl FromStr for ChannelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ad" => Ok(ChannelKind::Ad),
            "pd" => Ok(ChannelKind::Pd),
            "pf" => Ok(ChannelKind::Pf),
            "bf" => Ok(ChannelKind::Bf),
            other => Err(Error::InvalidGrid(format!(
                "unknown channel '{other}' (expected ad|pd|pf|bf)"
            ))),
        }
    }
}

impl fmt::Display for ChannelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A channel together with its decoherence strength in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoisySetting {
    kind: ChannelKind,
    strength: f64,
}

impl NoisySetting {
    pub fn new(kind: ChannelKind, strength: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&strength) {
            return Err(Error::ParamOutOfRange {
                name: "strength",
                value: strength,
                lo: 0.0,
                hi: 1.0,
            });
        }
        Ok(NoisySetting { kind, strength })
    }

    pub fn kind(self) -> ChannelKind {
        self.kind
    }

    pub fn strength(self) -> f64 {
        self.strength
    }
}

impl fmt::Display for NoisySetting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}({} = {})",
            self.kind,
            self.kind.strength_symbol(),
            self.strength
        )
    }
}

/// The pair of Kraus operators `{E0, E1}` for `setting`.
pub fn kraus_ops(setting: NoisySetting) -> [CMat2; 2] {
    let q = setting.strength;
    match setting.kind {
        ChannelKind::Pf => [
            CMat2::identity().scale(q.sqrt()),
            CMat2::pauli_z().scale((1.0 - q).sqrt()),
        ],
        ChannelKind::Bf => [
            CMat2::identity().scale(q.sqrt()),
            CMat2::pauli_x().scale((1.0 - q).sqrt()),
        ],
        ChannelKind::Ad => {
            let mut e1 = CMat2::zeros();
            e1.0[1] = num_complex::Complex64::new(q.sqrt(), 0.0);
            [CMat2::diag(1.0, (1.0 - q).sqrt()), e1]
        }
        ChannelKind::Pd => [
            CMat2::diag(1.0, (1.0 - q).sqrt()),
            CMat2::diag(0.0, q.sqrt()),
        ],
    }
}

/// Max-norm defect of the trace-preserving condition
/// `E0' E0 + E1' E1 = I` (primes denote adjoints).
pub fn kraus_completeness(setting: NoisySetting) -> f64 {
    let [e0, e1] = kraus_ops(setting);
    let sum = e0
        .adjoint()
        .mul(&e0)
        .add(&e1.adjoint().mul(&e1));
    sum.sub(&CMat2::identity()).max_abs()
}

/// Sends qubit B of `rho` through the channel, using the exact closed-form
/// update of the six X-state parameters. This is the production path.
pub fn apply_one_sided(rho: &XState, setting: NoisySetting) -> XState {
    let q = setting.strength;
    match setting.kind {
        ChannelKind::Ad => {
            let damp = (1.0 - q).sqrt();
            XState {
                r11: rho.r11 + q * rho.r22,
                r22: (1.0 - q) * rho.r22,
                r33: rho.r33 + q * rho.r44,
                r44: (1.0 - q) * rho.r44,
                r14: damp * rho.r14,
                r23: damp * rho.r23,
            }
        }
        ChannelKind::Pd => {
            let damp = (1.0 - q).sqrt();
            XState {
                r14: damp * rho.r14,
                r23: damp * rho.r23,
                ..*rho
            }
        }
        ChannelKind::Pf => {
            let flip = 2.0 * q - 1.0;
            XState {
                r14: flip * rho.r14,
                r23: flip * rho.r23,
                ..*rho
            }
        }
        ChannelKind::Bf => {
            let w = 1.0 - q;
            XState {
                r11: q * rho.r11 + w * rho.r22,
                r22: q * rho.r22 + w * rho.r11,
                r33: q * rho.r33 + w * rho.r44,
                r44: q * rho.r44 + w * rho.r33,
                r14: q * rho.r14 + w * rho.r23,
                r23: q * rho.r23 + w * rho.r14,
            }
        }
    }
}

/// Literal Kraus sum `sum_i (I (x) E_i) rho (I (x) E_i)'` on dense matrices.
///
/// Test oracle for [`apply_one_sided`]; must agree entrywise to 1e-14.
pub fn apply_one_sided_dense(rho: &XState, setting: NoisySetting) -> CMat4 {
    let dense = to_dense(rho);
    let mut out = CMat4::zeros();
    for e in kraus_ops(setting) {
        let k = tensor2x2(&CMat2::identity(), &e);
        out = out.add(&k.mul(&dense).mul(&k.adjoint()));
    }
    out
}
