//! The three correlation measures, each with a closed form and an
//! independent oracle.
//!
//! * Concurrence: `C = 2 max{0, |r14| - sqrt(r22 r33), |r23| - sqrt(r11 r44)}`,
//!   cross-checked by the spin-flip spectrum of
//!   `R = rho (sigma_y (x) sigma_y) rho* (sigma_y (x) sigma_y)`.
//! * Bell-CHSH maximum: `B = 2 max{sqrt(mu1 + mu2), sqrt(mu1 + mu3)}` from
//!   the Horodecki criterion, cross-checked against the correlation matrix
//!   `T_ij = Tr[rho sigma_i (x) sigma_j]` built densely.
//! * Steering: the left-hand side `S` of the entropic-uncertainty steering
//!   bound for Pauli X/Y/Z measurements, written on the Bloch parameters;
//!   the state is steerable iff `S > 2`. Cross-checked by accumulating the
//!   three conditional entropies `H(B|A)` from dense projector statistics
//!   (their sum equals `3 - S/2`).

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::qmath::{shannon, tensor2x2, CMat2, ProbDist};
use crate::states::{bloch_extract, to_dense, XState};
use crate::{Error, Result};

/// Default tolerance for the boolean violation flags: boundary states count
/// as non-violating.
pub const FLAG_TOL: f64 = 1e-9;

/// Entropy arguments are reconstructed from Bloch parameters as `4 rho_ii`,
/// so validation-level negatives arrive scaled by 4 plus rounding; tolerate
/// those, fail loudly on anything genuinely negative.
fn xl(x: f64) -> f64 {
    if x <= 0.0 {
        assert!(
            x > -1e-9,
            "entropy argument {x} is negative: state violates positivity"
        );
        return 0.0;
    }
    x * x.log2()
}

/// `F(t) = (1+t) log2(1+t) + (1-t) log2(1-t)`, the entropy deficit of a
/// two-outcome distribution with bias `t`. Even in `t`, `F(0) = 0`,
/// `F(1) = 2`.
pub fn entropy_f(t: f64) -> f64 {
    xl(1.0 + t) + xl(1.0 - t)
}

/// Concurrence of an X-state.
pub fn concurrence_x(rho: &XState) -> f64 {
    let outer = rho.r14.abs() - (rho.r22 * rho.r33).sqrt();
    let inner = rho.r23.abs() - (rho.r11 * rho.r44).sqrt();
    2.0 * outer.max(inner).max(0.0)
}

/// Concurrence from the spin-flip spectrum.
///
/// Builds `R = rho Y rho* Y` with `Y = sigma_y (x) sigma_y` densely. `Y`
/// preserves the two 2x2 X-blocks, so the four eigenvalues of `R` are the
/// roots of one quadratic characteristic polynomial per block.
pub fn concurrence_oracle(rho: &XState) -> Result<f64> {
    let dense = to_dense(rho);
    let yy = tensor2x2(&CMat2::pauli_y(), &CMat2::pauli_y());
    let r = dense.mul(&yy).mul(&dense.conj()).mul(&yy);

    // block index pairs: {|00>,|11>} and {|01>,|10>}
    let blocks = [[(0, 0), (0, 3), (3, 0), (3, 3)], [(1, 1), (1, 2), (2, 1), (2, 2)]];
    let mut eigs = [0.0f64; 4];
    for (bi, idx) in blocks.iter().enumerate() {
        let m: Vec<_> = idx.iter().map(|&(i, j)| r.get(i, j)).collect();
        let tr = (m[0] + m[3]).re;
        let det = (m[0] * m[3] - m[1] * m[2]).re;
        let disc = (tr * tr - 4.0 * det).max(0.0);
        let root = disc.sqrt();
        eigs[2 * bi] = 0.5 * (tr + root);
        eigs[2 * bi + 1] = 0.5 * (tr - root);
    }
    for &lam in &eigs {
        if lam < -1e-10 {
            return Err(Error::NegativeEigenvalue(lam));
        }
    }
    let mut roots: Vec<f64> = eigs.iter().map(|&lam| lam.max(0.0).sqrt()).collect();
    roots.sort_by(|a, b| b.partial_cmp(a).expect("eigenvalues are finite"));
    Ok((roots[0] - roots[1] - roots[2] - roots[3]).max(0.0))
}

/// Eigenvalues `(mu1, mu2, mu3)` of `U = T^t T` for an X-state, with
/// `mu1 >= mu2` by construction.
pub fn horodecki_mu(rho: &XState) -> (f64, f64, f64) {
    let a = rho.r14.abs();
    let b = rho.r23.abs();
    let mu1 = 4.0 * (a + b) * (a + b);
    let mu2 = 4.0 * (a - b) * (a - b);
    let c3 = rho.r11 - rho.r22 - rho.r33 + rho.r44;
    (mu1, mu2, c3 * c3)
}

/// Largest CHSH expectation over measurement settings; nonlocal iff `> 2`.
pub fn bell_max(rho: &XState) -> f64 {
    let (mu1, mu2, mu3) = horodecki_mu(rho);
    2.0 * (mu1 + mu2).max(mu1 + mu3).sqrt()
}

/// Bell-CHSH maximum from the dense correlation matrix.
///
/// Computes the full 3x3 `T` via traces against the nine Pauli products;
/// `T^t T` is diagonal for X-states, so the result is twice the root of the
/// sum of the two largest diagonal entries.
pub fn bell_oracle(rho: &XState) -> f64 {
    let dense = to_dense(rho);
    let paulis = [CMat2::pauli_x(), CMat2::pauli_y(), CMat2::pauli_z()];
    let mut t = [[0.0f64; 3]; 3];
    for (i, pa) in paulis.iter().enumerate() {
        for (j, pb) in paulis.iter().enumerate() {
            t[i][j] = tensor2x2(pa, pb).mul(&dense).trace().re;
        }
    }
    let mut u: Vec<f64> = (0..3)
        .map(|k| (0..3).map(|i| t[i][k] * t[i][k]).sum())
        .collect();
    u.sort_by(|a, b| b.partial_cmp(a).expect("correlations are finite"));
    2.0 * (u[0] + u[1]).sqrt()
}

/// Left-hand side of the entropic steering bound for Pauli X/Y/Z
/// measurements; steerable iff `S > 2`.
///
/// On the Bloch parameters `(c1, c2, c3, r, s)`:
///
/// ```text
/// S = F(c1) + F(c2) - F(r)
///   + [xlogx(1+c3+r+s) + xlogx(1+c3-r-s)
///    + xlogx(1-c3-r+s) + xlogx(1-c3+r-s)] / 2
/// ```
///
/// The sum of the three conditional entropies equals `3 - S/2`, so `S > 2`
/// is the same as that sum dropping below 2 bits.
pub fn steering_lhs(rho: &XState) -> f64 {
    let b = bloch_extract(rho);
    let half = 0.5
        * (xl(1.0 + b.c3 + b.r + b.s)
            + xl(1.0 + b.c3 - b.r - b.s)
            + xl(1.0 - b.c3 - b.r + b.s)
            + xl(1.0 - b.c3 + b.r - b.s));
    entropy_f(b.c1) + entropy_f(b.c2) - entropy_f(b.r) + half
}

/// Steering quantity from dense measurement statistics.
///
/// For each Pauli basis W, builds the four joint outcome probabilities
/// `P(a, b) = Tr[(P_a (x) P_b) rho]` from projectors, accumulates
/// `H(B|A) = H(joint) - H(A)` and returns `2 (3 - sum)`, which must agree
/// with [`steering_lhs`] to 1e-10.
pub fn steering_oracle(rho: &XState) -> Result<f64> {
    let dense = to_dense(rho);
    let mut conditional_sum = 0.0;
    for w in [CMat2::pauli_x(), CMat2::pauli_y(), CMat2::pauli_z()] {
        let plus = CMat2::identity().add(&w).scale(0.5);
        let minus = CMat2::identity().sub(&w).scale(0.5);
        let mut joint = Vec::with_capacity(4);
        for pa in [&plus, &minus] {
            for pb in [&plus, &minus] {
                let p = tensor2x2(pa, pb).mul(&dense).trace().re;
                if !(-1e-12..=1.0 + 1e-12).contains(&p) {
                    return Err(Error::ProbabilityOutOfRange(p));
                }
                joint.push(p);
            }
        }
        let marginal_a = vec![joint[0] + joint[1], joint[2] + joint[3]];
        let h_joint = shannon(&ProbDist::new(joint)?);
        let h_a = shannon(&ProbDist::new(marginal_a)?);
        conditional_sum += h_joint - h_a;
    }
    Ok(2.0 * (3.0 - conditional_sum))
}

/// Which measure a CLI command refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MeasureKind {
    #[serde(rename = "C")]
    Concurrence,
    #[serde(rename = "B")]
    Bell,
    #[serde(rename = "S")]
    Steering,
}

impl MeasureKind {
    pub const ALL: [MeasureKind; 3] = [
        MeasureKind::Concurrence,
        MeasureKind::Bell,
        MeasureKind::Steering,
    ];

    pub fn label(self) -> &'static str {
        match self {
            MeasureKind::Concurrence => "C",
            MeasureKind::Bell => "B",
            MeasureKind::Steering => "S",
        }
    }

    /// Classical threshold the measure is compared against.
    pub fn threshold(self) -> f64 {
        match self {
            MeasureKind::Concurrence => 0.0,
            MeasureKind::Bell => 2.0,
            MeasureKind::Steering => 2.0,
        }
    }

    /// Production-path value of this measure on `rho`.
    pub fn eval(self, rho: &XState) -> f64 {
        match self {
            MeasureKind::Concurrence => concurrence_x(rho),
            MeasureKind::Bell => bell_max(rho),
            MeasureKind::Steering => steering_lhs(rho),
        }
    }
}

impl FromStr for MeasureKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "C" | "c" => Ok(MeasureKind::Concurrence),
            "B" | "b" => Ok(MeasureKind::Bell),
            "S" | "s" => Ok(MeasureKind::Steering),
            other => Err(Error::InvalidGrid(format!(
                "unknown measure '{other}' (expected C|B|S)"
            ))),
        }
    }
}

impl fmt::Display for MeasureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// All three measures of one state plus the violation flags.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeasureReport {
    #[serde(rename = "C")]
    pub concurrence: f64,
    #[serde(rename = "B")]
    pub bell_max: f64,
    #[serde(rename = "S")]
    pub steering_lhs: f64,
    pub entangled: bool,
    pub nonlocal: bool,
    pub steerable: bool,
    #[serde(skip)]
    pub tol_flag: f64,
}

/// Evaluates all three measures with the default flag tolerance.
pub fn report(rho: &XState) -> MeasureReport {
    report_with_tol(rho, FLAG_TOL)
}

/// Evaluates all three measures; flags use strict inequality against
/// `threshold + tol_flag`, so saturating states are classified as
/// non-violating.
pub fn report_with_tol(rho: &XState, tol_flag: f64) -> MeasureReport {
    let concurrence = concurrence_x(rho);
    let bell = bell_max(rho);
    let steering = steering_lhs(rho);
    MeasureReport {
        concurrence,
        bell_max: bell,
        steering_lhs: steering,
        entangled: concurrence > tol_flag,
        nonlocal: bell > 2.0 + tol_flag,
        steerable: steering > 2.0 + tol_flag,
        tol_flag,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::{apply_one_sided, ChannelKind, NoisySetting};
    use crate::states::{arb_xstate, bloch_assemble, mixed_family, pure_family, BlochX};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use std::f64::consts::{FRAC_PI_4, FRAC_PI_6, SQRT_2};

    fn setting(kind: ChannelKind, q: f64) -> NoisySetting {
        NoisySetting::new(kind, q).unwrap()
    }

    // ------------------------------------------------------------------
    // concurrence
    // ------------------------------------------------------------------

    #[test]
    fn concurrence_anchors() {
        assert!((concurrence_x(&pure_family(FRAC_PI_4).unwrap()) - 1.0).abs() < 1e-12);

        // C = sin(2a) on the pure family
        let c = concurrence_x(&pure_family(FRAC_PI_6).unwrap());
        assert!((c - 3.0f64.sqrt() / 2.0).abs() < 1e-12);

        // C = sqrt(1-d) sin(2a) after amplitude damping
        let damped = apply_one_sided(
            &pure_family(FRAC_PI_4).unwrap(),
            setting(ChannelKind::Ad, 0.36),
        );
        assert!((concurrence_x(&damped) - 0.8).abs() < 1e-12);
    }

    #[test]
    fn concurrence_oracle_anchors() {
        assert_eq!(concurrence_oracle(&XState::maximally_mixed()).unwrap(), 0.0);
        assert!((concurrence_oracle(&pure_family(FRAC_PI_4).unwrap()).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn concurrence_oracle_rejects_nonpositive_input() {
        // a negative population sends the spin-flip spectrum negative
        let bad = XState {
            r11: -0.2,
            r22: 0.5,
            r33: 0.2,
            r44: 0.5,
            r14: 0.0,
            r23: 0.0,
        };
        assert!(matches!(
            concurrence_oracle(&bad),
            Err(Error::NegativeEigenvalue(_))
        ));
    }

    // ------------------------------------------------------------------
    // Bell-CHSH
    // ------------------------------------------------------------------

    #[test]
    fn horodecki_mu_anchors() {
        let (m1, m2, m3) = horodecki_mu(&mixed_family(1.0).unwrap());
        assert_eq!((m1, m2, m3), (1.0, 1.0, 1.0));

        let d = 0.3;
        let damped = apply_one_sided(
            &pure_family(FRAC_PI_4).unwrap(),
            setting(ChannelKind::Ad, d),
        );
        let (m1, m2, m3) = horodecki_mu(&damped);
        assert!((m1 - (1.0 - d)).abs() < 1e-12);
        assert!((m2 - (1.0 - d)).abs() < 1e-12);
        assert!((m3 - (1.0 - d) * (1.0 - d)).abs() < 1e-12);

        let (m1, m2, m3) = horodecki_mu(&pure_family(0.0).unwrap());
        assert_eq!((m1, m2, m3), (0.0, 0.0, 1.0));
    }

    #[test]
    fn bell_max_anchors() {
        assert!((bell_max(&pure_family(FRAC_PI_4).unwrap()) - 2.0 * SQRT_2).abs() < 1e-12);
        assert_eq!(bell_max(&pure_family(0.0).unwrap()), 2.0);

        // the nonlocality endpoint of the damped Bell state
        let at_half = apply_one_sided(
            &pure_family(FRAC_PI_4).unwrap(),
            setting(ChannelKind::Ad, 0.5),
        );
        assert!((bell_max(&at_half) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn bell_oracle_correlation_matrix_is_diagonal() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(21);
        for _ in 0..200 {
            let st = XState::random(&mut rng);
            let b = bloch_extract(&st);
            // oracle T equals diag(c1, c2, c3): compare against closed bloch
            let dense = to_dense(&st);
            let paulis = [CMat2::pauli_x(), CMat2::pauli_y(), CMat2::pauli_z()];
            let diag: Vec<f64> = (0..3)
                .map(|i| tensor2x2(&paulis[i], &paulis[i]).mul(&dense).trace().re)
                .collect();
            assert!((diag[0] - b.c1).abs() < 1e-13);
            assert!((diag[1] - b.c2).abs() < 1e-13);
            assert!((diag[2] - b.c3).abs() < 1e-13);
        }
        assert!((bell_oracle(&mixed_family(1.0).unwrap()) - 2.0 * SQRT_2).abs() < 1e-12);
    }

    // ------------------------------------------------------------------
    // steering
    // ------------------------------------------------------------------

    #[test]
    fn steering_anchors() {
        assert!((steering_lhs(&mixed_family(1.0).unwrap()) - 6.0).abs() < 1e-12);
        assert!((steering_lhs(&pure_family(0.0).unwrap()) - 2.0).abs() < 1e-12);

        // phase damping at d = 0.75 on the Bell state: S = 2 + 2 F(1/2)
        let damped = apply_one_sided(
            &pure_family(FRAC_PI_4).unwrap(),
            setting(ChannelKind::Pd, 0.75),
        );
        let expected = 2.0 + 2.0 * (1.5 * 1.5f64.log2() - 0.5);
        assert!((steering_lhs(&damped) - expected).abs() < 1e-12);
        assert!((expected - 2.754_887_502_163_469).abs() < 1e-12);
    }

    #[test]
    fn steering_bell_diagonal_reduction() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(22);
        for _ in 0..500 {
            // random Bell-diagonal state inside the separable-ball-safe cube
            let c1: f64 = rng.gen_range(-1.0..=1.0);
            let c2: f64 = rng.gen_range(-1.0..=1.0);
            let c3: f64 = rng.gen_range(-1.0..=1.0);
            let b = BlochX { c1, c2, c3, r: 0.0, s: 0.0 };
            let Ok(st) = bloch_assemble(&b) else { continue };
            let expected = entropy_f(c1) + entropy_f(c2) + entropy_f(c3);
            assert!((steering_lhs(&st) - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn steering_oracle_anchors() {
        assert!((steering_oracle(&mixed_family(1.0).unwrap()).unwrap() - 6.0).abs() < 1e-12);
        assert!(steering_oracle(&XState::maximally_mixed()).unwrap().abs() < 1e-12);
    }

    // ------------------------------------------------------------------
    // report and invariances
    // ------------------------------------------------------------------

    #[test]
    fn report_anchors() {
        let bell = report(&mixed_family(1.0).unwrap());
        assert!((bell.concurrence - 1.0).abs() < 1e-12);
        assert!((bell.bell_max - 2.0 * SQRT_2).abs() < 1e-12);
        assert!((bell.steering_lhs - 6.0).abs() < 1e-12);
        assert!(bell.entangled && bell.nonlocal && bell.steerable);

        let ground = report(&pure_family(0.0).unwrap());
        assert_eq!(ground.concurrence, 0.0);
        assert_eq!(ground.bell_max, 2.0);
        assert!((ground.steering_lhs - 2.0).abs() < 1e-12);
        assert!(!ground.entangled && !ground.nonlocal && !ground.steerable);

        let separable = report(&mixed_family(0.5).unwrap());
        assert_eq!(separable.concurrence, 0.0);
        assert!((separable.bell_max - 2.0).abs() < 1e-12);
        assert!((separable.steering_lhs - 2.0).abs() < 1e-12);
        assert!(!separable.entangled && !separable.nonlocal && !separable.steerable);
    }

    #[test]
    fn report_serializes_with_short_keys() {
        let json = crate::jsonfmt::to_json_string(&report(&mixed_family(1.0).unwrap())).unwrap();
        assert!(json.contains("\"C\":"));
        assert!(json.contains("\"B\":"));
        assert!(json.contains("\"S\":"));
        assert!(json.contains("\"steerable\":true"));
        assert!(!json.contains("tol_flag"));
    }

    #[test]
    fn coherence_sign_swap_is_invisible() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(23);
        for _ in 0..500 {
            let st = XState::random(&mut rng);
            let swapped = XState {
                r14: -st.r14,
                r23: -st.r23,
                ..st
            };
            assert!((concurrence_x(&st) - concurrence_x(&swapped)).abs() < 1e-15);
            assert!((bell_max(&st) - bell_max(&swapped)).abs() < 1e-15);
            assert!((steering_lhs(&st) - steering_lhs(&swapped)).abs() < 1e-12);
        }
    }

    #[test]
    fn phase_damping_is_monotone() {
        let input = pure_family(0.9).unwrap();
        let mut last_c = f64::INFINITY;
        let mut last_s = f64::INFINITY;
        for i in 0..100 {
            let d = i as f64 / 99.0;
            let out = apply_one_sided(&input, setting(ChannelKind::Pd, d));
            let c = concurrence_x(&out);
            let s = steering_lhs(&out);
            assert!(c <= last_c + 1e-12, "concurrence rose at d = {d}");
            assert!(s <= last_s + 1e-12, "steering rose at d = {d}");
            last_c = c;
            last_s = s;
        }
    }

    #[test]
    fn bit_flip_measures_mirror_about_half() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(24);
        for _ in 0..200 {
            let alpha = rng.gen_range(0.0..std::f64::consts::FRAC_PI_2);
            let p = rng.gen_range(0.0..=1.0);
            let st = pure_family(alpha).unwrap();
            let a = report(&apply_one_sided(&st, setting(ChannelKind::Bf, p)));
            let b = report(&apply_one_sided(&st, setting(ChannelKind::Bf, 1.0 - p)));
            assert!((a.concurrence - b.concurrence).abs() <= 1e-12);
            assert!((a.bell_max - b.bell_max).abs() <= 1e-12);
            assert!((a.steering_lhs - b.steering_lhs).abs() <= 1e-12);
        }
    }

    #[test]
    fn separable_mixtures_respect_both_bounds() {
        // convex mixtures of diagonal product states (the X-shaped products)
        let mut rng = rand::rngs::StdRng::seed_from_u64(25);
        for _ in 0..1000 {
            let terms = rng.gen_range(1..=4);
            let mut weights: Vec<f64> = (0..terms).map(|_| rng.gen_range(0.01..1.0)).collect();
            let total: f64 = weights.iter().sum();
            for w in &mut weights {
                *w /= total;
            }
            let mut acc = XState {
                r11: 0.0,
                r22: 0.0,
                r33: 0.0,
                r44: 0.0,
                r14: 0.0,
                r23: 0.0,
            };
            for w in weights {
                let a: f64 = rng.gen();
                let b: f64 = rng.gen();
                acc.r11 += w * a * b;
                acc.r22 += w * a * (1.0 - b);
                acc.r33 += w * (1.0 - a) * b;
                acc.r44 += w * (1.0 - a) * (1.0 - b);
            }
            assert!(steering_lhs(&acc) <= 2.0 + 1e-9);
            assert!(bell_max(&acc) <= 2.0 + 1e-9);
            assert_eq!(concurrence_x(&acc), 0.0);
        }
    }

    proptest! {
        #[test]
        fn oracle_equivalence(st in arb_xstate()) {
            prop_assert!((concurrence_x(&st) - concurrence_oracle(&st).unwrap()).abs() <= 1e-10);
            prop_assert!((bell_max(&st) - bell_oracle(&st)).abs() <= 1e-10);
            prop_assert!((steering_lhs(&st) - steering_oracle(&st).unwrap()).abs() <= 1e-10);
        }

        #[test]
        fn measures_stay_in_range(st in arb_xstate()) {
            let rep = report(&st);
            prop_assert!((0.0..=1.0 + 1e-12).contains(&rep.concurrence));
            prop_assert!((0.0..=2.0 * SQRT_2 + 1e-12).contains(&rep.bell_max));
            prop_assert!((0.0 - 1e-12..=6.0 + 1e-12).contains(&rep.steering_lhs));
            // steering implies entanglement
            if rep.steerable {
                prop_assert!(rep.entangled);
            }
        }
    }
}
