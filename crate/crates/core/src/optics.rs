//! Polarization bases, the shared local rotation and Born-rule probabilities.
//!
//! Both photons see the same rotation `U(phi_M)`, which defines the
//! measurement basis `|0> = U|H>`, `|1> = U|V>` and the unbiased basis
//! `|a> = (|0> - |1>)/sqrt2`, `|b> = (|0> + |1>)/sqrt2`.
//!
//! `U(phi)` is the real rotation `[[cos, sin], [-sin, cos]]`. With this
//! orientation the balanced rotation for the source state
//! `cos(phi_S)|HH> - sin(phi_S)|VV>` is positive and falls from 45° towards
//! 22.5° as `phi_S` grows.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::angle::Angle;
use crate::error::Result;
use crate::qstate::{
    apply_local, tensor_in, Complex, DensityMatrix2Q, Frame, PureState1Q, PureState2Q, Unitary1Q,
};

/// Summed probabilities of a context may deviate from 1 by this much.
pub const NORMALIZATION_TOL: f64 = 1e-10;

pub fn rotation(phi: Angle) -> Unitary1Q {
    let (s, c) = phi.radians().sin_cos();
    Unitary1Q::from_real([[c, s], [-s, c]]).expect("real rotation is unitary")
}

/// Local observable measured on one photon.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Basis {
    /// Outcomes `{0, 1}`.
    F,
    /// Outcomes `{a, b}`.
    W,
}

impl Basis {
    pub fn outcomes(self) -> [Outcome; 2] {
        match self {
            Basis::F => [Outcome::Zero, Outcome::One],
            Basis::W => [Outcome::A, Outcome::B],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Outcome {
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "1")]
    One,
    #[serde(rename = "a")]
    A,
    #[serde(rename = "b")]
    B,
}

impl Outcome {
    pub fn basis(self) -> Basis {
        match self {
            Outcome::Zero | Outcome::One => Basis::F,
            Outcome::A | Outcome::B => Basis::W,
        }
    }

    /// Position within its basis (0 for `0`/`a`, 1 for `1`/`b`).
    pub fn index(self) -> usize {
        match self {
            Outcome::Zero | Outcome::A => 0,
            Outcome::One | Outcome::B => 1,
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Outcome::Zero => "0",
            Outcome::One => "1",
            Outcome::A => "a",
            Outcome::B => "b",
        };
        f.write_str(s)
    }
}

/// Pair of local observables, without the rotation angle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Sides {
    pub side1: Basis,
    pub side2: Basis,
}

impl Sides {
    pub const FF: Sides = Sides::new(Basis::F, Basis::F);
    pub const FW: Sides = Sides::new(Basis::F, Basis::W);
    pub const WF: Sides = Sides::new(Basis::W, Basis::F);
    pub const WW: Sides = Sides::new(Basis::W, Basis::W);
    /// The four contexts in fixture column order.
    pub const ALL: [Sides; 4] = [Sides::FF, Sides::FW, Sides::WF, Sides::WW];

    pub const fn new(side1: Basis, side2: Basis) -> Self {
        Sides { side1, side2 }
    }

    /// Outcome pairs in `(x0 y0, x0 y1, x1 y0, x1 y1)` order.
    pub fn outcome_pairs(self) -> [(Outcome, Outcome); 4] {
        let [x0, x1] = self.side1.outcomes();
        let [y0, y1] = self.side2.outcomes();
        [(x0, y0), (x0, y1), (x1, y0), (x1, y1)]
    }

    /// Slot of `(x, y)` in [`Sides::outcome_pairs`], if it belongs here.
    pub fn slot(self, x: Outcome, y: Outcome) -> Option<usize> {
        (x.basis() == self.side1 && y.basis() == self.side2).then(|| 2 * x.index() + y.index())
    }
}

impl fmt::Display for Sides {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?},{:?})", self.side1, self.side2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasurementContext {
    pub sides: Sides,
    pub phi_m: Angle,
}

impl MeasurementContext {
    pub fn new(sides: Sides, phi_m: Angle) -> Self {
        MeasurementContext { sides, phi_m }
    }

    /// `(F,F)`, `(F,W)`, `(W,F)`, `(W,W)` at one rotation.
    pub fn all_four(phi_m: Angle) -> [MeasurementContext; 4] {
        Sides::ALL.map(|sides| MeasurementContext { sides, phi_m })
    }
}

/// Joint outcome probabilities for one context.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContextProbabilities {
    pub context: MeasurementContext,
    /// Indexed like [`Sides::outcome_pairs`].
    pub p: [f64; 4],
}

impl ContextProbabilities {
    pub fn get(&self, x: Outcome, y: Outcome) -> Option<f64> {
        self.context.sides.slot(x, y).map(|i| self.p[i])
    }

    pub fn total(&self) -> f64 {
        self.p.iter().sum()
    }
}

/// Single-photon state for `label` in the basis rotated by `phi_m`.
pub fn outcome_state(label: Outcome, phi_m: Angle) -> PureState1Q {
    let u = rotation(phi_m);
    let zero = u.apply(&PureState1Q::H).amplitudes();
    let one = u.apply(&PureState1Q::V).amplitudes();
    let c = match label {
        Outcome::Zero => zero,
        Outcome::One => one,
        Outcome::A => [
            (zero[0] - one[0]) * FRAC_1_SQRT_2,
            (zero[1] - one[1]) * FRAC_1_SQRT_2,
        ],
        Outcome::B => [
            (zero[0] + one[0]) * FRAC_1_SQRT_2,
            (zero[1] + one[1]) * FRAC_1_SQRT_2,
        ],
    };
    PureState1Q::from_unchecked(c)
}

/// `P(x,y) = <x,y|rho|x,y>` for all four outcome pairs. `state` is in the HV frame.
pub fn context_probabilities(
    state: &DensityMatrix2Q,
    ctx: MeasurementContext,
) -> Result<ContextProbabilities> {
    state.validate()?;
    Ok(context_probabilities_unchecked(state, ctx))
}

/// Same as [`context_probabilities`] for a density matrix already known to be valid.
pub(crate) fn context_probabilities_unchecked(
    state: &DensityMatrix2Q,
    ctx: MeasurementContext,
) -> ContextProbabilities {
    let p = ctx.sides.outcome_pairs().map(|(x, y)| {
        let v = tensor_in(
            &outcome_state(x, ctx.phi_m),
            &outcome_state(y, ctx.phi_m),
            Frame::Hv,
        );
        // clamp round-off below zero
        state.expectation(&v.amplitudes()).max(0.0)
    });
    ContextProbabilities { context: ctx, p }
}

/// Express a state in the HV frame.
pub fn to_hv_frame(s: &PureState2Q) -> PureState2Q {
    match s.frame() {
        Frame::Hv => *s,
        Frame::Rotated(phi) => {
            let u = rotation(phi);
            PureState2Q::from_unchecked(apply_local(&u, &u, s).amplitudes(), Frame::Hv)
        }
    }
}

/// Express an HV-frame state in the frame rotated by `phi_m`.
pub fn to_rotated_frame(s: &PureState2Q, phi_m: Angle) -> PureState2Q {
    let hv = to_hv_frame(s);
    let u = rotation(phi_m).adjoint();
    PureState2Q::from_unchecked(apply_local(&u, &u, &hv).amplitudes(), Frame::Rotated(phi_m))
}

/// Unique state with `<0,a|psi> = <a,0|psi> = <1,1|psi> = 0`, i.e.
/// `(|00> + |01> + |10>)/sqrt3` in the rotated frame, returned in the HV frame.
pub fn hardy_target_state(phi_m: Angle) -> PureState2Q {
    let r = 1.0 / 3f64.sqrt();
    let amps = [r, r, r, 0.0].map(|x| Complex::new(x, 0.0));
    to_hv_frame(&PureState2Q::from_unchecked(amps, Frame::Rotated(phi_m)))
}
