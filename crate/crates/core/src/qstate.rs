//! Complex linear algebra for one- and two-qubit polarization states.
//!
//! Two-qubit amplitudes are always ordered `(00, 01, 10, 11)`, first index
//! for photon 1. A [`PureState2Q`] carries the [`Frame`] its amplitudes refer
//! to, so that HV-frame and rotated-frame vectors cannot be mixed silently.

use std::fmt;

use num_complex::Complex64;

use crate::angle::Angle;
use crate::error::{Error, Result};

pub type Complex = Complex64;

/// Tolerance applied when a state is constructed.
pub const CONSTRUCTION_TOL: f64 = 1e-12;
/// Lowest eigenvalue that still counts as positive semidefinite.
pub const EIGENVALUE_TOL: f64 = 1e-10;

const ZERO: Complex = Complex::new(0.0, 0.0);
const ONE: Complex = Complex::new(1.0, 0.0);

/// Basis the amplitudes of a two-photon state refer to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Frame {
    /// `{|H>, |V>}` on both photons.
    Hv,
    /// `{|0>, |1>} = U(phi_M){|H>, |V>}` on both photons.
    Rotated(Angle),
}

impl fmt::Display for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Frame::Hv => write!(f, "HV frame"),
            Frame::Rotated(phi) => write!(f, "rotated frame ({phi})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PureState1Q {
    c: [Complex; 2],
}

impl PureState1Q {
    pub const H: PureState1Q = PureState1Q { c: [ONE, ZERO] };
    pub const V: PureState1Q = PureState1Q { c: [ZERO, ONE] };

    /// Builds a state that must already be normalized.
    pub fn new(c0: Complex, c1: Complex) -> Result<Self> {
        let norm_sqr = c0.norm_sqr() + c1.norm_sqr();
        if !(norm_sqr - 1.0).abs().le(&CONSTRUCTION_TOL) {
            return Err(Error::InvalidState(format!(
                "single-photon norm^2 = {norm_sqr}, expected 1"
            )));
        }
        Ok(PureState1Q { c: [c0, c1] })
    }

    pub fn normalized(c0: Complex, c1: Complex) -> Result<Self> {
        let norm = (c0.norm_sqr() + c1.norm_sqr()).sqrt();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::InvalidState("cannot normalize a zero vector".into()));
        }
        Ok(PureState1Q {
            c: [c0 / norm, c1 / norm],
        })
    }

    pub(crate) fn from_unchecked(c: [Complex; 2]) -> Self {
        PureState1Q { c }
    }

    pub fn amplitudes(&self) -> [Complex; 2] {
        self.c
    }

    pub fn inner(&self, other: &PureState1Q) -> Complex {
        self.c[0].conj() * other.c[0] + self.c[1].conj() * other.c[1]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PureState2Q {
    amps: [Complex; 4],
    frame: Frame,
}

impl PureState2Q {
    pub fn new(amps: [Complex; 4], frame: Frame) -> Result<Self> {
        let n = norm_sqr4(&amps);
        if !(n - 1.0).abs().le(&CONSTRUCTION_TOL) {
            return Err(Error::InvalidState(format!(
                "two-photon norm^2 = {n}, expected 1"
            )));
        }
        Ok(PureState2Q { amps, frame })
    }

    pub fn normalized(amps: [Complex; 4], frame: Frame) -> Result<Self> {
        let n = norm_sqr4(&amps).sqrt();
        if !(n > 0.0 && n.is_finite()) {
            return Err(Error::InvalidState("cannot normalize a zero vector".into()));
        }
        Ok(PureState2Q {
            amps: amps.map(|a| a / n),
            frame,
        })
    }

    /// Real amplitudes, normalized.
    pub fn from_real(amps: [f64; 4], frame: Frame) -> Result<Self> {
        Self::normalized(amps.map(|a| Complex::new(a, 0.0)), frame)
    }

    pub(crate) fn from_unchecked(amps: [Complex; 4], frame: Frame) -> Self {
        PureState2Q { amps, frame }
    }

    pub fn amplitudes(&self) -> [Complex; 4] {
        self.amps
    }

    pub fn frame(&self) -> Frame {
        self.frame
    }

    pub fn norm(&self) -> f64 {
        norm_sqr4(&self.amps).sqrt()
    }
}

fn norm_sqr4(a: &[Complex; 4]) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum()
}

/// `|s1> (x) |s2>` in the HV frame.
pub fn tensor(s1: &PureState1Q, s2: &PureState1Q) -> PureState2Q {
    tensor_in(s1, s2, Frame::Hv)
}

pub fn tensor_in(s1: &PureState1Q, s2: &PureState1Q, frame: Frame) -> PureState2Q {
    let [a0, a1] = s1.c;
    let [b0, b1] = s2.c;
    PureState2Q {
        amps: [a0 * b0, a0 * b1, a1 * b0, a1 * b1],
        frame,
    }
}

/// `<x|y>`, conjugate-linear in `x`.
pub fn inner_product(x: &PureState2Q, y: &PureState2Q) -> Result<Complex> {
    if x.frame != y.frame {
        return Err(Error::FrameMismatch {
            left: x.frame.to_string(),
            right: y.frame.to_string(),
        });
    }
    Ok(x
        .amps
        .iter()
        .zip(y.amps.iter())
        .map(|(a, b)| a.conj() * b)
        .sum())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Unitary1Q {
    m: [[Complex; 2]; 2],
}

impl Unitary1Q {
    pub const IDENTITY: Unitary1Q = Unitary1Q {
        m: [[ONE, ZERO], [ZERO, ONE]],
    };

    pub fn new(m: [[Complex; 2]; 2]) -> Result<Self> {
        let u = Unitary1Q { m };
        let p = u.adjoint().mul(&u);
        let dev = (p.m[0][0] - ONE).norm()
            + (p.m[1][1] - ONE).norm()
            + p.m[0][1].norm()
            + p.m[1][0].norm();
        if !dev.le(&CONSTRUCTION_TOL) {
            return Err(Error::InvalidState(format!(
                "matrix is not unitary (|U^dag U - I| = {dev:e})"
            )));
        }
        Ok(u)
    }

    pub fn from_real(m: [[f64; 2]; 2]) -> Result<Self> {
        Self::new(m.map(|row| row.map(|x| Complex::new(x, 0.0))))
    }

    pub fn entries(&self) -> [[Complex; 2]; 2] {
        self.m
    }

    pub fn adjoint(&self) -> Unitary1Q {
        let m = self.m;
        Unitary1Q {
            m: [[m[0][0].conj(), m[1][0].conj()], [m[0][1].conj(), m[1][1].conj()]],
        }
    }

    pub fn mul(&self, rhs: &Unitary1Q) -> Unitary1Q {
        let (a, b) = (&self.m, &rhs.m);
        let mut m = [[ZERO; 2]; 2];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Unitary1Q { m }
    }

    pub fn apply(&self, s: &PureState1Q) -> PureState1Q {
        let m = &self.m;
        PureState1Q::from_unchecked([
            m[0][0] * s.c[0] + m[0][1] * s.c[1],
            m[1][0] * s.c[0] + m[1][1] * s.c[1],
        ])
    }

    /// Matrix of `u1 (x) u2` in the `(00, 01, 10, 11)` ordering.
    pub fn kron(u1: &Unitary1Q, u2: &Unitary1Q) -> [[Complex; 4]; 4] {
        let mut k = [[ZERO; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                k[i][j] = u1.m[i / 2][j / 2] * u2.m[i % 2][j % 2];
            }
        }
        k
    }
}

/// `(u1 (x) u2)|s>`, keeping the frame label of `s`.
pub fn apply_local(u1: &Unitary1Q, u2: &Unitary1Q, s: &PureState2Q) -> PureState2Q {
    let k = Unitary1Q::kron(u1, u2);
    let mut out = [ZERO; 4];
    for (i, o) in out.iter_mut().enumerate() {
        *o = (0..4).map(|j| k[i][j] * s.amps[j]).sum();
    }
    PureState2Q {
        amps: out,
        frame: s.frame,
    }
}

/// Eigenvalues `(l1, l2)`, `l1 >= l2`, of photon 1's reduced density matrix.
pub fn schmidt_coefficients(s: &PureState2Q) -> (f64, f64) {
    let a = &s.amps;
    // rho_1 = [[|a00|^2+|a01|^2, a00 a10* + a01 a11*], [.., |a10|^2+|a11|^2]]
    let r00 = a[0].norm_sqr() + a[1].norm_sqr();
    let r11 = a[2].norm_sqr() + a[3].norm_sqr();
    let r01 = a[0] * a[2].conj() + a[1] * a[3].conj();
    let tr = r00 + r11;
    let det = r00 * r11 - r01.norm_sqr();
    let disc = (tr * tr - 4.0 * det).max(0.0).sqrt();
    let l1 = (tr + disc) / 2.0;
    let l2 = (tr - disc) / 2.0;
    (l1 / tr, (l2 / tr).max(0.0))
}

/// A 4x4 density operator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix2Q {
    m: [[Complex; 4]; 4],
}

impl DensityMatrix2Q {
    /// Validates Hermiticity, unit trace and positivity.
    pub fn new(m: [[Complex; 4]; 4]) -> Result<Self> {
        let rho = DensityMatrix2Q { m };
        rho.validate()?;
        Ok(rho)
    }

    pub(crate) fn from_unchecked(m: [[Complex; 4]; 4]) -> Self {
        DensityMatrix2Q { m }
    }

    pub fn maximally_mixed() -> Self {
        let mut m = [[ZERO; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = Complex::new(0.25, 0.0);
        }
        DensityMatrix2Q { m }
    }

    pub fn validate(&self) -> Result<()> {
        let m = &self.m;
        if m.iter().flatten().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidDensityMatrix("non-finite entry".into()));
        }
        for i in 0..4 {
            for j in i..4 {
                let dev = (m[i][j] - m[j][i].conj()).norm();
                if dev > CONSTRUCTION_TOL {
                    return Err(Error::InvalidDensityMatrix(format!(
                        "not Hermitian at ({i},{j}): deviation {dev:e}"
                    )));
                }
            }
        }
        let tr = self.trace();
        if (tr - 1.0).abs() > CONSTRUCTION_TOL {
            return Err(Error::InvalidDensityMatrix(format!("trace = {tr}")));
        }
        let lowest = self.eigenvalues()[0];
        if lowest < -EIGENVALUE_TOL {
            return Err(Error::InvalidDensityMatrix(format!(
                "negative eigenvalue {lowest:e}"
            )));
        }
        Ok(())
    }

    pub fn entries(&self) -> [[Complex; 4]; 4] {
        self.m
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex {
        self.m[i][j]
    }

    pub fn trace(&self) -> f64 {
        (0..4).map(|i| self.m[i][i].re).sum()
    }

    /// `<v|rho|v>` for an unnormalized amplitude vector in this frame.
    pub fn expectation(&self, v: &[Complex; 4]) -> f64 {
        let mut acc = ZERO;
        for i in 0..4 {
            for j in 0..4 {
                acc += v[i].conj() * self.m[i][j] * v[j];
            }
        }
        acc.re
    }

    /// Ascending eigenvalues.
    pub fn eigenvalues(&self) -> [f64; 4] {
        hermitian_eigenvalues(&self.m)
    }

    /// `(u1 (x) u2) rho (u1 (x) u2)^dag`.
    pub fn conjugate_local(&self, u1: &Unitary1Q, u2: &Unitary1Q) -> DensityMatrix2Q {
        let k = Unitary1Q::kron(u1, u2);
        let mut tmp = [[ZERO; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                tmp[i][j] = (0..4).map(|l| k[i][l] * self.m[l][j]).sum();
            }
        }
        let mut out = [[ZERO; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                out[i][j] = (0..4).map(|l| tmp[i][l] * k[j][l].conj()).sum();
            }
        }
        DensityMatrix2Q { m: out }
    }

    /// `(1 - w) self + w other`.
    pub fn mix(&self, other: &DensityMatrix2Q, w: f64) -> DensityMatrix2Q {
        let mut m = [[ZERO; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                m[i][j] = self.m[i][j] * (1.0 - w) + other.m[i][j] * w;
            }
        }
        DensityMatrix2Q { m }
    }

    pub fn purity(&self) -> f64 {
        let mut acc = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                acc += (self.m[i][j] * self.m[j][i]).re;
            }
        }
        acc
    }
}

/// `|s><s|`.
pub fn pure_to_density(s: &PureState2Q) -> DensityMatrix2Q {
    let a = &s.amps;
    let mut m = [[ZERO; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            m[i][j] = a[i] * a[j].conj();
        }
    }
    DensityMatrix2Q { m }
}

/// Eigenvalues of a 4x4 Hermitian matrix via its real 8x8 embedding
/// `[[Re, -Im], [Im, Re]]`, whose spectrum is that of the input doubled.
fn hermitian_eigenvalues(h: &[[Complex; 4]; 4]) -> [f64; 4] {
    let mut a = [[0.0_f64; 8]; 8];
    for i in 0..4 {
        for j in 0..4 {
            let z = h[i][j];
            a[i][j] = z.re;
            a[i + 4][j + 4] = z.re;
            a[i][j + 4] = -z.im;
            a[i + 4][j] = z.im;
        }
    }
    let mut ev = jacobi_eigenvalues(a);
    ev.sort_by(|x, y| x.total_cmp(y));
    [ev[0], ev[2], ev[4], ev[6]]
}

/// Cyclic Jacobi sweeps on a real symmetric matrix.
fn jacobi_eigenvalues<const N: usize>(mut a: [[f64; N]; N]) -> [f64; N] {
    for _sweep in 0..64 {
        let off: f64 = (0..N)
            .flat_map(|i| (0..N).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..N {
            for q in (p + 1)..N {
                let apq = a[p][q];
                if apq.abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..N {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..N {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    std::array::from_fn(|i| a[i][i])
}
