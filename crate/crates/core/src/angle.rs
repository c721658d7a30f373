use std::fmt;

use serde::{Deserialize, Serialize};

/// A rotation or source angle, stored in degrees.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Angle(f64);

impl Angle {
    pub const ZERO: Angle = Angle(0.0);

    pub const fn from_degrees(degrees: f64) -> Self {
        Angle(degrees)
    }

    pub fn from_radians(radians: f64) -> Self {
        Angle(radians.to_degrees())
    }

    pub fn degrees(self) -> f64 {
        self.0
    }

    pub fn radians(self) -> f64 {
        self.0.to_radians()
    }

    /// Same direction, reported in `[-180, 180)`.
    pub fn canonical(self) -> Self {
        Angle((self.0 + 180.0).rem_euclid(360.0) - 180.0)
    }

    pub fn is_finite(self) -> bool {
        self.0.is_finite()
    }
}

impl std::ops::Add for Angle {
    type Output = Angle;
    fn add(self, rhs: Angle) -> Angle {
        Angle(self.0 + rhs.0)
    }
}

impl std::ops::Sub for Angle {
    type Output = Angle;
    fn sub(self, rhs: Angle) -> Angle {
        Angle(self.0 - rhs.0)
    }
}

impl std::ops::Neg for Angle {
    type Output = Angle;
    fn neg(self) -> Angle {
        Angle(-self.0)
    }
}

impl std::ops::Mul<f64> for Angle {
    type Output = Angle;
    fn mul(self, rhs: f64) -> Angle {
        Angle(self.0 * rhs)
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}°", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_range() {
        assert_eq!(Angle::from_degrees(180.0).canonical().degrees(), -180.0);
        assert_eq!(Angle::from_degrees(-180.0).canonical().degrees(), -180.0);
        assert_eq!(Angle::from_degrees(370.0).canonical().degrees(), 10.0);
        assert_eq!(Angle::from_degrees(-190.0).canonical().degrees(), 170.0);
        assert_eq!(Angle::from_degrees(45.0).canonical().degrees(), 45.0);
    }

    #[test]
    fn radian_round_trip() {
        let a = Angle::from_radians(std::f64::consts::FRAC_PI_4);
        assert!((a.degrees() - 45.0).abs() < 1e-12);
        assert!((a.radians() - std::f64::consts::FRAC_PI_4).abs() < 1e-15);
    }
}
