//! Exact arithmetic in the golden-ratio ring `Z[phi]`, `phi^2 = phi + 1`.
//!
//! Every coordinate of the 600-cell, once doubled, lies in this ring, so all
//! squared distances between vertices are computed exactly and compared as
//! integers. No floating point is involved anywhere.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// The element `a + b*phi` with integer `a`, `b`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct GoldenInt {
    pub a: i64,
    pub b: i64,
}

impl GoldenInt {
    pub const ZERO: GoldenInt = GoldenInt { a: 0, b: 0 };
    pub const ONE: GoldenInt = GoldenInt { a: 1, b: 0 };
    /// The golden ratio itself.
    pub const PHI: GoldenInt = GoldenInt { a: 0, b: 1 };

    pub const fn new(a: i64, b: i64) -> GoldenInt {
        GoldenInt { a, b }
    }

    pub fn is_zero(self) -> bool {
        self.a == 0 && self.b == 0
    }

    /// Exact sign of `a + b*phi`, using `phi = (1 + sqrt 5) / 2`.
    pub fn signum(self) -> Ordering {
        // a + b*phi and 2a + b + b*sqrt(5) have the same sign.
        let p = 2 * self.a as i128 + self.b as i128;
        let q = self.b as i128;
        match (p.signum(), q.signum()) {
            (0, 0) => Ordering::Equal,
            (ps, qs) if ps >= 0 && qs >= 0 => Ordering::Greater,
            (ps, qs) if ps <= 0 && qs <= 0 => Ordering::Less,
            (1, -1) => (p * p).cmp(&(5 * q * q)),
            (-1, 1) => (5 * q * q).cmp(&(p * p)),
            _ => unreachable!(),
        }
    }
}

impl Add for GoldenInt {
    type Output = GoldenInt;
    fn add(self, rhs: GoldenInt) -> GoldenInt {
        GoldenInt {
            a: self.a + rhs.a,
            b: self.b + rhs.b,
        }
    }
}

impl Sub for GoldenInt {
    type Output = GoldenInt;
    fn sub(self, rhs: GoldenInt) -> GoldenInt {
        GoldenInt {
            a: self.a - rhs.a,
            b: self.b - rhs.b,
        }
    }
}

impl Neg for GoldenInt {
    type Output = GoldenInt;
    fn neg(self) -> GoldenInt {
        GoldenInt {
            a: -self.a,
            b: -self.b,
        }
    }
}

impl Mul for GoldenInt {
    type Output = GoldenInt;
    fn mul(self, rhs: GoldenInt) -> GoldenInt {
        // (a1 + b1 phi)(a2 + b2 phi), reduced by phi^2 = phi + 1.
        GoldenInt {
            a: self.a * rhs.a + self.b * rhs.b,
            b: self.a * rhs.b + self.b * rhs.a + self.b * rhs.b,
        }
    }
}

impl PartialOrd for GoldenInt {
    fn partial_cmp(&self, other: &GoldenInt) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GoldenInt {
    fn cmp(&self, other: &GoldenInt) -> Ordering {
        (*self - *other).signum()
    }
}

impl fmt::Debug for GoldenInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}phi", self.a, self.b)
    }
}

/// A point of 4-space with `GoldenInt` coordinates.
pub type GoldenPoint = [GoldenInt; 4];

/// Exact squared Euclidean distance.
pub fn squared_distance(p: &GoldenPoint, q: &GoldenPoint) -> GoldenInt {
    let mut acc = GoldenInt::ZERO;
    for i in 0..4 {
        let d = p[i] - q[i];
        acc = acc + d * d;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_satisfies_its_equation() {
        assert_eq!(GoldenInt::PHI * GoldenInt::PHI, GoldenInt::new(1, 1));
    }

    #[test]
    fn ring_identities() {
        let x = GoldenInt::new(3, -2);
        let y = GoldenInt::new(-1, 4);
        let z = GoldenInt::new(5, 1);
        assert_eq!(x * y, y * x);
        assert_eq!(x * (y + z), x * y + x * z);
        assert_eq!(x + (-x), GoldenInt::ZERO);
        assert_eq!(x * GoldenInt::ONE, x);
    }

    #[test]
    fn exact_ordering() {
        // 1 < phi < 2 and 0 < 2 - phi < 1.
        assert!(GoldenInt::ONE < GoldenInt::PHI);
        assert!(GoldenInt::PHI < GoldenInt::new(2, 0));
        let two_minus_phi = GoldenInt::new(2, -1);
        assert!(GoldenInt::ZERO < two_minus_phi);
        assert!(two_minus_phi < GoldenInt::ONE);
        // phi - 1 = 1/phi, so (phi - 1) * phi = 1.
        assert_eq!(GoldenInt::new(-1, 1) * GoldenInt::PHI, GoldenInt::ONE);
    }

    #[test]
    fn signum_handles_mixed_signs() {
        // 7 - 4*phi = 7 - 2 - 2*sqrt5 is positive iff 5 > 2*sqrt5 iff 25 > 20.
        assert_eq!(GoldenInt::new(7, -4).signum(), Ordering::Greater);
        assert_eq!(GoldenInt::new(6, -4).signum(), Ordering::Less);
        assert_eq!(GoldenInt::new(-8, 5).signum(), Ordering::Greater);
        assert_eq!(GoldenInt::new(-9, 5).signum(), Ordering::Less);
    }

    #[test]
    fn squared_distance_is_exact() {
        let p: GoldenPoint = [
            GoldenInt::new(2, 0),
            GoldenInt::ZERO,
            GoldenInt::ZERO,
            GoldenInt::ZERO,
        ];
        let q: GoldenPoint = [
            GoldenInt::ONE,
            GoldenInt::ONE,
            GoldenInt::ONE,
            GoldenInt::ONE,
        ];
        // (2-1)^2 + 3 * 1 = 4.
        assert_eq!(squared_distance(&p, &q), GoldenInt::new(4, 0));
    }
}
