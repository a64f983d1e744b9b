//! Points of the projective line over `Q(i)`.

use std::cmp::Ordering;
use std::fmt;

use super::gauss::GaussRat;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum P1Point {
    Finite(GaussRat),
    Infinity,
}

impl P1Point {
    pub fn zero() -> Self {
        P1Point::Finite(GaussRat::zero())
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, P1Point::Infinity)
    }

    pub fn finite(&self) -> Option<&GaussRat> {
        match self {
            P1Point::Finite(a) => Some(a),
            P1Point::Infinity => None,
        }
    }

    /// Homogeneous coordinates `(first : second)` with affine value `first/second`.
    pub fn homogeneous(&self) -> (GaussRat, GaussRat) {
        match self {
            P1Point::Finite(a) => (a.clone(), GaussRat::one()),
            P1Point::Infinity => (GaussRat::one(), GaussRat::zero()),
        }
    }

    pub fn from_homogeneous(a: &GaussRat, b: &GaussRat) -> Self {
        if b.is_zero() {
            P1Point::Infinity
        } else {
            P1Point::Finite(a / b)
        }
    }

    /// Image under `z -> -z`.
    pub fn negated(&self) -> Self {
        match self {
            P1Point::Finite(a) => P1Point::Finite(-a),
            P1Point::Infinity => P1Point::Infinity,
        }
    }

    pub fn parse(s: &str) -> Result<Self, crate::error::ParseError> {
        match s.trim() {
            "inf" | "infinity" | "∞" => Ok(P1Point::Infinity),
            other => Ok(P1Point::Finite(GaussRat::parse(other)?)),
        }
    }
}

impl PartialOrd for P1Point {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for P1Point {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (P1Point::Finite(a), P1Point::Finite(b)) => a.canonical_cmp(b),
            (P1Point::Finite(_), P1Point::Infinity) => Ordering::Less,
            (P1Point::Infinity, P1Point::Finite(_)) => Ordering::Greater,
            (P1Point::Infinity, P1Point::Infinity) => Ordering::Equal,
        }
    }
}

impl fmt::Display for P1Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            P1Point::Finite(a) => write!(f, "{}", a),
            P1Point::Infinity => write!(f, "inf"),
        }
    }
}
