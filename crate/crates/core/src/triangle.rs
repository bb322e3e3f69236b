//! Rational triangles: Heron area, similarity classes and the right and
//! isosceles families used by the curve reduction and the primitive search.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact_arith::{rational_sqrt, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TriangleError {
    #[error("side lengths must be positive: {0}")]
    NonPositiveSide(String),
    #[error("sides {0} violate the strict triangle inequality")]
    Degenerate(String),
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("generators ({0}, {1}) must satisfy a > b >= 1, gcd(a, b) = 1 and a + b odd")]
    BadGenerators(u64, u64),
}

/// Which of the two isosceles families a pair belongs to.
///
/// `One`: the isosceles triangle is two copies of a right triangle glued along
/// the leg `1 - u^2` (base `4u`). `Two`: glued along the leg `2u` (base
/// `2(1 - u^2)`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Case {
    One,
    Two,
}

impl Case {
    pub const ALL: [Case; 2] = [Case::One, Case::Two];

    pub fn number(self) -> u8 {
        match self {
            Case::One => 1,
            Case::Two => 2,
        }
    }

    pub fn from_number(n: u8) -> Option<Self> {
        match n {
            1 => Some(Case::One),
            2 => Some(Case::Two),
            _ => None,
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

/// A non-degenerate triangle with positive rational sides.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Triangle {
    sides: [Rational; 3],
}

impl Triangle {
    pub fn new(a: Rational, b: Rational, c: Rational) -> Result<Self, TriangleError> {
        if !(a.is_positive() && b.is_positive() && c.is_positive()) {
            return Err(TriangleError::NonPositiveSide(format!("({a}, {b}, {c})")));
        }
        if &a + &b <= c || &b + &c <= a || &a + &c <= b {
            return Err(TriangleError::Degenerate(format!("({a}, {b}, {c})")));
        }
        Ok(Self { sides: [a, b, c] })
    }

    pub fn from_integers(a: i64, b: i64, c: i64) -> Result<Self, TriangleError> {
        let r = |n: i64| Rational::from_integer(BigInt::from(n));
        Self::new(r(a), r(b), r(c))
    }

    /// Sides in construction order.
    pub fn sides(&self) -> &[Rational; 3] {
        &self.sides
    }

    /// Sides sorted from largest to smallest.
    pub fn sorted_desc(&self) -> [Rational; 3] {
        let mut s = self.sides.clone();
        s.sort_by(|a, b| b.cmp(a));
        s
    }

    pub fn perimeter(&self) -> Rational {
        self.sides.iter().sum()
    }

    /// Heron: `s(s-a)(s-b)(s-c)` with `s` the semi-perimeter.
    pub fn area_squared(&self) -> Rational {
        let s = self.perimeter() / Rational::from_integer(BigInt::from(2));
        let [a, b, c] = &self.sides;
        &s * (&s - a) * (&s - b) * (&s - c)
    }

    /// The area, when it is rational.
    pub fn area(&self) -> Option<Rational> {
        rational_sqrt(&self.area_squared())
    }

    pub fn is_right(&self) -> bool {
        let [c, a, b] = self.sorted_desc();
        &c * &c == &a * &a + &b * &b
    }

    pub fn is_isosceles(&self) -> bool {
        let [a, b, c] = &self.sides;
        a == b || b == c || a == c
    }

    pub fn scaled(&self, factor: &Rational) -> Result<Self, TriangleError> {
        let [a, b, c] = &self.sides;
        Self::new(a * factor, b * factor, c * factor)
    }

    pub fn similarity_class(&self) -> SimilarityClass {
        let p = self.perimeter();
        let [a, b, c] = self.sorted_desc();
        SimilarityClass {
            sides: [a / &p, b / &p, c / &p],
        }
    }

    pub fn similar(&self, other: &Triangle) -> bool {
        self.similarity_class() == other.similarity_class()
    }

    /// Least common multiple of the side denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.sides
            .iter()
            .fold(BigInt::one(), |acc, s| acc.lcm(s.denom()))
    }
}

impl fmt::Display for Triangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = &self.sides;
        write!(f, "({a}, {b}, {c})")
    }
}

/// Shape of a triangle: sides divided by the perimeter, largest first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimilarityClass {
    sides: [Rational; 3],
}

impl SimilarityClass {
    pub fn sides(&self) -> &[Rational; 3] {
        &self.sides
    }
}

fn check_open_unit(name: &str, v: &Rational) -> Result<(), TriangleError> {
    if v.is_positive() && *v < Rational::one() {
        Ok(())
    } else {
        Err(TriangleError::ParameterOutOfRange(format!(
            "{name} = {v} is not in (0, 1)"
        )))
    }
}

/// Right triangle `(k(1+x^2), k(1-x^2), 2kx)` for `k > 0`, `0 < x < 1`.
pub fn right_from_param(k: &Rational, x: &Rational) -> Result<Triangle, TriangleError> {
    if !k.is_positive() {
        return Err(TriangleError::ParameterOutOfRange(format!(
            "k = {k} is not positive"
        )));
    }
    check_open_unit("x", x)?;
    let one = Rational::one();
    let x2 = x * x;
    let two = Rational::from_integer(BigInt::from(2));
    let t = Triangle::new(k * (&one + &x2), k * (&one - &x2), two * k * x)?;
    debug_assert!(t.is_right());
    Ok(t)
}

/// Isosceles `(1+u^2, 1+u^2, 4u)` for `0 < u < 1`; the apex height is `1 - u^2`.
pub fn isosceles_case1(u: &Rational) -> Result<Triangle, TriangleError> {
    check_open_unit("u", u)?;
    let leg = Rational::one() + u * u;
    Triangle::new(
        leg.clone(),
        leg,
        Rational::from_integer(BigInt::from(4)) * u,
    )
}

/// Isosceles `(1+u^2, 1+u^2, 2(1-u^2))` for `0 < u < 1`; the apex height is `2u`.
pub fn isosceles_case2(u: &Rational) -> Result<Triangle, TriangleError> {
    check_open_unit("u", u)?;
    let u2 = u * u;
    let leg = Rational::one() + &u2;
    Triangle::new(
        leg.clone(),
        leg,
        Rational::from_integer(BigInt::from(2)) * (Rational::one() - u2),
    )
}

/// Isosceles triangle for the given family.
pub fn isosceles(case: Case, u: &Rational) -> Result<Triangle, TriangleError> {
    match case {
        Case::One => isosceles_case1(u),
        Case::Two => isosceles_case2(u),
    }
}

fn check_generators(a: u64, b: u64) -> Result<(), TriangleError> {
    if b >= 1 && a > b && a.gcd(&b) == 1 && (a + b) % 2 == 1 {
        Ok(())
    } else {
        Err(TriangleError::BadGenerators(a, b))
    }
}

fn from_u128s(a: u128, b: u128, c: u128) -> Result<Triangle, TriangleError> {
    let r = |n: u128| Rational::from_integer(BigInt::from(n));
    Triangle::new(r(a), r(b), r(c))
}

/// Primitive Pythagorean triangle `(x^2+y^2, x^2-y^2, 2xy)`.
pub fn primitive_right(x: u64, y: u64) -> Result<Triangle, TriangleError> {
    check_generators(x, y)?;
    let (x, y) = (x as u128, y as u128);
    from_u128s(x * x + y * y, x * x - y * y, 2 * x * y)
}

/// Primitive isosceles triangle: `(u^2+v^2, u^2+v^2, 4uv)` for case one,
/// `(u^2+v^2, u^2+v^2, 2(u^2-v^2))` for case two.
pub fn primitive_isosceles(case: Case, u: u64, v: u64) -> Result<Triangle, TriangleError> {
    check_generators(u, v)?;
    let (u, v) = (u as u128, v as u128);
    let leg = u * u + v * v;
    let base = match case {
        Case::One => 4 * u * v,
        Case::Two => 2 * (u * u - v * v),
    };
    from_u128s(leg, leg, base)
}

/// Gcd of the numerators of an integral triangle's sides; `None` if a side is
/// not an integer.
pub fn integral_gcd(t: &Triangle) -> Option<BigInt> {
    if t.sides().iter().any(|s| !s.is_integer()) {
        return None;
    }
    Some(
        t.sides()
            .iter()
            .fold(BigInt::zero(), |acc, s| acc.gcd(s.numer())),
    )
}
