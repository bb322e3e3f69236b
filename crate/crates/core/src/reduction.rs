//! From triangle equations to curves and back.
//!
//! A right triangle `(k(1+x^2), k(1-x^2), 2kx)` and an isosceles triangle of
//! family [`Case::One`] or [`Case::Two`] share perimeter and area exactly when a
//! quadratic in `k` has a rational root. Its discriminant being a rational
//! square gives the curves
//!
//! ```text
//! C1: r^2 = (-3w^3 + 2w^2 - 6w + 4)^2 - 8w^6      (w = u + 1)
//! C2: s^2 = (u^3 - u + 6)^2 - 32
//! ```
//!
//! and each rational point yields up to two parameter triples `(k, x, u)`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exact_arith::{int, rat, IntPolynomial, Rational};
use crate::hyperelliptic::{CurvePoint, HyperellipticCurve};
use crate::triangle::{
    isosceles, right_from_param, Case, SimilarityClass, Triangle, TriangleError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("parameters (k, x, u) = {params} outside the triangle domain for case {case}")]
    OutOfDomain { case: Case, params: String },
    #[error(transparent)]
    Triangle(#[from] TriangleError),
    #[error("case {case}: {detail}")]
    NotAPair { case: Case, detail: String },
    #[error("shared area^2 {0} is not a rational square")]
    IrrationalArea(String),
}

pub fn curve_label(case: Case) -> &'static str {
    match case {
        Case::One => "C1",
        Case::Two => "C2",
    }
}

/// `-3w^3 + 2w^2 - 6w + 4`
fn case1_cubic() -> IntPolynomial {
    IntPolynomial::from_i64s(&[4, -6, 2, -3])
}

/// `u^3 - u + 6`
fn case2_cubic() -> IntPolynomial {
    IntPolynomial::from_i64s(&[6, -1, 0, 1])
}

/// Right-hand side of C1, expanded from `(-3w^3 + 2w^2 - 6w + 4)^2 - 8w^6`.
pub fn case1_polynomial() -> IntPolynomial {
    &case1_cubic().pow(2) - &IntPolynomial::monomial(8, 6)
}

/// Right-hand side of C2, expanded from `(u^3 - u + 6)^2 - 32`.
pub fn case2_polynomial() -> IntPolynomial {
    &case2_cubic().pow(2) - &IntPolynomial::constant(32)
}

pub fn build_curve_case1() -> HyperellipticCurve {
    HyperellipticCurve::new(case1_polynomial(), curve_label(Case::One))
        .expect("C1 model is a smooth sextic")
}

pub fn build_curve_case2() -> HyperellipticCurve {
    HyperellipticCurve::new(case2_polynomial(), curve_label(Case::Two))
        .expect("C2 model is a smooth sextic")
}

pub fn build_curve(case: Case) -> HyperellipticCurve {
    match case {
        Case::One => build_curve_case1(),
        Case::Two => build_curve_case2(),
    }
}

/// The ten rational points listed for each curve: eight affine points, then
/// the two points at infinity.
pub fn known_points(case: Case) -> Vec<CurvePoint> {
    let affine: &[(Rational, Rational)] = match case {
        Case::One => &[
            (int(0), int(4)),
            (int(1), int(1)),
            (int(2), int(8)),
            (int(12), int(868)),
        ],
        Case::Two => &[
            (int(0), int(2)),
            (int(1), int(2)),
            (int(-1), int(2)),
            (rat(5, 6), rat(217, 216)),
        ],
    };
    let mut points = Vec::with_capacity(10);
    for (x, y) in affine {
        points.push(CurvePoint::affine(x.clone(), y.clone()));
        points.push(CurvePoint::affine(x.clone(), -y));
    }
    points.push(CurvePoint::InfinityPlus);
    points.push(CurvePoint::InfinityMinus);
    points
}

/// Parameters of a right/isosceles pair, restricted to genuine triangles.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ParamTriple {
    case: Case,
    k: Rational,
    x: Rational,
    u: Rational,
}

impl ParamTriple {
    /// Requires `k > 0`, `0 < x < 1`, `0 < u < 1`, and `k < 2` in case two.
    pub fn new(case: Case, k: Rational, x: Rational, u: Rational) -> Result<Self, ReductionError> {
        let unit = |v: &Rational| v.is_positive() && *v < Rational::one();
        let k_ok = k.is_positive() && (case == Case::One || k < int(2));
        if k_ok && unit(&x) && unit(&u) {
            Ok(Self { case, k, x, u })
        } else {
            Err(ReductionError::OutOfDomain {
                case,
                params: format!("({k}, {x}, {u})"),
            })
        }
    }

    pub fn case(&self) -> Case {
        self.case
    }

    pub fn k(&self) -> &Rational {
        &self.k
    }

    pub fn x(&self) -> &Rational {
        &self.x
    }

    pub fn u(&self) -> &Rational {
        &self.u
    }
}

impl fmt::Display for ParamTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(k, x, u) = ({}, {}, {})", self.k, self.x, self.u)
    }
}

/// The `k`-quadratic attached to a curve point, as coefficients `(a, b, c)` of
/// `a k^2 + b k + c`.
///
/// Case one: `2w k^2 + (-3w^3 + 2w^2 - 6w + 4) k + w^5`.
/// Case two: `2 k^2 - (u^3 - u + 6) k + 4`.
pub fn k_quadratic(case: Case, coordinate: &Rational) -> (Rational, Rational, Rational) {
    match case {
        Case::One => (
            int(2) * coordinate,
            case1_cubic().eval(coordinate),
            num_traits::pow(coordinate.clone(), 5),
        ),
        Case::Two => (int(2), -case2_cubic().eval(coordinate), int(4)),
    }
}

/// Both roots of the `k`-quadratic at an affine point, the one using `+y`
/// first. `None` at infinity and at `w = 0` (where the quadratic degenerates).
pub fn quadratic_roots(case: Case, point: &CurvePoint) -> Option<[Rational; 2]> {
    let (coord, y) = point.coordinates()?;
    let (a, b, _) = k_quadratic(case, coord);
    if a.is_zero() {
        return None;
    }
    let two_a = int(2) * &a;
    Some([(-&b + y) / &two_a, (-&b - y) / &two_a])
}

/// Parameter triples recovered from a curve point; empty when the point gives
/// no genuine triangle pair.
pub fn params_from_point(case: Case, point: &CurvePoint) -> Vec<ParamTriple> {
    let Some(roots) = quadratic_roots(case, point) else {
        return Vec::new();
    };
    let (coord, _) = point.coordinates().expect("roots imply affine");
    let mut out: Vec<ParamTriple> = Vec::with_capacity(2);
    for k in roots {
        if !k.is_positive() {
            continue;
        }
        let (x, u) = match case {
            // k(1 + x) = w^2, u = w - 1
            Case::One => (coord * coord / &k - int(1), coord - int(1)),
            // k(1 + x) = 2
            Case::Two => (int(2) / &k - int(1), coord.clone()),
        };
        if let Ok(t) = ParamTriple::new(case, k, x, u) {
            if !out.contains(&t) {
                out.push(t);
            }
        }
    }
    out
}

/// Right/isosceles pair with equal perimeter and equal area.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrianglePairWitness {
    pub params: ParamTriple,
    pub right: Triangle,
    pub isosceles: Triangle,
    pub shared_perimeter: Rational,
    pub shared_area: Rational,
    pub source_point: Option<CurvePoint>,
}

/// Shape of a witness pair; two witnesses describe the same pair up to
/// similitude iff their classes agree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairClass {
    pub right: SimilarityClass,
    pub isosceles: SimilarityClass,
}

/// A witness with denominators cleared.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaledPair {
    pub scale: BigInt,
    /// Hypotenuse, shorter leg, longer leg.
    pub right: [BigInt; 3],
    /// Leg, leg, base.
    pub isosceles: [BigInt; 3],
    pub perimeter: BigInt,
    pub area: Rational,
}

pub fn witness_from_params(params: &ParamTriple) -> Result<TrianglePairWitness, ReductionError> {
    let right = right_from_param(params.k(), params.x())?;
    let iso = isosceles(params.case(), params.u())?;
    let (rp, ip) = (right.perimeter(), iso.perimeter());
    let (ra, ia) = (right.area_squared(), iso.area_squared());
    if rp != ip || ra != ia {
        return Err(ReductionError::NotAPair {
            case: params.case(),
            detail: format!("perimeters {rp} vs {ip}, areas^2 {ra} vs {ia} differ"),
        });
    }
    let shared_area = right
        .area()
        .ok_or_else(|| ReductionError::IrrationalArea(ra.to_string()))?;
    Ok(TrianglePairWitness {
        params: params.clone(),
        right,
        isosceles: iso,
        shared_perimeter: rp,
        shared_area,
        source_point: None,
    })
}

impl TrianglePairWitness {
    pub fn with_source(mut self, point: CurvePoint) -> Self {
        self.source_point = Some(point);
        self
    }

    pub fn class(&self) -> PairClass {
        PairClass {
            right: self.right.similarity_class(),
            isosceles: self.isosceles.similarity_class(),
        }
    }

    /// Scales both triangles by the lcm of all six side denominators.
    pub fn scaled_integer_pair(&self) -> ScaledPair {
        let scale = self
            .right
            .denominator_lcm()
            .lcm(&self.isosceles.denominator_lcm());
        let factor = Rational::from_integer(scale.clone());
        let to_int = |r: &Rational| {
            let v = r * &factor;
            debug_assert!(v.is_integer());
            v.to_integer()
        };
        let [hyp, leg_a, leg_b] = self.right.sorted_desc();
        let right = [to_int(&hyp), to_int(&leg_b), to_int(&leg_a)];
        let [a, b, c] = self.isosceles.sides();
        let (leg, base) = if a == b {
            (a, c)
        } else if a == c {
            (a, b)
        } else {
            (b, a)
        };
        let isosceles = [to_int(leg), to_int(leg), to_int(base)];
        ScaledPair {
            perimeter: to_int(&self.shared_perimeter),
            area: &self.shared_area * &factor * &factor,
            scale,
            right,
            isosceles,
        }
    }
}

/// `(w, r) -> (1 - 2/w, 2r/w^3)`; `None` at `w = 0` and at infinity.
pub fn map_c1_to_c2(point: &CurvePoint) -> Option<CurvePoint> {
    let (w, r) = point.coordinates()?;
    if w.is_zero() {
        return None;
    }
    let w3 = w * w * w;
    Some(CurvePoint::affine(int(1) - int(2) / w, int(2) * r / w3))
}

/// `(u, s) -> (2/(1 - u), s w^3 / 2)`; `None` at `u = 1` and at infinity.
pub fn map_c2_to_c1(point: &CurvePoint) -> Option<CurvePoint> {
    let (u, s) = point.coordinates()?;
    if u.is_one() {
        return None;
    }
    let w = int(2) / (int(1) - u);
    let r = s * &w * &w * &w / int(2);
    Some(CurvePoint::affine(w, r))
}
