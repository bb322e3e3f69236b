//! Genus-2 curves `y^2 = f(x)` over the rationals.
//!
//! Only what the counting argument needs is here: exact membership, points at
//! infinity, good reduction of the given model, `#C(F_p)` and the
//! Chabauty–Coleman inequality `#C(Q) <= #C(F_p) + 2g - 2`. The Mordell–Weil
//! rank is never computed; it comes in as a [`RankAssumption`].

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::exact_arith::{rational_sqrt, ArithError, FpElement, IntPolynomial, OddPrime, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("curve polynomial must have degree 5 or 6, got {0}")]
    WrongDegree(String),
    #[error("curve polynomial {0} has zero discriminant")]
    Singular(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("{label}: model has bad reduction at {p}")]
    BadReduction { label: String, p: u64 },
}

/// Why the Chabauty–Coleman bound was refused.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundError {
    #[error("rank bound {rank} is not below the genus {genus}")]
    RankTooLarge { rank: u32, genus: u32 },
    #[error("prime {p} is not larger than 2g = {two_g}")]
    PrimeTooSmall { p: u64, two_g: u32 },
    #[error("model has bad reduction at {p}")]
    BadReduction { p: u64 },
    #[error("rank assumption is for curve {assumed}, not {actual}")]
    WrongCurve { assumed: String, actual: String },
    #[error(transparent)]
    Arith(#[from] ArithError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AssumptionError {
    #[error("rank assumption needs a non-empty provenance")]
    MissingProvenance,
}

/// A genus-2 curve `y^2 = f(x)` with a smooth affine model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HyperellipticCurve {
    f: IntPolynomial,
    label: String,
    discriminant: BigInt,
}

impl HyperellipticCurve {
    pub fn new(f: IntPolynomial, label: impl Into<String>) -> Result<Self, CurveError> {
        match f.degree() {
            Some(5 | 6) => {}
            other => {
                return Err(CurveError::WrongDegree(
                    other.map_or_else(|| "none".into(), |d| d.to_string()),
                ))
            }
        }
        let discriminant = f.discriminant()?;
        if discriminant.is_zero() {
            return Err(CurveError::Singular(f.to_string()));
        }
        Ok(Self {
            f,
            label: label.into(),
            discriminant,
        })
    }

    pub fn polynomial(&self) -> &IntPolynomial {
        &self.f
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn discriminant(&self) -> &BigInt {
        &self.discriminant
    }

    pub fn degree(&self) -> usize {
        self.f.degree().expect("validated at construction")
    }

    pub fn genus(&self) -> u32 {
        ((self.degree() - 1) / 2) as u32
    }

    fn leading_coefficient(&self) -> &BigInt {
        self.f
            .leading_coefficient()
            .expect("validated at construction")
    }

    /// Rational points at infinity of the smooth model.
    pub fn points_at_infinity(&self) -> Vec<CurvePoint> {
        if self.degree() == 5 {
            return vec![CurvePoint::InfinityPlus];
        }
        let lc = Rational::from_integer(self.leading_coefficient().clone());
        match rational_sqrt(&lc) {
            Some(_) => vec![CurvePoint::InfinityPlus, CurvePoint::InfinityMinus],
            None => Vec::new(),
        }
    }

    pub fn is_on_curve(&self, point: &CurvePoint) -> bool {
        match point {
            CurvePoint::Affine { x, y } => y * y == self.f.eval(x),
            other => self.points_at_infinity().contains(other),
        }
    }

    /// True iff the given model stays a smooth degree-preserving model mod `p`.
    pub fn good_reduction_at(&self, p: u64) -> Result<bool, CurveError> {
        let p = OddPrime::new(p)?;
        Ok(p.reduce(self.leading_coefficient()) != 0 && p.reduce(&self.discriminant) != 0)
    }

    /// Number of points on the smooth model over `F_p`.
    pub fn count_points_mod_p(&self, p: u64) -> Result<u64, CurveError> {
        if !self.good_reduction_at(p)? {
            return Err(CurveError::BadReduction {
                label: self.label.clone(),
                p,
            });
        }
        let prime = OddPrime::new(p)?;
        let reduced = self.f.mod_p(prime);
        let affine: i64 = (0..p)
            .map(|x| 1 + i64::from(reduced.eval(FpElement::new(x, prime)).legendre()))
            .sum();
        let infinity = if self.degree() == 5 {
            1
        } else {
            1 + i64::from(FpElement::from_int(self.leading_coefficient(), prime).legendre())
        };
        Ok((affine + infinity) as u64)
    }

    /// `#C(F_p) + 2g - 2`, returned only when every hypothesis holds.
    pub fn chabauty_coleman_bound(
        &self,
        p: u64,
        assumption: &RankAssumption,
    ) -> Result<u64, BoundError> {
        if assumption.curve_label() != self.label {
            return Err(BoundError::WrongCurve {
                assumed: assumption.curve_label().to_owned(),
                actual: self.label.clone(),
            });
        }
        let genus = self.genus();
        if assumption.rank_upper_bound() >= genus {
            return Err(BoundError::RankTooLarge {
                rank: assumption.rank_upper_bound(),
                genus,
            });
        }
        if p <= 2 * u64::from(genus) {
            return Err(BoundError::PrimeTooSmall {
                p,
                two_g: 2 * genus,
            });
        }
        let good = self.good_reduction_at(p).map_err(|e| match e {
            CurveError::Arith(a) => BoundError::Arith(a),
            _ => BoundError::BadReduction { p },
        })?;
        if !good {
            return Err(BoundError::BadReduction { p });
        }
        let count = self
            .count_points_mod_p(p)
            .map_err(|_| BoundError::BadReduction { p })?;
        Ok(count + 2 * u64::from(genus) - 2)
    }
}

/// `|N - (p + 1)| <= floor(2g * sqrt(p))`, checked with integers only.
pub fn within_hasse_weil(count: u64, p: u64, genus: u32) -> bool {
    let dev = (count as i128 - (p as i128 + 1)).abs();
    let two_g = 2 * genus as i128;
    dev * dev <= two_g * two_g * p as i128
}

/// A rational point on the smooth model.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CurvePoint {
    Affine {
        x: Rational,
        y: Rational,
    },
    /// The point at infinity with `y / x^3 -> +sqrt(lc)` (the only one in degree 5).
    InfinityPlus,
    /// The point at infinity with `y / x^3 -> -sqrt(lc)`.
    InfinityMinus,
}

impl CurvePoint {
    pub fn affine(x: Rational, y: Rational) -> Self {
        CurvePoint::Affine { x, y }
    }

    pub fn is_affine(&self) -> bool {
        matches!(self, CurvePoint::Affine { .. })
    }

    pub fn coordinates(&self) -> Option<(&Rational, &Rational)> {
        match self {
            CurvePoint::Affine { x, y } => Some((x, y)),
            _ => None,
        }
    }

    /// Image under the hyperelliptic involution `y -> -y`.
    pub fn negated(&self) -> Self {
        match self {
            CurvePoint::Affine { x, y } => CurvePoint::Affine {
                x: x.clone(),
                y: -y,
            },
            CurvePoint::InfinityPlus => CurvePoint::InfinityMinus,
            CurvePoint::InfinityMinus => CurvePoint::InfinityPlus,
        }
    }
}

impl fmt::Display for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurvePoint::Affine { x, y } => write!(f, "({x}, {y})"),
            CurvePoint::InfinityPlus => write!(f, "inf+"),
            CurvePoint::InfinityMinus => write!(f, "inf-"),
        }
    }
}

/// An externally certified upper bound on the Mordell–Weil rank of a curve's
/// Jacobian. Never produced by this crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankAssumption {
    curve_label: String,
    rank_upper_bound: u32,
    provenance: String,
}

impl RankAssumption {
    pub fn new(
        curve_label: impl Into<String>,
        rank_upper_bound: u32,
        provenance: impl Into<String>,
    ) -> Result<Self, AssumptionError> {
        let provenance = provenance.into();
        if provenance.trim().is_empty() {
            return Err(AssumptionError::MissingProvenance);
        }
        Ok(Self {
            curve_label: curve_label.into(),
            rank_upper_bound,
            provenance,
        })
    }

    pub fn curve_label(&self) -> &str {
        &self.curve_label
    }

    pub fn rank_upper_bound(&self) -> u32 {
        self.rank_upper_bound
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }
}
