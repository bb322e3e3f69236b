//! Exhaustive searches that back the curve argument from the other side.
//!
//! Work is split across `workers` scoped threads by residue class of the
//! outer loop variable and merged single-threaded in a canonical order, so the
//! output never depends on the worker count.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::thread;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::exact_arith::{is_perfect_square, Rational};
use crate::hyperelliptic::{within_hasse_weil, CurveError, CurvePoint, HyperellipticCurve};
use crate::triangle::{primitive_isosceles, primitive_right, Case, Triangle};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("height bound must be at least 1")]
    HeightBound,
    #[error("generator bound must be at least 2")]
    GeneratorBound,
    #[error("worker count must be at least 1")]
    Workers,
    #[error("count at {p}: {source}")]
    Count { p: u64, source: CurveError },
    #[error("{label}: #C(F_{p}) = {count} lies outside the Hasse-Weil window")]
    HasseWeil { label: String, p: u64, count: u64 },
}

/// Bounds and worker count for the exhaustive searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    height_bound: u64,
    generator_bound: u64,
    workers: usize,
}

impl SearchConfig {
    pub fn new(
        height_bound: u64,
        generator_bound: u64,
        workers: usize,
    ) -> Result<Self, SearchError> {
        if height_bound < 1 {
            return Err(SearchError::HeightBound);
        }
        if generator_bound < 2 {
            return Err(SearchError::GeneratorBound);
        }
        if workers < 1 {
            return Err(SearchError::Workers);
        }
        Ok(Self {
            height_bound,
            generator_bound,
            workers,
        })
    }

    pub fn height_bound(&self) -> u64 {
        self.height_bound
    }

    pub fn generator_bound(&self) -> u64 {
        self.generator_bound
    }

    pub fn workers(&self) -> usize {
        self.workers
    }
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            height_bound: 100,
            generator_bound: 200,
            workers: 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub curve_label: String,
    pub points_found: Vec<CurvePoint>,
    pub height_bound_used: u64,
    pub exhaustive: bool,
}

fn sign_rank(y: &Rational) -> i8 {
    if y.is_negative() {
        -1
    } else if y.is_zero() {
        0
    } else {
        1
    }
}

/// Canonical order: affine points by denominator, numerator, then sign of
/// `y`; points at infinity last.
pub fn canonical_cmp(a: &CurvePoint, b: &CurvePoint) -> Ordering {
    fn rank(p: &CurvePoint) -> u8 {
        match p {
            CurvePoint::Affine { .. } => 0,
            CurvePoint::InfinityPlus => 1,
            CurvePoint::InfinityMinus => 2,
        }
    }
    match (a, b) {
        (CurvePoint::Affine { x: xa, y: ya }, CurvePoint::Affine { x: xb, y: yb }) => xa
            .denom()
            .cmp(xb.denom())
            .then_with(|| xa.numer().cmp(xb.numer()))
            .then_with(|| sign_rank(ya).cmp(&sign_rank(yb))),
        _ => rank(a).cmp(&rank(b)),
    }
}

/// Runs `job(residue)` for residues `0..workers` on scoped threads and
/// concatenates the results in residue order.
fn run_partitioned<T, F>(workers: usize, job: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> Vec<T> + Sync,
{
    if workers == 1 {
        return job(0);
    }
    let job = &job;
    thread::scope(|scope| {
        let handles: Vec<_> = (0..workers as u64)
            .map(|r| scope.spawn(move || job(r)))
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("search worker panicked"))
            .collect()
    })
}

/// All rational points whose x-coordinate `a/b` has `|a| <= H`, `1 <= b <= H`.
pub fn search_points(
    curve: &HyperellipticCurve,
    height_bound: u64,
    workers: usize,
) -> SearchResult {
    let h = height_bound.max(1) as i64;
    let workers = workers.max(1);
    let f = curve.polynomial();
    let mut points = run_partitioned(workers, |residue| {
        let mut found = Vec::new();
        // numerator a in [-H, H] with (a + H) = residue mod workers
        let mut a = -h + residue as i64;
        while a <= h {
            let a_big = BigInt::from(a);
            for b in 1..=h {
                if a.gcd(&b) != 1 {
                    continue;
                }
                let b_big = BigInt::from(b);
                let value = f.homogeneous_eval(&a_big, &b_big, 6);
                if let Some(m) = is_perfect_square(&value) {
                    let x = Rational::new(a_big.clone(), b_big.clone());
                    let y = Rational::new(m, num_traits::pow(b_big, 3));
                    if y.is_zero() {
                        found.push(CurvePoint::affine(x, y));
                    } else {
                        found.push(CurvePoint::affine(x.clone(), -&y));
                        found.push(CurvePoint::affine(x, y));
                    }
                }
            }
            a += workers as i64;
        }
        found
    });
    points.sort_by(canonical_cmp);
    points.extend(curve.points_at_infinity());
    SearchResult {
        curve_label: curve.label().to_owned(),
        points_found: points,
        height_bound_used: height_bound,
        exhaustive: true,
    }
}

/// Which equalities a primitive pair has to satisfy to be reported.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MatchFilter {
    pub perimeter: bool,
    pub area: bool,
}

impl MatchFilter {
    pub const BOTH: MatchFilter = MatchFilter {
        perimeter: true,
        area: true,
    };
    pub const AREA_ONLY: MatchFilter = MatchFilter {
        perimeter: false,
        area: true,
    };
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimitiveMatch {
    pub right_generators: (u64, u64),
    pub isosceles_generators: (u64, u64),
    pub right: Triangle,
    pub isosceles: Triangle,
}

/// Coprime generator pairs `(a, b)`, `1 <= b < a <= bound`, `a + b` odd, with
/// `a = residue (mod workers)`.
fn generator_pairs(bound: u64, residue: u64, workers: u64) -> impl Iterator<Item = (u64, u64)> {
    (2..=bound)
        .filter(move |a| a % workers == residue)
        .flat_map(|a| (1..a).map(move |b| (a, b)))
        .filter(|&(a, b)| (a + b) % 2 == 1 && a.gcd(&b) == 1)
}

type Key = (Option<Rational>, Option<Rational>);

fn key(t: &Triangle, filter: MatchFilter) -> Key {
    (
        filter.perimeter.then(|| t.perimeter()),
        filter.area.then(|| t.area_squared()),
    )
}

/// Primitive right triangles against primitive isosceles triangles of one
/// family, all generators at most `bound`, keeping pairs equal under `filter`.
pub fn search_primitive_pairs_filtered(
    case: Case,
    bound: u64,
    workers: usize,
    filter: MatchFilter,
) -> Vec<PrimitiveMatch> {
    assert!(filter.perimeter || filter.area, "empty match filter");
    let workers = workers.max(1);
    let w = workers as u64;
    let rights: Vec<((u64, u64), Triangle, Key)> = run_partitioned(workers, |r| {
        generator_pairs(bound, r, w)
            .map(|(x, y)| {
                let t = primitive_right(x, y).expect("valid generators");
                let k = key(&t, filter);
                ((x, y), t, k)
            })
            .collect()
    });
    let mut by_key: HashMap<&Key, Vec<usize>> = HashMap::new();
    for (i, (_, _, k)) in rights.iter().enumerate() {
        by_key.entry(k).or_default().push(i);
    }
    let by_key = &by_key;
    let rights = &rights;
    let mut matches = run_partitioned(workers, |r| {
        let mut out = Vec::new();
        for (u, v) in generator_pairs(bound, r, w) {
            let iso = primitive_isosceles(case, u, v).expect("valid generators");
            if let Some(idx) = by_key.get(&key(&iso, filter)) {
                for &i in idx {
                    let (gen, right, _) = &rights[i];
                    out.push(PrimitiveMatch {
                        right_generators: *gen,
                        isosceles_generators: (u, v),
                        right: right.clone(),
                        isosceles: iso.clone(),
                    });
                }
            }
        }
        out
    });
    matches.sort_by_key(|m| (m.right_generators, m.isosceles_generators));
    matches
}

/// Primitive pairs with equal perimeter and equal area.
pub fn search_primitive_pairs(case: Case, bound: u64, workers: usize) -> Vec<PrimitiveMatch> {
    search_primitive_pairs_filtered(case, bound, workers, MatchFilter::BOTH)
}

/// `(p, #C(F_p))` for each prime, each checked against the Hasse–Weil window.
pub fn cross_check_counts(
    curve: &HyperellipticCurve,
    primes: &[u64],
) -> Result<Vec<(u64, u64)>, SearchError> {
    primes
        .iter()
        .map(|&p| {
            let count = curve
                .count_points_mod_p(p)
                .map_err(|source| SearchError::Count { p, source })?;
            if !within_hasse_weil(count, p, curve.genus()) {
                return Err(SearchError::HasseWeil {
                    label: curve.label().to_owned(),
                    p,
                    count,
                });
            }
            Ok((p, count))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::{int, rat};
    use crate::reduction::{build_curve_case1, build_curve_case2};

    #[test]
    fn config_validation() {
        assert!(SearchConfig::new(0, 2, 1).is_err());
        assert!(SearchConfig::new(1, 1, 1).is_err());
        assert!(SearchConfig::new(1, 2, 0).is_err());
        assert!(SearchConfig::new(1, 2, 1).is_ok());
    }

    #[test]
    fn tiny_height_finds_integral_points() {
        let res = search_points(&build_curve_case1(), 1, 1);
        // x in {-1, 0, 1}: f1(-1) = 265 is not a square
        let expected = vec![
            CurvePoint::affine(int(0), int(-4)),
            CurvePoint::affine(int(0), int(4)),
            CurvePoint::affine(int(1), int(-1)),
            CurvePoint::affine(int(1), int(1)),
            CurvePoint::InfinityPlus,
            CurvePoint::InfinityMinus,
        ];
        assert_eq!(res.points_found, expected);
    }

    #[test]
    fn c2_small_height() {
        let res = search_points(&build_curve_case2(), 6, 3);
        assert_eq!(res.points_found.len(), 10);
        assert!(res
            .points_found
            .contains(&CurvePoint::affine(rat(5, 6), rat(-217, 216))));
    }

    #[test]
    fn worker_count_does_not_change_output() {
        let c = build_curve_case1();
        let one = search_points(&c, 15, 1);
        for w in [2, 3, 8] {
            assert_eq!(search_points(&c, 15, w), one);
        }
    }

    #[test]
    fn primitive_pairs_small() {
        assert!(search_primitive_pairs(Case::One, 2, 1).is_empty());
        assert!(search_primitive_pairs(Case::Two, 2, 1).is_empty());
    }

    #[test]
    fn area_only_filter_is_not_vacuous() {
        // right (4, 1) has area 60, as does case-one isosceles (3, 2)
        let m = search_primitive_pairs_filtered(Case::One, 4, 2, MatchFilter::AREA_ONLY);
        assert!(m
            .iter()
            .any(|m| m.right_generators == (4, 1) && m.isosceles_generators == (3, 2)));
    }

    #[test]
    fn counts_cross_checked() {
        assert_eq!(
            cross_check_counts(&build_curve_case1(), &[5]),
            Ok(vec![(5, 8)])
        );
        assert_eq!(
            cross_check_counts(&build_curve_case2(), &[5]),
            Ok(vec![(5, 8)])
        );
        assert!(matches!(
            cross_check_counts(&build_curve_case1(), &[47]),
            Err(SearchError::Count { p: 47, .. })
        ));
    }
}
