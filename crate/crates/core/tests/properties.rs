mod common;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::Rng;

use tripair::exact_arith::{
    int, is_perfect_square, legendre, rat, IntPolynomial, OddPrime, Rational,
};
use tripair::hyperelliptic::{within_hasse_weil, HyperellipticCurve};
use tripair::reduction::{build_curve_case1, build_curve_case2, known_points};
use tripair::search::{search_points, search_primitive_pairs_filtered, MatchFilter};
use tripair::triangle::{
    isosceles_case1, isosceles_case2, primitive_right, right_from_param, Case, Triangle,
};

use common::*;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-1000i64..1000, 1i64..1000).prop_map(|(n, d)| rat(n, d))
}

proptest! {
    #[test]
    fn rationals_stay_normalized(a in small_rational(), b in small_rational()) {
        let mut results = vec![&a + &b, &a - &b, &a * &b];
        if !b.is_zero() {
            results.push(&a / &b);
        }
        for r in results {
            prop_assert!(r.denom().is_positive());
            prop_assert!(r.numer().gcd(r.denom()).is_one());
            if r.is_zero() {
                prop_assert!(r.denom().is_one());
            }
        }
    }

    #[test]
    fn perfect_square_roundtrip(n in 0u64..u64::MAX / 4) {
        let n = BigInt::from(n);
        prop_assert_eq!(is_perfect_square(&(&n * &n)), Some(n.clone()));
    }

    #[test]
    fn similarity_survives_scaling(a in 1i64..200, b in 1i64..200, c in 1i64..200, num in 1i64..50, den in 1i64..50) {
        prop_assume!(a + b > c && a + c > b && b + c > a);
        let t = Triangle::from_integers(a, b, c).unwrap();
        let scaled = t.scaled(&rat(num, den)).unwrap();
        prop_assert!(t.similar(&scaled));
        prop_assert_eq!(scaled.perimeter(), t.perimeter() * rat(num, den));
    }

    #[test]
    fn right_parametrization_identities(kn in 1i64..100, kd in 1i64..100, xd in 2i64..100, xn_seed in 0i64..1000) {
        let xn = 1 + xn_seed % (xd - 1);
        let (k, x) = (rat(kn, kd), rat(xn, xd));
        let t = right_from_param(&k, &x).unwrap();
        prop_assert!(t.is_right());
        prop_assert_eq!(t.perimeter(), int(2) * &k * (int(1) + &x));
        let area = &k * &k * &x * (int(1) - &x * &x);
        prop_assert_eq!(t.area(), Some(area));
    }
}

#[test]
fn discriminant_vanishes_iff_not_squarefree() {
    let mut rng = seeded(0x5eed);
    let mut zero_seen = 0;
    for _ in 0..100 {
        // half of the samples get a forced repeated factor
        let base: Vec<i64> = (0..rng.gen_range(2..=4))
            .map(|_| rng.gen_range(-4..=4))
            .collect();
        let mut f = IntPolynomial::from_i64s(&base);
        if f.degree().unwrap_or(0) < 1 {
            f = IntPolynomial::from_i64s(&[rng.gen_range(-3..=3), 1, 1]);
        }
        if rng.gen_bool(0.5) {
            let lin = IntPolynomial::from_i64s(&[rng.gen_range(-3..=3), 1]);
            f = &(&f * &lin) * &lin;
        }
        if f.degree().unwrap() < 2 {
            continue;
        }
        let disc = f.discriminant().unwrap();
        let squarefree = gcd_degree_over_q(&f, &f.derivative()) == Some(0);
        assert_eq!(!disc.is_zero(), squarefree, "f = {f}, disc = {disc}");
        zero_seen += usize::from(disc.is_zero());
    }
    assert!(zero_seen > 10);
}

#[test]
fn point_counts_match_brute_force() {
    let mut rng = seeded(2024);
    let mut tested = 0;
    while tested < 20 {
        let coeffs = random_genus2_coeffs(&mut rng);
        let Ok(curve) = HyperellipticCurve::new(IntPolynomial::from_i64s(&coeffs), "random") else {
            continue;
        };
        tested += 1;
        for p in [5u64, 7, 11, 13] {
            if curve.good_reduction_at(p).unwrap() {
                assert_eq!(
                    curve.count_points_mod_p(p).unwrap(),
                    brute_force_count(&coeffs, p),
                    "{coeffs:?} p={p}"
                );
            }
        }
    }
    let quintic = [1, 0, 0, 0, 0, 1];
    let c = HyperellipticCurve::new(IntPolynomial::from_i64s(&quintic), "x^5+1").unwrap();
    assert_eq!(
        c.count_points_mod_p(7).unwrap(),
        brute_force_count(&quintic, 7)
    );
}

#[test]
fn fibres_of_the_involution() {
    for curve in [build_curve_case1(), build_curve_case2()] {
        for p in [5u64, 7, 11, 13] {
            let prime = OddPrime::new(p).unwrap();
            for x in 0..p {
                let fx = curve.polynomial().eval_int(&BigInt::from(x));
                let above = (0..p)
                    .filter(|y| prime.reduce(&(BigInt::from(y * y) - &fx)) == 0)
                    .count() as i64;
                let predicted = 1 + i64::from(legendre(&fx, p).unwrap());
                assert_eq!(above, predicted);
                assert!((0..=2).contains(&above));
            }
        }
    }
}

#[test]
fn hasse_weil_for_both_curves() {
    for curve in [build_curve_case1(), build_curve_case2()] {
        for p in (3u64..100).filter(|&p| OddPrime::new(p).is_ok()) {
            if curve.good_reduction_at(p).unwrap() {
                let n = curve.count_points_mod_p(p).unwrap();
                assert!(within_hasse_weil(n, p, 2), "{} p={p} n={n}", curve.label());
            }
        }
    }
}

#[test]
fn heron_matches_leg_product() {
    for x in 2u64..=50 {
        for y in 1..x {
            let Ok(t) = primitive_right(x, y) else {
                continue;
            };
            let legs: Vec<BigInt> = t.sides()[1..].iter().map(|s| s.to_integer()).collect();
            assert_eq!(t.area_squared(), leg_area_squared(&legs[0], &legs[1]));
        }
    }
}

#[test]
fn isosceles_area_identities() {
    let mut rng = seeded(7);
    for _ in 0..100 {
        let u = unit_rational(&mut rng, 60);
        let expected = int(2) * &u * (int(1) - &u * &u);
        assert_eq!(isosceles_case1(&u).unwrap().area(), Some(expected.clone()));
        assert_eq!(isosceles_case2(&u).unwrap().area(), Some(expected));
    }
}

#[test]
fn search_is_monotone_in_height() {
    let c = build_curve_case2();
    let mut previous: BTreeSet<String> = BTreeSet::new();
    for h in [1u64, 2, 4, 6, 9] {
        let now: BTreeSet<String> = search_points(&c, h, 2)
            .points_found
            .iter()
            .map(|p| p.to_string())
            .collect();
        assert!(previous.is_subset(&now), "height {h}");
        previous = now;
    }
}

#[test]
fn search_points_satisfy_homogeneous_equation() {
    for curve in [build_curve_case1(), build_curve_case2()] {
        let res = search_points(&curve, 20, 3);
        for p in &res.points_found {
            assert!(curve.is_on_curve(p));
            if let Some((x, y)) = p.coordinates() {
                let (a, b) = (x.numer(), x.denom());
                let lhs = y * y * Rational::from_integer(num_traits::pow(b.clone(), 6));
                let rhs = curve.polynomial().homogeneous_eval(a, b, 6);
                assert_eq!(lhs, Rational::from_integer(rhs));
            }
        }
        let case = if curve.label() == "C1" {
            Case::One
        } else {
            Case::Two
        };
        for k in known_points(case) {
            assert!(res.points_found.contains(&k));
        }
    }
}

#[test]
fn search_output_is_canonical_and_duplicate_free() {
    let res = search_points(&build_curve_case1(), 30, 5);
    let rendered: Vec<String> = res.points_found.iter().map(|p| p.to_string()).collect();
    let unique: BTreeSet<&String> = rendered.iter().collect();
    assert_eq!(unique.len(), rendered.len());
    let mut sorted = res.points_found.clone();
    sorted.sort_by(tripair::search::canonical_cmp);
    assert_eq!(sorted, res.points_found);
}

#[test]
fn primitive_search_filters() {
    let area_only = search_primitive_pairs_filtered(Case::One, 60, 4, MatchFilter::AREA_ONLY);
    assert!(!area_only.is_empty());
    for m in &area_only {
        assert_eq!(m.right.area_squared(), m.isosceles.area_squared());
    }
    let perimeter_only = search_primitive_pairs_filtered(
        Case::Two,
        60,
        4,
        MatchFilter {
            perimeter: true,
            area: false,
        },
    );
    for m in &perimeter_only {
        assert_eq!(m.right.perimeter(), m.isosceles.perimeter());
    }
    assert_eq!(
        search_primitive_pairs_filtered(Case::One, 60, 1, MatchFilter::AREA_ONLY),
        area_only
    );
}
