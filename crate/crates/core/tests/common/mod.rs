//! Oracles shared by the integration tests. None of them call into the code
//! paths they are used to check.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use tripair::exact_arith::{IntPolynomial, Rational};

/// `#C(F_p)` by enumerating all `(x, y)` pairs, plus the points at infinity
/// counted as solutions of `y^2 = lc` (degree 6) or a single point (degree 5).
pub fn brute_force_count(coeffs: &[i64], p: u64) -> u64 {
    let p = p as i64;
    let reduced: Vec<i64> = coeffs.iter().map(|c| c.rem_euclid(p)).collect();
    let f = |x: i64| reduced.iter().rev().fold(0i64, |acc, &c| (acc * x + c) % p);
    let mut count = 0u64;
    for x in 0..p {
        let fx = f(x);
        for y in 0..p {
            if (y * y) % p == fx {
                count += 1;
            }
        }
    }
    let degree = coeffs
        .iter()
        .rposition(|&c| c != 0)
        .expect("nonzero polynomial");
    count
        + match degree {
            5 => 1,
            6 => (0..p).filter(|y| (y * y) % p == reduced[6]).count() as u64,
            d => panic!("degree {d} not supported"),
        }
}

/// Random integer sextic or quintic with small coefficients and nonzero
/// leading coefficient.
pub fn random_genus2_coeffs(rng: &mut StdRng) -> Vec<i64> {
    let degree = if rng.gen_bool(0.5) { 5 } else { 6 };
    let mut c: Vec<i64> = (0..=degree).map(|_| rng.gen_range(-9..=9)).collect();
    while c[degree] == 0 {
        c[degree] = rng.gen_range(-9..=9);
    }
    c
}

pub fn seeded(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Polynomial gcd over Q by the Euclidean algorithm on rational coefficient
/// vectors (lowest degree first); returns the degree of the gcd.
pub fn gcd_degree_over_q(f: &IntPolynomial, g: &IntPolynomial) -> Option<usize> {
    fn trim(mut v: Vec<Rational>) -> Vec<Rational> {
        while v.last().is_some_and(Zero::is_zero) {
            v.pop();
        }
        v
    }
    fn rem(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let mut r = a.to_vec();
        let lb = b.last().unwrap().clone();
        while r.len() >= b.len() && !r.is_empty() {
            let shift = r.len() - b.len();
            let factor = r.last().unwrap().clone() / &lb;
            for (i, bc) in b.iter().enumerate() {
                r[shift + i] = &r[shift + i] - &factor * bc;
            }
            r = trim(r);
        }
        r
    }
    let conv = |p: &IntPolynomial| {
        trim(
            p.coefficients()
                .iter()
                .map(|c| Rational::from_integer(c.clone()))
                .collect(),
        )
    };
    let (mut a, mut b) = (conv(f), conv(g));
    while !b.is_empty() {
        let r = rem(&a, &b);
        a = b;
        b = r;
    }
    a.len().checked_sub(1)
}

/// Product of the two legs over two, squared: area^2 of a right triangle with
/// the given integer legs.
pub fn leg_area_squared(leg1: &BigInt, leg2: &BigInt) -> Rational {
    let area = Rational::new(leg1 * leg2, BigInt::from(2));
    &area * &area
}

/// Rational in (0, 1) with denominator at most `max_den`.
pub fn unit_rational(rng: &mut StdRng, max_den: i64) -> Rational {
    let den = rng.gen_range(2..=max_den);
    let num = rng.gen_range(1..den);
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn positive_rational(rng: &mut StdRng, max: i64) -> Rational {
    let den = rng.gen_range(1..=max);
    let num = rng.gen_range(1..=max);
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn one() -> Rational {
    Rational::one()
}
