//! Exact integer, rational, prime-field and polynomial arithmetic.
//!
//! Nothing in this crate touches floating point. Rationals are kept in lowest
//! terms with a positive denominator by [`num_rational::BigRational`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Arbitrary-precision rational number in canonical form.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("discriminant needs degree >= 2, got {0}")]
    DegreeTooSmall(String),
}

/// Builds the rational `num/den`. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Builds an integral rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

// Quadratic residues modulo small auxiliary moduli, used to reject most
// non-squares before the full integer square root.
const PREFILTER_MODULI: [u32; 4] = [64, 63, 65, 11];

fn residue_table(m: u32) -> Vec<bool> {
    let mut table = vec![false; m as usize];
    for r in 0..m {
        table[((r * r) % m) as usize] = true;
    }
    table
}

fn passes_residue_filter(n: &BigUint) -> bool {
    thread_local! {
        static TABLES: Vec<Vec<bool>> = PREFILTER_MODULI.iter().map(|&m| residue_table(m)).collect();
    }
    TABLES.with(|tables| {
        PREFILTER_MODULI.iter().zip(tables).all(|(&m, table)| {
            let r = (n % m).to_u32().expect("residue fits in u32");
            table[r as usize]
        })
    })
}

/// Floor of the square root of `n`, checked exactly: `r^2 <= n < (r+1)^2`.
pub fn isqrt(n: &BigUint) -> BigUint {
    let r = n.sqrt();
    debug_assert!(&r * &r <= *n);
    assert!(&(&r + 1u32) * &(&r + 1u32) > *n, "integer sqrt overshoot");
    r
}

/// Returns `r >= 0` with `r^2 = n`, or `None` when `n` is not a perfect square
/// (negative `n` included).
pub fn is_perfect_square(n: &BigInt) -> Option<BigInt> {
    match n.sign() {
        Sign::Minus => None,
        Sign::NoSign => Some(BigInt::zero()),
        Sign::Plus => {
            let m = n.magnitude();
            if !passes_residue_filter(m) {
                return None;
            }
            let r = isqrt(m);
            if &r * &r == *m {
                Some(BigInt::from(r))
            } else {
                None
            }
        }
    }
}

/// Non-negative rational square root, when `q` is the square of a rational.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    let num = is_perfect_square(q.numer())?;
    let den = is_perfect_square(q.denom())?;
    Some(Rational::new(num, den))
}

/// Deterministic primality by trial division; intended for small moduli.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// An odd prime modulus, checked at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OddPrime(u64);

impl OddPrime {
    pub fn new(p: u64) -> Result<Self, ArithError> {
        // keep products of two residues inside u64
        if p > u32::MAX as u64 || p == 2 || !is_prime(p) {
            return Err(ArithError::NotOddPrime(p));
        }
        Ok(Self(p))
    }

    pub fn get(self) -> u64 {
        self.0
    }

    /// Reduces an arbitrary integer into `[0, p)`.
    pub fn reduce(self, a: &BigInt) -> u64 {
        a.mod_floor(&BigInt::from(self.0))
            .to_u64()
            .expect("residue fits in u64")
    }
}

impl fmt::Display for OddPrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Element of the prime field `F_p`, always reduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FpElement {
    value: u64,
    modulus: OddPrime,
}

impl FpElement {
    pub fn new(value: u64, modulus: OddPrime) -> Self {
        Self {
            value: value % modulus.0,
            modulus,
        }
    }

    pub fn from_int(a: &BigInt, modulus: OddPrime) -> Self {
        Self {
            value: modulus.reduce(a),
            modulus,
        }
    }

    pub fn zero(modulus: OddPrime) -> Self {
        Self::new(0, modulus)
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> OddPrime {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn pow(self, mut exp: u64) -> Self {
        let p = self.modulus.0;
        let mut base = self.value;
        let mut acc = 1 % p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            exp >>= 1;
        }
        Self::new(acc, self.modulus)
    }

    /// Legendre symbol by Euler's criterion.
    pub fn legendre(self) -> i8 {
        if self.is_zero() {
            return 0;
        }
        let e = self.pow((self.modulus.0 - 1) / 2);
        if e.value == 1 {
            1
        } else {
            debug_assert_eq!(e.value, self.modulus.0 - 1);
            -1
        }
    }
}

impl Add for FpElement {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        Self::new(self.value + rhs.value, self.modulus)
    }
}

impl Sub for FpElement {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        Self::new(self.value + self.modulus.0 - rhs.value, self.modulus)
    }
}

impl Mul for FpElement {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        Self::new(self.value * rhs.value, self.modulus)
    }
}

impl Neg for FpElement {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(self.modulus.0 - self.value, self.modulus)
    }
}

/// Legendre symbol `(a/p)` for an odd prime `p`.
pub fn legendre(a: &BigInt, p: u64) -> Result<i8, ArithError> {
    let p = OddPrime::new(p)?;
    Ok(FpElement::from_int(a, p).legendre())
}

/// Dense univariate polynomial with integer coefficients, lowest degree first.
///
/// Trailing zero coefficients are always trimmed, so the zero polynomial has
/// an empty coefficient list and [`IntPolynomial::degree`] returns `None`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::new(vec![c.into()])
    }

    /// `c * x^n`
    pub fn monomial(c: impl Into<BigInt>, n: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); n];
        coeffs.push(c.into());
        Self::new(coeffs)
    }

    /// The identity polynomial `x`.
    pub fn x() -> Self {
        Self::monomial(1, 1)
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coefficient(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading_coefficient(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::constant(1), |acc, _| &acc * self)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Horner evaluation at a rational point.
    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| {
            acc * x + Rational::from_integer(c.clone())
        })
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Binary form `F(a, b) = b^weight * f(a / b)`; needs `weight >= degree`.
    pub fn homogeneous_eval(&self, a: &BigInt, b: &BigInt, weight: usize) -> BigInt {
        assert!(self.coeffs.len() <= weight + 1, "weight below degree");
        let mut acc = BigInt::zero();
        let mut a_pow = BigInt::one();
        let mut b_pows = Vec::with_capacity(weight + 1);
        let mut bp = BigInt::one();
        for _ in 0..=weight {
            b_pows.push(bp.clone());
            bp *= b;
        }
        for (i, c) in self.coeffs.iter().enumerate() {
            acc += c * &a_pow * &b_pows[weight - i];
            a_pow *= a;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Coefficient-wise reduction into `F_p[x]`.
    pub fn mod_p(&self, p: OddPrime) -> FpPolynomial {
        FpPolynomial::new(
            self.coeffs
                .iter()
                .map(|c| FpElement::from_int(c, p))
                .collect(),
            p,
        )
    }

    /// `disc(f) = (-1)^(d(d-1)/2) * Res(f, f') / lc(f)`.
    pub fn discriminant(&self) -> Result<BigInt, ArithError> {
        let d = match self.degree() {
            Some(d) if d >= 2 => d,
            other => {
                return Err(ArithError::DegreeTooSmall(other.map_or_else(
                    || "none (zero polynomial)".into(),
                    |d| d.to_string(),
                )))
            }
        };
        let res = resultant(self, &self.derivative());
        let lc = self.leading_coefficient().expect("nonzero");
        let (q, r) = res.div_rem(lc);
        assert!(r.is_zero(), "Res(f, f') not divisible by lc(f)");
        Ok(if (d * (d - 1) / 2) % 2 == 1 { -q } else { q })
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}*x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{mag}*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: Self) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new(
            (0..n)
                .map(|i| self.coefficient(i) + rhs.coefficient(i))
                .collect(),
        )
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: Self) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new(
            (0..n)
                .map(|i| self.coefficient(i) - rhs.coefficient(i))
                .collect(),
        )
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: Self) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

/// Polynomial over `F_p`, lowest degree first, trimmed like [`IntPolynomial`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpPolynomial {
    coeffs: Vec<FpElement>,
    modulus: OddPrime,
}

impl FpPolynomial {
    pub fn new(mut coeffs: Vec<FpElement>, modulus: OddPrime) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs, modulus }
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn modulus(&self) -> OddPrime {
        self.modulus
    }

    pub fn coefficients(&self) -> &[FpElement] {
        &self.coeffs
    }

    pub fn leading_coefficient(&self) -> Option<FpElement> {
        self.coeffs.last().copied()
    }

    pub fn eval(&self, x: FpElement) -> FpElement {
        self.coeffs
            .iter()
            .rev()
            .fold(FpElement::zero(self.modulus), |acc, &c| acc * x + c)
    }
}

/// Resultant of two integer polynomials as the determinant of their Sylvester
/// matrix. `Res(f, 0) = 0`, and a constant operand `c` gives `c^deg(other)`.
pub fn resultant(f: &IntPolynomial, g: &IntPolynomial) -> BigInt {
    let (m, n) = match (f.degree(), g.degree()) {
        (Some(m), Some(n)) => (m, n),
        _ => return BigInt::zero(),
    };
    if m == 0 {
        return num_traits::pow(f.coeffs[0].clone(), n);
    }
    if n == 0 {
        return num_traits::pow(g.coeffs[0].clone(), m);
    }
    let size = m + n;
    let mut matrix = vec![vec![BigInt::zero(); size]; size];
    // rows hold coefficients from the leading one down
    for i in 0..n {
        for (j, c) in f.coeffs.iter().rev().enumerate() {
            matrix[i][i + j] = c.clone();
        }
    }
    for i in 0..m {
        for (j, c) in g.coeffs.iter().rev().enumerate() {
            matrix[n + i][i + j] = c.clone();
        }
    }
    determinant(matrix)
}

/// Exact determinant by Bareiss fraction-free elimination.
pub fn determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}
