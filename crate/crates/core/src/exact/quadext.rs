use std::fmt;

use num_bigint::{BigInt, Sign};
use num_traits::Signed;

use super::ring::{Field, Ring};
use super::Rational;

/// Trial-division bound used when extracting square factors.
const TRIAL_BOUND: u64 = 100_000;

/// Writes `n = k² · d` with `d` square-free (sign kept on `d`).
///
/// Small primes are removed by trial division; a cofactor free of small
/// primes is tested for being a perfect square. Cofactors beyond that are kept
/// as-is, which never affects correctness of arithmetic, only canonicity.
pub fn squarefree_decompose(n: &BigInt) -> (BigInt, BigInt) {
    if n.sign() == Sign::NoSign {
        return (BigInt::from(0), BigInt::from(0));
    }
    let sign = n.sign();
    let mut m = n.abs();
    let mut k = BigInt::from(1);
    let mut d = BigInt::from(1);
    let mut p = 2u64;
    while p <= TRIAL_BOUND {
        let bp = BigInt::from(p);
        if &bp * &bp > m {
            break;
        }
        let mut e = 0u32;
        while (&m % &bp).sign() == Sign::NoSign {
            m /= &bp;
            e += 1;
        }
        if e > 0 {
            k *= bp.pow(e / 2);
            if e % 2 == 1 {
                d *= &bp;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > BigInt::from(1) {
        let r = m.sqrt();
        if &r * &r == m {
            k *= r;
        } else {
            d *= m;
        }
    }
    if sign == Sign::Minus {
        d = -d;
    }
    (k, d)
}

/// An element `a + b√d` of `ℚ(√d)`.
///
/// Elements with `b = 0` are stored with `d = 1` and mix freely with any
/// extension; combining two irrational elements with different `d` panics.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadExt {
    a: Rational,
    b: Rational,
    d: BigInt,
}

impl QuadExt {
    /// `a + b√d`; `d` is reduced to its square-free part.
    pub fn new(a: Rational, b: Rational, d: BigInt) -> Self {
        assert!(d.sign() != Sign::NoSign, "quadratic extension tag must be non-zero");
        let (k, d) = squarefree_decompose(&d);
        let b = b * Rational::from_integer(k);
        Self::normalise(a, b, d)
    }

    fn normalise(a: Rational, b: Rational, d: BigInt) -> Self {
        if b.is_zero() || d == BigInt::from(1) {
            let a = if d == BigInt::from(1) { a + b } else { a };
            QuadExt { a, b: <Rational as Ring>::zero(), d: BigInt::from(1) }
        } else {
            QuadExt { a, b, d }
        }
    }

    pub fn rational(a: Rational) -> Self {
        QuadExt { a, b: <Rational as Ring>::zero(), d: BigInt::from(1) }
    }

    /// A square root of a rational number.
    pub fn sqrt(q: &Rational) -> Self {
        if q.is_zero() {
            return Self::rational(<Rational as Ring>::zero());
        }
        // q = n/m = (n m) / m²
        let nm = q.numer() * q.denom();
        let (k, d) = squarefree_decompose(&nm);
        let coef = Rational::new(k, q.denom().clone());
        if d == BigInt::from(1) {
            Self::rational(coef)
        } else {
            QuadExt { a: <Rational as Ring>::zero(), b: coef, d }
        }
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }
    pub fn b(&self) -> &Rational {
        &self.b
    }
    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.a.clone())
    }

    pub fn conj(&self) -> Self {
        QuadExt { a: self.a.clone(), b: -&self.b, d: self.d.clone() }
    }

    /// `a² − d b²`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - Rational::from_integer(self.d.clone()) * &self.b * &self.b
    }

    fn common_d(&self, other: &Self) -> BigInt {
        match (self.is_rational(), other.is_rational()) {
            (true, _) => other.d.clone(),
            (_, true) => self.d.clone(),
            _ => {
                assert_eq!(self.d, other.d, "mixed quadratic extensions");
                self.d.clone()
            }
        }
    }

    /// Total order used only to sort outputs deterministically.
    pub fn sort_key(&self) -> (BigInt, Rational, Rational) {
        (self.d.clone(), self.a.clone(), self.b.clone())
    }
}

impl Ring for QuadExt {
    fn zero() -> Self {
        Self::rational(<Rational as Ring>::zero())
    }
    fn one() -> Self {
        Self::rational(<Rational as Ring>::one())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        let d = self.common_d(o);
        Self::normalise(&self.a + &o.a, &self.b + &o.b, d)
    }
    fn sub(&self, o: &Self) -> Self {
        let d = self.common_d(o);
        Self::normalise(&self.a - &o.a, &self.b - &o.b, d)
    }
    fn mul(&self, o: &Self) -> Self {
        let d = self.common_d(o);
        let dq = Rational::from_integer(d.clone());
        let a = &self.a * &o.a + dq * &self.b * &o.b;
        let b = &self.a * &o.b + &self.b * &o.a;
        Self::normalise(a, b, d)
    }
    fn neg(&self) -> Self {
        QuadExt { a: -&self.a, b: -&self.b, d: self.d.clone() }
    }
    fn from_i64(n: i64) -> Self {
        Self::rational(Rational::from_integer(BigInt::from(n)))
    }
    fn from_rational(q: &Rational) -> Self {
        Self::rational(q.clone())
    }
    fn exact_div(&self, other: &Self) -> Self {
        Field::div(self, other)
    }
}

impl Field for QuadExt {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        // d is square-free and ≠ 1, so the norm of a non-zero element is non-zero.
        let n = self.norm();
        let c = self.conj();
        Some(Self::normalise(&c.a / &n, &c.b / &n, c.d))
    }
}

impl fmt::Debug for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", self.a);
        }
        let s = format!("sqrt({})", self.d);
        let bpart = if self.b.is_one() {
            s
        } else if (-&self.b).is_one() {
            format!("-{s}")
        } else {
            format!("{}*{s}", self.b)
        };
        if self.a.is_zero() {
            write!(f, "{bpart}")
        } else if bpart.starts_with('-') {
            write!(f, "{} - {}", self.a, &bpart[1..])
        } else {
            write!(f, "{} + {bpart}", self.a)
        }
    }
}
