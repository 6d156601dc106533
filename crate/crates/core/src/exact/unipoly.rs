use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational::{denom_lcm, numer_gcd};
use super::ring::{Field, Ring};
use super::{QuadExt, Rational};

/// Dense univariate polynomial, coefficients in ascending degree.
///
/// Trailing zero coefficients are never stored, so the zero polynomial has an
/// empty coefficient list and every other polynomial has a non-zero leading
/// coefficient.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UniPoly<K> {
    coeffs: Vec<K>,
}

impl<K: Ring> UniPoly<K> {
    pub fn new(mut coeffs: Vec<K>) -> Self {
        while coeffs.last().is_some_and(Ring::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn constant(c: K) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `c·x^k`.
    pub fn monomial(c: K, k: usize) -> Self {
        let mut v = vec![K::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn x() -> Self {
        Self::monomial(K::one(), 1)
    }

    pub fn coeffs(&self) -> &[K] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> K {
        self.coeffs.get(i).cloned().unwrap_or_else(K::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> K {
        self.coeffs.last().cloned().unwrap_or_else(K::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn scale(&self, c: &K) -> Self {
        Self::new(self.coeffs.iter().map(|x| x.mul(c)).collect())
    }

    pub fn eval(&self, x: &K) -> K {
        self.coeffs.iter().rev().fold(K::zero(), |acc, c| acc.mul(x).add(c))
    }

    /// Evaluates after mapping coefficients into a larger ring.
    pub fn eval_in<L: Ring>(&self, x: &L, embed: impl Fn(&K) -> L) -> L {
        self.coeffs.iter().rev().fold(L::zero(), |acc, c| acc.mul(x).add(&embed(c)))
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c.mul(&K::from_i64(i as i64))).collect())
    }

    pub fn map<L: Ring>(&self, f: impl Fn(&K) -> L) -> UniPoly<L> {
        UniPoly::new(self.coeffs.iter().map(f).collect())
    }

    /// `p(q(x))`.
    pub fn compose(&self, q: &Self) -> Self {
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| acc.mul(q).add(&Self::constant(c.clone())))
    }

    /// Multiplicity of `x = 0` as a root, and the cofactor.
    pub fn split_x_power(&self) -> (usize, Self) {
        let k = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if k == self.coeffs.len() {
            return (0, self.clone());
        }
        (k, Self::new(self.coeffs[k..].to_vec()))
    }

    /// `x^n p(1/x)` for a formal degree `n ≥ deg p`.
    pub fn reverse(&self, n: usize) -> Self {
        let mut v = vec![K::zero(); n + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[n - i] = c.clone();
        }
        Self::new(v)
    }

    /// Long division by a divisor whose leading coefficient divides every
    /// intermediate leading term (always true over a field).
    fn div_rem_exact_lc(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("polynomial division by zero");
        let lc = d.lc();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![K::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = &r[i + dd];
            if c.is_zero() {
                continue;
            }
            let t = c.exact_div(&lc);
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[i + j] = r[i + j].sub(&t.mul(dc));
            }
            q[i] = t;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    /// Pseudo-remainder `lc(d)^{deg p - deg d + 1} p mod d`.
    pub fn pseudo_rem(&self, d: &Self) -> Self {
        let dd = d.degree().expect("polynomial division by zero");
        let Some(dp) = self.degree() else { return Self::zero() };
        if dp < dd {
            return self.clone();
        }
        let lc = d.lc();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < dd {
                break;
            }
            let t = Self::monomial(r.lc(), dr - dd);
            r = r.scale(&lc).sub(&t.mul(d));
        }
        r
    }
}

impl<K: Ring> Ring for UniPoly<K> {
    fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }
    fn one() -> Self {
        Self::constant(K::one())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i).add(&o.coeff(i))).collect())
    }
    fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i).sub(&o.coeff(i))).collect())
    }
    fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut v = vec![K::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    v[i + j] = v[i + j].add(&a.mul(b));
                }
            }
        }
        Self::new(v)
    }
    fn neg(&self) -> Self {
        UniPoly { coeffs: self.coeffs.iter().map(Ring::neg).collect() }
    }
    fn from_i64(n: i64) -> Self {
        Self::constant(K::from_i64(n))
    }
    fn from_rational(q: &Rational) -> Self {
        Self::constant(K::from_rational(q))
    }
    /// Exact polynomial division; panics on a non-zero remainder.
    fn exact_div(&self, other: &Self) -> Self {
        let (q, r) = self.div_rem_exact_lc(other);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }
}

impl<K: Field> UniPoly<K> {
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        self.div_rem_exact_lc(d)
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    pub fn monic(&self) -> Self {
        match self.lc().inv() {
            Some(inv) => self.scale(&inv),
            None => Self::zero(),
        }
    }

    /// Monic gcd (zero only when both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.monic(), other.monic());
        while !b.is_zero() {
            let r = a.rem(&b).monic();
            a = b;
            b = r;
        }
        a
    }

    /// Product of the distinct irreducible factors, monic.
    pub fn squarefree_part(&self) -> Self {
        if self.is_constant() {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// Multiplicity of `r` as a root.
    pub fn root_multiplicity(&self, r: &K) -> usize {
        if self.is_zero() {
            return usize::MAX;
        }
        let lin = Self::new(vec![r.neg(), K::one()]);
        let mut p = self.clone();
        let mut k = 0;
        loop {
            let (q, rem) = p.div_rem(&lin);
            if !rem.is_zero() {
                return k;
            }
            p = q;
            k += 1;
        }
    }
}

impl UniPoly<Rational> {
    pub fn from_i64_coeffs(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| Rational::from_integer(BigInt::from(x))).collect())
    }

    /// Integer coefficients of the primitive associate with positive leading
    /// coefficient.
    pub fn primitive_int(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let l = denom_lcm(&self.coeffs);
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| (c * &l).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        let sign = if ints.last().unwrap().is_negative() { -BigInt::one() } else { BigInt::one() };
        ints.into_iter().map(|x| x / &g * &sign).collect()
    }

    /// The primitive associate as a rational polynomial.
    pub fn primitive(&self) -> Self {
        Self::new(self.primitive_int().into_iter().map(Rational::from_integer).collect())
    }

    /// Distinct rational roots with their multiplicities, sorted ascending.
    pub fn rational_roots_mult(&self) -> Vec<(Rational, usize)> {
        assert!(!self.is_zero(), "roots of the zero polynomial");
        let (k0, p) = self.split_x_power();
        let mut out = Vec::new();
        if k0 > 0 {
            out.push((<Rational as Ring>::zero(), k0));
        }
        if p.degree().unwrap_or(0) == 0 {
            return out;
        }
        let g = p.gcd_primitive(&p.derivative());
        let sf = p.div_rem(&g).0;
        for y in integer_roots_of_monic_transform(&sf.primitive_int()) {
            let m = p.root_multiplicity(&y);
            debug_assert!(m > 0);
            out.push((y, m));
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    /// All rational roots, repeated by multiplicity.
    pub fn rational_roots(&self) -> Vec<Rational> {
        self.rational_roots_mult().into_iter().flat_map(|(r, m)| std::iter::repeat_n(r, m)).collect()
    }

    /// Roots of a polynomial of degree exactly 2 in `ℚ(√disc)`.
    pub fn quadratic_roots(&self) -> Option<[QuadExt; 2]> {
        if self.degree() != Some(2) {
            return None;
        }
        let (c, b, a) = (&self.coeffs[0], &self.coeffs[1], &self.coeffs[2]);
        let disc = b * b - Rational::from_integer(BigInt::from(4)) * a * c;
        let s = QuadExt::sqrt(&disc);
        let two_a = QuadExt::rational(a * Rational::from_integer(BigInt::from(2)));
        let mb = QuadExt::rational(-b);
        let r1 = mb.add(&s).exact_div(&two_a);
        let r2 = mb.sub(&s).exact_div(&two_a);
        Some([r1, r2])
    }

    /// Gcd computed on primitive integer forms (keeps coefficients small),
    /// returned monic.
    pub fn gcd_primitive(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.primitive(), other.primitive());
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive();
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn content(&self) -> Rational {
        if self.is_zero() {
            return <Rational as Ring>::zero();
        }
        Rational::new(numer_gcd(&self.coeffs), denom_lcm(&self.coeffs))
    }
}

/// Integer roots `y` of `Q(y) = a_n^{n-1} p(y / a_n)`, returned as the
/// rational roots `y / a_n` of the square-free primitive polynomial `p`.
fn integer_roots_of_monic_transform(p: &[BigInt]) -> Vec<Rational> {
    let n = p.len() - 1;
    let an = &p[n];
    // Q_i = p_i a_n^{n-1-i}, Q_n = 1
    let mut q = vec![BigInt::zero(); n + 1];
    let mut pw = BigInt::one();
    for i in (0..n).rev() {
        q[i] = &p[i] * &pw;
        pw *= an;
    }
    q[n] = BigInt::one();
    let bound = q.iter().map(|c| c.abs()).max().unwrap() + BigInt::one();
    let target = &bound * 2 + BigInt::one();

    let dq: Vec<BigInt> = (1..=n).map(|i| &q[i] * BigInt::from(i)).collect();
    let eval = |c: &[BigInt], x: &BigInt, m: Option<&BigInt>| -> BigInt {
        let mut acc = BigInt::zero();
        for ci in c.iter().rev() {
            acc = acc * x + ci;
            if let Some(m) = m {
                acc = acc.mod_floor(m);
            }
        }
        acc
    };

    // Pick a prime at which every root of Q is simple.
    let (ell, roots) = small_primes()
        .find_map(|ell| {
            let m = BigInt::from(ell);
            let qm: Vec<u64> = q.iter().map(|c| c.mod_floor(&m).to_u64().unwrap()).collect();
            let dm: Vec<u64> = dq.iter().map(|c| c.mod_floor(&m).to_u64().unwrap()).collect();
            let ev = |c: &[u64], x: u64| c.iter().rev().fold(0u64, |acc, &ci| (acc * x + ci) % ell);
            let roots: Vec<u64> = (0..ell).filter(|&r| ev(&qm, r) == 0).collect();
            roots.iter().all(|&r| ev(&dm, r) != 0).then_some((ell, roots))
        })
        .expect("no good prime found below the search limit");

    let mut out = Vec::new();
    for r0 in roots {
        // Newton lifting modulo ell^(2^k)
        let mut modulus = BigInt::from(ell);
        let mut r = BigInt::from(r0);
        while modulus < target {
            modulus = &modulus * &modulus;
            let fr = eval(&q, &r, Some(&modulus));
            let dr = eval(&dq, &r, Some(&modulus));
            let inv = mod_inverse(&dr, &modulus).expect("derivative not invertible while lifting");
            r = (r - fr * inv).mod_floor(&modulus);
        }
        let y = if &r * 2 > modulus { r - &modulus } else { r };
        if eval(&q, &y, None).is_zero() {
            out.push(Rational::new(y, an.clone()));
        }
    }
    out
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

fn small_primes() -> impl Iterator<Item = u64> {
    (3u64..200_000).filter(|&n| (2..).take_while(|d| d * d <= n).all(|d| n % d != 0))
}

impl<K: Ring + fmt::Display> UniPoly<K> {
    /// Renders with the given variable name, highest degree first.
    pub fn display_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            let cs = c.to_string();
            let magnitude = cs.strip_prefix('-').unwrap_or(&cs);
            let plain = magnitude.chars().all(|ch| ch.is_ascii_digit() || ch == '/');
            let (negative, body) = if plain { (cs.starts_with('-'), magnitude) } else { (false, cs.as_str()) };
            let coeff = if plain { body.to_string() } else { format!("({body})") };
            let term = match (mono.is_empty(), body == "1") {
                (true, _) => coeff,
                (false, true) => mono,
                (false, false) => format!("{coeff}*{mono}"),
            };
            match (out.is_empty(), negative) {
                (true, true) => out.push('-'),
                (true, false) => {}
                (false, true) => out.push_str(" - "),
                (false, false) => out.push_str(" + "),
            }
            out.push_str(&term);
        }
        out
    }
}

impl<K: Ring> fmt::Debug for UniPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly{:?}", self.coeffs)
    }
}

impl fmt::Display for UniPoly<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("t"))
    }
}
