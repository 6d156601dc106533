use crate::error::{Error, Result};
use crate::exact::{sylvester_resultant, Field, Fp, Rational, Ring, UniPoly};
use crate::mpoly::MPoly;

use super::p1xp1_degree;

/// A form of bidegree `(a, b)` on `P1 x P1`; `c[i][j]` is the coefficient of
/// `x0^i x1^(a-i) y0^j y1^(b-j)`.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct BiForm<K> {
    pub a: usize,
    pub b: usize,
    pub c: Vec<Vec<K>>,
}

impl<K: Ring> BiForm<K> {
    pub fn zero(a: usize, b: usize) -> Self {
        BiForm { a, b, c: vec![vec![K::zero(); b + 1]; a + 1] }
    }

    /// `f` must have shape `(1, 1)`.
    pub fn from_mpoly(f: &MPoly, embed: impl Fn(&Rational) -> K) -> Self {
        let mut out = Self::zero(f.degree().get(0) as usize, f.degree().get(1) as usize);
        for (e, c) in f.terms() {
            out.c[e[0] as usize][e[2] as usize] = embed(c);
        }
        out
    }

    pub fn map<L: Ring>(&self, f: impl Fn(&K) -> L) -> BiForm<L> {
        BiForm { a: self.a, b: self.b, c: self.c.iter().map(|r| r.iter().map(&f).collect()).collect() }
    }

    /// `self + t·other` with coefficients in `K[t]`.
    pub fn pencil(&self, other: &Self) -> BiForm<UniPoly<K>> {
        let mut out = BiForm::zero(self.a, self.b);
        for i in 0..=self.a {
            for j in 0..=self.b {
                out.c[i][j] = UniPoly::new(vec![self.c[i][j].clone(), other.c[i][j].clone()]);
            }
        }
        out
    }

    fn build(a: usize, b: usize, f: impl Fn(usize, usize) -> K) -> Self {
        BiForm { a, b, c: (0..=a).map(|i| (0..=b).map(|j| f(i, j)).collect()).collect() }
    }

    /// `∂/∂x0, ∂/∂x1, ∂/∂y0, ∂/∂y1`; needs `a, b ≥ 1`.
    pub fn partials(&self) -> [Self; 4] {
        let (a, b) = (self.a, self.b);
        let k = |n: usize| K::from_i64(n as i64);
        [
            Self::build(a - 1, b, |i, j| k(i + 1).mul(&self.c[i + 1][j])),
            Self::build(a - 1, b, |i, j| k(a - i).mul(&self.c[i][j])),
            Self::build(a, b - 1, |i, j| k(j + 1).mul(&self.c[i][j + 1])),
            Self::build(a, b - 1, |i, j| k(b - j).mul(&self.c[i][j])),
        ]
    }

    /// The same form with the two factors exchanged.
    pub fn transpose(&self) -> Self {
        Self::build(self.b, self.a, |i, j| self.c[j][i].clone())
    }

    /// Restriction to the chart `x = (X:1), y = (Y:1)`, as a polynomial in
    /// `Y` over `K[X]`.
    pub fn affine(&self) -> UniPoly<UniPoly<K>> {
        UniPoly::new((0..=self.b).map(|j| UniPoly::new((0..=self.a).map(|i| self.c[i][j].clone()).collect())).collect())
    }

    /// Restriction to `x = (1:0), y = (Y:1)`.
    pub fn at_x_infinity(&self) -> UniPoly<K> {
        UniPoly::new(self.c[self.a].clone())
    }

    /// Restriction to `x = (X:1), y = (1:0)`.
    pub fn at_y_infinity(&self) -> UniPoly<K> {
        UniPoly::new((0..=self.a).map(|i| self.c[i][self.b].clone()).collect())
    }

    #[cfg(test)]
    pub fn eval(&self, x: &[K; 2], y: &[K; 2]) -> K {
        let mut acc = K::zero();
        for i in 0..=self.a {
            for j in 0..=self.b {
                let m = x[0]
                    .pow(i as u32)
                    .mul(&x[1].pow((self.a - i) as u32))
                    .mul(&y[0].pow(j as u32))
                    .mul(&y[1].pow((self.b - j) as u32));
                acc = acc.add(&self.c[i][j].mul(&m));
            }
        }
        acc
    }
}

type Biv<K> = UniPoly<UniPoly<K>>;

/// Where a common zero of the four partials was found.
#[derive(Clone, Debug, PartialEq)]
pub(crate) enum RawLocus<K: Ring> {
    /// `x = y = (1:0)`.
    InfInf,
    /// `x = (1:0)`, `y = (s:1)` with `s` a root of the polynomial (or any
    /// `s` when it is zero).
    XInf(UniPoly<K>),
    /// `x = (t:1)`, `y = (1:0)`.
    YInf(UniPoly<K>),
    /// All affine partials share this factor: a curve of singular points.
    Curve(Biv<K>),
    /// `x = (t:1)` with `phi(t) = 0` and `y = (s:1)` with `g(s) = 0` over
    /// `K[t]/(phi)`.
    Affine { phi: UniPoly<K>, g: Biv<K> },
}

fn reduce<K: Field>(p: &Biv<K>, phi: &UniPoly<K>) -> Biv<K> {
    UniPoly::new(p.coeffs().iter().map(|c| c.rem(phi)).collect())
}

fn inv_mod<K: Field>(c: &UniPoly<K>, phi: &UniPoly<K>) -> UniPoly<K> {
    let (mut r0, mut r1) = (phi.clone(), c.clone());
    let (mut s0, mut s1) = (UniPoly::<K>::zero(), UniPoly::<K>::one());
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1);
        let s = s0.sub(&q.mul(&s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    let unit = r0.coeff(0).inv().expect("inverse of a zero divisor");
    s0.scale(&unit).rem(phi)
}

/// Splits `phi` until the leading coefficient of `p` is a unit (or `p` is
/// zero) on every branch.
fn normalize<K: Field>(phi: &UniPoly<K>, p: &Biv<K>, out: &mut Vec<(UniPoly<K>, Biv<K>)>) {
    let p = reduce(p, phi);
    if p.is_zero() {
        out.push((phi.clone(), p));
        return;
    }
    let d = phi.gcd(&p.lc());
    if d.is_constant() {
        out.push((phi.clone(), p));
    } else {
        let rest = phi.div_rem(&d).0.monic();
        normalize(&d, &p, out);
        normalize(&rest, &p, out);
    }
}

fn rem_mod<K: Field>(a: &Biv<K>, b: &Biv<K>, phi: &UniPoly<K>) -> Biv<K> {
    let db = b.degree().unwrap();
    let inv = inv_mod(&b.lc(), phi);
    let mut r = a.coeffs().to_vec();
    while r.len() > db {
        let top = r.pop().unwrap();
        if top.is_zero() {
            continue;
        }
        let q = top.mul(&inv).rem(phi);
        let shift = r.len() - db;
        for k in 0..db {
            r[shift + k] = r[shift + k].sub(&q.mul(&b.coeff(k))).rem(phi);
        }
    }
    UniPoly::new(r)
}

/// gcd over `K[t]/(phi)` with dynamic splitting of `phi`; every branch
/// carries a gcd whose leading coefficient is a unit, or zero.
fn gcd_split<K: Field>(phi: &UniPoly<K>, a: &Biv<K>, b: &Biv<K>, out: &mut Vec<(UniPoly<K>, Biv<K>)>) {
    let mut nb = Vec::new();
    normalize(phi, b, &mut nb);
    for (phi1, b1) in nb {
        if b1.is_zero() {
            normalize(&phi1, a, out);
        } else {
            let r = rem_mod(&reduce(a, &phi1), &b1, &phi1);
            gcd_split(&phi1, &b1, &r, out);
        }
    }
}

/// Branches of `phi` over which the polynomials have a common root in `Y`.
pub(crate) fn common_root_branches<K: Field>(phi: &UniPoly<K>, polys: &[Biv<K>]) -> Vec<(UniPoly<K>, Biv<K>)> {
    let mut branches = vec![(phi.clone(), Biv::<K>::zero())];
    for p in polys {
        let mut next = Vec::new();
        for (phi_i, g_i) in branches {
            gcd_split(&phi_i, &g_i, p, &mut next);
        }
        branches = next.into_iter().filter(|(_, g)| g.is_zero() || g.degree() != Some(0)).collect();
    }
    branches
}

fn content<K: Field>(p: &Biv<K>) -> UniPoly<K> {
    p.coeffs().iter().fold(UniPoly::zero(), |acc, c| acc.gcd(c))
}

fn primitive<K: Field>(p: &Biv<K>) -> Biv<K> {
    let c = content(p);
    if c.is_zero() {
        return p.clone();
    }
    p.map(|x| x.div_rem(&c).0)
}

/// gcd in `K[X][Y]`, up to a unit.
pub(crate) fn bivariate_gcd<K: Field>(a: &Biv<K>, b: &Biv<K>) -> Biv<K> {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    let c = content(a).gcd(&content(b));
    let (mut p, mut q) = (primitive(a), primitive(b));
    if p.degree() < q.degree() {
        std::mem::swap(&mut p, &mut q);
    }
    while !q.is_zero() && q.degree() != Some(0) {
        let r = primitive(&p.pseudo_rem(&q));
        p = std::mem::replace(&mut q, r);
    }
    let g = if q.is_zero() { p } else { Biv::one() };
    primitive(&g).map(|x| x.mul(&c))
}

fn is_unit<K: Ring>(p: &Biv<K>) -> bool {
    p.degree() == Some(0) && p.lc().is_constant()
}

/// Polynomial in `X` vanishing at the `X` of every common zero; the
/// empty Sylvester matrix of two `Y`-constants would give 1.
fn y_eliminant<K: Field>(p: &Biv<K>, q: &Biv<K>) -> UniPoly<K> {
    if p.degree() == Some(0) && q.degree() == Some(0) {
        p.lc().gcd(&q.lc())
    } else {
        sylvester_resultant(p, q)
    }
}

/// Candidate `X` values for common affine zeros: the squarefree gcd of the
/// non-zero pairwise resultants in `Y`.
fn affine_candidates<K: Field>(polys: &[Biv<K>]) -> std::result::Result<UniPoly<K>, Biv<K>> {
    let mut acc = UniPoly::<K>::zero();
    for i in 0..polys.len() {
        for j in i + 1..polys.len() {
            let r = y_eliminant(&polys[i], &polys[j]);
            if !r.is_zero() {
                acc = acc.gcd(&r);
            }
        }
    }
    if !acc.is_zero() {
        return Ok(acc.squarefree_part());
    }
    let h = polys.iter().fold(Biv::zero(), |g, p| bivariate_gcd(&g, p));
    if !is_unit(&h) {
        return Err(h);
    }
    // no common factor: some pair of linear combinations is coprime
    for k in 1..=32i64 {
        let comb = |s: i64| {
            polys.iter().enumerate().fold(Biv::zero(), |acc, (i, p)| {
                let c = K::from_i64((i as i64 + 1) * s * k % 97 + 1);
                acc.add(&p.map(|x| x.scale(&c)))
            })
        };
        let r = y_eliminant(&comb(3), &comb(7));
        if !r.is_zero() {
            return Ok(r.squarefree_part());
        }
    }
    unreachable!("no coprime combination among partials without a common factor")
}

/// First common zero of the four partials found on `P1 x P1`, if any.
pub(crate) fn singular_locus<K: Field>(f: &BiForm<K>) -> Option<RawLocus<K>> {
    let ps = f.partials();
    if ps.iter().all(|p| p.c[p.a][p.b].is_zero()) {
        return Some(RawLocus::InfInf);
    }
    let g = ps.iter().fold(UniPoly::zero(), |g, p| g.gcd(&p.at_x_infinity()));
    if !g.is_constant() || g.is_zero() {
        return Some(RawLocus::XInf(g));
    }
    let g = ps.iter().fold(UniPoly::zero(), |g, p| g.gcd(&p.at_y_infinity()));
    if !g.is_constant() || g.is_zero() {
        return Some(RawLocus::YInf(g));
    }
    let polys: Vec<Biv<K>> = ps.iter().map(BiForm::affine).filter(|p| !p.is_zero()).collect();
    let phi = match affine_candidates(&polys) {
        Ok(phi) => phi,
        Err(h) => return Some(RawLocus::Curve(h)),
    };
    if phi.is_constant() {
        return None;
    }
    common_root_branches(&phi, &polys).into_iter().next().map(|(phi, g)| RawLocus::Affine { phi, g })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SingularWitness {
    /// A rational singular point `(x0:x1), (y0:y1)`.
    Point { x: [Rational; 2], y: [Rational; 2] },
    /// Singular points without a rational representative in `chart`: `t` is
    /// a root of `t_factor` and `s` a root of `s_factor` (whose coefficients
    /// are polynomials in `t`).
    Algebraic { chart: String, t_factor: String, s_factor: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Smoothness {
    Smooth,
    Singular(SingularWitness),
    /// No common zero of the partials over `P1(F_p) x P1(F_p)` for each prime.
    ProbabilisticSmooth {
        primes: Vec<u64>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmoothOptions {
    /// When false, try the modular test first.
    pub exact: bool,
    /// Above this degree in either factor the modular test runs first.
    pub max_exact_degree: u32,
    pub primes: Vec<u64>,
}

impl Default for SmoothOptions {
    fn default() -> Self {
        SmoothOptions { exact: true, max_exact_degree: 12, primes: vec![101, 103, 107] }
    }
}

fn r(n: i64) -> Rational {
    Rational::from_i64(n)
}

fn bivariate_string(p: &Biv<Rational>) -> String {
    let mut parts = Vec::new();
    for (j, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let s = c.display_with("t");
        parts.push(match j {
            0 => format!("({s})"),
            1 => format!("({s})*s"),
            _ => format!("({s})*s^{j}"),
        });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn witness(raw: RawLocus<Rational>) -> SingularWitness {
    let point = |x: [Rational; 2], y: [Rational; 2]| SingularWitness::Point { x, y };
    match raw {
        RawLocus::InfInf => point([r(1), r(0)], [r(1), r(0)]),
        RawLocus::XInf(g) => match g.rational_roots().first() {
            Some(s) => point([r(1), r(0)], [s.clone(), r(1)]),
            None if g.is_zero() => point([r(1), r(0)], [r(0), r(1)]),
            None => SingularWitness::Algebraic {
                chart: "x = (1:0), y = (s:1)".into(),
                t_factor: String::new(),
                s_factor: g.display_with("s"),
            },
        },
        RawLocus::YInf(g) => match g.rational_roots().first() {
            Some(t) => point([t.clone(), r(1)], [r(1), r(0)]),
            None if g.is_zero() => point([r(0), r(1)], [r(1), r(0)]),
            None => SingularWitness::Algebraic {
                chart: "x = (t:1), y = (1:0)".into(),
                t_factor: g.display_with("t"),
                s_factor: String::new(),
            },
        },
        RawLocus::Curve(h) => {
            if let Some(t) = content(&h).rational_roots().first() {
                return point([t.clone(), r(1)], [r(0), r(1)]);
            }
            let hp = primitive(&h);
            for k in 0..16 {
                let t = r(if k % 2 == 0 { k / 2 } else { -(k + 1) / 2 });
                let hs = UniPoly::new(hp.coeffs().iter().map(|c| c.eval(&t)).collect());
                if let Some(s) = hs.rational_roots().first() {
                    return point([t, r(1)], [s.clone(), r(1)]);
                }
            }
            SingularWitness::Algebraic {
                chart: "x = (t:1), y = (s:1)".into(),
                t_factor: String::new(),
                s_factor: bivariate_string(&h),
            }
        }
        RawLocus::Affine { phi, g } => {
            if phi.degree() == Some(1) {
                let t = phi.coeff(0).neg().div(&phi.coeff(1));
                let gs = UniPoly::new(g.coeffs().iter().map(|c| c.coeff(0)).collect());
                if gs.is_zero() {
                    return point([t, r(1)], [r(0), r(1)]);
                }
                if let Some(s) = gs.rational_roots().first() {
                    return point([t, r(1)], [s.clone(), r(1)]);
                }
            }
            SingularWitness::Algebraic {
                chart: "x = (t:1), y = (s:1)".into(),
                t_factor: phi.display_with("t"),
                s_factor: bivariate_string(&g),
            }
        }
    }
}

/// Number of common zeros of the four partials of `f` on
/// `P1(F_p) x P1(F_p)`; `None` when `p` divides a denominator.
pub fn common_zeros_mod_p(f: &MPoly, p: u64) -> Result<Option<usize>> {
    let (a, b) = p1xp1_degree(f)?;
    if a == 0 || b == 0 {
        return Err(Error::InvalidInput("smoothness test needs a >= 1 and b >= 1".into()));
    }
    let fp = Fp::new(p);
    let mut partials = Vec::new();
    for i in 0..2 {
        for q in f.partials(i)? {
            let mut terms = Vec::new();
            for (e, c) in q.terms() {
                let Some(c) = fp.reduce(c) else { return Ok(None) };
                if c != 0 {
                    terms.push((e.clone(), c));
                }
            }
            partials.push(terms);
        }
    }
    let line: Vec<[u64; 2]> = (0..p).map(|k| [1, k]).chain(std::iter::once([0, 1])).collect();
    let mut count = 0;
    for x in &line {
        for y in &line {
            let v = [x[0], x[1], y[0], y[1]];
            let vanish = partials.iter().all(|terms| {
                terms.iter().fold(0, |acc, (e, c)| {
                    let m = (0..4).fold(*c, |m, k| fp.mul(m, fp.pow(v[k], e[k] as u64)));
                    fp.add(acc, m)
                }) == 0
            });
            if vanish {
                count += 1;
            }
        }
    }
    Ok(Some(count))
}

/// Decides whether `V(f) ⊂ P1 x P1` is smooth.
pub fn smooth_on_p1xp1(f: &MPoly) -> Result<Smoothness> {
    smooth_on_p1xp1_with(f, &SmoothOptions::default())
}

pub fn smooth_on_p1xp1_with(f: &MPoly, opts: &SmoothOptions) -> Result<Smoothness> {
    let (a, b) = p1xp1_degree(f)?;
    if a == 0 || b == 0 {
        return Err(Error::InvalidInput("smoothness test needs a >= 1 and b >= 1".into()));
    }
    if f.is_zero() {
        return Err(Error::InvalidInput("the zero polynomial does not define a divisor".into()));
    }
    if !opts.exact || a > opts.max_exact_degree || b > opts.max_exact_degree {
        let mut used = Vec::new();
        let mut clean = true;
        for &p in &opts.primes {
            match common_zeros_mod_p(f, p)? {
                Some(0) => used.push(p),
                Some(_) => clean = false,
                None => {}
            }
        }
        if clean && !used.is_empty() {
            return Ok(Smoothness::ProbabilisticSmooth { primes: used });
        }
    }
    let form = BiForm::from_mpoly(f, Rational::clone);
    Ok(match singular_locus(&form) {
        None => Smoothness::Smooth,
        Some(raw) => Smoothness::Singular(witness(raw)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int, QuadExt};
    use crate::mpoly::{MultiDegree, Shape};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p1p1(terms: &[([u32; 4], i64)]) -> MPoly {
        let d = MultiDegree::new(vec![terms[0].0[0] + terms[0].0[1], terms[0].0[2] + terms[0].0[3]]);
        MPoly::new(Shape::p1xp1(), d, terms.iter().map(|(e, c)| (e.to_vec(), rat_int(*c)))).unwrap()
    }

    fn is_singular_at(f: &MPoly, x: &[Rational; 2], y: &[Rational; 2]) -> bool {
        let pt = vec![x.to_vec(), y.to_vec()];
        (0..2).all(|i| f.partials(i).unwrap().iter().all(|p| p.evaluate(&pt).is_zero()))
    }

    fn assert_point_witness(f: &MPoly) -> ([Rational; 2], [Rational; 2]) {
        match smooth_on_p1xp1(f).unwrap() {
            Smoothness::Singular(SingularWitness::Point { x, y }) => {
                assert!(is_singular_at(f, &x, &y), "{x:?} {y:?}");
                (x, y)
            }
            other => panic!("expected a singular point, got {other:?}"),
        }
    }

    #[test]
    fn split_forms() {
        for a in 1..=4u32 {
            for b in 1..=4u32 {
                let f = p1p1(&[([a, 0, b, 0], 2), ([0, a, 0, b], -3)]);
                let v = smooth_on_p1xp1(&f).unwrap();
                if a.min(b) == 1 {
                    assert_eq!(v, Smoothness::Smooth, "({a},{b})");
                } else {
                    // all partials vanish at (0:1)x(1:0) and (1:0)x(0:1)
                    let pts = [
                        ([rat_int(0), rat_int(1)], [rat_int(1), rat_int(0)]),
                        ([rat_int(1), rat_int(0)], [rat_int(0), rat_int(1)]),
                    ];
                    assert!(pts.iter().all(|(x, y)| is_singular_at(&f, x, y)));
                    assert_point_witness(&f);
                }
            }
        }
    }

    #[test]
    fn monomial_is_singular() {
        assert_point_witness(&p1p1(&[([2, 0, 2, 0], 1)]));
        assert_point_witness(&p1p1(&[([2, 0, 2, 0], 3)]));
    }

    #[test]
    fn four_lines_singular_at_infinity() {
        let (x, y) = assert_point_witness(&p1p1(&[([1, 1, 1, 1], 1)]));
        assert_eq!((x, y), ([rat_int(1), rat_int(0)], [rat_int(1), rat_int(0)]));
    }

    #[test]
    fn product_of_rulings_singular_at_crossing() {
        // -(x0 + 2x1)(2y0 + y1)
        let f = p1p1(&[([1, 0, 1, 0], -2), ([1, 0, 0, 1], -1), ([0, 1, 1, 0], -4), ([0, 1, 0, 1], -2)]);
        let (x, y) = assert_point_witness(&f);
        assert_eq!(x[0], x[1].clone() * rat_int(-2));
        assert_eq!(y[1], y[0].clone() * rat_int(-2));
    }

    #[test]
    fn split_with_zero_coefficient_is_singular() {
        assert_point_witness(&p1p1(&[([2, 0, 2, 0], 1), ([0, 2, 0, 2], 0)]));
    }

    #[test]
    fn nodes_at_irrational_points() {
        // (x0² - 2x1²)(y0² - 2y1²): nodes at (±√2:1, ±√2:1) only
        let f = p1p1(&[([2, 0, 2, 0], 1), ([2, 0, 0, 2], -2), ([0, 2, 2, 0], -2), ([0, 2, 0, 2], 4)]);
        match smooth_on_p1xp1(&f).unwrap() {
            Smoothness::Singular(SingularWitness::Algebraic { t_factor, .. }) => assert_eq!(t_factor, "t^2 - 2"),
            other => panic!("{other:?}"),
        }
        let form = BiForm::from_mpoly(&f, |c| QuadExt::rational(c.clone()));
        let s2 = QuadExt::sqrt(&rat_int(2));
        let one = QuadExt::rational(rat_int(1));
        let pt = [s2, one];
        assert!(form.partials().iter().all(|p| p.eval(&pt, &pt).is_zero()));
        assert!(singular_locus(&form).is_some());
    }

    #[test]
    fn cubic_points_decided_exactly() {
        // (x0³ - 2x1³)(y0³ - 2y1³): nodes only over Q(∛2)
        let f = p1p1(&[([3, 0, 3, 0], 1), ([3, 0, 0, 3], -2), ([0, 3, 3, 0], -2), ([0, 3, 0, 3], 4)]);
        match smooth_on_p1xp1(&f).unwrap() {
            Smoothness::Singular(SingularWitness::Algebraic { t_factor, .. }) => assert_eq!(t_factor, "t^3 - 2"),
            other => panic!("{other:?}"),
        }
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let g = MPoly::random_dense(&Shape::p1xp1(), &MultiDegree::new(vec![3, 3]), &mut rng, 9);
        assert_eq!(smooth_on_p1xp1(&g).unwrap(), Smoothness::Smooth);
    }

    #[test]
    fn d5_splits_branches() {
        // over Q[t]/(t² - 1): gcd(s - t, s - 1) is s - 1 on t = 1 and a unit on t = -1
        let phi = UniPoly::from_i64_coeffs(&[-1, 0, 1]);
        let t = UniPoly::<Rational>::x();
        let a: Biv<Rational> = UniPoly::new(vec![t.neg(), UniPoly::one()]);
        let b: Biv<Rational> = UniPoly::new(vec![UniPoly::constant(rat_int(-1)), UniPoly::one()]);
        let br = common_root_branches(&phi, &[a, b]);
        assert_eq!(br.len(), 1);
        assert_eq!(br[0].0, UniPoly::from_i64_coeffs(&[-1, 1]));
        assert_eq!(br[0].1.degree(), Some(1));
    }

    #[test]
    fn bivariate_gcd_finds_common_factor() {
        // (s + t)(s - 1) and (s + t)(t + 2)
        let t = UniPoly::<Rational>::x();
        let lin: Biv<Rational> = UniPoly::new(vec![t.clone(), UniPoly::one()]);
        let p = lin.mul(&UniPoly::new(vec![UniPoly::constant(rat_int(-1)), UniPoly::one()]));
        let q = lin.mul(&UniPoly::constant(t.add(&UniPoly::constant(rat_int(2)))));
        let g = bivariate_gcd(&p, &q);
        assert_eq!(g.degree(), Some(1));
        assert_eq!(primitive(&g), primitive(&lin));
    }

    #[test]
    fn probabilistic_mode_labels_primes() {
        let f = p1p1(&[([1, 0, 2, 0], 1), ([0, 1, 0, 2], 1)]);
        let opts = SmoothOptions { exact: false, ..SmoothOptions::default() };
        assert_eq!(
            smooth_on_p1xp1_with(&f, &opts).unwrap(),
            Smoothness::ProbabilisticSmooth { primes: vec![101, 103, 107] }
        );
        // a prime dividing a denominator is skipped
        let g = f.scale(&rat(1, 101));
        assert_eq!(
            smooth_on_p1xp1_with(&g, &opts).unwrap(),
            Smoothness::ProbabilisticSmooth { primes: vec![103, 107] }
        );
        // a singular input falls through to the exact path
        let h = p1p1(&[([2, 0, 2, 0], 1)]);
        assert!(matches!(smooth_on_p1xp1_with(&h, &opts).unwrap(), Smoothness::Singular(_)));
    }

    #[test]
    fn shape_errors() {
        let f =
            MPoly::new(Shape::new(vec![2]).unwrap(), MultiDegree::new(vec![2]), [(vec![2, 0, 0], rat_int(1))]).unwrap();
        assert!(matches!(smooth_on_p1xp1(&f), Err(Error::ShapeMismatch(_))));
        let g = p1p1(&[([2, 0, 0, 0], 1)]);
        assert!(matches!(smooth_on_p1xp1(&g), Err(Error::InvalidInput(_))));
    }

    fn linear(rng: &mut ChaCha8Rng) -> [i64; 2] {
        use rand::Rng;
        loop {
            let v = [rng.gen_range(-3..=3), rng.gen_range(-3..=3)];
            if v != [0, 0] {
                return v;
            }
        }
    }

    /// `ℓx² r + ℓx ℓy s + ℓy² q`, singular where `ℓx = ℓy = 0`.
    fn planted_singular(a: u32, b: u32, seed: u64) -> (MPoly, [Rational; 2], [Rational; 2]) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (lx, ly) = (linear(&mut rng), linear(&mut rng));
        let s = Shape::p1xp1();
        let lxp = MPoly::new(
            s.clone(),
            MultiDegree::new(vec![1, 0]),
            [(vec![1, 0, 0, 0], rat_int(lx[0])), (vec![0, 1, 0, 0], rat_int(lx[1]))],
        )
        .unwrap();
        let lyp = MPoly::new(
            s.clone(),
            MultiDegree::new(vec![0, 1]),
            [(vec![0, 0, 1, 0], rat_int(ly[0])), (vec![0, 0, 0, 1], rat_int(ly[1]))],
        )
        .unwrap();
        let r = MPoly::random_dense(&s, &MultiDegree::new(vec![a - 2, b]), &mut rng, 5);
        let m = MPoly::random_dense(&s, &MultiDegree::new(vec![a - 1, b - 1]), &mut rng, 5);
        let q = MPoly::random_dense(&s, &MultiDegree::new(vec![a, b - 2]), &mut rng, 5);
        let f = lxp.mul(&lxp).unwrap().mul(&r).unwrap();
        let f = f.add(&lxp.mul(&lyp).unwrap().mul(&m).unwrap()).unwrap();
        let f = f.add(&lyp.mul(&lyp).unwrap().mul(&q).unwrap()).unwrap();
        // ℓ(v) = c0 v0 + c1 v1 vanishes at (−c1 : c0)
        (f, [rat_int(-lx[1]), rat_int(lx[0])], [rat_int(-ly[1]), rat_int(ly[0])])
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn planted_singularity_found(a in 2u32..=3, b in 2u32..=3, seed in 0u64..10_000) {
            let (f, x, y) = planted_singular(a, b, seed);
            prop_assume!(!f.is_zero());
            prop_assert!(is_singular_at(&f, &x, &y));
            let verdict = smooth_on_p1xp1(&f).unwrap();
            prop_assert!(matches!(verdict, Smoothness::Singular(_)));
            if let Smoothness::Singular(SingularWitness::Point { x, y }) = verdict {
                prop_assert!(is_singular_at(&f, &x, &y));
            }
        }

        #[test]
        fn agrees_with_finite_field_search(a in 1u32..=3, b in 1u32..=3, seed in 0u64..10_000, planted: bool) {
            let f = if planted && a >= 2 && b >= 2 {
                planted_singular(a, b, seed).0
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                MPoly::random_dense(&Shape::p1xp1(), &MultiDegree::new(vec![a, b]), &mut rng, 6)
            };
            prop_assume!(!f.is_zero());
            let counts: Vec<usize> = [101, 103, 107].iter().filter_map(|&p| common_zeros_mod_p(&f, p).unwrap()).collect();
            match smooth_on_p1xp1(&f).unwrap() {
                // a rational singular point reduces to a common zero mod every good prime
                Smoothness::Singular(SingularWitness::Point { .. }) => prop_assert!(counts.iter().all(|&c| c > 0)),
                // a smooth curve over Q has smooth reduction at all but finitely many primes
                Smoothness::Smooth => prop_assert!(counts.contains(&0)),
                _ => {}
            }
        }
    }
}
