//! Multi-homogeneous polynomials on `P^{n_1} x ... x P^{n_s}`.
//!
//! Variables are grouped by factor; factor `i` has `n_i + 1` variables
//! `x_{i0}, ..., x_{i n_i}`. Exponents are stored flattened in factor-major
//! order, and the canonical monomial order of a given multidegree is the
//! descending lexicographic order of these flattened tuples (so `x0^a y0^b`
//! comes first).

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use rand::Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{parse_rational, Field, Matrix, Rational, Ring};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Shape(Vec<usize>);

impl Shape {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() || dims.contains(&0) {
            return Err(Error::InvalidInput(format!(
                "shape needs at least one factor and positive dimensions, got {dims:?}"
            )));
        }
        Ok(Shape(dims))
    }

    pub fn p1xp1() -> Self {
        Shape(vec![1, 1])
    }

    pub fn dims(&self) -> &[usize] {
        &self.0
    }

    pub fn factors(&self) -> usize {
        self.0.len()
    }

    /// Number of variables in factor `i`.
    pub fn vars_in(&self, i: usize) -> usize {
        self.0[i] + 1
    }

    pub fn total_vars(&self) -> usize {
        self.0.iter().map(|n| n + 1).sum()
    }

    /// Offset of factor `i` in a flattened exponent tuple.
    pub fn offset(&self, i: usize) -> usize {
        self.0[..i].iter().map(|n| n + 1).sum()
    }

    pub fn without(&self, i: usize) -> Shape {
        let mut d = self.0.clone();
        d.remove(i);
        Shape(d)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiDegree(Vec<u32>);

impl MultiDegree {
    pub fn new(a: Vec<u32>) -> Self {
        MultiDegree(a)
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    /// Componentwise `self ≥ other`.
    pub fn dominates(&self, other: &MultiDegree) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }

    /// `self ≥ other` and `self ≠ other`.
    pub fn strictly_dominates(&self, other: &MultiDegree) -> bool {
        self.dominates(other) && self != other
    }

    pub fn minus_unit(&self, i: usize) -> Option<MultiDegree> {
        let mut a = self.0.clone();
        a[i] = a[i].checked_sub(1)?;
        Some(MultiDegree(a))
    }

    pub fn without(&self, i: usize) -> MultiDegree {
        let mut a = self.0.clone();
        a.remove(i);
        MultiDegree(a)
    }
}

/// Exponent vectors of degree `d` in `k` variables, descending lexicographic.
fn compositions(d: u32, k: usize) -> Vec<Vec<u32>> {
    if k == 1 {
        return vec![vec![d]];
    }
    let mut out = Vec::new();
    for first in (0..=d).rev() {
        for mut rest in compositions(d - first, k - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// All monomials of the given multidegree in canonical order.
pub fn monomials(shape: &Shape, degree: &MultiDegree) -> Vec<Vec<u32>> {
    let mut out: Vec<Vec<u32>> = vec![Vec::new()];
    for i in 0..shape.factors() {
        let block = compositions(degree.get(i), shape.vars_in(i));
        out = out
            .into_iter()
            .flat_map(|prefix| {
                block.iter().map(move |b| {
                    let mut e = prefix.clone();
                    e.extend_from_slice(b);
                    e
                })
            })
            .collect();
    }
    out
}

/// A per-factor linear change of coordinates `x ↦ C x`.
///
/// Applying it to `f` produces `f(Cx)`: variable `x_j` of the factor is
/// replaced by `Σ_k C[j][k] x_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorChange {
    pub factor: usize,
    pub matrix: Matrix,
}

impl FactorChange {
    pub fn new(factor: usize, matrix: Matrix) -> Result<Self> {
        if !matrix.is_square() || matrix.det().is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(FactorChange { factor, matrix })
    }

    pub fn identity(factor: usize, size: usize) -> Self {
        FactorChange { factor, matrix: Matrix::identity(size) }
    }

    pub fn inverse(&self) -> Result<Self> {
        Ok(FactorChange { factor: self.factor, matrix: self.matrix.inverse()? })
    }

    /// The change equal to applying `self` first and then `next`.
    pub fn then(&self, next: &FactorChange) -> FactorChange {
        assert_eq!(self.factor, next.factor, "composing changes of different factors");
        // f ↦ f(C1 x) ↦ f(C1 C2 x)
        FactorChange { factor: self.factor, matrix: self.matrix.mul(&next.matrix) }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MPoly {
    shape: Shape,
    degree: MultiDegree,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl MPoly {
    pub fn zero(shape: Shape, degree: MultiDegree) -> Self {
        assert_eq!(shape.factors(), degree.0.len(), "degree length must match factor count");
        MPoly { shape, degree, terms: BTreeMap::new() }
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, summing
    /// repeats and checking multi-homogeneity.
    pub fn new(
        shape: Shape,
        degree: MultiDegree,
        terms: impl IntoIterator<Item = (Vec<u32>, Rational)>,
    ) -> Result<Self> {
        if shape.factors() != degree.0.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} factors but degree has {} entries",
                shape.factors(),
                degree.0.len()
            )));
        }
        let mut p = MPoly::zero(shape, degree);
        for (e, c) in terms {
            if e.len() != p.shape.total_vars() {
                return Err(Error::InvalidInput(format!("exponent tuple {e:?} has the wrong number of variables")));
            }
            if !p.is_homogeneous_exp(&e) {
                return Err(Error::InvalidInput(format!("monomial {e:?} is not of multidegree {:?}", p.degree.0)));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    /// Builds a term store without validating homogeneity. Only useful to
    /// exercise [`MPoly::euler_check`] on malformed data.
    pub fn from_terms_unchecked(
        shape: Shape,
        degree: MultiDegree,
        terms: impl IntoIterator<Item = (Vec<u32>, Rational)>,
    ) -> Self {
        let mut p = MPoly::zero(shape, degree);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// Coefficients indexed by [`monomials`] order.
    pub fn from_coefficients(shape: Shape, degree: MultiDegree, coeffs: &[Rational]) -> Self {
        let monos = monomials(&shape, &degree);
        assert_eq!(monos.len(), coeffs.len(), "coefficient vector length");
        Self::from_terms_unchecked(shape, degree, monos.into_iter().zip(coeffs.iter().cloned()))
    }

    /// Like [`MPoly::new`] with exponents given as one block per factor.
    pub fn from_factor_terms(shape: Shape, degree: MultiDegree, terms: &[(Vec<Vec<u32>>, Rational)]) -> Result<Self> {
        let flat = terms.iter().map(|(blocks, c)| (blocks.concat(), c.clone())).collect::<Vec<_>>();
        Self::new(shape, degree, flat)
    }

    fn is_homogeneous_exp(&self, e: &[u32]) -> bool {
        (0..self.shape.factors()).all(|i| {
            let o = self.shape.offset(i);
            e[o..o + self.shape.vars_in(i)].iter().sum::<u32>() == self.degree.get(i)
        })
    }

    fn add_term(&mut self, e: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get().add(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn degree(&self) -> &MultiDegree {
        &self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, e: &[u32]) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    /// Dense coefficient vector in [`monomials`] order.
    pub fn coefficients(&self) -> Vec<Rational> {
        monomials(&self.shape, &self.degree).iter().map(|m| self.coefficient(m)).collect()
    }

    fn same_space(&self, other: &MPoly) -> Result<()> {
        if self.shape != other.shape || self.degree != other.degree {
            return Err(Error::ShapeMismatch(format!(
                "shape {:?} degree {:?} vs shape {:?} degree {:?}",
                self.shape.0, self.degree.0, other.shape.0, other.degree.0
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &MPoly) -> Result<MPoly> {
        self.same_space(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &MPoly) -> Result<MPoly> {
        self.add(&other.scale(&Rational::from_i64(-1)))
    }

    pub fn scale(&self, c: &Rational) -> MPoly {
        let mut out = MPoly::zero(self.shape.clone(), self.degree.clone());
        if !c.is_zero() {
            out.terms = self.terms.iter().map(|(e, v)| (e.clone(), v.mul(c))).collect();
        }
        out
    }

    /// `u·self + v·other`.
    pub fn combine(&self, u: &Rational, other: &MPoly, v: &Rational) -> Result<MPoly> {
        self.scale(u).add(&other.scale(v))
    }

    pub fn mul(&self, other: &MPoly) -> Result<MPoly> {
        if self.shape != other.shape {
            return Err(Error::ShapeMismatch("product of polynomials on different spaces".into()));
        }
        let deg = MultiDegree(self.degree.0.iter().zip(&other.degree.0).map(|(a, b)| a + b).collect());
        let mut out = MPoly::zero(self.shape.clone(), deg);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1.mul(c2));
            }
        }
        Ok(out)
    }

    /// `∂f/∂x_{ij}`, of degree `a − e_i`.
    pub fn partial(&self, i: usize, j: usize) -> Result<MPoly> {
        assert!(j < self.shape.vars_in(i), "variable index out of range");
        let degree = self.degree.minus_unit(i).ok_or(Error::DegreeUnderflow { factor: i })?;
        let idx = self.shape.offset(i) + j;
        let mut out = MPoly::zero(self.shape.clone(), degree);
        for (e, c) in &self.terms {
            if e[idx] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[idx] -= 1;
            out.add_term(e2, c.mul(&Rational::from_i64(e[idx] as i64)));
        }
        Ok(out)
    }

    /// All partial derivatives with respect to the variables of factor `i`.
    pub fn partials(&self, i: usize) -> Result<Vec<MPoly>> {
        (0..self.shape.vars_in(i)).map(|j| self.partial(i, j)).collect()
    }

    /// Checks the Euler relation `Σ_j x_{ij} ∂f/∂x_{ij} = a_i f`.
    pub fn euler_check(&self, i: usize) -> bool {
        let o = self.shape.offset(i);
        let mut lhs: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
        for (e, c) in &self.terms {
            // x_j ∂/∂x_j multiplies a term by its exponent of x_j
            let w: u32 = e[o..o + self.shape.vars_in(i)].iter().sum();
            if w != 0 {
                lhs.insert(e.clone(), c.mul(&Rational::from_i64(w as i64)));
            }
        }
        let a = Rational::from_i64(self.degree.get(i) as i64);
        let rhs: BTreeMap<Vec<u32>, Rational> =
            self.terms.iter().filter(|_| !a.is_zero()).map(|(e, c)| (e.clone(), c.mul(&a))).collect();
        lhs == rhs
    }

    /// `f(Cx)` on factor `c.factor`.
    pub fn apply_change(&self, c: &FactorChange) -> Result<MPoly> {
        let i = c.factor;
        let k = self.shape.vars_in(i);
        if c.matrix.rows() != k || c.matrix.cols() != k {
            return Err(Error::ShapeMismatch(format!(
                "factor {i} has {k} variables but the change is {}x{}",
                c.matrix.rows(),
                c.matrix.cols()
            )));
        }
        if c.matrix.det().is_zero() {
            return Err(Error::SingularMatrix);
        }
        let o = self.shape.offset(i);
        // linear forms L_j = Σ_k C[j][k] x_k as sparse polynomials in the factor's variables
        let lin: Vec<Block> = (0..k)
            .map(|j| {
                let mut m = Block::new();
                for kk in 0..k {
                    let v = &c.matrix[(j, kk)];
                    if !v.is_zero() {
                        let mut e = vec![0u32; k];
                        e[kk] = 1;
                        m.insert(e, v.clone());
                    }
                }
                m
            })
            .collect();
        let mut powers: Vec<Vec<Block>> = lin.iter().map(|l| vec![unit_block(k), l.clone()]).collect();
        let mut out = MPoly::zero(self.shape.clone(), self.degree.clone());
        for (e, coef) in &self.terms {
            let mut acc = unit_block(k);
            for j in 0..k {
                let p = e[o + j] as usize;
                while powers[j].len() <= p {
                    let next = block_mul(powers[j].last().unwrap(), &lin[j]);
                    powers[j].push(next);
                }
                acc = block_mul(&acc, &powers[j][p]);
            }
            for (be, bc) in acc {
                let mut e2 = e.clone();
                e2[o..o + k].copy_from_slice(&be);
                out.add_term(e2, coef.mul(&bc));
            }
        }
        Ok(out)
    }

    pub fn apply_changes(&self, cs: &[FactorChange]) -> Result<MPoly> {
        cs.iter().try_fold(self.clone(), |f, c| f.apply_change(c))
    }

    /// Substitutes a point for the variables of factor `i`.
    pub fn evaluate_partial(&self, i: usize, point: &[Rational]) -> Result<MPoly> {
        if self.shape.factors() < 2 {
            return Err(Error::ShapeMismatch("cannot remove the only factor".into()));
        }
        let k = self.shape.vars_in(i);
        if point.len() != k {
            return Err(Error::ShapeMismatch(format!("factor {i} needs {k} coordinates, got {}", point.len())));
        }
        if point.iter().all(Ring::is_zero) {
            return Err(Error::ZeroPoint);
        }
        let o = self.shape.offset(i);
        let mut out = MPoly::zero(self.shape.without(i), self.degree.without(i));
        for (e, c) in &self.terms {
            let mut v = c.clone();
            for j in 0..k {
                if e[o + j] > 0 {
                    v = v.mul(&Ring::pow(&point[j], e[o + j]));
                }
            }
            let mut e2 = e[..o].to_vec();
            e2.extend_from_slice(&e[o + k..]);
            out.add_term(e2, v);
        }
        Ok(out)
    }

    /// Value at a point given per factor.
    pub fn evaluate(&self, point: &[Vec<Rational>]) -> Rational {
        assert_eq!(point.len(), self.shape.factors());
        let flat: Vec<&Rational> = point.iter().flatten().collect();
        assert_eq!(flat.len(), self.shape.total_vars());
        self.terms.iter().fold(Rational::zero(), |acc, (e, c)| {
            let mut v = c.clone();
            for (x, &k) in flat.iter().zip(e) {
                if k > 0 {
                    v = v.mul(&Ring::pow(*x, k));
                }
            }
            acc.add(&v)
        })
    }

    /// Whether `other = λ·self` for some non-zero `λ` (both non-zero).
    pub fn is_proportional(&self, other: &MPoly) -> bool {
        if self.shape != other.shape || self.degree != other.degree || self.is_zero() || other.is_zero() {
            return false;
        }
        if self.terms.len() != other.terms.len() {
            return false;
        }
        let (e0, c0) = self.terms.iter().next().unwrap();
        let Some(d0) = other.terms.get(e0) else { return false };
        let lambda = d0.div(c0);
        self.terms.iter().all(|(e, c)| other.terms.get(e) == Some(&c.mul(&lambda)))
    }

    /// Leading coefficient in canonical order; `None` for zero.
    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.terms.values().next_back()
    }

    /// Scales so that the leading coefficient is 1.
    pub fn normalized(&self) -> MPoly {
        match self.leading_coefficient() {
            Some(c) => self.scale(&c.inv().unwrap()),
            None => self.clone(),
        }
    }

    /// Random polynomial with every monomial present, integer coefficients
    /// in `[-bound, bound]`.
    pub fn random_dense(shape: &Shape, degree: &MultiDegree, rng: &mut impl Rng, bound: i64) -> MPoly {
        let monos = monomials(shape, degree);
        let coeffs: Vec<Rational> = monos.iter().map(|_| Rational::from_i64(rng.gen_range(-bound..=bound))).collect();
        MPoly::from_coefficients(shape.clone(), degree.clone(), &coeffs)
    }

    /// Renders a variable name: `x0, x1, …` for factor 0, `y…`, `z…`, `w…`
    /// for the next ones and `v{i}_{j}` beyond.
    pub fn var_name(i: usize, j: usize) -> String {
        const L: [char; 4] = ['x', 'y', 'z', 'w'];
        match L.get(i) {
            Some(c) => format!("{c}{j}"),
            None => format!("v{i}_{j}"),
        }
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms()
            .map(|(e, c)| {
                let blocks: Vec<Vec<u32>> = (0..self.shape.factors())
                    .map(|i| {
                        let o = self.shape.offset(i);
                        e[o..o + self.shape.vars_in(i)].to_vec()
                    })
                    .collect();
                json!({"exp": blocks, "num": int_json(c.numer()), "den": int_json(c.denom())})
            })
            .collect();
        json!({"shape": self.shape.0, "degree": self.degree.0, "terms": terms})
    }

    pub fn from_json(v: &Value) -> Result<MPoly> {
        let bad = |m: &str| Error::InvalidInput(format!("polynomial JSON: {m}"));
        let shape: Vec<usize> = serde_json::from_value(v.get("shape").cloned().ok_or_else(|| bad("missing shape"))?)
            .map_err(|e| bad(&e.to_string()))?;
        let degree: Vec<u32> = serde_json::from_value(v.get("degree").cloned().ok_or_else(|| bad("missing degree"))?)
            .map_err(|e| bad(&e.to_string()))?;
        let shape = Shape::new(shape)?;
        let terms = v.get("terms").and_then(Value::as_array).ok_or_else(|| bad("missing terms"))?;
        let mut parsed = Vec::with_capacity(terms.len());
        for t in terms {
            let blocks: Vec<Vec<u32>> =
                serde_json::from_value(t.get("exp").cloned().ok_or_else(|| bad("term without exp"))?)
                    .map_err(|e| bad(&e.to_string()))?;
            if blocks.len() != shape.factors() || blocks.iter().enumerate().any(|(i, b)| b.len() != shape.vars_in(i)) {
                return Err(bad("exponent blocks do not match the shape"));
            }
            let num = json_int(t.get("num")).ok_or_else(|| bad("bad numerator"))?;
            let den = match t.get("den") {
                None => BigInt::from(1),
                some => json_int(some).ok_or_else(|| bad("bad denominator"))?,
            };
            if den == BigInt::from(0) {
                return Err(bad("zero denominator"));
            }
            parsed.push((blocks.concat(), Rational::new(num, den)));
        }
        MPoly::new(shape, MultiDegree(degree), parsed)
    }
}

type Block = BTreeMap<Vec<u32>, Rational>;

fn unit_block(k: usize) -> Block {
    let mut b = Block::new();
    b.insert(vec![0; k], Rational::one());
    b
}

fn block_mul(a: &Block, b: &Block) -> Block {
    let mut out = Block::new();
    for (e1, c1) in a {
        for (e2, c2) in b {
            let e: Vec<u32> = e1.iter().zip(e2).map(|(x, y)| x + y).collect();
            let slot = out.entry(e).or_insert_with(Rational::zero);
            *slot = slot.add(&c1.mul(c2));
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn int_json(n: &BigInt) -> Value {
    match i64::try_from(n) {
        Ok(x) => json!(x),
        Err(_) => json!(n.to_string()),
    }
}

fn json_int(v: Option<&Value>) -> Option<BigInt> {
    match v? {
        Value::Number(n) => n.as_i64().map(BigInt::from),
        Value::String(s) => parse_rational(s).filter(|q| q.is_integer()).map(|q| q.to_integer()),
        _ => None,
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            let mut vars = Vec::new();
            for i in 0..self.shape.factors() {
                let o = self.shape.offset(i);
                for j in 0..self.shape.vars_in(i) {
                    match e[o + j] {
                        0 => {}
                        1 => vars.push(MPoly::var_name(i, j)),
                        k => vars.push(format!("{}^{k}", MPoly::var_name(i, j))),
                    }
                }
            }
            let neg = c < &Rational::zero();
            let abs = if neg { c.neg() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let mono = vars.join("*");
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly[{:?};{:?}]({self})", self.shape.0, self.degree.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int};
    use proptest::prelude::*;
    use rand::SeedableRng;

    pub(crate) fn split(a: u32, b: u32, u: i64, v: i64) -> MPoly {
        MPoly::from_factor_terms(
            Shape::p1xp1(),
            MultiDegree::new(vec![a, b]),
            &[(vec![vec![a, 0], vec![b, 0]], rat_int(u)), (vec![vec![0, a], vec![0, b]], rat_int(v))],
        )
        .unwrap()
    }

    fn mono(a: [u32; 2], b: [u32; 2], c: i64) -> MPoly {
        MPoly::from_factor_terms(
            Shape::p1xp1(),
            MultiDegree::new(vec![a[0] + a[1], b[0] + b[1]]),
            &[(vec![a.to_vec(), b.to_vec()], rat_int(c))],
        )
        .unwrap()
    }

    #[test]
    fn monomial_order_is_descending_lex() {
        let m = monomials(&Shape::p1xp1(), &MultiDegree::new(vec![1, 2]));
        assert_eq!(m.len(), 6);
        assert_eq!(m[0], vec![1, 0, 2, 0]);
        assert_eq!(m[5], vec![0, 1, 0, 2]);
        assert!(m.windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn partial_of_x0sq_y0() {
        let f = mono([2, 0], [1, 0], 1);
        assert_eq!(f.partial(0, 0).unwrap(), mono([1, 0], [1, 0], 2));
    }

    #[test]
    fn partial_of_split_form() {
        for (a, b) in [(2, 2), (3, 2), (4, 3)] {
            let f = split(a, b, 1, 1);
            assert_eq!(f.partial(0, 0).unwrap(), mono([a - 1, 0], [b, 0], a as i64));
        }
    }

    #[test]
    fn partial_underflow() {
        let f = MPoly::from_factor_terms(
            Shape::p1xp1(),
            MultiDegree::new(vec![0, 1]),
            &[(vec![vec![0, 0], vec![1, 0]], rat_int(1))],
        )
        .unwrap();
        assert_eq!(f.partial(0, 1), Err(Error::DegreeUnderflow { factor: 0 }));
    }

    #[test]
    fn mixed_partials_commute_on_random_33() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let d = MultiDegree::new(vec![3, 3]);
        for _ in 0..10 {
            let f = MPoly::random_dense(&Shape::p1xp1(), &d, &mut rng, 9);
            let a = f.partial(0, 0).unwrap().partial(1, 0).unwrap();
            let b = f.partial(1, 0).unwrap().partial(0, 0).unwrap();
            assert_eq!(a, b);
            // term-by-term oracle: coefficient of x0^i x1^j y0^k y1^l is (i+1)(k+1) c
            for (e, c) in a.terms() {
                let src = [e[0] + 1, e[1], e[2] + 1, e[3]];
                let expect = f.coefficient(&src) * rat_int(((e[0] + 1) * (e[2] + 1)) as i64);
                assert_eq!(*c, expect);
            }
        }
    }

    #[test]
    fn euler_examples() {
        let f = MPoly::from_factor_terms(
            Shape::p1xp1(),
            MultiDegree::new(vec![2, 2]),
            &[(vec![vec![2, 0], vec![1, 1]], rat_int(1))],
        )
        .unwrap();
        assert!(f.euler_check(0));
        assert!(f.euler_check(1));
        assert!(split(3, 4, 1, 1).euler_check(1));
        let bad = MPoly::from_terms_unchecked(
            Shape::p1xp1(),
            MultiDegree::new(vec![2, 1]),
            vec![(vec![2, 0, 1, 0], rat_int(1)), (vec![1, 0, 1, 0], rat_int(1))],
        );
        assert!(!bad.euler_check(0));
    }

    #[test]
    fn change_examples() {
        let f = mono([1, 0], [1, 0], 1);
        assert_eq!(f.apply_change(&FactorChange::identity(0, 2)).unwrap(), f);
        let swap = FactorChange::new(0, Matrix::from_i64(&[&[0, 1], &[1, 0]])).unwrap();
        assert_eq!(f.apply_change(&swap).unwrap(), mono([0, 1], [1, 0], 1));
        let sing = FactorChange { factor: 0, matrix: Matrix::from_i64(&[&[1, 1], &[1, 1]]) };
        assert_eq!(f.apply_change(&sing), Err(Error::SingularMatrix));
    }

    #[test]
    fn evaluate_partial_examples() {
        let f = split(1, 1, 1, 1);
        let g = f.evaluate_partial(1, &[rat_int(1), rat_int(0)]).unwrap();
        let x0 = MPoly::new(Shape::new(vec![1]).unwrap(), MultiDegree::new(vec![1]), vec![(vec![1, 0], rat_int(1))])
            .unwrap();
        assert_eq!(g, x0);
        assert_eq!(f.evaluate_partial(1, &[rat_int(0), rat_int(0)]), Err(Error::ZeroPoint));
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let s3 = Shape::new(vec![1, 2, 1]).unwrap();
        let h = MPoly::random_dense(&s3, &MultiDegree::new(vec![2, 1, 3]), &mut rng, 3);
        let r = h.evaluate_partial(2, &[rat_int(2), rat(1, 3)]).unwrap();
        assert_eq!(r.degree(), &MultiDegree::new(vec![2, 1]));
        assert_eq!(r.shape().dims(), &[1, 2]);
    }

    #[test]
    fn json_round_trip() {
        let f = split(2, 2, 3, 7).add(&mono([1, 1], [1, 1], -2)).unwrap().scale(&rat(1, 3));
        let j = f.to_json();
        assert_eq!(MPoly::from_json(&j).unwrap(), f);
        let text = r#"{"shape":[1,1],"degree":[2,2],"terms":[{"exp":[[2,0],[2,0]],"num":1,"den":1},{"exp":[[0,2],[0,2]],"num":"5","den":"1"}]}"#;
        let g = MPoly::from_json(&serde_json::from_str(text).unwrap()).unwrap();
        assert_eq!(g, split(2, 2, 1, 5));
        let bad = r#"{"shape":[1,1],"degree":[2,2],"terms":[{"exp":[[1,0],[2,0]],"num":1}]}"#;
        assert!(MPoly::from_json(&serde_json::from_str(bad).unwrap()).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(split(2, 2, 3, -7).to_string(), "3*x0^2*y0^2 - 7*x1^2*y1^2");
    }

    fn arb_poly(shape: Vec<usize>, degree: Vec<u32>) -> impl Strategy<Value = MPoly> {
        let s = Shape::new(shape).unwrap();
        let d = MultiDegree::new(degree);
        let n = monomials(&s, &d).len();
        proptest::collection::vec(-5i64..=5, n).prop_map(move |c| {
            let c: Vec<Rational> = c.into_iter().map(rat_int).collect();
            MPoly::from_coefficients(s.clone(), d.clone(), &c)
        })
    }

    fn arb_change(size: usize) -> impl Strategy<Value = Matrix> {
        proptest::collection::vec(-3i64..=3, size * size)
            .prop_map(move |v| {
                Matrix::from_rows(v.chunks(size).map(|r| r.iter().map(|&x| rat_int(x)).collect()).collect())
            })
            .prop_filter("invertible", |m| !m.det().is_zero())
    }

    proptest! {
        #[test]
        fn euler_holds(f in arb_poly(vec![1, 2], vec![2, 3])) {
            prop_assert!(f.euler_check(0));
            prop_assert!(f.euler_check(1));
        }

        #[test]
        fn change_round_trip(f in arb_poly(vec![1, 1], vec![3, 2]), m in arb_change(2)) {
            let c = FactorChange::new(0, m).unwrap();
            let g = f.apply_change(&c).unwrap();
            prop_assert!(g.euler_check(0) && g.euler_check(1));
            prop_assert_eq!(g.apply_change(&c.inverse().unwrap()).unwrap(), f);
        }

        #[test]
        fn change_is_ring_action(f in arb_poly(vec![2, 1], vec![1, 1]), g in arb_poly(vec![2, 1], vec![1, 2]), m in arb_change(3)) {
            let c = FactorChange::new(0, m).unwrap();
            let lhs = f.mul(&g).unwrap().apply_change(&c).unwrap();
            let rhs = f.apply_change(&c).unwrap().mul(&g.apply_change(&c).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn composition_is_matrix_product(f in arb_poly(vec![1, 1], vec![2, 2]), m1 in arb_change(2), m2 in arb_change(2)) {
            let c1 = FactorChange::new(1, m1).unwrap();
            let c2 = FactorChange::new(1, m2).unwrap();
            let seq = f.apply_change(&c1).unwrap().apply_change(&c2).unwrap();
            prop_assert_eq!(seq, f.apply_change(&c1.then(&c2)).unwrap());
        }

        #[test]
        fn chain_rule(f in arb_poly(vec![1, 1], vec![2, 2]), m in arb_change(2)) {
            // ∂_j (f∘C) = Σ_k C[k][j] (∂_k f)∘C
            let c = FactorChange::new(0, m.clone()).unwrap();
            let g = f.apply_change(&c).unwrap();
            for j in 0..2 {
                let lhs = g.partial(0, j).unwrap();
                let mut rhs = MPoly::zero(lhs.shape().clone(), lhs.degree().clone());
                for k in 0..2 {
                    let t = f.partial(0, k).unwrap().apply_change(&c).unwrap().scale(&m[(k, j)]);
                    rhs = rhs.add(&t).unwrap();
                }
                prop_assert_eq!(lhs, rhs);
            }
        }

        #[test]
        fn evaluation_commutes(f in arb_poly(vec![1, 2], vec![2, 2]), p in proptest::collection::vec(-4i64..=4, 5)) {
            prop_assume!(p[2..].iter().any(|&x| x != 0));
            let pt1: Vec<Rational> = p[..2].iter().map(|&x| rat_int(x)).collect();
            let pt2: Vec<Rational> = p[2..].iter().map(|&x| rat_int(x)).collect();
            let r = f.evaluate_partial(1, &pt2).unwrap();
            prop_assert_eq!(r.evaluate(std::slice::from_ref(&pt1)), f.evaluate(&[pt1, pt2]));
        }

        #[test]
        fn products_stay_homogeneous(f in arb_poly(vec![1, 1], vec![1, 2]), g in arb_poly(vec![1, 1], vec![2, 0])) {
            let h = f.mul(&g).unwrap();
            prop_assert_eq!(h.degree(), &MultiDegree::new(vec![3, 2]));
            prop_assert!(h.euler_check(0) && h.euler_check(1));
        }
    }
}
