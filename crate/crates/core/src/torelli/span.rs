use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact::{Matrix, Rational, Ring};
use crate::invariants::bott_kunneth_h1_tangent;
use crate::mpoly::{monomials, FactorChange, MPoly, MultiDegree, Shape};

/// A linear subspace of the polynomials of one multidegree, stored as the
/// reduced row echelon basis over the canonical monomial order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Span {
    shape: Shape,
    degree: MultiDegree,
    basis: Matrix,
}

impl Span {
    pub fn from_polys(shape: &Shape, degree: &MultiDegree, polys: &[MPoly]) -> Result<Span> {
        let cols = monomials(shape, degree).len();
        let mut rows = Vec::with_capacity(polys.len());
        for p in polys {
            if p.shape() != shape || p.degree() != degree {
                return Err(Error::ShapeMismatch("polynomial outside the span's space".into()));
            }
            rows.push(p.coefficients());
        }
        let basis = if rows.is_empty() {
            Matrix::zeros(0, cols)
        } else {
            let r = Matrix::from_rows(rows).rref();
            r.matrix.top_rows(r.rank)
        };
        Ok(Span { shape: shape.clone(), degree: degree.clone(), basis })
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn degree(&self) -> &MultiDegree {
        &self.degree
    }

    /// RREF basis, one row per basis vector.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis_polys(&self) -> Vec<MPoly> {
        (0..self.dim())
            .map(|r| MPoly::from_coefficients(self.shape.clone(), self.degree.clone(), self.basis.row(r)))
            .collect()
    }

    pub fn contains(&self, p: &MPoly) -> bool {
        if p.shape() != &self.shape || p.degree() != &self.degree {
            return false;
        }
        let mut rows = self.basis.to_rows();
        rows.push(p.coefficients());
        Matrix::from_rows(rows).rank() == self.dim()
    }

    pub fn is_subspace_of(&self, other: &Span) -> bool {
        self.basis_polys().iter().all(|p| other.contains(p))
    }

    /// Image of the span under `p ↦ p(Cx)`.
    pub fn apply_change(&self, c: &FactorChange) -> Result<Span> {
        let images = self.basis_polys().iter().map(|p| p.apply_change(c)).collect::<Result<Vec<_>>>()?;
        Span::from_polys(&self.shape, &self.degree, &images)
    }
}

/// `J_i(f)`: the span of the partial derivatives of `f` in the variables of
/// factor `i` (numbered from 0).
pub fn jacobian_space(f: &MPoly, i: usize) -> Result<Span> {
    if i >= f.shape().factors() {
        return Err(Error::ShapeMismatch(format!("factor {i} out of range")));
    }
    let degree = f.degree().minus_unit(i).ok_or(Error::DegreeUnderflow { factor: i })?;
    Span::from_polys(f.shape(), &degree, &f.partials(i)?)
}

/// Subspace equality.
pub fn span_equal(s1: &Span, s2: &Span) -> Result<bool> {
    if s1.shape != s2.shape || s1.degree != s2.degree {
        return Err(Error::ShapeMismatch("spans live in different spaces".into()));
    }
    Ok(s1.basis == s2.basis)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// `J_i(f) ≠ J_i(g)` for the factor `witness_factor` (numbered from 1).
    DistinctBundles { witness_factor: usize },
    /// All Jacobian spaces agree; no claim about the bundles is made.
    JacobianIndistinguishable,
}

#[derive(Clone, Debug)]
pub struct Distinction {
    pub verdict: Verdict,
    /// `h¹(TX(−a))`; the verdict `DistinctBundles` is proven only when it is 0.
    pub h1: i64,
    pub hypothesis_verified: bool,
    /// `(J_i(f), J_i(g))` per factor.
    pub spans: Vec<(Span, Span)>,
}

/// Compares all Jacobian spaces of `f` and `g`.
///
/// For smooth divisors and `h¹(TX(−a)) = 0`, a differing space proves that
/// the logarithmic tangent bundles are not isomorphic.
pub fn distinguish(f: &MPoly, g: &MPoly) -> Result<Distinction> {
    if f.shape() != g.shape() || f.degree() != g.degree() {
        return Err(Error::ShapeMismatch("f and g must have the same shape and degree".into()));
    }
    if f.is_zero() || g.is_zero() {
        return Err(Error::InvalidInput("the zero polynomial does not define a divisor".into()));
    }
    let a = f.degree().as_slice();
    if a.contains(&0) || a.iter().all(|&x| x == 1) {
        return Err(Error::HypothesisViolated(format!(
            "the distinguisher needs every degree positive and not all equal to 1, got {a:?}"
        )));
    }
    let report = bott_kunneth_h1_tangent(f.shape(), f.degree())?;
    let mut spans = Vec::with_capacity(a.len());
    let mut verdict = Verdict::JacobianIndistinguishable;
    for i in 0..a.len() {
        let (jf, jg) = (jacobian_space(f, i)?, jacobian_space(g, i)?);
        if verdict == Verdict::JacobianIndistinguishable && !span_equal(&jf, &jg)? {
            verdict = Verdict::DistinctBundles { witness_factor: i + 1 };
        }
        spans.push((jf, jg));
    }
    Ok(Distinction { verdict, h1: report.h1, hypothesis_verified: report.vanishes, spans })
}

#[derive(Clone, Debug)]
pub struct RestrictTrial {
    /// Coordinates chosen for factors `1..s`.
    pub point: Vec<Vec<Rational>>,
    pub spans_equal: bool,
    pub proportional: bool,
}

#[derive(Clone, Debug)]
pub struct RestrictReport {
    pub trials: Vec<RestrictTrial>,
    pub all_spans_equal: bool,
    pub all_proportional: bool,
}

fn trial_seed(seed: u64, trial: usize) -> u64 {
    seed ^ (trial as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

fn random_point(rng: &mut ChaCha8Rng, k: usize) -> Vec<Rational> {
    loop {
        let p: Vec<Rational> = (0..k).map(|_| Rational::from_i64(rng.gen_range(-9..=9))).collect();
        if !p.iter().all(Ring::is_zero) {
            return p;
        }
    }
}

/// Restricts `f` and `g` to random slices `P^{n_1} x {P}` and compares the
/// Jacobian spaces and the divisors of the restrictions.
pub fn restrict_and_compare(f: &MPoly, g: &MPoly, trials: usize, seed: u64) -> Result<RestrictReport> {
    if f.shape() != g.shape() || f.degree() != g.degree() {
        return Err(Error::ShapeMismatch("f and g must have the same shape and degree".into()));
    }
    let s = f.shape().factors();
    if s < 2 {
        return Err(Error::ShapeMismatch("restriction needs at least two factors".into()));
    }
    let mut out = Vec::with_capacity(trials);
    for t in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(seed, t));
        let point: Vec<Vec<Rational>> = (1..s).map(|i| random_point(&mut rng, f.shape().vars_in(i))).collect();
        let (mut fp, mut gp) = (f.clone(), g.clone());
        for p in &point {
            fp = fp.evaluate_partial(1, p)?;
            gp = gp.evaluate_partial(1, p)?;
        }
        let spans_equal =
            if f.degree().get(0) == 0 { true } else { span_equal(&jacobian_space(&fp, 0)?, &jacobian_space(&gp, 0)?)? };
        let proportional = fp.is_proportional(&gp) || (fp.is_zero() && gp.is_zero());
        out.push(RestrictTrial { point, spans_equal, proportional });
    }
    Ok(RestrictReport {
        all_spans_equal: out.iter().all(|t| t.spans_equal),
        all_proportional: out.iter().all(|t| t.proportional),
        trials: out,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int};
    use proptest::prelude::*;

    fn p1p1(terms: &[([u32; 4], i64)]) -> MPoly {
        let d = MultiDegree::new(vec![terms[0].0[0] + terms[0].0[1], terms[0].0[2] + terms[0].0[3]]);
        MPoly::new(Shape::p1xp1(), d, terms.iter().map(|(e, c)| (e.to_vec(), rat_int(*c)))).unwrap()
    }

    fn split(a: u32, b: u32, u: i64, v: i64) -> MPoly {
        p1p1(&[([a, 0, b, 0], u), ([0, a, 0, b], v)])
    }

    #[test]
    fn split_form_jacobian() {
        let f = split(2, 2, 1, 1);
        let j = jacobian_space(&f, 0).unwrap();
        assert_eq!(j.dim(), 2);
        let expect = [p1p1(&[([1, 0, 2, 0], 1)]), p1p1(&[([0, 1, 0, 2], 1)])];
        assert!(expect.iter().all(|p| j.contains(p)));
    }

    #[test]
    fn monomial_jacobian_is_a_line() {
        let f = p1p1(&[([3, 0, 2, 0], 1)]);
        let j = jacobian_space(&f, 0).unwrap();
        assert_eq!(j.dim(), 1);
        assert!(j.contains(&p1p1(&[([2, 0, 2, 0], 1)])));
    }

    #[test]
    fn random_jacobian_dimension() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let f = MPoly::random_dense(&Shape::p1xp1(), &MultiDegree::new(vec![3, 3]), &mut rng, 20);
        let j = jacobian_space(&f, 0).unwrap();
        // oracle: rank of the coefficient matrix of the two partials
        let rows: Vec<Vec<Rational>> = f.partials(0).unwrap().iter().map(|p| p.coefficients()).collect();
        assert_eq!(j.dim(), Matrix::from_rows(rows).rank());
        assert_eq!(j.dim(), 2);
    }

    #[test]
    fn degree_underflow() {
        let f = p1p1(&[([0, 0, 2, 0], 1)]);
        assert_eq!(jacobian_space(&f, 0), Err(Error::DegreeUnderflow { factor: 0 }));
    }

    #[test]
    fn span_equality_examples() {
        let f = split(2, 2, 1, 1);
        let j = jacobian_space(&f, 0).unwrap();
        assert!(span_equal(&j, &jacobian_space(&f.scale(&rat(-3, 7)), 0).unwrap()).unwrap());
        assert!(span_equal(&j, &jacobian_space(&split(2, 2, 1, 5), 0).unwrap()).unwrap());
        let h = p1p1(&[([2, 0, 2, 0], 1), ([1, 1, 1, 1], 1)]);
        assert!(!span_equal(&j, &jacobian_space(&h, 0).unwrap()).unwrap());
        let other = jacobian_space(&f, 1).unwrap();
        assert!(matches!(span_equal(&j, &other), Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn distinguish_examples() {
        let d = distinguish(&split(3, 2, 2, -5), &split(3, 2, 7, 1)).unwrap();
        assert_eq!(d.verdict, Verdict::JacobianIndistinguishable);
        let f = split(3, 3, 1, 1);
        let g = f.add(&p1p1(&[([2, 1, 2, 1], 1)])).unwrap();
        let d = distinguish(&f, &g).unwrap();
        assert_eq!(d.verdict, Verdict::DistinctBundles { witness_factor: 1 });
        assert!(d.hypothesis_verified);
        assert_eq!(distinguish(&f, &f).unwrap().verdict, Verdict::JacobianIndistinguishable);
    }

    #[test]
    fn distinguish_flags_unverified_hypothesis() {
        let d = distinguish(&split(2, 2, 1, 1), &split(2, 2, 1, 3)).unwrap();
        assert_eq!(d.h1, 2);
        assert!(!d.hypothesis_verified);
    }

    #[test]
    fn distinguish_gate() {
        let f = split(1, 1, 1, 1);
        assert!(matches!(distinguish(&f, &f), Err(Error::HypothesisViolated(_))));
        let g = p1p1(&[([2, 0, 0, 0], 1)]);
        assert!(matches!(distinguish(&g, &g), Err(Error::HypothesisViolated(_))));
    }

    fn split3(u: i64, v: i64) -> MPoly {
        let s = Shape::new(vec![1, 1, 1]).unwrap();
        MPoly::new(
            s,
            MultiDegree::new(vec![2, 2, 2]),
            [(vec![2, 0, 2, 0, 2, 0], rat_int(u)), (vec![0, 2, 0, 2, 0, 2], rat_int(v))],
        )
        .unwrap()
    }

    #[test]
    fn restrict_examples() {
        let f = split3(1, 1);
        let r = restrict_and_compare(&f, &f, 5, 1).unwrap();
        assert!(r.all_spans_equal && r.all_proportional);
        let r = restrict_and_compare(&f, &split3(2, 3), 6, 1).unwrap();
        assert!(r.all_spans_equal);
        // direct oracle for each slice
        for t in &r.trials {
            let fp = f.evaluate_partial(1, &t.point[0]).unwrap().evaluate_partial(1, &t.point[1]).unwrap();
            // c0 x0^2 + c1 x1^2: one independent partial per surviving term
            assert_eq!(jacobian_space(&fp, 0).unwrap().dim(), fp.num_terms());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let shape = Shape::new(vec![1, 1, 1]).unwrap();
        let deg = MultiDegree::new(vec![3, 3, 3]);
        let f = MPoly::random_dense(&shape, &deg, &mut rng, 9);
        let g = MPoly::random_dense(&shape, &deg, &mut rng, 9);
        let r = restrict_and_compare(&f, &g, 4, 2).unwrap();
        assert!(!r.all_proportional);
        // independent check: evaluate at each trial point and compare ratios
        let t = r.trials.iter().find(|t| !t.proportional).unwrap();
        let fp = f.evaluate_partial(1, &t.point[0]).unwrap().evaluate_partial(1, &t.point[1]).unwrap();
        let gp = g.evaluate_partial(1, &t.point[0]).unwrap().evaluate_partial(1, &t.point[1]).unwrap();
        let (cf, cg) = (fp.coefficients(), gp.coefficients());
        assert!((0..cf.len()).any(|i| (0..cf.len()).any(|j| cf[i].mul(&cg[j]) != cf[j].mul(&cg[i]))));
    }

    #[test]
    fn restrict_is_deterministic() {
        let f = split3(1, 4);
        let g = split3(3, 1);
        let a = restrict_and_compare(&f, &g, 3, 77).unwrap();
        let b = restrict_and_compare(&f, &g, 3, 77).unwrap();
        assert_eq!(
            a.trials.iter().map(|t| t.point.clone()).collect::<Vec<_>>(),
            b.trials.iter().map(|t| t.point.clone()).collect::<Vec<_>>()
        );
        assert!(restrict_and_compare(
            &MPoly::zero(Shape::new(vec![2]).unwrap(), MultiDegree::new(vec![2])),
            &MPoly::zero(Shape::new(vec![2]).unwrap(), MultiDegree::new(vec![2])),
            1,
            0
        )
        .is_err());
    }

    fn arb_split() -> impl Strategy<Value = (u32, u32, i64, i64, i64, i64)> {
        (2u32..=4, 2u32..=4, -9i64..=9, -9i64..=9, -9i64..=9, -9i64..=9)
            .prop_filter("nonzero", |t| t.2 != 0 && t.3 != 0 && t.4 != 0 && t.5 != 0)
    }

    fn arb_change() -> impl Strategy<Value = Matrix> {
        proptest::collection::vec(-4i64..=4, 4)
            .prop_map(|v| Matrix::from_i64(&[&v[0..2], &v[2..4]]))
            .prop_filter("invertible", |m| !m.det().is_zero())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn jacobian_is_equivariant(seed in 0u64..1000, m in arb_change(), factor in 0usize..2) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let f = MPoly::random_dense(&Shape::p1xp1(), &MultiDegree::new(vec![2, 3]), &mut rng, 5);
            let c = FactorChange::new(factor, m).unwrap();
            for i in 0..2 {
                let lhs = jacobian_space(&f.apply_change(&c).unwrap(), i).unwrap();
                let rhs = jacobian_space(&f, i).unwrap().apply_change(&c).unwrap();
                prop_assert!(span_equal(&lhs, &rhs).unwrap());
            }
        }

        #[test]
        fn scaling_is_indistinguishable(seed in 0u64..1000, num in -20i64..20, den in 1i64..20) {
            prop_assume!(num != 0);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let f = MPoly::random_dense(&Shape::new(vec![1, 2]).unwrap(), &MultiDegree::new(vec![2, 2]), &mut rng, 5);
            prop_assume!(!f.is_zero());
            let d = distinguish(&f, &f.scale(&rat(num, den))).unwrap();
            prop_assert_eq!(d.verdict, Verdict::JacobianIndistinguishable);
        }

        #[test]
        fn split_pairs_share_spans((a, b, u, v, u2, v2) in arb_split()) {
            let (f, g) = (split(a, b, u, v), split(a, b, u2, v2));
            for i in 0..2 {
                prop_assert!(span_equal(&jacobian_space(&f, i).unwrap(), &jacobian_space(&g, i).unwrap()).unwrap());
            }
        }
    }
}
