use crate::error::{Error, Result};
use crate::exact::{sylvester_resultant_formal, QuadExt, Rational, Ring, UniPoly};
use crate::mpoly::MPoly;

use super::smooth::{singular_locus, BiForm};
use super::{p1xp1_degree, smooth_on_p1xp1, Smoothness};

type Poly = UniPoly<Rational>;

/// Parameter `(u:v)` of the member `u·f + v·g`, first non-zero entry 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PencilParameter {
    Rational([Rational; 2]),
    Quadratic([QuadExt; 2]),
    /// `(1:t)` for every root `t` of `factor`.
    Symbolic {
        factor: Poly,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PencilMember {
    pub parameter: PencilParameter,
    /// `u·f + v·g` for a rational parameter.
    pub polynomial: Option<MPoly>,
    pub multiplicity: usize,
    /// Singularity of the member has been established exactly.
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PencilReport {
    pub members: Vec<PencilMember>,
    /// Polynomial in `t` whose roots contain the parameters of the singular
    /// members `f + t·g`: the discriminant when `a = 1` or `b = 1`,
    /// otherwise an elimination resultant.
    pub eliminant: Option<Poly>,
    /// Every singular member is listed.
    pub complete: bool,
    /// Multiplicities are those of the discriminant.
    pub multiplicity_exact: bool,
}

fn one() -> Rational {
    Rational::from_i64(1)
}

fn rational_member(f: &MPoly, g: &MPoly, t: &Rational, multiplicity: usize) -> PencilMember {
    PencilMember {
        parameter: PencilParameter::Rational([one(), t.clone()]),
        polynomial: Some(f.combine(&one(), g, t).expect("same space")),
        multiplicity,
        verified: true,
    }
}

fn infinity_member(g: &MPoly, multiplicity: usize) -> PencilMember {
    PencilMember {
        parameter: PencilParameter::Rational([Rational::from_i64(0), one()]),
        polynomial: Some(g.clone()),
        multiplicity,
        verified: true,
    }
}

fn quadratic_members(factor: &Poly, multiplicity: usize, verified: bool) -> Vec<PencilMember> {
    let roots = factor.quadratic_roots().expect("degree-2 factor");
    roots
        .into_iter()
        .map(|t| PencilMember {
            parameter: PencilParameter::Quadratic([QuadExt::rational(one()), t]),
            polynomial: None,
            multiplicity,
            verified,
        })
        .collect()
}

/// Squarefree factorization `p = c·∏ q_i^i`, as `(q_i, i)` with `q_i` monic
/// and non-constant.
fn squarefree_factors(p: &Poly) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    if p.is_constant() {
        return out;
    }
    let mut b = p.gcd(&p.derivative());
    let mut c = p.div_rem(&b).0;
    let mut i = 1;
    while !c.is_constant() {
        let y = c.gcd(&b);
        let z = c.div_rem(&y).0;
        if !z.is_constant() {
            out.push((z.monic(), i));
        }
        b = b.div_rem(&y).0;
        c = y;
        i += 1;
    }
    out
}

/// Members from a polynomial in `t`, rational roots first.
fn members_from_roots(f: &MPoly, g: &MPoly, p: &Poly, verified_symbolic: bool) -> Vec<PencilMember> {
    let mut out = Vec::new();
    for (factor, mult) in squarefree_factors(p) {
        let mut rest = factor.clone();
        for t in factor.rational_roots() {
            out.push(rational_member(f, g, &t, mult));
            rest = rest.div_rem(&UniPoly::new(vec![t.neg(), one()])).0;
        }
        match rest.degree() {
            Some(0) | None => {}
            Some(2) => out.extend(quadratic_members(&rest, mult, verified_symbolic)),
            Some(_) => out.push(PencilMember {
                parameter: PencilParameter::Symbolic { factor: rest.monic() },
                polynomial: None,
                multiplicity: mult,
                verified: verified_symbolic,
            }),
        }
    }
    out
}

fn sort_members(members: &mut [PencilMember]) {
    fn key(m: &PencilMember) -> (u8, Vec<(num_bigint::BigInt, Rational, Rational)>) {
        match &m.parameter {
            PencilParameter::Rational([u, v]) if u.is_zero() => (3, vec![]),
            PencilParameter::Rational([_, t]) => (0, vec![QuadExt::rational(t.clone()).sort_key()]),
            PencilParameter::Quadratic([_, t]) => (1, vec![t.sort_key()]),
            PencilParameter::Symbolic { factor } => {
                (2, factor.coeffs().iter().map(|c| QuadExt::rational(c.clone()).sort_key()).collect())
            }
        }
    }
    members.sort_by_key(key);
}

/// Discriminant of `f + t·g` when the form is linear in `y`: the member is
/// singular iff its two `y`-coefficients share a root on `P1`.
fn linear_discriminant(f: &BiForm<Rational>, g: &BiForm<Rational>) -> Poly {
    let w = f.pencil(g);
    let n = w.a;
    let coeff_form = |j: usize| UniPoly::new((0..=n).map(|i| w.c[i][j].clone()).collect::<Vec<Poly>>());
    sylvester_resultant_formal(&coeff_form(1), &coeff_form(0), n, n)
}

/// `gcd` of the 2×2 minors of the coefficient matrix of the factor-`i`
/// partials of `f + t·g`; `None` when every minor vanishes identically.
fn frame_gcd(f: &MPoly, g: &MPoly, i: usize) -> Result<Option<Poly>> {
    let (fp, gp) = (f.partials(i)?, g.partials(i)?);
    let rows: Vec<Vec<Poly>> = fp
        .iter()
        .zip(&gp)
        .map(|(a, b)| {
            a.coefficients().into_iter().zip(b.coefficients()).map(|(x, y)| UniPoly::new(vec![x, y])).collect()
        })
        .collect();
    let mut acc = Poly::zero();
    for k in 0..rows[0].len() {
        for l in k + 1..rows[0].len() {
            let m = rows[0][k].mul(&rows[1][l]).sub(&rows[0][l].mul(&rows[1][k]));
            acc = acc.gcd(&m);
        }
    }
    Ok((!acc.is_zero()).then_some(acc))
}

/// Rank of the factor-`i` Jacobian frame of a single polynomial.
fn frame_rank(f: &MPoly, i: usize) -> Result<usize> {
    let rows: Vec<Vec<Rational>> = f.partials(i)?.iter().map(MPoly::coefficients).collect();
    Ok(crate::exact::Matrix::from_rows(rows).rank())
}

/// Elimination resultant over `P1 x P1` of the four partials of `f + t·g`.
fn eliminant(f: &BiForm<Rational>, g: &BiForm<Rational>) -> Option<Poly> {
    let w = f.pencil(g);
    let ps = w.partials();
    let ydeg = |p: &BiForm<Poly>| p.b;
    let xdeg = |p: &BiForm<Poly>| p.a;
    let res_y = |i: &BiForm<Poly>, j: &BiForm<Poly>| {
        let r = sylvester_resultant_formal(&i.affine(), &j.affine(), ydeg(i), ydeg(j));
        (r, xdeg(i) * ydeg(j) + xdeg(j) * ydeg(i))
    };
    let combos: Vec<[BiForm<Poly>; 4]> = std::iter::once(ps.clone())
        .chain((1..=3).map(|k| {
            let c = Poly::constant(Rational::from_i64(k + 1));
            let mix = |p: &BiForm<Poly>, q: &BiForm<Poly>| {
                let mut out = p.clone();
                for (row, qrow) in out.c.iter_mut().zip(&q.c) {
                    for (x, y) in row.iter_mut().zip(qrow) {
                        *x = x.add(&y.mul(&c));
                    }
                }
                out
            };
            [ps[0].clone(), mix(&ps[1], &ps[0]), ps[2].clone(), mix(&ps[3], &ps[2])]
        }))
        .collect();
    let mut acc = Poly::zero();
    for q in &combos {
        for (a, b, c, d) in [(0, 1, 2, 3), (0, 2, 1, 3), (0, 3, 1, 2)] {
            let (r1, d1) = res_y(&q[a], &q[b]);
            let (r2, d2) = res_y(&q[c], &q[d]);
            let phi = sylvester_resultant_formal(&r1, &r2, d1, d2);
            if !phi.is_zero() {
                acc = acc.gcd(&phi);
            }
        }
        if !acc.is_zero() {
            return Some(acc);
        }
    }
    None
}

/// Whether `f + t·g` is singular for `t` a root of the quadratic `factor`.
fn quadratic_member_singular(f: &BiForm<Rational>, g: &BiForm<Rational>, factor: &Poly) -> bool {
    let t = factor.quadratic_roots().expect("degree-2 factor")[0].clone();
    let w = f.map(|c| QuadExt::rational(c.clone()));
    let gq = g.map(|c| QuadExt::rational(c.clone()));
    let mut m = w.clone();
    for i in 0..=w.a {
        for j in 0..=w.b {
            m.c[i][j] = w.c[i][j].add(&gq.c[i][j].mul(&t));
        }
    }
    singular_locus(&m).is_some()
}

/// Singular members of the pencil spanned by `f` and `g` on `P1 x P1`.
pub fn pencil_singular_members(f: &MPoly, g: &MPoly) -> Result<PencilReport> {
    let (a, b) = p1xp1_degree(f)?;
    if g.shape() != f.shape() || g.degree() != f.degree() {
        return Err(Error::ShapeMismatch("f and g must have the same degree".into()));
    }
    if a == 0 || b == 0 {
        return Err(Error::InvalidInput("pencil members need a >= 1 and b >= 1".into()));
    }
    if f.is_zero() || g.is_zero() || f.is_proportional(g) {
        return Err(Error::IdenticalDivisors);
    }
    let (ff, gf) = (BiForm::from_mpoly(f, Rational::clone), BiForm::from_mpoly(g, Rational::clone));
    if a == 1 || b == 1 {
        let (ff, gf) = if b == 1 { (ff, gf) } else { (ff.transpose(), gf.transpose()) };
        let disc = linear_discriminant(&ff, &gf);
        if disc.is_zero() {
            return Err(Error::HypothesisViolated("every member of the pencil is singular".into()));
        }
        let mut members = members_from_roots(f, g, &disc, true);
        let at_infinity = 2 * ff.a - disc.degree().unwrap();
        if at_infinity > 0 {
            members.push(infinity_member(g, at_infinity));
        }
        sort_members(&mut members);
        return Ok(PencilReport { members, eliminant: Some(disc), complete: true, multiplicity_exact: true });
    }

    // a, b ≥ 2: a member whose J_i drops rank has a multiple component
    let mut members = Vec::new();
    let mut seen_infinity = false;
    for i in 0..2 {
        match frame_gcd(f, g, i)? {
            None => return Err(Error::HypothesisViolated("every member of the pencil is singular".into())),
            Some(p) => {
                for m in members_from_roots(f, g, &p, true) {
                    if !members.iter().any(|x: &PencilMember| x.parameter == m.parameter) {
                        members.push(m);
                    }
                }
            }
        }
        if frame_rank(g, i)? < 2 {
            seen_infinity = true;
        }
    }
    let elim = if a * b <= 9 { eliminant(&ff, &gf) } else { None };
    // with no eliminant every member may be singular; only rank drops are listed
    if !seen_infinity && elim.is_some() && matches!(smooth_on_p1xp1(g)?, Smoothness::Singular(_)) {
        seen_infinity = true;
    }
    if seen_infinity {
        members.push(infinity_member(g, 1));
    }
    if let Some(phi) = &elim {
        let phi = phi.squarefree_part();
        for t in phi.rational_roots() {
            let member = rational_member(f, g, &t, 1);
            if members.iter().any(|x| x.parameter == member.parameter) {
                continue;
            }
            if matches!(smooth_on_p1xp1(member.polynomial.as_ref().unwrap())?, Smoothness::Singular(_)) {
                members.push(member);
            }
        }
        let mut rest = phi.clone();
        for t in phi.rational_roots() {
            rest = rest.div_rem(&UniPoly::new(vec![t.neg(), one()])).0;
        }
        match rest.degree() {
            Some(0) | None => {}
            Some(2) => {
                if quadratic_member_singular(&ff, &gf, &rest) {
                    members.extend(quadratic_members(&rest, 1, true));
                }
            }
            Some(_) => members.push(PencilMember {
                parameter: PencilParameter::Symbolic { factor: rest.monic() },
                polynomial: None,
                multiplicity: 1,
                verified: false,
            }),
        }
    }
    sort_members(&mut members);
    Ok(PencilReport { members, complete: elim.is_some(), eliminant: elim, multiplicity_exact: false })
}
