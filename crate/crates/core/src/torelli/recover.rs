use crate::error::{Error, Result};
use crate::exact::{Matrix, Rational, Ring, UniPoly};
use crate::mpoly::{FactorChange, MPoly};

use super::p1xp1_degree;
use super::span::{jacobian_space, span_equal};

/// `u·x0^a y0^b + v·x1^a y1^b` reached from the input by `changes`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitForm {
    /// Applying these to the input gives the split form exactly.
    pub changes: Vec<FactorChange>,
    pub u: Rational,
    pub v: Rational,
    pub exponents: (u32, u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitRecovery {
    pub f_form: SplitForm,
    pub g_form: SplitForm,
    /// `(v'/u') / (v/u)`, so that after rescaling `f = x0^a y0^b + x1^a y1^b`
    /// and `g = x0^a y0^b + λ·x1^a y1^b`.
    pub lambda: Rational,
    /// A member `u·f + v·g` with `uv ≠ 0` that is a single monomial in the
    /// recovered frame, with `(u:v)` normalized to first entry 1. `None` when
    /// `g` is a multiple of `f`.
    pub singular_member: Option<([Rational; 2], MPoly)>,
    /// Points of `P1 x P1` in the input coordinates where all partials of
    /// both `f` and `g` vanish.
    pub singular_points: Vec<([Rational; 2], [Rational; 2])>,
}

fn r(n: i64) -> Rational {
    Rational::from_i64(n)
}

/// Split-type test in the given coordinates.
pub fn is_split_type_in_coords(f: &MPoly) -> Result<Option<SplitForm>> {
    let (a, b) = p1xp1_degree(f)?;
    let first = [a, 0, b, 0];
    let second = [0, a, 0, b];
    let (u, v) = (f.coefficient(&first), f.coefficient(&second));
    if f.num_terms() != 2 || u.is_zero() || v.is_zero() {
        return Ok(None);
    }
    Ok(Some(SplitForm {
        changes: vec![FactorChange::identity(0, 2), FactorChange::identity(1, 2)],
        u,
        v,
        exponents: (a, b),
    }))
}

/// `N` with `∂g/∂z_k = Σ_l N[k][l] ∂f/∂z_l` on factor `i`.
fn partial_transfer(f: &MPoly, g: &MPoly, i: usize) -> Result<Option<Matrix>> {
    let fm = Matrix::from_rows(f.partials(i)?.iter().map(MPoly::coefficients).collect());
    let gm = Matrix::from_rows(g.partials(i)?.iter().map(MPoly::coefficients).collect());
    let piv = fm.rref().pivots;
    if piv.len() != 2 {
        return Ok(None);
    }
    let sub =
        |m: &Matrix| Matrix::from_rows((0..2).map(|k| piv.iter().map(|&j| m[(k, j)].clone()).collect()).collect());
    let n = sub(&gm).mul(&sub(&fm).inverse()?);
    Ok((n.mul(&fm) == gm).then_some(n))
}

fn primitive_vector(v: &[Rational]) -> Vec<Rational> {
    let lcm = crate::exact::denom_lcm(v);
    let scaled: Vec<Rational> = v.iter().map(|x| x * Rational::from_integer(lcm.clone())).collect();
    let g = crate::exact::numer_gcd(&scaled);
    scaled.iter().map(|x| x / Rational::from_integer(g.clone())).collect()
}

/// Eigenvalues of a 2×2 matrix in ascending order with an eigenvector
/// for each, or `Ok(None)` for a repeated eigenvalue.
fn eigen_frame(n: &Matrix) -> Result<Option<[(Rational, Vec<Rational>); 2]>> {
    let tr = n[(0, 0)].add(&n[(1, 1)]);
    let det = n.det();
    let charpoly = UniPoly::new(vec![det, tr.neg(), r(1)]);
    let roots: Vec<Rational> = charpoly.rational_roots_mult().into_iter().map(|(t, _)| t).collect();
    if roots.is_empty() {
        return Err(Error::UnsupportedExtension(format!(
            "the Jacobian transfer matrix has irrational eigenvalues, roots of {}",
            charpoly.display_with("t")
        )));
    }
    if roots.len() == 1 {
        return Ok(None);
    }
    let vec_for = |mu: &Rational| {
        let mut m = n.clone();
        for k in 0..2 {
            m[(k, k)] = m[(k, k)].sub(mu);
        }
        primitive_vector(&m.kernel()[0])
    };
    Ok(Some([(roots[0].clone(), vec_for(&roots[0])), (roots[1].clone(), vec_for(&roots[1]))]))
}

fn column_matrix(c0: &[Rational], c1: &[Rational]) -> Matrix {
    Matrix::from_rows(vec![vec![c0[0].clone(), c1[0].clone()], vec![c0[1].clone(), c1[1].clone()]])
}

/// Distinct points of `P1` where the Hessian of `f` in the variables of
/// factor `1 - i` vanishes, at the first nonzero slice along factor `1 - i`.
fn hessian_roots(f: &MPoly, i: usize) -> Result<Option<Vec<Vec<Rational>>>> {
    let j = 1 - i;
    let second = |k: usize, l: usize| f.partial(j, k).and_then(|p| p.partial(j, l));
    let h = second(0, 0)?.mul(&second(1, 1)?)?.sub(&second(0, 1)?.mul(&second(0, 1)?)?)?;
    if h.is_zero() {
        return Ok(None);
    }
    let form = (0..)
        .map(|k| h.evaluate_partial(j, &[r(1), r(k)]))
        .find(|s| s.as_ref().map_or(true, |s| !s.is_zero()))
        .expect("a nonzero form has a nonzero slice")?;
    let d = form.degree().get(0);
    let dehom = UniPoly::new((0..=d).map(|k| form.coefficient(&[k, d - k])).collect());
    let roots: Vec<Rational> = dehom.rational_roots_mult().into_iter().map(|(t, _)| t).collect();
    let mut rest = dehom.squarefree_part();
    for t in &roots {
        rest = rest.div_rem(&UniPoly::new(vec![t.neg(), r(1)])).0;
    }
    if !rest.is_constant() {
        return Err(Error::UnsupportedExtension(format!(
            "the frame is defined over the splitting field of {}",
            rest.monic().display_with("t")
        )));
    }
    let mut pts: Vec<Vec<Rational>> = roots.into_iter().map(|t| primitive_vector(&[t, r(1)])).collect();
    if (dehom.degree().unwrap_or(0) as u32) < d {
        pts.push(vec![r(1), r(0)]);
    }
    Ok(Some(pts))
}

fn split_in_frame(f: &MPoly, g: &MPoly, px: Matrix, qy: Matrix) -> Result<Option<(SplitForm, SplitForm)>> {
    let changes = vec![FactorChange::new(0, px)?, FactorChange::new(1, qy)?];
    let ff = f.apply_changes(&changes)?;
    let gg = g.apply_changes(&changes)?;
    match (is_split_type_in_coords(&ff)?, is_split_type_in_coords(&gg)?) {
        (Some(mut a), Some(mut b)) => {
            a.changes = changes.clone();
            b.changes = changes;
            Ok(Some((a, b)))
        }
        _ => Ok(None),
    }
}

fn first_entry_one(u: Rational, v: Rational) -> [Rational; 2] {
    if u.is_zero() {
        [r(0), r(1)]
    } else {
        [r(1), v / u]
    }
}

fn vanishing_points(f: &MPoly, g: &MPoly, frame: &[FactorChange]) -> Result<Vec<([Rational; 2], [Rational; 2])>> {
    let (px, qy) = (&frame[0].matrix, &frame[1].matrix);
    let mut out = Vec::new();
    for (cx, cy) in [(1, 0), (0, 1)] {
        let x = [px[(0, cx)].clone(), px[(1, cx)].clone()];
        let y = [qy[(0, cy)].clone(), qy[(1, cy)].clone()];
        let pt = vec![x.to_vec(), y.to_vec()];
        let mut all = true;
        for p in [f, g] {
            for i in 0..2 {
                all &= p.partials(i)?.iter().all(|d| d.evaluate(&pt).is_zero());
            }
        }
        if all {
            out.push((x, y));
        }
    }
    Ok(out)
}

/// Recovers coordinates in which `f` and `g` are both of split type.
///
/// `Ok(None)` when the pair is not split in any frame defined over `Q`
/// that the procedure reaches; `UnsupportedExtension` when the frame needs
/// an irrational field.
pub fn recover_split_normal_form(f: &MPoly, g: &MPoly) -> Result<Option<SplitRecovery>> {
    let (a, b) = p1xp1_degree(f)?;
    if g.shape() != f.shape() || g.degree() != f.degree() {
        return Err(Error::ShapeMismatch("f and g must have the same degree".into()));
    }
    if f.is_zero() || g.is_zero() {
        return Err(Error::InvalidInput("the zero polynomial is not a divisor".into()));
    }
    if a < 2 || b < 2 {
        return Err(Error::HypothesisViolated(format!("recovery needs degree at least (2, 2), got ({a}, {b})")));
    }
    for i in 0..2 {
        let (jf, jg) = (jacobian_space(f, i)?, jacobian_space(g, i)?);
        if !span_equal(&jf, &jg)? {
            return Err(Error::HypothesisViolated(format!("the Jacobian spaces of factor {} differ", i + 1)));
        }
        if jf.dim() < 2 {
            return Err(Error::HypothesisViolated(format!(
                "the Jacobian space of factor {} has dimension {}",
                i + 1,
                jf.dim()
            )));
        }
    }
    let (Some(nx), Some(ny)) = (partial_transfer(f, g, 0)?, partial_transfer(f, g, 1)?) else {
        return Ok(None);
    };

    let scalar = |m: &Matrix| m[(0, 1)].is_zero() && m[(1, 0)].is_zero() && m[(0, 0)] == m[(1, 1)];
    let found = if scalar(&nx) {
        // g ∝ f: the frame is where the Hessians degenerate
        let (Some(xs), Some(ys)) = (hessian_roots(f, 0)?, hessian_roots(f, 1)?) else {
            return Ok(None);
        };
        if xs.len() != 2 || ys.len() != 2 {
            return Ok(None);
        }
        let px = column_matrix(&xs[0], &xs[1]);
        match split_in_frame(f, g, px.clone(), column_matrix(&ys[0], &ys[1]))? {
            Some(forms) => Some((forms, None)),
            None => split_in_frame(f, g, px, column_matrix(&ys[1], &ys[0]))?.map(|forms| (forms, None)),
        }
    } else {
        let (Some(ex), Some(ey)) = (eigen_frame(&nx.transpose())?, eigen_frame(&ny.transpose())?) else {
            return Ok(None);
        };
        if ex[0].0 != ey[0].0 || ex[1].0 != ey[1].0 {
            return Ok(None);
        }
        let mu = ex[0].0.clone();
        split_in_frame(f, g, column_matrix(&ex[0].1, &ex[1].1), column_matrix(&ey[0].1, &ey[1].1))?
            .map(|forms| (forms, Some(mu)))
    };
    let Some(((f_form, g_form), mu)) = found else {
        return Ok(None);
    };
    let lambda = (g_form.v.clone() / g_form.u.clone()) / (f_form.v.clone() / f_form.u.clone());
    let singular_member = match mu {
        Some(mu) => {
            let w = g.combine(&r(1), f, &mu.neg())?;
            Some((first_entry_one(mu.neg(), r(1)), w))
        }
        None => None,
    };
    let singular_points = vanishing_points(f, g, &f_form.changes)?;
    Ok(Some(SplitRecovery { f_form, g_form, lambda, singular_member, singular_points }))
}
