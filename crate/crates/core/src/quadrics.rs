//! Quadric hypersurfaces stored as symmetric matrices: apolar points,
//! smoothness of hyperplane sections, singular members of conic pencils and
//! the splitting type of projected tangent bundles along conics.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{rational_from_json, rational_to_json, Field, Matrix, QuadExt, Rational, Ring, UniPoly};
use crate::mpoly::{MPoly, MultiDegree, Shape};

/// `Q = {xᵀAx = 0}` in `P^(n+1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quadric {
    matrix: Matrix,
}

fn r(n: i64) -> Rational {
    Rational::from_i64(n)
}

fn half() -> Rational {
    Rational::new(1.into(), 2.into())
}

/// Scales so that the first non-zero entry is 1.
fn canonical<K: Field>(v: Vec<K>) -> Vec<K> {
    match v.iter().find(|c| !c.is_zero()) {
        Some(lead) => {
            let inv = lead.inv().expect("non-zero");
            v.iter().map(|c| c.mul(&inv)).collect()
        }
        None => v,
    }
}

fn parse_vector(v: &Value, what: &str) -> Result<Vec<Rational>> {
    v.as_array()
        .ok_or_else(|| Error::InvalidInput(format!("{what}: expected an array")))?
        .iter()
        .map(|c| rational_from_json(c).ok_or_else(|| Error::InvalidInput(format!("{what}: bad entry {c}"))))
        .collect()
}

impl Quadric {
    pub fn new(matrix: Matrix) -> Result<Self> {
        if !matrix.is_square() || matrix.rows() < 2 {
            return Err(Error::InvalidInput("a quadric needs a square matrix of size >= 2".into()));
        }
        if !matrix.is_symmetric() {
            return Err(Error::InvalidInput("quadric matrix is not symmetric".into()));
        }
        Ok(Quadric { matrix })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::new(Matrix::from_i64(rows))
    }

    /// `x0² + ... + x_(n+1)²`.
    pub fn sum_of_squares(n: usize) -> Self {
        Quadric { matrix: Matrix::identity(n + 2) }
    }

    /// `x0 x3 - x1 x2`, the image of the Segre embedding of `P1 x P1`.
    pub fn segre() -> Self {
        let mut m = Matrix::zeros(4, 4);
        m[(0, 3)] = half();
        m[(3, 0)] = half();
        m[(1, 2)] = -half();
        m[(2, 1)] = -half();
        Quadric { matrix: m }
    }

    /// `n` for a quadric in `P^(n+1)`.
    pub fn dim(&self) -> usize {
        self.matrix.rows() - 2
    }

    /// Number of homogeneous coordinates, `n + 2`.
    pub fn size(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn is_smooth(&self) -> bool {
        !self.matrix.det().is_zero()
    }

    fn inverse(&self) -> Result<Matrix> {
        self.matrix.inverse()
    }

    /// `xᵀAx` over any field containing `Q`.
    pub fn value<K: Ring>(&self, x: &[K]) -> K {
        let n = self.size();
        let mut acc = K::zero();
        for i in 0..n {
            for j in 0..n {
                let a = &self.matrix[(i, j)];
                if !a.is_zero() {
                    acc = acc.add(&K::from_rational(a).mul(&x[i]).mul(&x[j]));
                }
            }
        }
        acc
    }

    /// `Tᵀ A T`: the quadric `{z : Tz ∈ Q}`.
    pub fn pull_back(&self, t: &Matrix) -> Result<Quadric> {
        if t.rows() != self.size() || !t.is_square() {
            return Err(Error::ShapeMismatch("change of coordinates has the wrong size".into()));
        }
        Ok(Quadric { matrix: t.transpose().mul(&self.matrix).mul(t) })
    }

    pub fn from_mpoly(f: &MPoly) -> Result<Self> {
        if f.shape().factors() != 1 || f.degree().get(0) != 2 {
            return Err(Error::ShapeMismatch("a quadric is a single-factor polynomial of degree 2".into()));
        }
        let n = f.shape().vars_in(0);
        let mut m = Matrix::zeros(n, n);
        for (e, c) in f.terms() {
            let idx: Vec<usize> = (0..n).flat_map(|i| std::iter::repeat_n(i, e[i] as usize)).collect();
            let (i, j) = (idx[0], idx[1]);
            if i == j {
                m[(i, i)] = c.clone();
            } else {
                m[(i, j)] = c * half();
                m[(j, i)] = c * half();
            }
        }
        Self::new(m)
    }

    pub fn to_mpoly(&self) -> MPoly {
        let n = self.size();
        let mut terms = Vec::new();
        for i in 0..n {
            for j in i..n {
                let c = if i == j { self.matrix[(i, i)].clone() } else { self.matrix[(i, j)].clone() * r(2) };
                let mut e = vec![0u32; n];
                e[i] += 1;
                e[j] += 1;
                terms.push((e, c));
            }
        }
        MPoly::new(Shape::new(vec![n - 1]).expect("n >= 2"), MultiDegree::new(vec![2]), terms).expect("valid terms")
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Vec<Value>> =
            self.matrix.to_rows().iter().map(|row| row.iter().map(rational_to_json).collect()).collect();
        json!({"dim": self.dim(), "matrix": rows})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let rows = v
            .get("matrix")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::InvalidInput("quadric JSON: missing matrix".into()))?;
        let rows: Vec<Vec<Rational>> =
            rows.iter().map(|row| parse_vector(row, "quadric JSON")).collect::<Result<_>>()?;
        if rows.iter().any(|row| row.len() != rows.len()) {
            return Err(Error::InvalidInput("quadric JSON: matrix is not square".into()));
        }
        let q = Self::new(Matrix::from_rows(rows))?;
        if let Some(d) = v.get("dim") {
            if d.as_u64() != Some(q.dim() as u64) {
                return Err(Error::InvalidInput(format!("quadric JSON: dim {d} does not match the matrix")));
            }
        }
        Ok(q)
    }
}

/// A hyperplane of `P^r` by its covector, first non-zero entry 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hyperplane {
    coeffs: Vec<Rational>,
}

impl Hyperplane {
    pub fn new(coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.iter().all(Ring::is_zero) {
            return Err(Error::InvalidInput("a hyperplane needs a non-zero covector".into()));
        }
        Ok(Hyperplane { coeffs: canonical(coeffs) })
    }

    pub fn from_i64(c: &[i64]) -> Result<Self> {
        Self::new(c.iter().map(|&x| r(x)).collect())
    }

    /// `x_i = 0` in `P^(len - 1)`.
    pub fn coordinate(i: usize, len: usize) -> Self {
        let mut c = vec![r(0); len];
        c[i] = r(1);
        Hyperplane { coeffs: c }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.coeffs.iter().zip(x).fold(r(0), |acc, (h, x)| acc + h * x).is_zero()
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.coeffs.iter().map(rational_to_json).collect())
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        Self::new(parse_vector(v, "hyperplane JSON")?)
    }
}

/// The point `A⁻¹h`, first non-zero coordinate 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApolarPoint {
    pub coords: Vec<Rational>,
}

fn check_len(q: &Quadric, v: &[Rational], what: &str) -> Result<()> {
    if v.len() != q.size() {
        return Err(Error::ShapeMismatch(format!(
            "{what} has {} coordinates, the quadric needs {}",
            v.len(),
            q.size()
        )));
    }
    Ok(())
}

/// The point whose polar hyperplane with respect to `q` is `h`.
pub fn apolar_point(q: &Quadric, h: &Hyperplane) -> Result<ApolarPoint> {
    check_len(q, h.coeffs(), "hyperplane")?;
    let p = q.inverse()?.mul_vec(h.coeffs());
    Ok(ApolarPoint { coords: canonical(p) })
}

/// The hyperplane `{yᵀAp = 0}`.
pub fn polar_hyperplane(q: &Quadric, p: &[Rational]) -> Result<Hyperplane> {
    check_len(q, p, "point")?;
    if p.iter().all(Ring::is_zero) {
        return Err(Error::ZeroPoint);
    }
    if !q.is_smooth() {
        return Err(Error::SingularMatrix);
    }
    Hyperplane::new(q.matrix.mul_vec(p))
}

/// Whether `Q ∩ H` is smooth, i.e. `hᵀA⁻¹h ≠ 0`.
pub fn section_is_smooth(q: &Quadric, h: &Hyperplane) -> Result<bool> {
    check_len(q, h.coeffs(), "hyperplane")?;
    let inv = q.inverse()?;
    Ok(!inv.bilinear(h.coeffs(), h.coeffs()).is_zero())
}

/// `c11·c1² + c12·c1·c2 + c22·c2²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangencyQuadratic {
    pub c11: Rational,
    pub c12: Rational,
    pub c22: Rational,
}

/// A projective root `(c1:c2)`, first non-zero entry 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangencyRoot {
    pub parameter: [QuadExt; 2],
    pub multiplicity: usize,
}

impl TangencyQuadratic {
    pub fn is_zero(&self) -> bool {
        self.c11.is_zero() && self.c12.is_zero() && self.c22.is_zero()
    }

    pub fn discriminant(&self) -> Rational {
        &self.c12 * &self.c12 - r(4) * &self.c11 * &self.c22
    }

    pub fn eval(&self, c: &[QuadExt; 2]) -> QuadExt {
        let k = |q: &Rational| QuadExt::rational(q.clone());
        k(&self.c11)
            .mul(&c[0])
            .mul(&c[0])
            .add(&k(&self.c12).mul(&c[0]).mul(&c[1]))
            .add(&k(&self.c22).mul(&c[1]).mul(&c[1]))
    }

    /// Roots with multiplicity, `(1:t)` by increasing `t` and then `(0:1)`;
    /// `None` when the form vanishes identically.
    pub fn roots(&self) -> Option<Vec<TangencyRoot>> {
        if self.is_zero() {
            return None;
        }
        let one = QuadExt::rational(r(1));
        let at_infinity = if !self.c22.is_zero() {
            0
        } else if !self.c12.is_zero() {
            1
        } else {
            2
        };
        let p = UniPoly::new(vec![self.c11.clone(), self.c12.clone(), self.c22.clone()]);
        let mut out: Vec<TangencyRoot> = p
            .rational_roots_mult()
            .into_iter()
            .map(|(t, m)| TangencyRoot { parameter: [one.clone(), QuadExt::rational(t)], multiplicity: m })
            .collect();
        if out.is_empty() && p.degree() == Some(2) {
            let [t1, t2] = p.quadratic_roots().expect("degree 2");
            let mut ts = [t1, t2];
            ts.sort_by_key(QuadExt::sort_key);
            out.extend(ts.into_iter().map(|t| TangencyRoot { parameter: [one.clone(), t], multiplicity: 1 }));
        }
        if at_infinity > 0 {
            out.push(TangencyRoot { parameter: [QuadExt::rational(r(0)), one.clone()], multiplicity: at_infinity });
        }
        Some(out)
    }
}

fn independent(h1: &Hyperplane, h2: &Hyperplane) -> bool {
    Matrix::from_rows(vec![h1.coeffs().to_vec(), h2.coeffs().to_vec()]).rank() == 2
}

/// `(c1 h1 + c2 h2)ᵀ A⁻¹ (c1 h1 + c2 h2)`; its roots are the members of the
/// pencil whose hyperplane is tangent to `q`.
pub fn pencil_tangency_quadratic(q: &Quadric, h1: &Hyperplane, h2: &Hyperplane) -> Result<TangencyQuadratic> {
    check_len(q, h1.coeffs(), "hyperplane")?;
    check_len(q, h2.coeffs(), "hyperplane")?;
    let inv = q.inverse()?;
    if !independent(h1, h2) {
        return Err(Error::DependentHyperplanes);
    }
    let (a, b) = (h1.coeffs(), h2.coeffs());
    Ok(TangencyQuadratic { c11: inv.bilinear(a, a), c12: inv.bilinear(a, b) * r(2), c22: inv.bilinear(b, b) })
}

/// The singular point of a singular member of a conic pencil.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConicPoint {
    pub parameter: [QuadExt; 2],
    /// `A⁻¹(c1 h1 + c2 h2)`, first non-zero coordinate 1.
    pub point: Vec<QuadExt>,
    /// 2 when the pencil is tangent to the dual quadric: the two singular
    /// members coincide.
    pub multiplicity: usize,
}

/// Singular points of the singular members of the pencil of hyperplane
/// sections of a quadric surface spanned by `h1` and `h2`.
pub fn singular_conic_points(q: &Quadric, h1: &Hyperplane, h2: &Hyperplane) -> Result<Vec<ConicPoint>> {
    if q.dim() != 2 {
        return Err(Error::ShapeMismatch(format!(
            "conic pencils live on a quadric surface, got dimension {}",
            q.dim()
        )));
    }
    let tq = pencil_tangency_quadratic(q, h1, h2)?;
    let roots =
        tq.roots().ok_or_else(|| Error::HypothesisViolated("every member of the pencil is a singular conic".into()))?;
    let inv = q.inverse()?;
    let (p1, p2) = (inv.mul_vec(h1.coeffs()), inv.mul_vec(h2.coeffs()));
    Ok(roots
        .into_iter()
        .map(|root| {
            let [c1, c2] = &root.parameter;
            let point = p1
                .iter()
                .zip(&p2)
                .map(|(a, b)| c1.mul(&QuadExt::rational(a.clone())).add(&c2.mul(&QuadExt::rational(b.clone()))))
                .collect();
            ConicPoint { parameter: root.parameter, point: canonical(point), multiplicity: root.multiplicity }
        })
        .collect())
}

/// Splitting type on a smooth conic `C = Q ∩ M` of the pull-back of
/// `TP^n(-1)` along the projection of `Q` from `center`: `(1,1,0,...,0)`
/// when the center is off the plane `M`, `(2,0,...,0)` when it lies on it.
pub fn conic_splitting_type(q: &Quadric, center: &[Rational], plane: &[Vec<Rational>; 3]) -> Result<Vec<u32>> {
    check_len(q, center, "center")?;
    for p in plane {
        check_len(q, p, "plane point")?;
    }
    if !q.is_smooth() {
        return Err(Error::SingularMatrix);
    }
    if center.iter().all(Ring::is_zero) {
        return Err(Error::ZeroPoint);
    }
    if q.value(center).is_zero() {
        return Err(Error::CenterOnQuadric);
    }
    let m = Matrix::from_rows(plane.to_vec());
    if m.rank() < 3 {
        return Err(Error::DegeneratePlane("the three points do not span a plane".into()));
    }
    // Gram matrix of the conic in the plane
    let gram = m.mul(&q.matrix).mul(&m.transpose());
    if gram.det().is_zero() {
        return Err(Error::DegeneratePlane("the plane section is not a smooth conic".into()));
    }
    let mut rows = plane.to_vec();
    rows.push(center.to_vec());
    let n = q.dim();
    let mut out = vec![0; n];
    if Matrix::from_rows(rows).rank() == 3 {
        out[0] = 2;
    } else {
        out[0] = 1;
        out[1] = 1;
    }
    Ok(out)
}

/// `P1 x P1` embedded onto the quadric `TᵀST`: a point `z` lies on it iff
/// `Tz` lies on `x0x3 - x1x2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SegreModel {
    t: Matrix,
    t_inv: Matrix,
}

impl SegreModel {
    pub fn new(t: Matrix) -> Result<Self> {
        if t.rows() != 4 || !t.is_square() {
            return Err(Error::ShapeMismatch("the Segre model needs a 4x4 change of coordinates".into()));
        }
        let t_inv = t.inverse()?;
        Ok(SegreModel { t, t_inv })
    }

    pub fn standard() -> Self {
        SegreModel { t: Matrix::identity(4), t_inv: Matrix::identity(4) }
    }

    /// `TᵀST`.
    pub fn quadric(&self) -> Quadric {
        Quadric::segre().pull_back(&self.t).expect("4x4")
    }

    /// The point of the quadric over `(x, y)`.
    pub fn point(&self, x: &[Rational; 2], y: &[Rational; 2]) -> Vec<Rational> {
        let s = [&x[0] * &y[0], &x[0] * &y[1], &x[1] * &y[0], &x[1] * &y[1]];
        self.t_inv.mul_vec(&s)
    }

    /// The bidegree-(1,1) form cutting `Q ∩ H` on `P1 x P1`.
    pub fn section_form(&self, h: &Hyperplane) -> Result<MPoly> {
        if h.len() != 4 {
            return Err(Error::ShapeMismatch("a hyperplane of P3 needs 4 coordinates".into()));
        }
        let hs = self.t_inv.transpose().mul_vec(h.coeffs());
        let exps = [[1, 0, 1, 0], [1, 0, 0, 1], [0, 1, 1, 0], [0, 1, 0, 1]];
        MPoly::new(Shape::p1xp1(), MultiDegree::new(vec![1, 1]), exps.iter().zip(hs).map(|(e, c)| (e.to_vec(), c)))
    }
}
