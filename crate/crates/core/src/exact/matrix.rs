use std::fmt;
use std::ops::{Index, IndexMut};

use num_traits::{One, Zero};

use super::{rat_int, Rational};
use crate::error::{Error, Result};

/// Dense row-major matrix of rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

/// Output of [`Matrix::rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// Panics if the rows have different lengths.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat_int(x)).collect()).collect())
    }

    pub fn diag(entries: &[Rational]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn col(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len(), "matrix-vector dimension mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// `vᵀ M w`.
    pub fn bilinear(&self, v: &[Rational], w: &[Rational]) -> Rational {
        v.iter().zip(self.mul_vec(w)).fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    /// Reduced row echelon form by Gauss–Jordan elimination.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].recip();
            for j in c..m.cols {
                let v = &m[(r, j)] * &inv;
                m[(r, j)] = v;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    if m[(r, j)].is_zero() {
                        continue;
                    }
                    let v = &f * &m[(r, j)];
                    m[(i, j)] -= v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: m, rank: r, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// The first `k` rows as a new matrix.
    pub fn top_rows(&self, k: usize) -> Self {
        Matrix { rows: k, cols: self.cols, data: self.data[..k * self.cols].to_vec() }
    }

    /// Basis of the right null space `{x : M x = 0}`, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let Rref { matrix, pivots, .. } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -matrix[(r, f)].clone();
                }
                v
            })
            .collect()
    }

    /// Determinant by fraction-based Gaussian elimination.
    pub fn det(&self) -> Rational {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let mut m = self.clone();
        let n = self.rows;
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Rational::zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m[(c, c)].clone();
            det *= &piv;
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = &m[(i, c)] / &piv;
                for j in c..n {
                    let v = &f * &m[(c, j)];
                    m[(i, j)] -= v;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Result<Matrix> {
        assert!(self.is_square(), "inverse of a non-square matrix");
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Rational::one();
        }
        let red = aug.rref();
        if red.pivots.len() < n || red.pivots[n - 1] != n - 1 {
            return Err(Error::SingularMatrix);
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = red.matrix[(i, n + j)].clone();
            }
        }
        Ok(inv)
    }

    /// Inverse of a symmetric matrix (rejects non-symmetric input).
    pub fn invert_symmetric(&self) -> Result<Matrix> {
        if !self.is_symmetric() {
            return Err(Error::InvalidInput("matrix is not symmetric".into()));
        }
        self.inverse()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use proptest::prelude::*;

    /// Rank by searching for the largest non-vanishing minor (Laplace expansion).
    fn rank_by_minors(m: &Matrix) -> usize {
        fn laplace(m: &Matrix, rows: &[usize], cols: &[usize]) -> Rational {
            if rows.len() == 1 {
                return m[(rows[0], cols[0])].clone();
            }
            let mut acc = Rational::zero();
            for (k, &c) in cols.iter().enumerate() {
                let x = &m[(rows[0], c)];
                if x.is_zero() {
                    continue;
                }
                let sub: Vec<usize> = cols.iter().copied().filter(|&cc| cc != c).collect();
                let t = x * laplace(m, &rows[1..], &sub);
                if k % 2 == 0 {
                    acc += t;
                } else {
                    acc -= t;
                }
            }
            acc
        }
        fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
            if k == 0 {
                return vec![vec![]];
            }
            if n < k {
                return vec![];
            }
            let mut out = subsets(n - 1, k);
            for mut s in subsets(n - 1, k - 1) {
                s.push(n - 1);
                out.push(s);
            }
            out
        }
        for k in (1..=m.rows().min(m.cols())).rev() {
            for rs in subsets(m.rows(), k) {
                for cs in subsets(m.cols(), k) {
                    if !laplace(m, &rs, &cs).is_zero() {
                        return k;
                    }
                }
            }
        }
        0
    }

    fn arb_matrix(max: usize) -> impl Strategy<Value = Matrix> {
        (1..=max, 1..=max).prop_flat_map(|(r, c)| {
            proptest::collection::vec((-3i64..=3, 1i64..=3), r * c).prop_map(move |v| {
                Matrix::from_rows(v.chunks(c).map(|row| row.iter().map(|&(n, d)| rat(n, d)).collect()).collect())
            })
        })
    }

    #[test]
    fn rref_identity() {
        let i = Matrix::identity(3);
        let r = i.rref();
        assert_eq!(r.matrix, i);
        assert_eq!(r.rank, 3);
        assert_eq!(r.pivots, vec![0, 1, 2]);
    }

    #[test]
    fn rref_proportional_rows() {
        let r = Matrix::from_i64(&[&[1, 2], &[2, 4]]).rref();
        assert_eq!(r.matrix, Matrix::from_i64(&[&[1, 2], &[0, 0]]));
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivots, vec![0]);
    }

    #[test]
    fn rref_random_5x8_matches_minor_rank() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for trial in 0..20 {
            let rows: Vec<Vec<Rational>> =
                (0..5).map(|_| (0..8).map(|_| rat(rng.gen_range(-4..=4), rng.gen_range(1..=4))).collect()).collect();
            let mut m = Matrix::from_rows(rows);
            if trial % 3 == 0 {
                // force a dependency: row 4 = row 0 + 2 row 1
                for j in 0..8 {
                    m[(4, j)] = &m[(0, j)] + rat_int(2) * &m[(1, j)];
                }
            }
            assert_eq!(m.rank(), rank_by_minors(&m));
        }
    }

    #[test]
    fn invert_identity() {
        let i = Matrix::identity(4);
        assert_eq!(i.invert_symmetric().unwrap(), i);
    }

    #[test]
    fn invert_segre_matrix() {
        let h = rat(1, 2);
        let mut a = Matrix::zeros(4, 4);
        a[(0, 3)] = h.clone();
        a[(3, 0)] = h.clone();
        a[(1, 2)] = -h.clone();
        a[(2, 1)] = -h;
        let inv = a.invert_symmetric().unwrap();
        let mut expect = Matrix::zeros(4, 4);
        expect[(0, 3)] = rat_int(2);
        expect[(3, 0)] = rat_int(2);
        expect[(1, 2)] = rat_int(-2);
        expect[(2, 1)] = rat_int(-2);
        assert_eq!(inv, expect);
        assert_eq!(a.mul(&inv), Matrix::identity(4));
    }

    #[test]
    fn invert_singular() {
        let d = Matrix::diag(&[rat_int(1), rat_int(1), rat_int(0)]);
        assert_eq!(d.invert_symmetric(), Err(Error::SingularMatrix));
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let m = Matrix::from_i64(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 1, 0]]);
        let k = m.kernel();
        assert_eq!(k.len(), 2);
        for v in k {
            assert!(m.mul_vec(&v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn det_small() {
        assert_eq!(Matrix::from_i64(&[&[0, 1], &[1, 0]]).det(), rat_int(-1));
        assert_eq!(Matrix::from_i64(&[&[2, 1, 0], &[1, 2, 1], &[0, 1, 2]]).det(), rat_int(4));
    }

    proptest! {
        #[test]
        fn rref_is_idempotent(m in arb_matrix(6)) {
            let r = m.rref().matrix;
            prop_assert_eq!(r.rref().matrix, r);
        }

        #[test]
        fn rref_shape_invariants(m in arb_matrix(6)) {
            let Rref { matrix, rank, pivots } = m.rref();
            prop_assert!(pivots.windows(2).all(|w| w[0] < w[1]));
            for (i, &p) in pivots.iter().enumerate() {
                prop_assert!(matrix[(i, p)].is_one());
                for k in 0..matrix.rows() {
                    if k != i {
                        prop_assert!(matrix[(k, p)].is_zero());
                    }
                }
            }
            for i in rank..matrix.rows() {
                prop_assert!(matrix.row(i).iter().all(Zero::is_zero));
            }
        }

        #[test]
        fn rank_of_transpose(m in arb_matrix(8)) {
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn symmetric_inverse_multiplies_back(v in proptest::collection::vec(-5i64..=5, 10)) {
            // symmetric 4x4 from 10 upper-triangular entries
            let mut m = Matrix::zeros(4, 4);
            let mut it = v.into_iter();
            for i in 0..4 {
                for j in i..4 {
                    let x = rat_int(it.next().unwrap());
                    m[(i, j)] = x.clone();
                    m[(j, i)] = x;
                }
            }
            if let Ok(inv) = m.invert_symmetric() {
                prop_assert_eq!(inv.mul(&m), Matrix::identity(4));
                prop_assert!(inv.is_symmetric());
            } else {
                prop_assert!(m.det().is_zero());
            }
        }
    }
}
