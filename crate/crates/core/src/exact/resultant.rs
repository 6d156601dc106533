use super::ring::Ring;
use super::UniPoly;

/// Fraction-free (Bareiss) determinant over an integral domain.
pub fn bareiss_det<K: Ring>(mut m: Vec<Vec<K>>) -> K {
    let n = m.len();
    if n == 0 {
        return K::one();
    }
    let mut negate = false;
    let mut prev = K::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return K::zero();
            };
            m.swap(k, p);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = v.exact_div(&prev);
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        d.neg()
    } else {
        d
    }
}

/// Sylvester matrix of `p` and `q` read with formal degrees `dp`, `dq`
/// (coefficients above the true degree are zero).
pub fn sylvester_matrix<K: Ring>(p: &UniPoly<K>, q: &UniPoly<K>, dp: usize, dq: usize) -> Vec<Vec<K>> {
    let n = dp + dq;
    let mut m = vec![vec![K::zero(); n]; n];
    for i in 0..dq {
        for k in 0..=dp {
            m[i][i + k] = p.coeff(dp - k);
        }
    }
    for i in 0..dp {
        for k in 0..=dq {
            m[dq + i][i + k] = q.coeff(dq - k);
        }
    }
    m
}

/// Resultant with respect to formal degrees `dp ≥ deg p`, `dq ≥ deg q`.
///
/// For bivariate forms this is the homogeneous resultant, which also sees
/// common roots at infinity.
pub fn sylvester_resultant_formal<K: Ring>(p: &UniPoly<K>, q: &UniPoly<K>, dp: usize, dq: usize) -> K {
    assert!(p.degree().is_none_or(|d| d <= dp) && q.degree().is_none_or(|d| d <= dq));
    if dp + dq == 0 {
        return K::one();
    }
    bareiss_det(sylvester_matrix(p, q, dp, dq))
}

/// Resultant of `p` and `q` with respect to their actual degrees.
///
/// A zero polynomial has resultant zero with anything.
pub fn sylvester_resultant<K: Ring>(p: &UniPoly<K>, q: &UniPoly<K>) -> K {
    match (p.degree(), q.degree()) {
        (Some(dp), Some(dq)) => sylvester_resultant_formal(p, q, dp, dq),
        _ => K::zero(),
    }
}
