use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::Rational;

/// Arithmetic in the prime field `F_p` for a word-sized prime `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fp {
    p: u64,
}

impl Fp {
    /// `p` must be prime and below 2^31 so products fit in a `u64`.
    pub fn new(p: u64) -> Self {
        assert!((2..(1 << 31)).contains(&p), "prime out of range");
        Fp { p }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn int(&self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.p)).to_u64().unwrap()
    }

    /// Image of a rational number; `None` when `p` divides the denominator.
    pub fn reduce(&self, q: &Rational) -> Option<u64> {
        let d = self.int(q.denom());
        (d != 0).then(|| self.mul(self.int(q.numer()), self.inv(d)))
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Inverse of a non-zero element by Fermat.
    pub fn inv(&self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero in F_p");
        self.pow(a, self.p - 2)
    }

    /// Rank of a matrix over `F_p` (rows consumed).
    pub fn rank(&self, mut m: Vec<Vec<u64>>) -> usize {
        let cols = m.first().map_or(0, Vec::len);
        let mut r = 0;
        for c in 0..cols {
            let Some(piv) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
            m.swap(r, piv);
            let inv = self.inv(m[r][c]);
            for j in c..cols {
                m[r][j] = self.mul(m[r][j], inv);
            }
            for i in 0..m.len() {
                if i != r && m[i][c] != 0 {
                    let f = m[i][c];
                    for j in c..cols {
                        let v = self.mul(f, m[r][j]);
                        m[i][j] = self.sub(m[i][j], v);
                    }
                }
            }
            r += 1;
        }
        r
    }
}
