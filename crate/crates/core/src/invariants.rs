//! Numerical invariants: Chern classes and Euler characteristics on the
//! quadric surface `Q = P1 x P1`, splitting data of logarithmic bundles, and
//! line-bundle / tangent-bundle cohomology on products of projective spaces.
//!
//! Intersection numbers on `Q` use `h1² = h2² = 0`, `h1·h2 = 1`, so the
//! product of classes `(p, q)` and `(p', q')` is `pq' + qp'`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::mpoly::{MultiDegree, Shape};

/// Rank and Chern classes of a sheaf on `Q`; `c1` is a bidegree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct LogChern {
    pub rank: i64,
    pub c1: (i64, i64),
    pub c2: i64,
}

impl LogChern {
    pub fn line_bundle(p: i64, q: i64) -> Self {
        LogChern { rank: 1, c1: (p, q), c2: 0 }
    }

    /// Chern data of a direct sum.
    pub fn direct_sum(&self, other: &LogChern) -> LogChern {
        LogChern {
            rank: self.rank + other.rank,
            c1: (self.c1.0 + other.c1.0, self.c1.1 + other.c1.1),
            c2: self.c2 + other.c2 + dot(self.c1, other.c1),
        }
    }

    /// Chern data of `M / K` for a short exact sequence `0 → K → M → E → 0`.
    pub fn quotient(middle: &LogChern, kernel: &LogChern) -> LogChern {
        let c1 = (middle.c1.0 - kernel.c1.0, middle.c1.1 - kernel.c1.1);
        LogChern { rank: middle.rank - kernel.rank, c1, c2: middle.c2 - kernel.c2 - dot(kernel.c1, c1) }
    }
}

/// Intersection pairing of two classes on `Q`.
pub fn dot(x: (i64, i64), y: (i64, i64)) -> i64 {
    x.0 * y.1 + x.1 * y.0
}

/// Bidegree `(a, b)` of a curve on `Q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CurveClass {
    pub a: u32,
    pub b: u32,
}

impl CurveClass {
    pub fn new(a: u32, b: u32) -> Result<Self> {
        if a == 0 && b == 0 {
            return Err(Error::InvalidInput("curve class (0, 0) is not a curve".into()));
        }
        Ok(CurveClass { a, b })
    }

    /// Arithmetic genus `(a-1)(b-1)` by adjunction.
    pub fn genus(&self) -> i64 {
        (self.a as i64 - 1) * (self.b as i64 - 1)
    }

    pub fn is_ruling_line(&self) -> bool {
        matches!((self.a, self.b), (1, 0) | (0, 1))
    }
}

fn binom(n: i64, k: i64) -> i64 {
    if k < 0 || n < k {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1i64, |acc, i| acc * (n - i) / (i + 1))
}

/// `c1, c2` of `E(s, t)` from those of `E`.
pub fn twist_chern(e: &LogChern, s: i64, t: i64) -> LogChern {
    let (a, b) = e.c1;
    let r = e.rank;
    LogChern { rank: r, c1: (a + r * s, b + r * t), c2: e.c2 + (r - 1) * (a * t + b * s) + 2 * s * t * binom(r, 2) }
}

/// Riemann–Roch on `Q`: `χ(E) = (a+1)(b+1) + r − c − 1`.
pub fn euler_char(e: &LogChern) -> i64 {
    (e.c1.0 + 1) * (e.c1.1 + 1) + e.rank - e.c2 - 1
}

/// Chern data of `Ω¹_Q(log D)` for an arrangement of smooth curves.
pub fn log_chern(arr: &[CurveClass]) -> Result<LogChern> {
    if arr.is_empty() {
        return Err(Error::InvalidInput("arrangement must be non-empty".into()));
    }
    let alpha: i64 = arr.iter().map(|c| c.a as i64).sum();
    let beta: i64 = arr.iter().map(|c| c.b as i64).sum();
    let self_terms: i64 = arr.iter().map(|c| 2 * c.a as i64 * c.b as i64).sum();
    let mut cross = 0;
    for i in 0..arr.len() {
        for j in i + 1..arr.len() {
            cross += dot((arr[i].a as i64, arr[i].b as i64), (arr[j].a as i64, arr[j].b as i64));
        }
    }
    Ok(LogChern { rank: 2, c1: (alpha - 2, beta - 2), c2: 4 - 2 * alpha - 2 * beta + self_terms + cross })
}

/// `Ω¹_Q(log D) ≅ O(a−2, 0) ⊕ O(0, b−2)` for `a` lines of class `(1,0)` and
/// `b` of class `(0,1)`.
pub fn line_arrangement_splitting(a: u32, b: u32) -> Result<((i64, i64), (i64, i64))> {
    if a + b == 0 {
        return Err(Error::InvalidInput("need at least one line".into()));
    }
    Ok(((a as i64 - 2, 0), (0, b as i64 - 2)))
}

/// Whether `Ω¹_Q(log D)` is ACM: only for ruling-line arrangements with
/// `1 ≤ #(1,0)-lines ≤ 3` and `1 ≤ #(0,1)-lines ≤ 3`.
pub fn is_acm_q2(arr: &[CurveClass]) -> bool {
    if !arr.iter().all(CurveClass::is_ruling_line) {
        return false;
    }
    let a = arr.iter().filter(|c| c.a == 1).count();
    let b = arr.len() - a;
    (1..=3).contains(&a) && (1..=3).contains(&b)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ResidueCheck {
    pub lhs: i64,
    pub rhs: i64,
    pub equal: bool,
}

/// Compares `χ(Ω¹_Q(log D))` with `χ(Ω¹_Q) + Σ χ(O_{D_i})` from the residue
/// sequence, where `χ(Ω¹_Q) = −2` and `χ(O_C) = 1 − g(C)`.
pub fn residue_euler_check(arr: &[CurveClass]) -> Result<ResidueCheck> {
    let lhs = euler_char(&log_chern(arr)?);
    let rhs = -2 + arr.iter().map(|c| 1 - c.genus()).sum::<i64>();
    Ok(ResidueCheck { lhs, rhs, equal: lhs == rhs })
}

/// `Ω¹_{P^n}(log H)` for `m` hyperplanes in general position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum HyperplaneLogBundle {
    /// `O^{trivial} ⊕ O(−1)^{minus_one}`.
    Split { trivial: usize, minus_one: usize },
    /// `T P^n(−1)`.
    TangentTwist { n: usize },
    /// `0 → O(−1)^{kernel} → O^{middle} → Ω¹(log H) → 0`.
    Steiner { kernel: usize, middle: usize },
}

pub fn hyperplane_log_splitting(n: usize, m: usize) -> Result<HyperplaneLogBundle> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidInput("need n >= 1 and m >= 1".into()));
    }
    Ok(if m <= n + 1 {
        HyperplaneLogBundle::Split { trivial: m - 1, minus_one: n - m + 1 }
    } else if m == n + 2 {
        HyperplaneLogBundle::TangentTwist { n }
    } else {
        HyperplaneLogBundle::Steiner { kernel: m - n - 1, middle: m - 1 }
    })
}

/// A term of a short exact sequence on `Q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum SequenceTerm {
    /// `⊕ O_Q(k)^{mult}` over the listed `(k, mult)` with `O_Q(k) = O(k, k)`.
    Sum { summands: Vec<(i64, usize)> },
    /// `T P^3(−1)` restricted to `Q`.
    RestrictedTangentTwist,
}

impl SequenceTerm {
    fn sum(summands: &[(i64, usize)]) -> Self {
        SequenceTerm::Sum { summands: summands.iter().copied().filter(|s| s.1 > 0).collect() }
    }

    pub fn chern(&self) -> LogChern {
        match self {
            SequenceTerm::Sum { summands } => summands
                .iter()
                .flat_map(|&(k, mult)| std::iter::repeat_n(LogChern::line_bundle(k, k), mult))
                .fold(LogChern { rank: 0, c1: (0, 0), c2: 0 }, |acc, l| acc.direct_sum(&l)),
            // from 0 → O(−1) → O^4 → TP³(−1) → 0 restricted to Q
            SequenceTerm::RestrictedTangentTwist => {
                LogChern::quotient(&LogChern { rank: 4, c1: (0, 0), c2: 0 }, &LogChern::line_bundle(-1, -1))
            }
        }
    }

    pub fn euler_char(&self) -> i64 {
        euler_char(&self.chern())
    }
}

/// `0 → kernel → middle → Ω¹_Q(log D) → 0` for `m` hyperplane sections.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SectionSequence {
    pub m: usize,
    pub kernel: SequenceTerm,
    pub middle: SequenceTerm,
    /// Chern data of the quotient.
    pub quotient: LogChern,
    pub quotient_euler_char: i64,
    /// False when the bundle is known not to admit this sequence.
    pub valid: bool,
    pub note: Option<String>,
}

pub fn q2_section_sequences(m: usize, tame: bool) -> Result<SectionSequence> {
    if m == 0 {
        return Err(Error::InvalidInput("need at least one section".into()));
    }
    let (kernel, middle) = match m {
        1..=4 => (SequenceTerm::sum(&[(-2, 1)]), SequenceTerm::sum(&[(0, m - 1), (-1, 4 - m)])),
        5 => (SequenceTerm::sum(&[(-2, 1)]), SequenceTerm::RestrictedTangentTwist),
        _ => (SequenceTerm::sum(&[(-2, 1), (-1, m - 4)]), SequenceTerm::sum(&[(0, m - 1)])),
    };
    let quotient = LogChern::quotient(&middle.chern(), &kernel.chern());
    let (valid, note) = if m == 4 && !tame {
        (false, Some("sequence invalid: the bundle is not globally generated for a non-tame configuration".to_string()))
    } else {
        (true, None)
    };
    Ok(SectionSequence { m, kernel, middle, quotient, quotient_euler_char: euler_char(&quotient), valid, note })
}

/// `h^q(O_{P^n}(t))` for `q = 0..=n`.
pub fn h_line_pn(n: usize, t: i64) -> Vec<i64> {
    let n_i = n as i64;
    let mut h = vec![0; n + 1];
    if t >= 0 {
        h[0] = binom(n_i + t, n_i);
    }
    if t < -n_i {
        h[n] += binom(-t - 1, n_i);
    }
    h
}

/// `h^q(T P^n(t))` for `q = 0..=n`, from the Euler sequence
/// `0 → O(t) → O(t+1)^{n+1} → T(t) → 0`.
pub fn h_tangent_pn(n: usize, t: i64) -> Vec<i64> {
    if n == 1 {
        return h_line_pn(1, t + 2);
    }
    let a = h_line_pn(n, t);
    let b = h_line_pn(n, t + 1);
    let mut h = vec![0; n + 1];
    // H^1(O(t)) = 0 for n ≥ 2, so H^0 is the plain difference.
    h[0] = (n as i64 + 1) * b[0] - a[0];
    // H^{n-1}(T(t)) = ker(H^n(O(t)) → H^n(O(t+1))^{n+1}), dual to the cokernel
    // of multiplication by the coordinates into degree −t−n−1, non-zero only in degree 0.
    let kernel = i64::from(t == -(n as i64) - 1);
    h[n - 1] += kernel;
    h[n] = (n as i64 + 1) * b[n] - a[n] + kernel;
    h
}

/// Cohomology of an external tensor product from its factors (Künneth).
fn kunneth(factors: &[Vec<i64>]) -> Vec<i64> {
    factors.iter().fold(vec![1], |acc, f| {
        let mut out = vec![0; acc.len() + f.len() - 1];
        for (i, x) in acc.iter().enumerate() {
            for (j, y) in f.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    })
}

/// All cohomology dimensions of `TX(−a)` on `X = P^{n_1} × ⋯ × P^{n_s}`.
pub fn tangent_twist_cohomology(shape: &Shape, a: &MultiDegree) -> Vec<i64> {
    let dims = shape.dims();
    let total: usize = dims.iter().sum();
    let mut h = vec![0; total + 1];
    for i in 0..dims.len() {
        let factors: Vec<Vec<i64>> = (0..dims.len())
            .map(|k| {
                let t = -(a.get(k) as i64);
                if k == i {
                    h_tangent_pn(dims[k], t)
                } else {
                    h_line_pn(dims[k], t)
                }
            })
            .collect();
        for (q, v) in kunneth(&factors).into_iter().enumerate() {
            h[q] += v;
        }
    }
    h
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct VanishingReport {
    pub h1: i64,
    pub vanishes: bool,
}

/// `h¹(TX(−a))`, the hypothesis gating the Jacobian-space distinguisher.
pub fn bott_kunneth_h1_tangent(shape: &Shape, a: &MultiDegree) -> Result<VanishingReport> {
    if a.as_slice().len() != shape.factors() {
        return Err(Error::ShapeMismatch("degree length differs from the number of factors".into()));
    }
    let h = tangent_twist_cohomology(shape, a);
    let h1 = h.get(1).copied().unwrap_or(0);
    Ok(VanishingReport { h1, vanishes: h1 == 0 })
}

/// One row of a cohomology table: `h^q` for `q = 0..` of a sheaf on a space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomRow {
    pub space: String,
    pub sheaf: String,
    pub twist: Vec<i64>,
    pub h: Vec<i64>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CohomTable {
    pub rows: Vec<CohomRow>,
}

impl CohomTable {
    /// The per-factor inputs and the total for `TX(−a)`.
    pub fn tangent_twist(shape: &Shape, a: &MultiDegree) -> CohomTable {
        let mut rows = Vec::new();
        for (k, &n) in shape.dims().iter().enumerate() {
            let t = -(a.get(k) as i64);
            let space = format!("P{n}");
            rows.push(CohomRow { space: space.clone(), sheaf: "O".into(), twist: vec![t], h: h_line_pn(n, t) });
            rows.push(CohomRow { space, sheaf: "T".into(), twist: vec![t], h: h_tangent_pn(n, t) });
        }
        let space = shape.dims().iter().map(|n| format!("P{n}")).collect::<Vec<_>>().join("xP");
        rows.push(CohomRow {
            space,
            sheaf: "TX".into(),
            twist: a.as_slice().iter().map(|&x| -(x as i64)).collect(),
            h: tangent_twist_cohomology(shape, a),
        });
        CohomTable { rows }
    }
}

/// `(h⁰, h¹, h²)` of `O_Q(p, q)`.
pub fn h_line_q2(p: i64, q: i64) -> [i64; 3] {
    let h = kunneth(&[h_line_pn(1, p), h_line_pn(1, q)]);
    [h[0], h[1], h[2]]
}

fn h1_p1(d: i64) -> i64 {
    (-d - 1).max(0)
}

/// `h¹(O_{P¹}(d))` for the twist restricted to a rational curve of class
/// `(a_c, b_c)`, with restriction degree `p·a_c + q·b_c`.
pub fn ext_dim_q2(curve: &CurveClass, twist: (i64, i64)) -> Result<i64> {
    if !(curve.a == 1 || curve.b == 1) {
        return Err(Error::UnsupportedClass(curve.a, curve.b));
    }
    let d = twist.0 * curve.a as i64 + twist.1 * curve.b as i64;
    Ok(h1_p1(d))
}

/// `h¹(I_Z(p, q))` for a reduced 0-dimensional `Z` of the given length, when
/// `O_Q(p, q)` has no sections (so `Z` imposes nothing).
pub fn h1_ideal_of_points(twist: (i64, i64), points: usize) -> Result<i64> {
    let [h0, h1, _] = h_line_q2(twist.0, twist.1);
    if h0 != 0 {
        return Err(Error::InvalidInput(
            "the twist has sections; the answer depends on the position of the points".into(),
        ));
    }
    Ok(h1 + points as i64)
}
