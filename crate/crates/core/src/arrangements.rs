//! Hyperplane arrangements in `P^r`: simple normal crossings, normal
//! crossings away from finitely many points, the points on too many
//! hyperplanes, tameness of hyperplane-section configurations and the
//! generic-injectivity thresholds.

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{Matrix, Rational};
use crate::quadrics::{section_is_smooth, Hyperplane, Quadric};

/// Distinct hyperplanes of `P^r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HArrangement {
    r: usize,
    hyperplanes: Vec<Hyperplane>,
}

fn check_distinct(hs: &[Hyperplane]) -> Result<()> {
    for i in 0..hs.len() {
        for j in i + 1..hs.len() {
            if hs[i] == hs[j] {
                return Err(Error::InvalidInput(format!("hyperplanes {i} and {j} coincide")));
            }
        }
    }
    Ok(())
}

impl HArrangement {
    pub fn new(r: usize, hyperplanes: Vec<Hyperplane>) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidInput("the ambient space needs r >= 1".into()));
        }
        if hyperplanes.is_empty() {
            return Err(Error::InvalidInput("an arrangement needs at least one hyperplane".into()));
        }
        if let Some(h) = hyperplanes.iter().find(|h| h.len() != r + 1) {
            return Err(Error::ShapeMismatch(format!("hyperplane of P^{r} with {} coordinates", h.len())));
        }
        check_distinct(&hyperplanes)?;
        Ok(HArrangement { r, hyperplanes })
    }

    pub fn from_i64(r: usize, rows: &[&[i64]]) -> Result<Self> {
        Self::new(r, rows.iter().map(|c| Hyperplane::from_i64(c)).collect::<Result<_>>()?)
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    fn rank_of(&self, subset: &[usize]) -> usize {
        Matrix::from_rows(subset.iter().map(|&i| self.hyperplanes[i].coeffs().to_vec()).collect()).rank()
    }

    pub fn to_json(&self) -> Value {
        json!({"r": self.r, "hyperplanes": self.hyperplanes.iter().map(Hyperplane::to_json).collect::<Vec<_>>()})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let r = v
            .get("r")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::InvalidInput("arrangement JSON: missing r".into()))?;
        let hs = v
            .get("hyperplanes")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::InvalidInput("arrangement JSON: missing hyperplanes".into()))?;
        Self::new(r as usize, hs.iter().map(Hyperplane::from_json).collect::<Result<_>>()?)
    }
}

/// Subsets of `0..m` of size `k` in lexicographic order.
fn subsets(m: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut cur: Option<Vec<usize>> = (k <= m).then(|| (0..k).collect());
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        let next = {
            let mut c = out.clone();
            let mut i = k;
            loop {
                if i == 0 {
                    break None;
                }
                i -= 1;
                if c[i] < m - k + i {
                    c[i] += 1;
                    for j in i + 1..k {
                        c[j] = c[j - 1] + 1;
                    }
                    break Some(c);
                }
            }
        };
        cur = next;
        Some(out)
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SncReport {
    pub snc: bool,
    /// A smallest subset of at most `r + 1` hyperplanes whose covectors are
    /// dependent.
    pub witness: Option<Vec<usize>>,
}

/// Simple normal crossings: every `k ≤ r + 1` of the hyperplanes have
/// independent covectors. For distinct hyperplanes simple and plain normal
/// crossings coincide.
pub fn is_snc(a: &HArrangement) -> SncReport {
    for k in 2..=(a.r + 1).min(a.len()) {
        if let Some(s) = subsets(a.len(), k).find(|s| a.rank_of(s) < k) {
            return SncReport { snc: false, witness: Some(s) };
        }
    }
    SncReport { snc: true, witness: None }
}

/// Normal crossings outside finitely many points: every linear space `L` of
/// dimension `s ∈ {1, ..., r - 2}` lies on at most `r - s` hyperplanes.
pub fn nc_outside_finite(a: &HArrangement) -> Result<bool> {
    if a.r < 3 {
        return Err(Error::AmbientTooSmall { r: a.r });
    }
    // a violation has a basis of rank ρ ∈ [2, r - 1] plus one more element
    for k in 3..=a.r.min(a.len()) {
        for s in subsets(a.len(), k) {
            let rho = a.rank_of(&s);
            if (2..a.r).contains(&rho) && k > rho {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Points lying on at least `r + 1` hyperplanes, first non-zero coordinate
/// 1, sorted.
pub fn sigma_points(a: &HArrangement) -> Result<Vec<Vec<Rational>>> {
    let mut out: Vec<Vec<Rational>> = Vec::new();
    if a.len() <= a.r {
        return Ok(out);
    }
    if a.r >= 3 && !nc_outside_finite(a)? {
        return Err(Error::InfiniteLocus);
    }
    for s in subsets(a.len(), a.r) {
        let m = Matrix::from_rows(s.iter().map(|&i| a.hyperplanes[i].coeffs().to_vec()).collect());
        let ker = m.kernel();
        if ker.len() != 1 {
            continue;
        }
        let p = Hyperplane::new(ker[0].clone()).expect("kernel vectors are non-zero").coeffs().to_vec();
        let count = a.hyperplanes.iter().filter(|h| h.contains(&p)).count();
        if count > a.r && !out.contains(&p) {
            out.push(p);
        }
    }
    out.sort();
    Ok(out)
}

/// Hyperplane sections of a quadric, given by the hyperplanes of the
/// ambient projective space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionConfig {
    quadric: Quadric,
    sections: Vec<Hyperplane>,
}

impl SectionConfig {
    pub fn new(quadric: Quadric, sections: Vec<Hyperplane>) -> Result<Self> {
        if sections.is_empty() {
            return Err(Error::InvalidInput("a configuration needs at least one section".into()));
        }
        if let Some(h) = sections.iter().find(|h| h.len() != quadric.size()) {
            return Err(Error::ShapeMismatch(format!(
                "section with {} coordinates on a quadric in P^{}",
                h.len(),
                quadric.size() - 1
            )));
        }
        check_distinct(&sections)?;
        Ok(SectionConfig { quadric, sections })
    }

    pub fn quadric(&self) -> &Quadric {
        &self.quadric
    }

    pub fn sections(&self) -> &[Hyperplane] {
        &self.sections
    }

    /// The hyperplanes cutting the sections, as an arrangement of the
    /// ambient space.
    pub fn lift(&self) -> HArrangement {
        HArrangement { r: self.quadric.size() - 1, hyperplanes: self.sections.clone() }
    }
}

/// Tame: the sections are smooth and the lifted arrangement is SNC.
pub fn is_tame(c: &SectionConfig) -> Result<SncReport> {
    let mut bad = Vec::new();
    for (i, h) in c.sections.iter().enumerate() {
        if !section_is_smooth(&c.quadric, h)? {
            bad.push(i);
        }
    }
    if !bad.is_empty() {
        return Err(Error::SingularSection { indices: bad });
    }
    Ok(is_snc(&c.lift()))
}

/// Settings with a known generic-injectivity threshold for the number of
/// components.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ThresholdVariety {
    /// Hyperplanes of `P^n`.
    Pn { n: u32 },
    /// Degree-`d` hypersurface sections of a smooth quadric `Q_n`.
    Quadric { n: u32, d: u32 },
    /// Hyperplane sections of `Q_n`.
    QuadricHyperplane { n: u32 },
}

fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k.min(n - k)).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Smallest number of components from which the arrangement is recovered
/// from its logarithmic bundle for a general arrangement.
pub fn torelli_threshold(v: ThresholdVariety) -> Result<u64> {
    match v {
        ThresholdVariety::Pn { n } if n >= 1 => Ok(n as u64 + 3),
        ThresholdVariety::Quadric { n, d } if n >= 1 && d >= 1 => {
            let (n, d) = (n as u64, d as u64);
            Ok(binom(n + 1 + d, n + 1) - binom(n - 1 + d, n + 1) + 2)
        }
        ThresholdVariety::QuadricHyperplane { n } if n >= 1 => Ok(n as u64 + 4),
        _ => Err(Error::InvalidInput("thresholds need n >= 1 and d >= 1".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat_int, Ring};
    use proptest::prelude::*;

    fn arr(r: usize, rows: &[&[i64]]) -> HArrangement {
        HArrangement::from_i64(r, rows).unwrap()
    }

    #[test]
    fn subset_enumeration() {
        let all: Vec<Vec<usize>> = subsets(4, 2).collect();
        assert_eq!(all, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(subsets(5, 3).count(), 10);
        assert_eq!(subsets(2, 3).count(), 0);
        assert_eq!(subsets(3, 0).count(), 1);
    }

    #[test]
    fn lines_in_the_plane() {
        assert!(is_snc(&arr(2, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])).snc);
        let concurrent = is_snc(&arr(2, &[&[1, 0, 0], &[0, 1, 0], &[1, 1, 0]]));
        assert_eq!(concurrent, SncReport { snc: false, witness: Some(vec![0, 1, 2]) });
    }

    #[test]
    fn repeated_hyperplane_rejected() {
        assert!(matches!(HArrangement::from_i64(2, &[&[1, 2, 3], &[2, 4, 6]]), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn concurrent_at_a_point() {
        // r + 1 hyperplanes of P3 through (0:0:0:1), plus a generic one
        let a = arr(3, &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[1, 1, 1, 0], &[1, 2, 3, 4]]);
        assert!(!is_snc(&a).snc);
        assert!(nc_outside_finite(&a).unwrap());
        assert_eq!(sigma_points(&a).unwrap(), vec![vec![rat_int(0), rat_int(0), rat_int(0), rat_int(1)]]);
    }

    #[test]
    fn common_line_is_not_finite() {
        // four planes of P3 containing the line x0 = x1 = 0
        let a = arr(3, &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[1, 1, 0, 0], &[1, 2, 0, 0]]);
        assert!(!nc_outside_finite(&a).unwrap());
        assert_eq!(sigma_points(&a), Err(Error::InfiniteLocus));
        // three of them already fail
        let a = arr(3, &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[1, 1, 0, 0]]);
        assert!(!nc_outside_finite(&a).unwrap());
    }

    #[test]
    fn small_ambient_rejected() {
        assert_eq!(nc_outside_finite(&arr(2, &[&[1, 0, 0]])), Err(Error::AmbientTooSmall { r: 2 }));
    }

    #[test]
    fn few_hyperplanes_have_empty_sigma() {
        let a = arr(3, &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[1, 1, 0, 0]]);
        assert_eq!(sigma_points(&a).unwrap(), Vec::<Vec<Rational>>::new());
        let b = arr(4, &[&[1, 0, 0, 0, 0], &[0, 1, 0, 0, 0], &[0, 0, 1, 0, 0], &[1, 1, 1, 1, 1]]);
        assert_eq!(sigma_points(&b).unwrap(), Vec::<Vec<Rational>>::new());
    }

    #[test]
    fn tame_sections_of_a_quadric() {
        let q = Quadric::sum_of_squares(2);
        let hs = [&[1, 0, 0, 0][..], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]];
        let c = SectionConfig::new(q.clone(), hs.iter().map(|h| Hyperplane::from_i64(h).unwrap()).collect()).unwrap();
        assert!(is_tame(&c).unwrap().snc);
        // three planes through a common line
        let hs = [&[1, 0, 0, 0][..], &[0, 1, 0, 0], &[1, 1, 0, 0]];
        let c = SectionConfig::new(q.clone(), hs.iter().map(|h| Hyperplane::from_i64(h).unwrap()).collect()).unwrap();
        assert_eq!(is_tame(&c).unwrap().witness, Some(vec![0, 1, 2]));
        let dup = vec![Hyperplane::from_i64(&[1, 0, 0, 0]).unwrap(), Hyperplane::from_i64(&[2, 0, 0, 0]).unwrap()];
        assert!(SectionConfig::new(q, dup).is_err());
        // x1 = 0 is tangent to the Segre quadric
        let c = SectionConfig::new(
            Quadric::segre(),
            vec![Hyperplane::from_i64(&[1, 0, 0, 0]).unwrap(), Hyperplane::from_i64(&[0, 1, 0, 0]).unwrap()],
        )
        .unwrap();
        assert_eq!(is_tame(&c), Err(Error::SingularSection { indices: vec![0, 1] }));
    }

    #[test]
    fn thresholds() {
        assert_eq!(torelli_threshold(ThresholdVariety::Pn { n: 3 }).unwrap(), 6);
        assert_eq!(torelli_threshold(ThresholdVariety::Quadric { n: 3, d: 1 }).unwrap(), 7);
        assert_eq!(torelli_threshold(ThresholdVariety::QuadricHyperplane { n: 3 }).unwrap(), 7);
        assert_eq!(torelli_threshold(ThresholdVariety::Quadric { n: 2, d: 2 }).unwrap(), 11);
        assert!(torelli_threshold(ThresholdVariety::Pn { n: 0 }).is_err());
    }

    #[test]
    fn json_round_trip() {
        let a = arr(3, &[&[1, 0, 0, 0], &[0, 2, 0, 1]]);
        assert_eq!(HArrangement::from_json(&a.to_json()).unwrap(), a);
    }

    fn arb_arrangement() -> impl Strategy<Value = HArrangement> {
        (1usize..=4, 1usize..=6).prop_flat_map(|(r, m)| {
            prop::collection::vec(prop::collection::vec(-2i64..=2, r + 1), m).prop_filter_map("distinct", move |rows| {
                let hs: Vec<Hyperplane> = rows.iter().filter_map(|c| Hyperplane::from_i64(c).ok()).collect();
                (hs.len() == rows.len()).then(|| HArrangement::new(r, hs).ok()).flatten()
            })
        })
    }

    fn arb_change(r: usize) -> impl Strategy<Value = Matrix> {
        prop::collection::vec(-3i64..=3, (r + 1) * (r + 1)).prop_filter_map("invertible", move |e| {
            let rows: Vec<Vec<Rational>> = e.chunks(r + 1).map(|c| c.iter().map(|&x| rat_int(x)).collect()).collect();
            let m = Matrix::from_rows(rows);
            (!m.det().is_zero()).then_some(m)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn snc_implies_finite_sigma_empty(a in arb_arrangement()) {
            let snc = is_snc(&a).snc;
            if a.r() >= 3 {
                let nc = nc_outside_finite(&a).unwrap();
                prop_assert!(!snc || nc);
                if nc {
                    prop_assert_eq!(sigma_points(&a).unwrap().is_empty(), snc);
                }
            }
            if a.len() <= a.r() {
                let rank = a.rank_of(&(0..a.len()).collect::<Vec<_>>());
                prop_assert_eq!(snc, rank == a.len());
            }
        }

        #[test]
        fn snc_is_projectively_invariant((a, t) in arb_arrangement().prop_flat_map(|a| { let r = a.r(); (Just(a), arb_change(r)) })) {
            // covectors transform by h ↦ hT
            let moved: Vec<Hyperplane> = a
                .hyperplanes()
                .iter()
                .map(|h| Hyperplane::new(t.transpose().mul_vec(h.coeffs())).unwrap())
                .collect();
            let b = HArrangement::new(a.r(), moved).unwrap();
            prop_assert_eq!(is_snc(&a).snc, is_snc(&b).snc);
        }
    }
}
