//! Degree statistics of trees and the well-burnability criteria built on
//! them. All comparisons are exact: integer square roots for ceilings,
//! rationals for concentrations.

use std::collections::BTreeMap;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;
use crate::intmath::{ceil_sqrt, ceil_sqrt_ratio};
use crate::trees::TreeCode;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DegreeError {
    #[error("graph is not a tree")]
    NotATree,
    #[error("a profile needs at least two vertices")]
    TooSmall,
    #[error("degree 0 cannot occur in a tree with at least two vertices")]
    ZeroDegree,
    #[error("degree counts give n = {n} but 2 + sum (k-1) n_k = {expected}")]
    Handshake { n: u64, expected: u64 },
    #[error("criterion needs at least one non-leaf vertex")]
    NoInternalVertices,
    #[error("minimum non-leaf degree must be at least 2, got {0}")]
    FamilyDegree(u64),
    #[error("degree must be at least 4, got {0}")]
    SmallDegree(u64),
    #[error("concentration {0} is outside [0, 2/3)")]
    Inapplicable(Ratio<u64>),
}

/// Degree histogram of a tree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ProfileRecord", into = "ProfileRecord")]
pub struct DegreeProfile {
    n: u64,
    counts: BTreeMap<u64, u64>,
}

/// Serialized form: the histogram as sorted `[k, n_k]` pairs, with the
/// derived quantities alongside for readers.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct ProfileRecord {
    n: u64,
    n_prime: u64,
    histogram: Vec<(u64, u64)>,
    #[serde(default)]
    degree_two_concentration: Option<String>,
}

impl TryFrom<ProfileRecord> for DegreeProfile {
    type Error = DegreeError;

    fn try_from(record: ProfileRecord) -> Result<Self, Self::Error> {
        let profile = DegreeProfile::from_histogram(record.histogram)?;
        if profile.n != record.n || profile.n_prime() != record.n_prime {
            return Err(DegreeError::Handshake { n: record.n, expected: profile.n });
        }
        Ok(profile)
    }
}

impl From<DegreeProfile> for ProfileRecord {
    fn from(p: DegreeProfile) -> Self {
        ProfileRecord {
            n: p.n,
            n_prime: p.n_prime(),
            histogram: p.histogram(),
            degree_two_concentration: p.degree_two_concentration().map(|r| r.to_string()),
        }
    }
}

impl DegreeProfile {
    /// Accepts `(k, n_k)` pairs; repeated degrees are summed and zero counts
    /// dropped. The counts must describe a tree: `n = 2 + Σ (k−1)·n_k`.
    pub fn from_histogram(pairs: impl IntoIterator<Item = (u64, u64)>) -> Result<Self, DegreeError> {
        let mut counts = BTreeMap::new();
        for (k, c) in pairs {
            if c == 0 {
                continue;
            }
            if k == 0 {
                return Err(DegreeError::ZeroDegree);
            }
            *counts.entry(k).or_insert(0) += c;
        }
        let n: u64 = counts.values().sum();
        if n < 2 {
            return Err(DegreeError::TooSmall);
        }
        let expected = 2 + counts.iter().map(|(&k, &c)| (k - 1) * c).sum::<u64>();
        if n != expected {
            return Err(DegreeError::Handshake { n, expected });
        }
        Ok(DegreeProfile { n, counts })
    }

    pub fn from_graph(tree: &Graph) -> Result<Self, DegreeError> {
        if !tree.is_tree() {
            return Err(DegreeError::NotATree);
        }
        if tree.vertex_count() < 2 {
            return Err(DegreeError::TooSmall);
        }
        Self::from_histogram((0..tree.vertex_count()).map(|v| (tree.degree(v) as u64, 1)))
    }

    pub fn from_code(code: &TreeCode) -> Result<Self, DegreeError> {
        let levels = code.levels();
        let mut degree = vec![0u64; levels.len()];
        let mut path: Vec<usize> = Vec::new();
        for (i, &depth) in levels.iter().enumerate() {
            path.truncate(depth as usize);
            if let Some(&parent) = path.last() {
                degree[parent] += 1;
                degree[i] += 1;
            }
            path.push(i);
        }
        Self::from_histogram(degree.into_iter().map(|k| (k, 1)))
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// Number of non-leaf vertices.
    pub fn n_prime(&self) -> u64 {
        self.n - self.count(1)
    }

    pub fn count(&self, k: u64) -> u64 {
        self.counts.get(&k).copied().unwrap_or(0)
    }

    pub fn histogram(&self) -> Vec<(u64, u64)> {
        self.counts.iter().map(|(&k, &c)| (k, c)).collect()
    }

    /// `n_k / n′` for `k ≥ 2`.
    pub fn concentration(&self, k: u64) -> Option<Ratio<u64>> {
        (k >= 2 && self.n_prime() > 0).then(|| Ratio::new(self.count(k), self.n_prime()))
    }

    pub fn degree_two_concentration(&self) -> Option<Ratio<u64>> {
        self.concentration(2)
    }

    /// `Σ k·n_k`, twice the edge count.
    pub fn degree_sum(&self) -> u64 {
        self.counts.iter().map(|(&k, &c)| k * c).sum()
    }
}

/// `⌈2√(q/3)⌉ + 2`, the rounds needed after stripping leaves from a tree
/// with `q` non-leaf vertices.
fn stripped_rounds(q: u64) -> u64 {
    ceil_sqrt_ratio(4 * q as u128, 3) as u64 + 2
}

/// `⌈2√(n′/3)⌉ + 2 ≤ ⌈√n⌉`. True means well-burnable; false decides nothing.
pub fn stripped_criterion(profile: &DegreeProfile) -> Result<bool, DegreeError> {
    let q = profile.n_prime();
    if q == 0 {
        return Err(DegreeError::NoInternalVertices);
    }
    Ok(stripped_rounds(q) <= ceil_sqrt(profile.n()))
}

/// The stripped criterion with `n′` replaced by its ceiling
/// `⌊(n − 2)/(d − 1)⌋` for trees whose non-leaf degrees are all `≥ d`.
pub fn min_degree_criterion(n: u64, d: u64) -> Result<bool, DegreeError> {
    if d < 2 {
        return Err(DegreeError::FamilyDegree(d));
    }
    let q = n.saturating_sub(2) / (d - 1);
    Ok(stripped_rounds(q) <= ceil_sqrt(n))
}

/// `((2b − 3a)N − 21b)² ≥ 432·N·b²` with the base nonnegative, which is
/// `2√(N/3) + 3 ≤ √(2 + (2 − p)N)` squared out for `p = a/b`.
fn degree_two_condition(big_n: u64, p: Ratio<u64>) -> bool {
    let (a, b, big_n) = (*p.numer() as i128, *p.denom() as i128, big_n as i128);
    let lhs = (2 * b - 3 * a) * big_n - 21 * b;
    lhs >= 0 && lhs * lhs >= 432 * big_n * b * b
}

/// Least `N` such that every tree with `n′ ≥ N` non-leaf vertices, a fraction
/// `p` of them of degree 2, passes the stripped criterion.
///
/// Solves `(2 − 3p)u² − 12√3·u − 21 = 0` for `u = √N` in floating point,
/// then moves to the exact boundary with the integer test.
pub fn degree_two_threshold(p: Ratio<u64>) -> Result<u64, DegreeError> {
    if 3 * *p.numer() as u128 >= 2 * *p.denom() as u128 {
        return Err(DegreeError::Inapplicable(p));
    }
    let c = 2.0 - 3.0 * (*p.numer() as f64 / *p.denom() as f64);
    let s3 = 3f64.sqrt();
    let u = (12.0 * s3 + (432.0 + 84.0 * c).sqrt()) / (2.0 * c);
    let mut big_n = (u * u).ceil().max(1.0) as u64;
    while big_n > 1 && degree_two_condition(big_n - 1, p) {
        big_n -= 1;
    }
    while !degree_two_condition(big_n, p) {
        big_n += 1;
    }
    Ok(big_n)
}

/// The same threshold by testing `N = 1, 2, …` up to `limit`.
pub fn degree_two_threshold_scan(p: Ratio<u64>, limit: u64) -> Option<u64> {
    (1..=limit).find(|&big_n| degree_two_condition(big_n, p))
}

/// `Σ_{k≥4} (k − 3)·p_k > 1/3`, as `3·Σ (k − 3)·n_k > n′`.
pub fn excess_degree_condition(profile: &DegreeProfile) -> Result<bool, DegreeError> {
    let q = profile.n_prime();
    if q == 0 {
        return Err(DegreeError::NoInternalVertices);
    }
    let excess: u64 = profile.counts.range(4..).map(|(&k, &c)| (k - 3) * c).sum();
    Ok(3 * excess > q)
}

/// Concentration of degree-`k` vertices above `1/(3(k − 3))`.
pub fn excess_degree_single(k: u64, concentration: Ratio<u64>) -> Result<bool, DegreeError> {
    if k < 4 {
        return Err(DegreeError::SmallDegree(k));
    }
    Ok(concentration > Ratio::new(1, 3 * (k - 3)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn profiles_of_small_trees() {
        let star = DegreeProfile::from_graph(&Graph::star(5)).unwrap();
        assert_eq!((star.n(), star.n_prime(), star.count(5)), (6, 1, 1));
        assert_eq!(star.concentration(5), Some(Ratio::from_integer(1)));

        let p5 = DegreeProfile::from_graph(&Graph::path(5)).unwrap();
        assert_eq!((p5.n_prime(), p5.count(2)), (3, 3));
        assert_eq!(p5.degree_two_concentration(), Some(Ratio::from_integer(1)));

        let spider = DegreeProfile::from_graph(&Graph::spider(3, 2)).unwrap();
        assert_eq!((spider.n(), spider.n_prime(), spider.count(2), spider.count(3)), (7, 4, 3, 1));
        assert_eq!(spider.degree_two_concentration(), Some(Ratio::new(3, 4)));

        assert_eq!(DegreeProfile::from_graph(&Graph::cycle(4)), Err(DegreeError::NotATree));
        assert_eq!(DegreeProfile::from_graph(&Graph::empty(1)), Err(DegreeError::TooSmall));
    }

    #[test]
    fn histogram_validation() {
        assert!(DegreeProfile::from_histogram([(1, 7), (7, 1)]).is_ok());
        assert_eq!(
            DegreeProfile::from_histogram([(1, 3), (2, 1)]),
            Err(DegreeError::Handshake { n: 4, expected: 3 })
        );
        assert_eq!(DegreeProfile::from_histogram([(0, 1), (1, 2)]), Err(DegreeError::ZeroDegree));
        let p = DegreeProfile::from_histogram([(1, 2), (2, 3)]).unwrap();
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, r#"{"n":5,"n_prime":3,"histogram":[[1,2],[2,3]],"degree_two_concentration":"1"}"#);
        assert_eq!(serde_json::from_str::<DegreeProfile>(&json).unwrap(), p);
        assert!(serde_json::from_str::<DegreeProfile>(r#"{"n":5,"n_prime":3,"histogram":[[1,2],[2,2]]}"#).is_err());
    }

    #[test]
    fn stripped_examples() {
        let hundred_fours = DegreeProfile::from_histogram([(4, 100), (1, 202)]).unwrap();
        assert_eq!(hundred_fours.n(), 302);
        assert!(stripped_criterion(&hundred_fours).unwrap());
        let star = DegreeProfile::from_graph(&Graph::star(5)).unwrap();
        assert!(!stripped_criterion(&star).unwrap());
        let k2 = DegreeProfile::from_graph(&Graph::path(2)).unwrap();
        assert_eq!(stripped_criterion(&k2), Err(DegreeError::NoInternalVertices));
    }

    #[test]
    fn min_degree_examples() {
        assert!(min_degree_criterion(26, 4).unwrap());
        assert!(!min_degree_criterion(25, 4).unwrap());
        assert!(min_degree_criterion(144, 3).unwrap());
        assert!(!min_degree_criterion(81, 3).unwrap());
        assert!(min_degree_criterion(101, 3).unwrap());
        assert_eq!(min_degree_criterion(10, 1), Err(DegreeError::FamilyDegree(1)));
    }

    #[test]
    fn degree_two_examples() {
        assert_eq!(degree_two_threshold(Ratio::from_integer(0)).unwrap(), 129);
        assert!(degree_two_threshold(Ratio::new(2, 3)).is_err());
        assert!(degree_two_threshold(Ratio::new(3, 4)).is_err());
        let half = degree_two_threshold(Ratio::new(1, 2)).unwrap();
        assert_eq!(Some(half), degree_two_threshold_scan(Ratio::new(1, 2), 100_000));
        assert!(half > 129);
    }

    #[test]
    fn degree_two_threshold_certifies_the_ceiling_form() {
        // At p = 0 every tree has n = 2 + 2n′ or more; check the ceiling form
        // with n = 2 + (2 − p)·n′ directly.
        let start = degree_two_threshold(Ratio::from_integer(0)).unwrap();
        for q in start..=start + 200 {
            assert!(stripped_rounds(q) <= ceil_sqrt(2 + 2 * q), "n' = {q}");
        }
    }

    #[test]
    fn excess_examples() {
        let tenth_sevens = DegreeProfile::from_histogram([(7, 1), (2, 9), (1, 7)]).unwrap();
        assert!(excess_degree_condition(&tenth_sevens).unwrap());
        let path = DegreeProfile::from_graph(&Graph::path(6)).unwrap();
        assert!(!excess_degree_condition(&path).unwrap());
        let third_fours = DegreeProfile::from_histogram([(4, 1), (2, 2), (1, 4)]).unwrap();
        assert!(!excess_degree_condition(&third_fours).unwrap());

        assert!(excess_degree_single(7, Ratio::new(1, 10)).unwrap());
        assert!(!excess_degree_single(4, Ratio::new(1, 3)).unwrap());
        assert!(excess_degree_single(10, Ratio::new(1, 20)).unwrap());
        assert_eq!(excess_degree_single(3, Ratio::new(1, 2)), Err(DegreeError::SmallDegree(3)));
    }

    proptest! {
        #[test]
        fn degree_two_threshold_matches_scan(a in 0u64..60, b in 1u64..60) {
            prop_assume!(3 * a < 2 * b);
            let p = Ratio::new(a, b);
            prop_assert_eq!(Some(degree_two_threshold(p).unwrap()), degree_two_threshold_scan(p, 50_000_000));
        }
    }

    #[test]
    fn min_degree_criterion_specialises_the_stripped_criterion() {
        use crate::trees::FreeTrees;
        for d in 2..=4u64 {
            for n in 3..=14usize {
                for code in FreeTrees::family(n, d as usize).unwrap() {
                    let profile = DegreeProfile::from_code(&code).unwrap();
                    assert!(profile.n_prime() <= (n as u64 - 2) / (d - 1));
                    if min_degree_criterion(n as u64, d).unwrap() {
                        assert!(stripped_criterion(&profile).unwrap(), "{code}");
                    }
                }
            }
        }
    }
}
