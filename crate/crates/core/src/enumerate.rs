//! Exhaustive enumeration of normalized weak admissible pairs of a fixed
//! degree, grouped into kinds.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::pairs::{DegreeMatrix, KindSignature, WeakAdmissiblePair};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error("degree must be at least 2, got {0}")]
    DegreeTooSmall(i64),
    #[error("b_cap {cap} is below the degree {degree}")]
    CapTooSmall { degree: i64, cap: i64 },
    #[error("expected matrix #{index} has degree {found}, catalog has degree {expected}")]
    DegreeMismatch {
        index: usize,
        expected: i64,
        found: i64,
    },
}

/// Smallest `b_cap` from which the kind catalog of degree `d` no longer
/// grows. The extreme kind has `t = d`, unit gaps and every
/// superdiagonal entry `>= d`, forcing `b_t = (d - 1)^2 + 1`.
pub fn stable_cap(degree: i64) -> i64 {
    (degree - 1) * (degree - 1) + 1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationConfig {
    pub degree: i64,
    pub b_cap: i64,
}

impl EnumerationConfig {
    pub fn new(degree: i64, b_cap: i64) -> Result<Self, EnumerationError> {
        if degree < 2 {
            return Err(EnumerationError::DegreeTooSmall(degree));
        }
        if b_cap < degree {
            return Err(EnumerationError::CapTooSmall { degree, cap: b_cap });
        }
        Ok(Self { degree, b_cap })
    }

    /// `max(2d, stable_cap(d))`.
    pub fn with_default_cap(degree: i64) -> Result<Self, EnumerationError> {
        Self::new(degree, (2 * degree).max(stable_cap(degree)))
    }
}

/// Compositions of `total` into `parts` positive summands, in
/// lexicographic order.
pub fn compositions(total: i64, parts: usize) -> Vec<Vec<i64>> {
    fn go(left: i64, parts: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if parts == 1 {
            if left >= 1 {
                cur.push(left);
                out.push(cur.clone());
                cur.pop();
            }
            return;
        }
        for g in 1..=(left - parts as i64 + 1) {
            cur.push(g);
            go(left - g, parts - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if parts >= 1 && total >= parts as i64 {
        go(total, parts, &mut Vec::with_capacity(parts), &mut out);
    }
    out
}

/// All normalized pairs of the configured degree with `b_t <= b_cap`,
/// sorted.
///
/// The diagonal gaps `b_i - a_i` form a composition of `d`; for each one
/// the `a` sequence is grown left to right with the smallest value that
/// keeps both sequences monotone.
pub fn enumerate_pairs(cfg: &EnumerationConfig) -> Vec<WeakAdmissiblePair> {
    let mut out = Vec::new();
    for t in 2..=cfg.degree as usize {
        for gaps in compositions(cfg.degree, t) {
            if gaps[0] > cfg.b_cap {
                continue;
            }
            let mut a = vec![0];
            let mut b = vec![gaps[0]];
            extend(&gaps, cfg.b_cap, &mut a, &mut b, &mut out);
        }
    }
    out.sort();
    out.dedup();
    out
}

fn extend(
    gaps: &[i64],
    cap: i64,
    a: &mut Vec<i64>,
    b: &mut Vec<i64>,
    out: &mut Vec<WeakAdmissiblePair>,
) {
    let i = a.len();
    if i == gaps.len() {
        let pair = WeakAdmissiblePair::new(a.clone(), b.clone())
            .expect("generator only builds admissible sequences");
        out.push(pair);
        return;
    }
    let lo = a[i - 1].max(b[i - 1] - gaps[i]);
    for ai in lo..=(cap - gaps[i]) {
        a.push(ai);
        b.push(ai + gaps[i]);
        extend(gaps, cap, a, b, out);
        a.pop();
        b.pop();
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KindEntry {
    pub signature: KindSignature,
    pub representative: WeakAdmissiblePair,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KindCatalog {
    pub degree: i64,
    pub b_cap: i64,
    pub kinds: Vec<KindEntry>,
}

impl KindCatalog {
    pub fn len(&self) -> usize {
        self.kinds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.kinds.is_empty()
    }

    pub fn contains(&self, sig: &KindSignature) -> bool {
        self.kinds.iter().any(|k| &k.signature == sig)
    }

    pub fn signatures(&self) -> impl Iterator<Item = &KindSignature> {
        self.kinds.iter().map(|k| &k.signature)
    }
}

/// Groups the enumerated pairs by kind signature. Each kind keeps its
/// lexicographically least pair as representative; kinds are listed by
/// length, then representative.
pub fn enumerate_kinds(cfg: &EnumerationConfig) -> KindCatalog {
    let mut groups: BTreeMap<KindSignature, (WeakAdmissiblePair, usize)> = BTreeMap::new();
    for pair in enumerate_pairs(cfg) {
        let sig = pair.kind_signature();
        match groups.get_mut(&sig) {
            Some((rep, count)) => {
                if pair < *rep {
                    *rep = pair;
                }
                *count += 1;
            }
            None => {
                groups.insert(sig, (pair, 1));
            }
        }
    }
    let mut kinds: Vec<KindEntry> = groups
        .into_iter()
        .map(|(signature, (representative, count))| KindEntry {
            signature,
            representative,
            count,
        })
        .collect();
    kinds.sort_by(|x, y| {
        (x.representative.len(), &x.representative).cmp(&(y.representative.len(), &y.representative))
    });
    KindCatalog {
        degree: cfg.degree,
        b_cap: cfg.b_cap,
        kinds,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchReport {
    /// One flag per expected matrix, in input order.
    pub matched: Vec<bool>,
    /// Catalog signatures hit by no expected matrix.
    pub unmatched: Vec<KindSignature>,
}

impl MatchReport {
    pub fn all_matched(&self) -> bool {
        self.matched.iter().all(|&m| m)
    }
}

pub fn match_catalog(
    catalog: &KindCatalog,
    expected: &[DegreeMatrix],
) -> Result<MatchReport, EnumerationError> {
    if let Some((index, m)) = expected
        .iter()
        .enumerate()
        .find(|(_, m)| m.degree != catalog.degree)
    {
        return Err(EnumerationError::DegreeMismatch {
            index,
            expected: catalog.degree,
            found: m.degree,
        });
    }
    let sigs: Vec<KindSignature> = expected.iter().map(|m| m.kind_signature()).collect();
    let matched = sigs.iter().map(|s| catalog.contains(s)).collect();
    let unmatched = catalog
        .signatures()
        .filter(|s| !sigs.contains(s))
        .cloned()
        .collect();
    Ok(MatchReport { matched, unmatched })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pairs::Cell;

    fn pair(a: &[i64], b: &[i64]) -> WeakAdmissiblePair {
        WeakAdmissiblePair::new(a.to_vec(), b.to_vec()).unwrap()
    }

    #[test]
    fn config_validation() {
        assert!(EnumerationConfig::new(1, 4).is_err());
        assert!(EnumerationConfig::new(4, 3).is_err());
        assert_eq!(EnumerationConfig::with_default_cap(3).unwrap().b_cap, 6);
        assert_eq!(EnumerationConfig::with_default_cap(4).unwrap().b_cap, 10);
    }

    #[test]
    fn compositions_count() {
        // C(d-1, t-1)
        assert_eq!(compositions(4, 2).len(), 3);
        assert_eq!(compositions(6, 3).len(), 10);
        assert_eq!(compositions(4, 4), vec![vec![1, 1, 1, 1]]);
        assert!(compositions(2, 3).is_empty());
    }

    #[test]
    fn degree_two_small_cap() {
        let cfg = EnumerationConfig::new(2, 2).unwrap();
        assert_eq!(
            enumerate_pairs(&cfg),
            vec![pair(&[0, 0], &[1, 1]), pair(&[0, 1], &[1, 2])]
        );
    }

    #[test]
    fn degree_two_contains_shifted_family() {
        let cfg = EnumerationConfig::new(2, 4).unwrap();
        let ps = enumerate_pairs(&cfg);
        for n in 0..=2 {
            let p = pair(&[1, 1 + n], &[2, 2 + n]).normalize();
            assert!(ps.contains(&p), "missing n={n}");
        }
    }

    #[test]
    fn degree_four_has_all_ones() {
        let cfg = EnumerationConfig::new(4, 4).unwrap();
        let ps = enumerate_pairs(&cfg);
        assert!(ps.contains(&pair(&[0; 4], &[1; 4])));
    }

    #[test]
    fn degree_two_kinds() {
        use Cell::*;
        let cat = enumerate_kinds(&EnumerationConfig::with_default_cap(2).unwrap());
        let sigs: Vec<_> = cat.signatures().cloned().collect();
        assert_eq!(sigs.len(), 2);
        assert_eq!(sigs[0].cells, vec![vec![Small(1), Small(1)], vec![Small(1), Small(1)]]);
        assert_eq!(sigs[1].cells, vec![vec![Small(1), Big], vec![Zero, Small(1)]]);
    }

    #[test]
    fn empty_expected_leaves_everything_unmatched() {
        let cat = enumerate_kinds(&EnumerationConfig::with_default_cap(3).unwrap());
        let report = match_catalog(&cat, &[]).unwrap();
        assert!(report.matched.is_empty());
        assert_eq!(report.unmatched.len(), cat.len());
    }

    #[test]
    fn mismatched_degree_is_rejected() {
        let cat = enumerate_kinds(&EnumerationConfig::with_default_cap(3).unwrap());
        let m = DegreeMatrix::new(4, vec![vec![2, 2], vec![2, 2]]);
        assert!(matches!(
            match_catalog(&cat, &[m]),
            Err(EnumerationError::DegreeMismatch { index: 0, .. })
        ));
    }

    #[test]
    fn representative_is_least_in_kind() {
        let cfg = EnumerationConfig::with_default_cap(3).unwrap();
        let cat = enumerate_kinds(&cfg);
        let all = enumerate_pairs(&cfg);
        for k in &cat.kinds {
            let least = all
                .iter()
                .filter(|p| p.kind_signature() == k.signature)
                .min()
                .unwrap();
            assert_eq!(&k.representative, least);
        }
        assert_eq!(cat.kinds.iter().map(|k| k.count).sum::<usize>(), all.len());
    }
}
