//! Combining several models' predictions into one query result set.
//!
//! A query of length `L` is answered by every contiguous length-`L` run of
//! every model's prediction. Recall counts the ground-truth windows found by
//! at least one model; precision counts how many distinct returned runs are
//! ground-truth windows.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metrics::WindowCount;
use crate::model::{Page, ReadingOrder};

/// Windows returned by each model for one page and query length.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct QuerySet {
    entries: BTreeSet<(Vec<usize>, String)>,
}

impl QuerySet {
    pub fn new<'a, I>(preds: I, length: usize) -> Self
    where
        I: IntoIterator<Item = (&'a str, &'a ReadingOrder)>,
    {
        let mut entries = BTreeSet::new();
        if length > 0 {
            for (source, pred) in preds {
                for w in pred.as_slice().windows(length) {
                    entries.insert((w.to_vec(), source.to_string()));
                }
            }
        }
        QuerySet { entries }
    }

    pub fn entries(&self) -> impl Iterator<Item = (&[usize], &str)> {
        self.entries.iter().map(|(w, s)| (w.as_slice(), s.as_str()))
    }

    /// Distinct windows regardless of which model produced them.
    pub fn windows(&self) -> BTreeSet<&[usize]> {
        self.entries.iter().map(|(w, _)| w.as_slice()).collect()
    }

    pub fn sources_of(&self, window: &[usize]) -> Vec<&str> {
        self.entries
            .iter()
            .filter(|(w, _)| w == window)
            .map(|(_, s)| s.as_str())
            .collect()
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnionCounts {
    /// Ground-truth windows found by at least one model, over all windows.
    pub recall: WindowCount,
    /// Distinct returned windows that are ground-truth windows, over all
    /// distinct returned windows.
    pub precision: WindowCount,
}

impl std::ops::AddAssign for UnionCounts {
    fn add_assign(&mut self, rhs: Self) {
        self.recall += rhs.recall;
        self.precision += rhs.precision;
    }
}

pub fn union_counts(gt: &ReadingOrder, preds: &[ReadingOrder], length: usize) -> Result<UnionCounts> {
    for p in preds {
        p.check_permutation_of(gt)?;
    }
    let n = gt.len();
    if length == 0 || length > n {
        return Err(Error::BadLength { length, max: n });
    }
    let gt_pos: HashMap<usize, usize> = gt
        .as_slice()
        .iter()
        .enumerate()
        .map(|(i, &id)| (id, i))
        .collect();

    let total = n + 1 - length;
    let mut found = vec![false; total];
    let mut candidates: HashSet<&[usize]> = HashSet::new();
    for p in preds {
        for w in p.as_slice().windows(length) {
            if !candidates.insert(w) {
                continue;
            }
            let start = gt_pos[&w[0]];
            if w.iter().enumerate().all(|(k, id)| gt_pos[id] == start + k) {
                found[start] = true;
            }
        }
    }
    let matched = found.iter().filter(|&&f| f).count();
    Ok(UnionCounts {
        recall: WindowCount { matched, total },
        precision: WindowCount {
            matched,
            total: candidates.len(),
        },
    })
}

pub fn union_recall(gt: &ReadingOrder, preds: &[ReadingOrder], length: usize) -> Result<f64> {
    let c = union_counts(gt, preds, length)?;
    Ok(c.recall.recall().unwrap_or(1.0))
}

/// With no predictions there are no candidates; precision is then 1.0.
pub fn union_precision(gt: &ReadingOrder, preds: &[ReadingOrder], length: usize) -> Result<f64> {
    let c = union_counts(gt, preds, length)?;
    Ok(c.precision.recall().unwrap_or(1.0))
}

/// Pooled single-model and union figures over pages and query lengths.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct EnsembleTotals {
    pub per_model: BTreeMap<String, WindowCount>,
    pub union: UnionCounts,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct EnsembleReport {
    pub per_book: BTreeMap<String, EnsembleTotals>,
    pub overall: EnsembleTotals,
}

/// Pools union recall/precision over every ground-truthed page and every
/// query length in `lengths` that fits the page.
pub fn evaluate_ensemble<'a, I>(
    pages: I,
    models: &[(String, BTreeMap<String, ReadingOrder>)],
    lengths: &[usize],
) -> Result<EnsembleReport>
where
    I: IntoIterator<Item = (&'a str, &'a Page)>,
{
    let mut report = EnsembleReport::default();
    for (book_id, page) in pages {
        let Some(gt) = &page.ground_truth else {
            continue;
        };
        let preds = models
            .iter()
            .map(|(_, preds)| {
                preds
                    .get(&page.page_id)
                    .cloned()
                    .ok_or_else(|| Error::MissingPrediction(page.page_id.clone()))
            })
            .collect::<Result<Vec<_>>>()?;
        let book = report.per_book.entry(book_id.to_string()).or_default();
        for &l in lengths.iter().filter(|&&l| l >= 1 && l <= gt.len()) {
            let u = union_counts(gt, &preds, l)?;
            book.union += u;
            report.overall.union += u;
            for ((name, _), pred) in models.iter().zip(&preds) {
                let c = union_counts(gt, std::slice::from_ref(pred), l)?.recall;
                *book.per_model.entry(name.clone()).or_default() += c;
                *report.overall.per_model.entry(name.clone()).or_default() += c;
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::query_recall;

    fn ro(v: &[usize]) -> ReadingOrder {
        ReadingOrder::new(v.to_vec())
    }

    /// Set-based enumeration of ground-truth and candidate windows.
    fn enumerate(gt: &[usize], preds: &[Vec<usize>], l: usize) -> (f64, f64) {
        let truth: BTreeSet<Vec<usize>> = gt.windows(l).map(<[usize]>::to_vec).collect();
        let cands: BTreeSet<Vec<usize>> = preds
            .iter()
            .flat_map(|p| p.windows(l).map(<[usize]>::to_vec))
            .collect();
        let hit = truth.intersection(&cands).count() as f64;
        (hit / truth.len() as f64, hit / cands.len() as f64)
    }

    #[test]
    fn union_of_disjoint_hits() {
        // gt windows q1=(0,1) q2=(1,2) q3=(2,3) q4=(3,4)
        let gt = ro(&[0, 1, 2, 3, 4]);
        let a = ro(&[0, 1, 2, 4, 3]); // q1, q2
        let b = ro(&[4, 1, 2, 3, 0]); // q2, q3
        assert_eq!(query_recall(&gt, &a, 2).unwrap().matched, 2);
        assert_eq!(query_recall(&gt, &b, 2).unwrap().matched, 2);
        assert_eq!(union_recall(&gt, &[a, b], 2).unwrap(), 0.75);
    }

    #[test]
    fn identical_predictions_are_idempotent() {
        let gt = ro(&[0, 1, 2, 3, 4]);
        let p = ro(&[4, 0, 1, 2, 3]);
        let single = union_counts(&gt, std::slice::from_ref(&p), 2).unwrap();
        let double = union_counts(&gt, &[p.clone(), p.clone()], 2).unwrap();
        assert_eq!(single, double);
        assert_eq!(
            single.recall.recall(),
            query_recall(&gt, &p, 2).unwrap().recall()
        );
        // for one permutation, precision equals recall
        assert_eq!(single.precision.recall(), single.recall.recall());
    }

    #[test]
    fn reversed_prediction_halves_precision() {
        let gt = ro(&[1, 2, 3]);
        let preds = [ro(&[1, 2, 3]), ro(&[3, 2, 1])];
        assert_eq!(union_precision(&gt, &preds, 2).unwrap(), 0.5);
        assert_eq!(union_recall(&gt, &preds, 2).unwrap(), 1.0);
        assert_eq!(
            enumerate(&[1, 2, 3], &[vec![1, 2, 3], vec![3, 2, 1]], 2),
            (1.0, 0.5)
        );
    }

    #[test]
    fn query_set_tracks_sources() {
        let a = ro(&[0, 1, 2]);
        let b = ro(&[2, 0, 1]);
        let qs = QuerySet::new([("a", &a), ("b", &b)], 2);
        assert_eq!(qs.windows().len(), 3);
        assert_eq!(qs.sources_of(&[0, 1]), vec!["a", "b"]);
        assert_eq!(qs.entries().count(), 4);
    }

    #[test]
    fn rejects_non_permutations() {
        let gt = ro(&[0, 1, 2]);
        assert!(matches!(
            union_recall(&gt, &[ro(&[0, 1, 1])], 2),
            Err(Error::NotPermutation(_))
        ));
    }

    proptest::proptest! {
        #[test]
        fn matches_enumeration_and_grows_with_models(
            n in 2usize..9,
            seeds in proptest::collection::vec(proptest::prelude::any::<u64>(), 1..4),
            l in 1usize..9,
        ) {
            use rand::{seq::SliceRandom, SeedableRng};
            let l = l.min(n);
            let gt: Vec<usize> = (0..n).collect();
            let preds: Vec<Vec<usize>> = seeds.iter().map(|&s| {
                let mut v = gt.clone();
                v.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(s));
                v
            }).collect();
            let orders: Vec<ReadingOrder> = preds.iter().map(|p| ro(p)).collect();
            let (r, p) = enumerate(&gt, &preds, l);
            proptest::prop_assert_eq!(union_recall(&ro(&gt), &orders, l).unwrap(), r);
            proptest::prop_assert_eq!(union_precision(&ro(&gt), &orders, l).unwrap(), p);
            for k in 1..orders.len() {
                let fewer = union_recall(&ro(&gt), &orders[..k], l).unwrap();
                proptest::prop_assert!(fewer <= r);
            }
        }
    }
}
