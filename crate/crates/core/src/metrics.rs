//! Edit-distance accuracy and in-place query recall.
//!
//! Accuracy for one page is `1 - d(gt, pred) / |gt|` where `d` is the unit-cost
//! Levenshtein distance between the two id sequences. Query recall at length
//! `L` counts the `|gt| - L + 1` contiguous ground-truth windows and reports
//! how many also occur as a contiguous run in the prediction.
//!
//! Book and overall figures pool numerators and denominators across pages
//! rather than averaging page percentages.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ingest::dataset::Dataset;
use crate::model::{Page, ReadingOrder};

/// Query lengths reported in the per-length recall table.
pub const REPORT_LENGTHS: [usize; 16] = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 15, 20, 25, 30, 40, 50];

/// Range of query lengths pooled into the single "recall" column.
pub const POOLED_LENGTHS: std::ops::RangeInclusive<usize> = 2..=20;

/// Explains the recall denominator; printed with every evaluation.
pub const RECALL_NOTE: &str = "\
note: recall at query length L counts the |gt| - L + 1 contiguous ground-truth windows of a page.
      Example: gt (1,2,3,4,5) vs prediction (5,1,2,3,4) at L=2 matches 3 of the 4 windows
      (1,2),(2,3),(3,4),(4,5), a recall of 75.00%. Counting the wrapped pair (5,1) as a fifth
      window would instead give 4/5 = 80.00%; this tool does not count wrapped windows.";

/// Unit-cost Levenshtein distance.
pub fn edit_distance<T: PartialEq>(a: &[T], b: &[T]) -> usize {
    if a.is_empty() {
        return b.len();
    }
    if b.is_empty() {
        return a.len();
    }
    let mut prev: Vec<usize> = (0..=b.len()).collect();
    let mut cur = vec![0; b.len() + 1];
    for (i, ai) in a.iter().enumerate() {
        cur[0] = i + 1;
        for (j, bj) in b.iter().enumerate() {
            let sub = prev[j] + usize::from(ai != bj);
            cur[j + 1] = sub.min(prev[j + 1] + 1).min(cur[j] + 1);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len()]
}

/// `1 - d(gt, pred) / |gt|`. An empty page scores 1.0.
pub fn accuracy(gt: &ReadingOrder, pred: &ReadingOrder) -> Result<f64> {
    pred.check_permutation_of(gt)?;
    if gt.is_empty() {
        return Ok(1.0);
    }
    let d = edit_distance(gt.as_slice(), pred.as_slice());
    Ok(1.0 - d as f64 / gt.len() as f64)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowCount {
    pub matched: usize,
    pub total: usize,
}

impl WindowCount {
    pub fn recall(&self) -> Option<f64> {
        (self.total > 0).then(|| self.matched as f64 / self.total as f64)
    }
}

impl std::ops::AddAssign for WindowCount {
    fn add_assign(&mut self, rhs: Self) {
        self.matched += rhs.matched;
        self.total += rhs.total;
    }
}

/// For each ground-truth position `i`, whether the pair `(gt[i], gt[i+1])`
/// is adjacent and in order in the prediction. A window is matched iff all
/// of its pairs are.
fn adjacent_pairs(gt: &ReadingOrder, pred: &ReadingOrder) -> Vec<bool> {
    let pos: HashMap<usize, usize> = pred
        .as_slice()
        .iter()
        .enumerate()
        .map(|(i, &id)| (id, i))
        .collect();
    gt.as_slice()
        .windows(2)
        .map(|w| pos[&w[1]] == pos[&w[0]] + 1)
        .collect()
}

fn count_windows(pairs_ok: &[bool], n: usize, length: usize) -> WindowCount {
    let total = n + 1 - length;
    let need = length - 1;
    if need == 0 {
        return WindowCount { matched: total, total };
    }
    // matched windows start at i where pairs_ok[i..i + need] are all true
    let mut matched = 0;
    let mut run = 0;
    for &ok in pairs_ok {
        run = if ok { run + 1 } else { 0 };
        if run >= need {
            matched += 1;
        }
    }
    WindowCount { matched, total }
}

pub fn query_recall(gt: &ReadingOrder, pred: &ReadingOrder, length: usize) -> Result<WindowCount> {
    pred.check_permutation_of(gt)?;
    if length == 0 || length > gt.len() {
        return Err(Error::BadLength {
            length,
            max: gt.len(),
        });
    }
    Ok(count_windows(&adjacent_pairs(gt, pred), gt.len(), length))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PageScores {
    pub book_id: String,
    pub chars: usize,
    pub edit_distance: usize,
    pub accuracy: f64,
    /// Lengths longer than the page are absent.
    pub recall_by_length: BTreeMap<usize, WindowCount>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Aggregate {
    pub pages: usize,
    pub chars: usize,
    pub edit_distance: usize,
    pub recall_by_length: BTreeMap<usize, WindowCount>,
}

impl Aggregate {
    fn add(&mut self, s: &PageScores) {
        self.pages += 1;
        self.chars += s.chars;
        self.edit_distance += s.edit_distance;
        for (&l, &c) in &s.recall_by_length {
            *self.recall_by_length.entry(l).or_default() += c;
        }
    }

    /// Pooled accuracy; 1.0 when there is nothing to score.
    pub fn accuracy(&self) -> f64 {
        if self.chars == 0 {
            1.0
        } else {
            1.0 - self.edit_distance as f64 / self.chars as f64
        }
    }

    pub fn recall(&self, length: usize) -> Option<f64> {
        self.recall_by_length.get(&length).and_then(WindowCount::recall)
    }

    /// Recall pooled over every evaluated length in `range`.
    pub fn pooled_recall(&self, range: std::ops::RangeInclusive<usize>) -> Option<f64> {
        let mut sum = WindowCount::default();
        for (_, &c) in self.recall_by_length.range(range) {
            sum += c;
        }
        sum.recall()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub per_page: BTreeMap<String, PageScores>,
    pub per_book: BTreeMap<String, Aggregate>,
    pub overall: Aggregate,
}

pub fn score_page(book_id: &str, page: &Page, pred: &ReadingOrder, lengths: &[usize]) -> Result<PageScores> {
    let gt = page
        .ground_truth
        .as_ref()
        .ok_or_else(|| Error::MissingGroundTruth(page.page_id.clone()))?;
    pred.check_permutation_of(gt)?;
    let n = gt.len();
    let d = edit_distance(gt.as_slice(), pred.as_slice());
    let pairs = adjacent_pairs(gt, pred);
    let recall_by_length = lengths
        .iter()
        .filter(|&&l| l >= 1 && l <= n)
        .map(|&l| (l, count_windows(&pairs, n, l)))
        .collect();
    Ok(PageScores {
        book_id: book_id.to_string(),
        chars: n,
        edit_distance: d,
        accuracy: if n == 0 { 1.0 } else { 1.0 - d as f64 / n as f64 },
        recall_by_length,
    })
}

/// Scores `(book_id, page)` pairs that carry ground truth; pages without it
/// are skipped.
pub fn evaluate_pages<'a, I>(pages: I, preds: &BTreeMap<String, ReadingOrder>, lengths: &[usize]) -> Result<EvalReport>
where
    I: IntoIterator<Item = (&'a str, &'a Page)>,
{
    let mut report = EvalReport::default();
    for (book_id, page) in pages {
        if page.ground_truth.is_none() {
            continue;
        }
        let pred = preds
            .get(&page.page_id)
            .ok_or_else(|| Error::MissingPrediction(page.page_id.clone()))?;
        let scores = score_page(book_id, page, pred, lengths)?;
        report.per_book.entry(book_id.to_string()).or_default().add(&scores);
        report.overall.add(&scores);
        report.per_page.insert(page.page_id.clone(), scores);
    }
    Ok(report)
}

pub fn evaluate(d: &Dataset, preds: &BTreeMap<String, ReadingOrder>, lengths: &[usize]) -> Result<EvalReport> {
    evaluate_pages(d.pages(), preds, lengths)
}

/// Every length the report tables need: `REPORT_LENGTHS` plus the pooled range.
pub fn default_lengths() -> Vec<usize> {
    let mut v: Vec<usize> = REPORT_LENGTHS.iter().copied().chain(POOLED_LENGTHS).collect();
    v.sort_unstable();
    v.dedup();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Explores every alignment: delete from `a`, insert from `b`, or
    /// substitute/match the heads.
    fn brute_force(a: &[u8], b: &[u8]) -> usize {
        match (a.split_first(), b.split_first()) {
            (None, _) => b.len(),
            (_, None) => a.len(),
            (Some((ha, ta)), Some((hb, tb))) => {
                let sub = brute_force(ta, tb) + usize::from(ha != hb);
                let del = brute_force(ta, b) + 1;
                let ins = brute_force(a, tb) + 1;
                sub.min(del).min(ins)
            }
        }
    }

    fn ro(v: &[usize]) -> ReadingOrder {
        ReadingOrder::new(v.to_vec())
    }

    #[test]
    fn edit_distance_examples() {
        assert_eq!(edit_distance(&[1, 2, 3, 4, 5], &[5, 1, 2, 3, 4]), 2);
        assert_eq!(edit_distance(&[7, 8, 9], &[7, 8, 9]), 0);
        assert_eq!(brute_force(&[1, 2, 3], &[4, 5, 6, 7]), 4);
        assert_eq!(edit_distance(&[1, 2, 3], &[4, 5, 6, 7]), 4);
        assert_eq!(edit_distance::<u8>(&[], &[1, 2]), 2);
    }

    #[test]
    fn accuracy_examples() {
        assert_eq!(accuracy(&ro(&[1, 2, 3, 4, 5]), &ro(&[5, 1, 2, 3, 4])).unwrap(), 0.6);
        assert_eq!(accuracy(&ro(&[3, 1, 2]), &ro(&[3, 1, 2])).unwrap(), 1.0);
        assert_eq!(brute_force(&[1, 2], &[2, 1]), 2);
        assert_eq!(accuracy(&ro(&[1, 2]), &ro(&[2, 1])).unwrap(), 0.0);
        assert_eq!(accuracy(&ro(&[]), &ro(&[])).unwrap(), 1.0);
        assert!(matches!(
            accuracy(&ro(&[1, 2]), &ro(&[1])),
            Err(Error::LengthMismatch { .. })
        ));
        assert!(matches!(
            accuracy(&ro(&[1, 2]), &ro(&[1, 3])),
            Err(Error::NotPermutation(_))
        ));
    }

    #[test]
    fn recall_examples() {
        let gt = ro(&[1, 2, 3, 4, 5]);
        let pred = ro(&[5, 1, 2, 3, 4]);
        let c = query_recall(&gt, &pred, 2).unwrap();
        assert_eq!(c, WindowCount { matched: 3, total: 4 });
        assert_eq!(c.recall(), Some(0.75));
        assert_eq!(query_recall(&gt, &pred, 1).unwrap().recall(), Some(1.0));
        for l in 1..=5 {
            assert_eq!(query_recall(&gt, &gt, l).unwrap().recall(), Some(1.0));
        }
        assert!(matches!(query_recall(&gt, &pred, 0), Err(Error::BadLength { .. })));
        assert!(matches!(query_recall(&gt, &pred, 6), Err(Error::BadLength { .. })));
    }

    #[test]
    fn note_states_both_conventions() {
        assert!(RECALL_NOTE.contains("75.00%"));
        assert!(RECALL_NOTE.contains("80.00%"));
    }

    /// Naive window matching: slide every gt window over every pred offset.
    fn naive_recall(gt: &[usize], pred: &[usize], l: usize) -> WindowCount {
        let total = gt.len() + 1 - l;
        let matched = gt
            .windows(l)
            .filter(|w| pred.windows(l).any(|p| p == *w))
            .count();
        WindowCount { matched, total }
    }

    fn perm_pair() -> impl Strategy<Value = (Vec<usize>, Vec<usize>)> {
        (1usize..14).prop_flat_map(|n| {
            (
                Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
                Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
            )
        })
    }

    proptest! {
        #[test]
        fn edit_distance_matches_brute_force(
            a in prop::collection::vec(0u8..4, 0..7),
            b in prop::collection::vec(0u8..4, 0..7),
        ) {
            prop_assert_eq!(edit_distance(&a, &b), brute_force(&a, &b));
        }

        #[test]
        fn edit_distance_is_a_metric(
            a in prop::collection::vec(0u8..3, 0..8),
            b in prop::collection::vec(0u8..3, 0..8),
            c in prop::collection::vec(0u8..3, 0..8),
        ) {
            let ab = edit_distance(&a, &b);
            prop_assert_eq!(ab, edit_distance(&b, &a));
            prop_assert_eq!(ab == 0, a == b);
            prop_assert!(edit_distance(&a, &c) <= ab + edit_distance(&b, &c));
        }

        #[test]
        fn recall_matches_naive_and_is_monotone((gt, pred) in perm_pair()) {
            let (g, p) = (ro(&gt), ro(&pred));
            let mut last = 1.0;
            for l in 1..=gt.len() {
                let c = query_recall(&g, &p, l).unwrap();
                prop_assert_eq!(c, naive_recall(&gt, &pred, l));
                let r = c.recall().unwrap();
                prop_assert!(r <= last + 1e-12);
                last = r;
            }
            prop_assert_eq!(query_recall(&g, &p, 1).unwrap().recall(), Some(1.0));
        }

        #[test]
        fn accuracy_bounds((gt, pred) in perm_pair()) {
            let a = accuracy(&ro(&gt), &ro(&pred)).unwrap();
            prop_assert!((0.0..=1.0).contains(&a));
            prop_assert_eq!(a == 1.0, gt == pred);
        }
    }
}
