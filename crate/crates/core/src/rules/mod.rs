//! Rule-based reading-order models.
//!
//! Both models scan columns right to left and read each column top to
//! bottom. They differ in how a column is delimited: [`simple`] uses fixed
//! distances in page units, [`adaptive`] derives every threshold from the
//! sizes of the characters on the page and also recognizes double
//! sub-columns.

pub mod adaptive;
pub mod simple;

use rayon::prelude::*;

pub use adaptive::{adaptive_order, AdaptiveRulesConfig};
pub use simple::{simple_order, SimpleRulesConfig};

use crate::error::{Error, Result};
use crate::ingest::predictions::Predictions;
use crate::model::{Page, Point, ReadingOrder};

pub trait Orderer: Sync {
    fn name(&self) -> &str;

    /// Always returns a permutation of the page's character ids.
    fn order(&self, page: &Page) -> ReadingOrder;
}

impl Orderer for SimpleRulesConfig {
    fn name(&self) -> &str {
        "simple"
    }

    fn order(&self, page: &Page) -> ReadingOrder {
        simple_order(page, self)
    }
}

impl Orderer for AdaptiveRulesConfig {
    fn name(&self) -> &str {
        "adaptive"
    }

    fn order(&self, page: &Page) -> ReadingOrder {
        adaptive_order(page, self)
    }
}

/// Orders every page on `jobs` threads (0 = rayon's default). The result is
/// keyed by page id and does not depend on the thread count.
pub fn order_pages<'a, O, I>(orderer: &O, pages: I, jobs: usize) -> Result<Predictions>
where
    O: Orderer + ?Sized,
    I: IntoIterator<Item = &'a Page>,
{
    let pages: Vec<&Page> = pages.into_iter().collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::InvalidConfig(format!("thread pool: {e}")))?;
    let ordered: Vec<(String, ReadingOrder)> = pool.install(|| {
        pages
            .par_iter()
            .map(|p| (p.page_id.clone(), orderer.order(p)))
            .collect()
    });
    let mut out = Predictions::new();
    for (id, order) in ordered {
        if out.insert(id.clone(), order).is_some() {
            return Err(Error::DuplicatePage(id));
        }
    }
    Ok(out)
}

/// Bookkeeping shared by both scans: which characters are still unread and
/// the order emitted so far.
struct Scan<'p> {
    centers: Vec<Point>,
    page: &'p Page,
    remaining: Vec<bool>,
    left: usize,
    out: Vec<usize>,
}

impl<'p> Scan<'p> {
    fn new(page: &'p Page) -> Self {
        let n = page.len();
        Scan {
            centers: page.centers(),
            page,
            remaining: vec![true; n],
            left: n,
            out: Vec::with_capacity(n),
        }
    }

    fn take(&mut self, id: usize) {
        debug_assert!(self.remaining[id]);
        self.remaining[id] = false;
        self.left -= 1;
        self.out.push(id);
    }

    fn done(&self) -> bool {
        self.left == 0
    }

    fn unread(&self) -> impl Iterator<Item = usize> + '_ {
        self.remaining
            .iter()
            .enumerate()
            .filter_map(|(i, &r)| r.then_some(i))
    }

    /// Rightmost unread character, then the topmost among those whose center
    /// lies within `band` of it horizontally. Ties go to the lower id.
    fn column_start(&self, band: f64) -> usize {
        let max_x = self
            .unread()
            .map(|i| self.centers[i].x)
            .fold(f64::NEG_INFINITY, f64::max);
        self.unread()
            .filter(|&i| self.centers[i].x >= max_x - band)
            .min_by(|&a, &b| {
                self.centers[a]
                    .y
                    .total_cmp(&self.centers[b].y)
                    .then(a.cmp(&b))
            })
            .expect("called with unread characters")
    }

    /// Nearest unread character strictly below `from` that passes `accept`,
    /// with its Euclidean center distance. Ties go to the lower id.
    fn nearest_below(&self, from: usize, accept: impl Fn(usize) -> bool) -> Option<(usize, f64)> {
        let origin = self.centers[from];
        self.unread()
            .filter(|&j| self.centers[j].y > origin.y && accept(j))
            .map(|j| (j, origin.distance(self.centers[j])))
            .min_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)))
    }

    fn finish(self) -> ReadingOrder {
        debug_assert!(self.done());
        ReadingOrder::new(self.out)
    }
}
