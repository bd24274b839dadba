//! Column scan with page-relative thresholds and double sub-column handling.
//!
//! Every threshold is a multiple of the page's mean character width or
//! height, so the result does not change when the whole page is scaled.
//!
//! - A character continues the current column only if its center is within
//!   `width_multiplier * mean width` horizontally of some character already
//!   in the column, and at most `column_break_multiplier * mean height` below
//!   the last one.
//! - Before each step the scan checks whether the current character heads a
//!   double block: directly beneath it sit two side-by-side characters that
//!   both overlap it horizontally but not each other. The right sub-column is
//!   then read to its end, then the left one, and the column continues
//!   below the block.

use serde::{Deserialize, Serialize};

use super::Scan;
use crate::error::{Error, Result};
use crate::model::{mean_char_height, mean_char_width, x_overlap, CharBox, Page, ReadingOrder};

/// Characters whose centers differ vertically by at most this fraction of
/// the mean height count as one row of a double block.
const ROW_WINDOW: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AdaptiveRulesConfig {
    /// Column membership radius in mean character widths.
    pub width_multiplier: f64,
    /// Minimum horizontal overlap, as a fraction of the narrower box, for
    /// one box to sit over another.
    pub span_overlap_fraction: f64,
    /// Side-by-side characters needed under a header to open a double block.
    pub min_spanned: usize,
    /// Longest vertical step within a column, in mean character heights.
    pub column_break_multiplier: f64,
}

impl Default for AdaptiveRulesConfig {
    fn default() -> Self {
        AdaptiveRulesConfig {
            width_multiplier: 1.0,
            span_overlap_fraction: 0.25,
            min_spanned: 2,
            column_break_multiplier: 3.0,
        }
    }
}

impl AdaptiveRulesConfig {
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("width_multiplier", self.width_multiplier),
            ("span_overlap_fraction", self.span_overlap_fraction),
            ("column_break_multiplier", self.column_break_multiplier),
        ];
        for (name, v) in fields {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidConfig(format!("{name} must be positive, got {v}")));
            }
        }
        if self.min_spanned < 2 {
            return Err(Error::InvalidConfig(format!(
                "min_spanned must be at least 2, got {}",
                self.min_spanned
            )));
        }
        Ok(())
    }
}

struct Thresholds {
    membership: f64,
    column_break: f64,
    row_window: f64,
    overlap_fraction: f64,
    min_spanned: usize,
}

impl Thresholds {
    fn overlaps(&self, a: &CharBox, b: &CharBox) -> bool {
        x_overlap(a, b) >= self.overlap_fraction * a.w.min(b.w)
    }
}

pub fn adaptive_order(p: &Page, cfg: &AdaptiveRulesConfig) -> ReadingOrder {
    let (Ok(mean_w), Ok(mean_h)) = (mean_char_width(p), mean_char_height(p)) else {
        return ReadingOrder::default();
    };
    let t = Thresholds {
        membership: cfg.width_multiplier * mean_w,
        column_break: cfg.column_break_multiplier * mean_h,
        row_window: ROW_WINDOW * mean_h,
        overlap_fraction: cfg.span_overlap_fraction,
        min_spanned: cfg.min_spanned,
    };

    let mut scan = Scan::new(p);
    while !scan.done() {
        let start = scan.column_start(t.membership);
        read_column(&mut scan, &t, start);
    }
    scan.finish()
}

fn read_column(scan: &mut Scan<'_>, t: &Thresholds, start: usize) {
    scan.take(start);
    let mut members = vec![start];
    let mut cur = start;
    loop {
        if let Some((right, left)) = double_block_below(scan, t, cur) {
            let before = scan.out.len();
            for (head, other) in [(right, left), (left, right)] {
                cur = read_sub_column(scan, t, head, other);
            }
            members.extend_from_slice(&scan.out[before..]);
            continue;
        }

        let next = {
            let centers = &scan.centers;
            scan.nearest_below(cur, |j| {
                members
                    .iter()
                    .map(|&m| (centers[j].x - centers[m].x).abs())
                    .fold(f64::INFINITY, f64::min)
                    <= t.membership
            })
        };
        match next {
            Some((j, _)) if scan.centers[j].y - scan.centers[cur].y <= t.column_break => {
                scan.take(j);
                members.push(j);
                cur = j;
            }
            _ => break,
        }
    }
}

/// Returns `(right head, left head)` when `cur` sits over a double block.
fn double_block_below(scan: &Scan<'_>, t: &Thresholds, cur: usize) -> Option<(usize, usize)> {
    let chars = &scan.page.chars;
    let origin = scan.centers[cur];
    let under: Vec<usize> = scan
        .unread()
        .filter(|&j| {
            let dy = scan.centers[j].y - origin.y;
            dy > 0.0 && dy <= t.column_break && t.overlaps(&chars[cur], &chars[j])
        })
        .collect();
    if under.len() < t.min_spanned {
        return None;
    }
    let top = under
        .iter()
        .map(|&j| scan.centers[j].y)
        .fold(f64::INFINITY, f64::min);
    let mut row: Vec<usize> = under
        .into_iter()
        .filter(|&j| scan.centers[j].y - top <= t.row_window)
        .collect();
    row.sort_by(|&a, &b| {
        scan.centers[b]
            .x
            .total_cmp(&scan.centers[a].x)
            .then(a.cmp(&b))
    });

    let mut lanes: Vec<usize> = Vec::new();
    for j in row {
        if lanes.iter().all(|&k| !t.overlaps(&chars[j], &chars[k])) {
            lanes.push(j);
        }
    }
    // deeper splits are left to the ordinary column logic
    (lanes.len() >= t.min_spanned && lanes.len() == 2).then(|| (lanes[0], lanes[1]))
}

/// Reads one sub-column from `head` down; returns the last character read.
fn read_sub_column(scan: &mut Scan<'_>, t: &Thresholds, head: usize, other: usize) -> usize {
    scan.take(head);
    let mut cur = head;
    loop {
        let next = {
            let chars = &scan.page.chars;
            let centers = &scan.centers;
            scan.nearest_below(cur, |j| {
                centers[j].y - centers[cur].y <= t.column_break
                    && t.overlaps(&chars[cur], &chars[j])
                    && !t.overlaps(&chars[other], &chars[j])
            })
        };
        match next {
            Some((j, _)) => {
                scan.take(j);
                cur = j;
            }
            None => return cur,
        }
    }
}
