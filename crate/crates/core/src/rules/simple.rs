//! Fixed-threshold column scan.
//!
//! Start at the top-right unread character and repeatedly step to the nearest
//! character below it that is roughly in line horizontally. The column ends
//! when no such character exists or the step would be longer than
//! `column_break_distance`; the scan then restarts at the new top-right.

use serde::{Deserialize, Serialize};

use super::Scan;
use crate::error::{Error, Result};
use crate::model::{Page, ReadingOrder};

/// Distances are in normalized page units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimpleRulesConfig {
    /// Largest horizontal center offset for the next character of a column.
    pub column_x_tolerance: f64,
    /// Longest step, center to center, that continues a column.
    pub column_break_distance: f64,
    /// Characters this close to the rightmost center compete for the column
    /// start; the topmost of them wins.
    pub start_tiebreak_band: f64,
}

impl Default for SimpleRulesConfig {
    fn default() -> Self {
        SimpleRulesConfig {
            column_x_tolerance: 0.05,
            column_break_distance: 0.15,
            start_tiebreak_band: 0.03,
        }
    }
}

impl SimpleRulesConfig {
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("column_x_tolerance", self.column_x_tolerance),
            ("column_break_distance", self.column_break_distance),
            ("start_tiebreak_band", self.start_tiebreak_band),
        ];
        for (name, v) in fields {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidConfig(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(())
    }
}

pub fn simple_order(p: &Page, cfg: &SimpleRulesConfig) -> ReadingOrder {
    let mut scan = Scan::new(p);
    while !scan.done() {
        let mut cur = scan.column_start(cfg.start_tiebreak_band);
        scan.take(cur);
        loop {
            let cx = scan.centers[cur].x;
            let next = scan.nearest_below(cur, |j| {
                (scan.centers[j].x - cx).abs() <= cfg.column_x_tolerance
            });
            match next {
                Some((j, dist)) if dist <= cfg.column_break_distance => {
                    scan.take(j);
                    cur = j;
                }
                _ => break,
            }
        }
    }
    scan.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rules::test_support::page_from_centers;

    #[test]
    fn two_by_two_grid() {
        let page = page_from_centers(&[(0.5, 0.5), (0.9, 0.5), (0.5, 0.2), (0.9, 0.2)], 0.04);
        let order = simple_order(&page, &SimpleRulesConfig::default());
        // right-top, right-bottom, left-top, left-bottom
        assert_eq!(order.0, vec![3, 1, 2, 0]);
    }

    #[test]
    fn single_and_empty() {
        let page = page_from_centers(&[(0.3, 0.3)], 0.04);
        assert_eq!(simple_order(&page, &SimpleRulesConfig::default()).0, vec![0]);
        let empty = page_from_centers(&[], 0.04);
        assert!(simple_order(&empty, &SimpleRulesConfig::default()).is_empty());
    }

    #[test]
    fn gap_breaks_column_but_restart_recovers() {
        // 0.2 between the second and third character exceeds the 0.15 break
        let page = page_from_centers(&[(0.8, 0.1), (0.8, 0.2), (0.8, 0.4), (0.8, 0.5)], 0.04);
        let order = simple_order(&page, &SimpleRulesConfig::default());
        assert_eq!(order.0, vec![0, 1, 2, 3]);
    }

    #[test]
    fn start_band_prefers_top_character() {
        // rightmost center is lower in the column; the band lets the top win
        let page = page_from_centers(&[(0.81, 0.5), (0.8, 0.1), (0.8, 0.2)], 0.04);
        let order = simple_order(&page, &SimpleRulesConfig::default());
        assert_eq!(order.0, vec![1, 2, 0]);
    }

    #[test]
    fn equal_distances_prefer_lower_id() {
        let page = page_from_centers(&[(0.5, 0.125), (0.5, 0.25), (0.5, 0.25)], 0.03125);
        let order = simple_order(&page, &SimpleRulesConfig::default());
        assert_eq!(order.0, vec![0, 1, 2]);
        let page = page_from_centers(&[(0.5, 0.25), (0.5, 0.125), (0.5, 0.25)], 0.03125);
        let order = simple_order(&page, &SimpleRulesConfig::default());
        assert_eq!(order.0, vec![1, 0, 2]);
    }

    #[test]
    fn config_validation() {
        assert!(SimpleRulesConfig::default().validate().is_ok());
        let bad = SimpleRulesConfig {
            column_x_tolerance: 0.0,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
    }
}
