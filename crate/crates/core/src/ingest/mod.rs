//! Reading and writing pages, predictions and datasets.
//!
//! Three on-disk formats live here:
//!
//! - the canonical page file, one CSV per page with pixel geometry
//!   (see [`canonical`]);
//! - the prediction interchange file, one page per line
//!   (see [`predictions`]);
//! - coordinate tables in the layout published with the Kuzushiji dataset,
//!   with configurable column names (see [`codh`]).

pub mod canonical;
pub mod codh;
pub mod dataset;
pub mod predictions;

use crate::error::{Error, Result};
use crate::model::{CharBox, Page, ReadingOrder};

/// One character row in pixel units, before normalization.
#[derive(Debug, Clone, PartialEq)]
pub struct CoordinateRow {
    /// Line number in the source file, for diagnostics.
    pub line: u64,
    pub label: char,
    pub x: f64,
    pub y: f64,
    pub width: f64,
    pub height: f64,
    /// Reading position key; ground truth is the row ids sorted by it.
    pub char_id: Option<i64>,
}

/// Builds a page from pixel rows. Row `i` becomes character id `i`.
///
/// Boxes overrunning the image by at most one pixel are clipped to the image;
/// anything further out is rejected.
pub fn import_page(
    page_id: &str,
    rows: &[CoordinateRow],
    image_dims: (u32, u32),
) -> Result<Page> {
    let (width, height) = image_dims;
    if width == 0 || height == 0 {
        return Err(Error::InvalidPage {
            page_id: page_id.to_string(),
            reason: "image dimensions must be positive".into(),
        });
    }
    let (wf, hf) = (f64::from(width), f64::from(height));

    let mut chars = Vec::with_capacity(rows.len());
    for (id, row) in rows.iter().enumerate() {
        let malformed = |reason: &str| Error::MalformedRow {
            line: row.line,
            reason: reason.to_string(),
        };
        let geometry = [row.x, row.y, row.width, row.height];
        if geometry.iter().any(|v| !v.is_finite()) {
            return Err(malformed("non-numeric geometry"));
        }
        if row.x < 0.0 || row.y < 0.0 {
            return Err(malformed("negative position"));
        }
        if row.width <= 0.0 || row.height <= 0.0 {
            return Err(malformed("width and height must be positive"));
        }
        let out_of_bounds = Error::BoxOutOfBounds {
            line: row.line,
            width,
            height,
        };
        if row.x + row.width > wf + 1.0 || row.y + row.height > hf + 1.0 {
            return Err(out_of_bounds);
        }
        let w = row.width.min(wf - row.x);
        let h = row.height.min(hf - row.y);
        if w <= 0.0 || h <= 0.0 {
            return Err(out_of_bounds);
        }
        chars.push(CharBox::new(id, row.label, row.x / wf, row.y / hf, w / wf, h / hf)?);
    }

    let ground_truth = ground_truth_from_char_ids(page_id, rows)?;
    Page::new(page_id, width, height, chars, ground_truth)
}

fn ground_truth_from_char_ids(page_id: &str, rows: &[CoordinateRow]) -> Result<Option<ReadingOrder>> {
    let known = rows.iter().filter(|r| r.char_id.is_some()).count();
    if known == 0 {
        return Ok(None);
    }
    if known != rows.len() {
        let line = rows.iter().find(|r| r.char_id.is_none()).map_or(0, |r| r.line);
        return Err(Error::MalformedRow {
            line,
            reason: "reading index missing while other rows carry one".into(),
        });
    }
    let mut keyed: Vec<(i64, usize)> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| (r.char_id.unwrap_or_default(), i))
        .collect();
    keyed.sort_unstable();
    if let Some(w) = keyed.windows(2).find(|w| w[0].0 == w[1].0) {
        return Err(Error::DuplicateCharId {
            page_id: page_id.to_string(),
            char_id: w[0].0.to_string(),
        });
    }
    Ok(Some(ReadingOrder::new(keyed.into_iter().map(|(_, i)| i).collect())))
}

/// Parses `U+XXXX` (or a bare hex number) into a character.
pub fn parse_codepoint(s: &str) -> Option<char> {
    let s = s.trim();
    let hex = s
        .strip_prefix("U+")
        .or_else(|| s.strip_prefix("u+"))
        .unwrap_or(s);
    u32::from_str_radix(hex, 16).ok().and_then(char::from_u32)
}

pub fn format_codepoint(c: char) -> String {
    format!("U+{:04X}", u32::from(c))
}

/// Reading-position keys appear either as plain integers or with an alphabetic
/// prefix such as `C0012`.
pub fn parse_char_id(s: &str) -> Option<i64> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    if let Ok(v) = s.parse::<i64>() {
        return Some(v);
    }
    let digits = s.trim_start_matches(|c: char| !c.is_ascii_digit());
    digits.parse::<i64>().ok()
}

/// Pixel values are written with at most six decimals and no trailing zeros,
/// so rewriting an imported file reproduces the same text.
pub fn format_pixels(v: f64) -> String {
    let s = format!("{v:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
    }
}
