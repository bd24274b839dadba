//! Page geometry shared by the orderers, the metrics and the file formats.
//!
//! All coordinates are normalized by the page image size: `x` runs left to
//! right over `[0, 1]` and `y` runs top to bottom over `[0, 1]`.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Slack allowed for boxes that touch the right or bottom page edge.
pub const EDGE_EPSILON: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn distance(self, other: Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

/// One character occurrence on a page.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CharBox {
    pub id: usize,
    pub label: char,
    pub x: f64,
    pub y: f64,
    pub w: f64,
    pub h: f64,
}

impl CharBox {
    pub fn new(id: usize, label: char, x: f64, y: f64, w: f64, h: f64) -> Result<Self> {
        let b = CharBox {
            id,
            label,
            x,
            y,
            w,
            h,
        };
        b.validate()?;
        Ok(b)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |reason: &str| {
            Err(Error::InvalidBox {
                id: self.id,
                reason: reason.to_string(),
            })
        };
        if ![self.x, self.y, self.w, self.h].iter().all(|v| v.is_finite()) {
            return bad("non-finite geometry");
        }
        if self.w <= 0.0 || self.h <= 0.0 {
            return bad("width and height must be positive");
        }
        if self.x < 0.0 || self.y < 0.0 {
            return bad("negative position");
        }
        if self.x + self.w > 1.0 + EDGE_EPSILON || self.y + self.h > 1.0 + EDGE_EPSILON {
            return bad("box extends past the page");
        }
        Ok(())
    }

    pub fn center(&self) -> Point {
        center(self)
    }

    pub fn right(&self) -> f64 {
        self.x + self.w
    }

    pub fn bottom(&self) -> f64 {
        self.y + self.h
    }
}

pub fn center(c: &CharBox) -> Point {
    Point {
        x: c.x + c.w / 2.0,
        y: c.y + c.h / 2.0,
    }
}

/// Length of the shared horizontal extent of two boxes.
pub fn x_overlap(a: &CharBox, b: &CharBox) -> f64 {
    (a.right().min(b.right()) - a.x.max(b.x)).max(0.0)
}

pub fn mean_char_width(p: &Page) -> Result<f64> {
    if p.chars.is_empty() {
        return Err(Error::EmptyPage);
    }
    Ok(p.chars.iter().map(|c| c.w).sum::<f64>() / p.chars.len() as f64)
}

pub fn mean_char_height(p: &Page) -> Result<f64> {
    if p.chars.is_empty() {
        return Err(Error::EmptyPage);
    }
    Ok(p.chars.iter().map(|c| c.h).sum::<f64>() / p.chars.len() as f64)
}

/// A sequence of character ids. Orderers always return a permutation of the
/// page's ids; use [`ReadingOrder::check_permutation_of`] on anything read
/// from outside.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ReadingOrder(pub Vec<usize>);

impl ReadingOrder {
    pub fn new(sequence: Vec<usize>) -> Self {
        ReadingOrder(sequence)
    }

    pub fn identity(n: usize) -> Self {
        ReadingOrder((0..n).collect())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Checks that this is a permutation of `0..n`.
    pub fn check_permutation(&self, n: usize) -> Result<()> {
        if self.0.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                actual: self.0.len(),
            });
        }
        let mut seen = vec![false; n];
        for &id in &self.0 {
            if id >= n {
                return Err(Error::NotPermutation(format!("id {id} out of range 0..{n}")));
            }
            if std::mem::replace(&mut seen[id], true) {
                return Err(Error::NotPermutation(format!("id {id} repeated")));
            }
        }
        Ok(())
    }

    /// Checks that both sequences hold the same distinct ids.
    pub fn check_permutation_of(&self, other: &ReadingOrder) -> Result<()> {
        if self.0.len() != other.0.len() {
            return Err(Error::LengthMismatch {
                expected: other.0.len(),
                actual: self.0.len(),
            });
        }
        let reference: HashSet<usize> = other.0.iter().copied().collect();
        if reference.len() != other.0.len() {
            return Err(Error::NotPermutation("reference sequence repeats an id".into()));
        }
        let mut seen = HashSet::with_capacity(self.0.len());
        for &id in &self.0 {
            if !reference.contains(&id) {
                return Err(Error::NotPermutation(format!("unexpected id {id}")));
            }
            if !seen.insert(id) {
                return Err(Error::NotPermutation(format!("id {id} repeated")));
            }
        }
        Ok(())
    }

    /// `positions()[id]` is the index of `id` in the sequence. Assumes the
    /// sequence is a permutation of `0..len`.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.0.len()];
        for (i, &id) in self.0.iter().enumerate() {
            pos[id] = i;
        }
        pos
    }
}

impl From<Vec<usize>> for ReadingOrder {
    fn from(v: Vec<usize>) -> Self {
        ReadingOrder(v)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Page {
    pub page_id: String,
    pub image_width: u32,
    pub image_height: u32,
    pub chars: Vec<CharBox>,
    pub ground_truth: Option<ReadingOrder>,
}

impl Page {
    pub fn new(
        page_id: impl Into<String>,
        image_width: u32,
        image_height: u32,
        chars: Vec<CharBox>,
        ground_truth: Option<ReadingOrder>,
    ) -> Result<Self> {
        let page = Page {
            page_id: page_id.into(),
            image_width,
            image_height,
            chars,
            ground_truth,
        };
        page.validate()?;
        Ok(page)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |reason: String| {
            Err(Error::InvalidPage {
                page_id: self.page_id.clone(),
                reason,
            })
        };
        if self.page_id.is_empty() || self.page_id.chars().any(char::is_whitespace) {
            return bad("page id must be non-empty and free of whitespace".into());
        }
        if self.image_width == 0 || self.image_height == 0 {
            return bad("image dimensions must be positive".into());
        }
        for (i, c) in self.chars.iter().enumerate() {
            if c.id != i {
                return bad(format!("char at index {i} has id {}", c.id));
            }
            c.validate()?;
        }
        if let Some(gt) = &self.ground_truth {
            gt.check_permutation(self.chars.len())?;
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.chars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chars.is_empty()
    }

    pub fn centers(&self) -> Vec<Point> {
        self.chars.iter().map(center).collect()
    }

    /// Copy of this page with every coordinate and size multiplied by `s`,
    /// shrinking the contents toward the top-left corner.
    pub fn scaled(&self, s: f64) -> Result<Page> {
        if !(s > 0.0 && s <= 1.0) {
            return Err(Error::InvalidConfig(format!("scale {s} outside (0, 1]")));
        }
        self.map_boxes(|c| CharBox {
            x: c.x * s,
            y: c.y * s,
            w: c.w * s,
            h: c.h * s,
            ..*c
        })
    }

    /// Copy of this page with every box shifted by `(dx, dy)`.
    pub fn translated(&self, dx: f64, dy: f64) -> Result<Page> {
        self.map_boxes(|c| CharBox {
            x: c.x + dx,
            y: c.y + dy,
            ..*c
        })
    }

    fn map_boxes(&self, f: impl Fn(&CharBox) -> CharBox) -> Result<Page> {
        let page = Page {
            chars: self.chars.iter().map(f).collect(),
            ..self.clone()
        };
        page.validate()?;
        Ok(page)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Book {
    pub book_id: String,
    pub pages: Vec<Page>,
}

impl Book {
    pub fn new(book_id: impl Into<String>, pages: Vec<Page>) -> Result<Self> {
        let book_id = book_id.into();
        let mut seen = HashSet::new();
        for p in &pages {
            if !seen.insert(p.page_id.as_str()) {
                return Err(Error::DuplicatePage(p.page_id.clone()));
            }
        }
        Ok(Book { book_id, pages })
    }
}
