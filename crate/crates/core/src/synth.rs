//! Synthetic pages with known reading order.
//!
//! Columns are laid out right to left and read top to bottom. Four layout
//! kinds are available:
//!
//! - `RegularColumns`: an even grid.
//! - `IrregularSpacing`: small characters, gaps between neighbouring columns
//!   varying by ±50%, uneven line spacing and indented column starts.
//! - `Warichu`: regular columns, each carrying a block of two narrow
//!   sub-columns read right then left before the column resumes.
//! - `Chirashigaki`: columns drifting sideways along a smooth curve, with
//!   staggered starts.
//!
//! Character ids are shuffled so that id order carries no information about
//! reading order.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{CharBox, Page, ReadingOrder};

pub const IMAGE_WIDTH: u32 = 1000;
pub const IMAGE_HEIGHT: u32 = 1400;

const MARGIN: f64 = 0.05;
const SPAN: f64 = 1.0 - 2.0 * MARGIN;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LayoutKind {
    RegularColumns,
    IrregularSpacing,
    Warichu,
    Chirashigaki,
}

impl LayoutKind {
    pub const ALL: [LayoutKind; 4] = [
        LayoutKind::RegularColumns,
        LayoutKind::IrregularSpacing,
        LayoutKind::Warichu,
        LayoutKind::Chirashigaki,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            LayoutKind::RegularColumns => "regular_columns",
            LayoutKind::IrregularSpacing => "irregular_spacing",
            LayoutKind::Warichu => "warichu",
            LayoutKind::Chirashigaki => "chirashigaki",
        }
    }
}

impl std::fmt::Display for LayoutKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for LayoutKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        LayoutKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown layout kind `{s}`")))
    }
}

/// Placement of the double block within a warichu column: it follows row
/// `after_row` and occupies `rows` row slots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WarichuBlock {
    pub after_row: usize,
    pub rows: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SynthConfig {
    pub layout_kind: LayoutKind,
    pub n_columns: usize,
    /// Row slots per column. A warichu block row holds two characters.
    pub chars_per_column: usize,
    /// Maximum random offset of each character, as a fraction of its size.
    pub jitter: f64,
    pub rng_seed: u64,
    /// Fixed block placement for every warichu column; random when `None`.
    pub warichu_block: Option<WarichuBlock>,
}

impl SynthConfig {
    pub fn new(layout_kind: LayoutKind, n_columns: usize, chars_per_column: usize, jitter: f64, rng_seed: u64) -> Self {
        SynthConfig {
            layout_kind,
            n_columns,
            chars_per_column,
            jitter,
            rng_seed,
            warichu_block: None,
        }
    }

    /// A config of the given kind with column count, column length and jitter
    /// drawn from ranges that keep the page legible.
    pub fn random(layout_kind: LayoutKind, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_5eed_5eed_5eed);
        let n_columns = rng.gen_range(1..=10);
        let min_len = if layout_kind == LayoutKind::Warichu { 4 } else { 1 };
        let chars_per_column = rng.gen_range(min_len..=25);
        let jitter = match layout_kind {
            LayoutKind::RegularColumns | LayoutKind::Chirashigaki => rng.gen_range(0.0..0.45),
            LayoutKind::IrregularSpacing | LayoutKind::Warichu => rng.gen_range(0.0..0.1),
        };
        SynthConfig::new(layout_kind, n_columns, chars_per_column, jitter, seed)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidConfig(m));
        if self.n_columns == 0 || self.chars_per_column == 0 {
            return bad("n_columns and chars_per_column must be at least 1".into());
        }
        if !(self.jitter.is_finite() && self.jitter >= 0.0) {
            return bad(format!("jitter must be non-negative, got {}", self.jitter));
        }
        let jitter_limit = match self.layout_kind {
            LayoutKind::RegularColumns => 0.5,
            _ => 1.0,
        };
        if self.jitter >= jitter_limit {
            return bad(format!(
                "jitter {} must stay below {jitter_limit} for {}",
                self.jitter, self.layout_kind
            ));
        }
        if self.layout_kind == LayoutKind::Warichu {
            if self.chars_per_column < 3 {
                return bad("warichu columns need at least 3 row slots".into());
            }
            if let Some(b) = self.warichu_block {
                if b.rows == 0 || b.after_row + b.rows >= self.chars_per_column {
                    return bad(format!(
                        "block after row {} with {} rows does not fit {} row slots",
                        b.after_row, b.rows, self.chars_per_column
                    ));
                }
            } else if self.chars_per_column < 4 {
                return bad("random warichu placement needs at least 4 row slots".into());
            }
        }
        Ok(())
    }
}

/// A character placed by center, before jitter.
#[derive(Debug, Clone, Copy)]
struct Glyph {
    cx: f64,
    cy: f64,
    w: f64,
    h: f64,
}

pub fn generate_page(cfg: &SynthConfig) -> Result<Page> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
    let glyphs = match cfg.layout_kind {
        LayoutKind::RegularColumns => regular(cfg),
        LayoutKind::IrregularSpacing => irregular(cfg, &mut rng),
        LayoutKind::Warichu => warichu(cfg, &mut rng),
        LayoutKind::Chirashigaki => chirashigaki(cfg, &mut rng),
    };

    let n = glyphs.len();
    let mut ids: Vec<usize> = (0..n).collect();
    ids.shuffle(&mut rng);

    let mut chars: Vec<Option<CharBox>> = vec![None; n];
    for (g, &id) in glyphs.iter().zip(&ids) {
        let dx = cfg.jitter * g.w * rng.gen_range(-1.0..=1.0);
        let dy = cfg.jitter * g.h * rng.gen_range(-1.0..=1.0);
        let x = (g.cx + dx - g.w / 2.0).clamp(0.0, 1.0 - g.w);
        let y = (g.cy + dy - g.h / 2.0).clamp(0.0, 1.0 - g.h);
        let label = char::from_u32(rng.gen_range(0x4E00..=0x9FFF)).unwrap_or('字');
        chars[id] = Some(CharBox::new(id, label, x, y, g.w, g.h)?);
    }
    let chars = chars.into_iter().map(|c| c.expect("every id placed")).collect();
    let page_id = format!(
        "{}-{}x{}-s{}",
        cfg.layout_kind, cfg.n_columns, cfg.chars_per_column, cfg.rng_seed
    );
    Page::new(page_id, IMAGE_WIDTH, IMAGE_HEIGHT, chars, Some(ReadingOrder::new(ids)))
}

struct Grid {
    col_pitch: f64,
    row_pitch: f64,
    w: f64,
    h: f64,
}

impl Grid {
    fn new(n_columns: usize, rows: usize) -> Self {
        let col_pitch = (SPAN / n_columns as f64).min(0.12);
        let row_pitch = (SPAN / rows as f64).min(0.08);
        Grid {
            col_pitch,
            row_pitch,
            w: 0.6 * col_pitch,
            h: 0.8 * row_pitch,
        }
    }

    fn axis(&self, col: usize) -> f64 {
        1.0 - MARGIN - self.col_pitch * (col as f64 + 0.5)
    }

    fn row(&self, row: usize) -> f64 {
        MARGIN + self.row_pitch * (row as f64 + 0.5)
    }
}

fn regular(cfg: &SynthConfig) -> Vec<Glyph> {
    let g = Grid::new(cfg.n_columns, cfg.chars_per_column);
    let mut out = Vec::new();
    for col in 0..cfg.n_columns {
        for row in 0..cfg.chars_per_column {
            out.push(Glyph {
                cx: g.axis(col),
                cy: g.row(row),
                w: g.w,
                h: g.h,
            });
        }
    }
    out
}

fn warichu(cfg: &SynthConfig, rng: &mut ChaCha8Rng) -> Vec<Glyph> {
    let g = Grid::new(cfg.n_columns, cfg.chars_per_column);
    let sub_w = 0.4 * g.w;
    let mut out = Vec::new();
    for col in 0..cfg.n_columns {
        let block = cfg.warichu_block.unwrap_or_else(|| {
            let rows = rng.gen_range(2..=3.min(cfg.chars_per_column - 2));
            let after_row = rng.gen_range(0..=cfg.chars_per_column - rows - 2);
            WarichuBlock { after_row, rows }
        });
        let axis = g.axis(col);
        let main = |row: usize| Glyph {
            cx: axis,
            cy: g.row(row),
            w: g.w,
            h: g.h,
        };
        let sub = |row: usize, side: f64| Glyph {
            cx: axis + side * 0.25 * g.w,
            cy: g.row(row),
            w: sub_w,
            h: g.h,
        };
        let block_rows = block.after_row + 1..block.after_row + 1 + block.rows;
        out.extend((0..=block.after_row).map(main));
        out.extend(block_rows.clone().map(|r| sub(r, 1.0)));
        out.extend(block_rows.map(|r| sub(r, -1.0)));
        out.extend((block.after_row + 1 + block.rows..cfg.chars_per_column).map(main));
    }
    out
}

fn irregular(cfg: &SynthConfig, rng: &mut ChaCha8Rng) -> Vec<Glyph> {
    const MAX_INDENT: usize = 3;
    let fit_w = SPAN / (cfg.n_columns as f64 * 2.5 * 1.5);
    let fit_h = SPAN / ((cfg.chars_per_column + MAX_INDENT) as f64 * 1.45);
    let s = 0.016f64.min(fit_w).min(fit_h) * rng.gen_range(0.6..=1.0);

    let mut out = Vec::new();
    let mut axis = 1.0 - MARGIN - s;
    for col in 0..cfg.n_columns {
        if col > 0 {
            axis -= 2.5 * s * rng.gen_range(0.5..=1.5);
        }
        let indent = rng.gen_range(0..=MAX_INDENT) as f64;
        let mut cy = MARGIN + s / 2.0 + indent * 1.3 * s;
        for row in 0..cfg.chars_per_column {
            if row > 0 {
                cy += s * (1.0 + 0.3 * rng.gen_range(0.5..=1.5));
            }
            out.push(Glyph { cx: axis, cy, w: s, h: s });
        }
    }
    out
}

fn chirashigaki(cfg: &SynthConfig, rng: &mut ChaCha8Rng) -> Vec<Glyph> {
    const MAX_STAGGER: usize = 2;
    let g = Grid::new(cfg.n_columns, cfg.chars_per_column + MAX_STAGGER);
    let mut out = Vec::new();
    for col in 0..cfg.n_columns {
        let amplitude = 0.25 * g.col_pitch * rng.gen_range(0.5..=1.0);
        let phase = rng.gen_range(0.0..std::f64::consts::TAU);
        let freq = rng.gen_range(0.15..0.4);
        let stagger = rng.gen_range(0..=MAX_STAGGER);
        for row in 0..cfg.chars_per_column {
            out.push(Glyph {
                cx: g.axis(col) + amplitude * (phase + freq * row as f64).sin(),
                cy: g.row(row + stagger),
                w: g.w,
                h: g.h,
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reading_centers(page: &Page) -> Vec<(f64, f64)> {
        let gt = page.ground_truth.as_ref().unwrap();
        gt.as_slice()
            .iter()
            .map(|&id| {
                let c = page.chars[id].center();
                (c.x, c.y)
            })
            .collect()
    }

    #[test]
    fn regular_two_by_three() {
        let page = generate_page(&SynthConfig::new(LayoutKind::RegularColumns, 2, 3, 0.0, 1)).unwrap();
        let pts = reading_centers(&page);
        assert_eq!(pts.len(), 6);
        // right column first, each column top to bottom
        assert!(pts[..3].iter().all(|p| p.0 == pts[0].0));
        assert!(pts[3..].iter().all(|p| p.0 == pts[3].0));
        assert!(pts[0].0 > pts[3].0);
        assert!(pts[0].1 < pts[1].1 && pts[1].1 < pts[2].1);
        assert!(pts[3].1 < pts[4].1 && pts[4].1 < pts[5].1);
    }

    #[test]
    fn warichu_fixture_order() {
        let cfg = SynthConfig {
            warichu_block: Some(WarichuBlock { after_row: 1, rows: 2 }),
            ..SynthConfig::new(LayoutKind::Warichu, 1, 4, 0.0, 3)
        };
        let page = generate_page(&cfg).unwrap();
        let pts = reading_centers(&page);
        assert_eq!(pts.len(), 6);
        let axis = pts[0].0;
        // main0, main1 on the axis, then the right lane, then the left lane
        assert_eq!(pts[1].0, axis);
        assert!(pts[2].0 > axis && pts[3].0 > axis);
        assert!(pts[4].0 < axis && pts[5].0 < axis);
        assert!(pts[2].1 < pts[3].1 && pts[4].1 < pts[5].1);
        assert_eq!(pts[2].1, pts[4].1);
    }

    #[test]
    fn same_seed_same_page() {
        for kind in LayoutKind::ALL {
            let cfg = SynthConfig::random(kind, 42);
            assert_eq!(generate_page(&cfg).unwrap(), generate_page(&cfg).unwrap());
        }
    }

    #[test]
    fn invalid_configs() {
        let ok = SynthConfig::new(LayoutKind::RegularColumns, 2, 3, 0.0, 0);
        assert!(generate_page(&SynthConfig { n_columns: 0, ..ok }).is_err());
        assert!(generate_page(&SynthConfig { jitter: 0.5, ..ok }).is_err());
        assert!(generate_page(&SynthConfig { jitter: -0.1, ..ok }).is_err());
        let w = SynthConfig::new(LayoutKind::Warichu, 1, 3, 0.0, 0);
        assert!(matches!(generate_page(&w), Err(Error::InvalidConfig(_))));
        let w = SynthConfig {
            warichu_block: Some(WarichuBlock { after_row: 2, rows: 2 }),
            ..SynthConfig::new(LayoutKind::Warichu, 1, 4, 0.0, 0)
        };
        assert!(generate_page(&w).is_err());
    }

    #[test]
    fn regular_columns_are_unambiguous_under_jitter() {
        for seed in 0..200 {
            let mut cfg = SynthConfig::random(LayoutKind::RegularColumns, seed);
            cfg.jitter = 0.49;
            let page = generate_page(&cfg).unwrap();
            let g = Grid::new(cfg.n_columns, cfg.chars_per_column);
            let gt = page.ground_truth.as_ref().unwrap();
            for (pos, &id) in gt.as_slice().iter().enumerate() {
                let own = pos / cfg.chars_per_column;
                let cx = page.chars[id].center().x;
                let d_own = (cx - g.axis(own)).abs();
                for other in (0..cfg.n_columns).filter(|&c| c != own) {
                    assert!(d_own < (cx - g.axis(other)).abs());
                }
            }
        }
    }

    #[test]
    fn kind_names_round_trip() {
        for k in LayoutKind::ALL {
            assert_eq!(k.as_str().parse::<LayoutKind>().unwrap(), k);
        }
    }
}
