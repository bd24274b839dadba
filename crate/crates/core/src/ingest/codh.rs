//! Importer for coordinate tables as distributed with the Kuzushiji dataset.
//!
//! A book directory looks like
//!
//! ```text
//! 200003076/
//!   200003076_coordinate.csv   # Unicode,Image,X,Y,Block ID,Char ID,Width,Height
//!   images/200003076_00002_2.jpg
//! ```
//!
//! Rows are grouped into pages by the image column, in order of first
//! appearance. Column names are configurable through [`ColumnMapping`].

use std::collections::HashMap;
use std::io::Read;
use std::path::{Path, PathBuf};

use super::{import_page, parse_char_id, parse_codepoint, CoordinateRow};
use crate::error::{Error, Result};
use crate::model::{Book, Page};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColumnMapping {
    pub unicode: String,
    pub image: String,
    pub x: String,
    pub y: String,
    pub width: String,
    pub height: String,
    /// Reading-position column; `None` imports pages without ground truth.
    pub char_id: Option<String>,
}

impl Default for ColumnMapping {
    fn default() -> Self {
        ColumnMapping {
            unicode: "Unicode".into(),
            image: "Image".into(),
            x: "X".into(),
            y: "Y".into(),
            width: "Width".into(),
            height: "Height".into(),
            char_id: Some("Char ID".into()),
        }
    }
}

struct ColumnIndex {
    unicode: usize,
    image: usize,
    x: usize,
    y: usize,
    width: usize,
    height: usize,
    char_id: Option<usize>,
}

impl ColumnMapping {
    fn resolve(&self, headers: &csv::StringRecord) -> Result<ColumnIndex> {
        let find = |name: &str| {
            headers
                .iter()
                .position(|h| h.trim() == name)
                .ok_or_else(|| Error::MalformedRow {
                    line: 1,
                    reason: format!("missing column `{name}`"),
                })
        };
        Ok(ColumnIndex {
            unicode: find(&self.unicode)?,
            image: find(&self.image)?,
            x: find(&self.x)?,
            y: find(&self.y)?,
            width: find(&self.width)?,
            height: find(&self.height)?,
            char_id: match &self.char_id {
                Some(name) => headers.iter().position(|h| h.trim() == name),
                None => None,
            },
        })
    }
}

/// Imports every page of one coordinate table. `dims` maps an image name to
/// its pixel size.
pub fn import_coordinates<R, F>(input: R, mapping: &ColumnMapping, mut dims: F) -> Result<Vec<Page>>
where
    R: Read,
    F: FnMut(&str) -> Result<(u32, u32)>,
{
    let mut reader = csv::ReaderBuilder::new().flexible(true).from_reader(input);
    let cols = mapping.resolve(reader.headers()?)?;

    let mut order: Vec<String> = Vec::new();
    let mut grouped: HashMap<String, Vec<CoordinateRow>> = HashMap::new();
    for (i, rec) in reader.records().enumerate() {
        let line = i as u64 + 2;
        let rec = rec?;
        let malformed = |reason: String| Error::MalformedRow { line, reason };
        let field = |idx: usize| rec.get(idx).unwrap_or("").trim();
        let num = |idx: usize| {
            let v = field(idx);
            v.parse::<f64>()
                .map_err(|_| malformed(format!("non-numeric value `{v}`")))
        };
        let label = parse_codepoint(field(cols.unicode))
            .ok_or_else(|| malformed(format!("bad codepoint `{}`", field(cols.unicode))))?;
        let image = field(cols.image).to_string();
        if image.is_empty() {
            return Err(malformed("empty image name".into()));
        }
        let char_id = match cols.char_id {
            Some(idx) if !field(idx).is_empty() => Some(
                parse_char_id(field(idx))
                    .ok_or_else(|| malformed(format!("bad char id `{}`", field(idx))))?,
            ),
            _ => None,
        };
        let row = CoordinateRow {
            line,
            label,
            x: num(cols.x)?,
            y: num(cols.y)?,
            width: num(cols.width)?,
            height: num(cols.height)?,
            char_id,
        };
        grouped
            .entry(image.clone())
            .or_insert_with(|| {
                order.push(image);
                Vec::new()
            })
            .push(row);
    }

    order
        .into_iter()
        .map(|image| {
            let rows = &grouped[&image];
            let size = dims(&image)?;
            import_page(&image, rows, size)
        })
        .collect()
}

/// Reads the pixel size from an image file header.
pub fn probe_image_size(path: &Path) -> Result<(u32, u32)> {
    image::image_dimensions(path).map_err(|e| Error::ImageSize {
        path: path.to_path_buf(),
        reason: e.to_string(),
    })
}

/// Imports a book directory in the dataset's published layout, taking page
/// sizes from the image headers under `images/`.
pub fn import_book_dir(dir: &Path, mapping: &ColumnMapping) -> Result<Book> {
    let book_id = dir
        .file_name()
        .and_then(|n| n.to_str())
        .ok_or_else(|| Error::InvalidConfig(format!("bad book directory {}", dir.display())))?
        .to_string();
    let csv_path = dir.join(format!("{book_id}_coordinate.csv"));
    let file = std::fs::File::open(&csv_path).map_err(|e| Error::io(&csv_path, e))?;
    let images = dir.join("images");
    let pages = import_coordinates(file, mapping, |image| {
        probe_image_size(&find_image(&images, image)?)
    })?;
    Book::new(book_id, pages)
}

fn find_image(images: &Path, name: &str) -> Result<PathBuf> {
    let direct = images.join(name);
    if direct.is_file() {
        return Ok(direct);
    }
    for ext in ["jpg", "jpeg", "png"] {
        let p = images.join(format!("{name}.{ext}"));
        if p.is_file() {
            return Ok(p);
        }
    }
    Err(Error::ImageSize {
        path: direct,
        reason: "image not found".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const TABLE: &str = "\
Unicode,Image,X,Y,Block ID,Char ID,Width,Height
U+4E00,img_a,100,50,B0001,C0002,30,40
U+3042,img_a,100,100,B0001,C0001,30,40
U+3044,img_b,10,10,B0001,C0001,5,5
";

    #[test]
    fn groups_rows_by_image() {
        let pages = import_coordinates(TABLE.as_bytes(), &ColumnMapping::default(), |_| {
            Ok((1000, 2000))
        })
        .unwrap();
        assert_eq!(pages.len(), 2);
        assert_eq!(pages[0].page_id, "img_a");
        assert_eq!(pages[0].ground_truth.as_ref().unwrap().0, vec![1, 0]);
        assert_eq!(pages[1].len(), 1);
        assert_eq!(pages[0].chars[0].x, 0.1);
    }

    #[test]
    fn custom_columns_and_missing_order() {
        let table = "ch,page,left,top,w,h\nU+4E00,p,1,2,3,4\n";
        let mapping = ColumnMapping {
            unicode: "ch".into(),
            image: "page".into(),
            x: "left".into(),
            y: "top".into(),
            width: "w".into(),
            height: "h".into(),
            char_id: None,
        };
        let pages = import_coordinates(table.as_bytes(), &mapping, |_| Ok((10, 10))).unwrap();
        assert!(pages[0].ground_truth.is_none());
        assert!(import_coordinates(table.as_bytes(), &ColumnMapping::default(), |_| Ok((10, 10)))
            .is_err());
    }

    #[test]
    fn duplicate_ids_within_page() {
        let table = TABLE.replace("C0002", "C0001");
        let err = import_coordinates(table.as_bytes(), &ColumnMapping::default(), |_| {
            Ok((1000, 2000))
        })
        .unwrap_err();
        assert!(matches!(err, Error::DuplicateCharId { .. }));
    }
}
