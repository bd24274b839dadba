//! Collections of books with a train/validation assignment per page.
//!
//! On disk a dataset is a directory of book directories holding canonical
//! page files, plus an optional `split.csv`:
//!
//! ```text
//! root/
//!   split.csv            # book_id,page_id,split
//!   book_a/page_001.csv
//!   book_a/page_002.csv
//! ```

use std::collections::{BTreeMap, HashSet};
use std::path::Path;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::canonical::{load_page, save_page};
use crate::error::{Error, Result};
use crate::model::{Book, Page};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Split {
    Train,
    Validation,
}

impl std::str::FromStr for Split {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "train" => Ok(Split::Train),
            "validation" => Ok(Split::Validation),
            other => Err(Error::InvalidConfig(format!("unknown split `{other}`"))),
        }
    }
}

impl std::fmt::Display for Split {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Split::Train => "train",
            Split::Validation => "validation",
        })
    }
}

/// `(book_id, page_id)`
pub type PageKey = (String, String);

#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    books: Vec<Book>,
    split: BTreeMap<PageKey, Split>,
}

impl Dataset {
    /// Page ids must be unique across the whole dataset since prediction
    /// files are keyed by page id alone. Every page starts in `Train`.
    pub fn new(books: Vec<Book>) -> Result<Self> {
        let mut seen_books = HashSet::new();
        let mut seen_pages = HashSet::new();
        let mut split = BTreeMap::new();
        for b in &books {
            if !seen_books.insert(b.book_id.as_str()) {
                return Err(Error::InvalidConfig(format!("duplicate book {}", b.book_id)));
            }
            for p in &b.pages {
                if !seen_pages.insert(p.page_id.as_str()) {
                    return Err(Error::DuplicatePage(p.page_id.clone()));
                }
                split.insert((b.book_id.clone(), p.page_id.clone()), Split::Train);
            }
        }
        Ok(Dataset { books, split })
    }

    pub fn books(&self) -> &[Book] {
        &self.books
    }

    pub fn split_of(&self, book_id: &str, page_id: &str) -> Option<Split> {
        self.split
            .get(&(book_id.to_string(), page_id.to_string()))
            .copied()
    }

    pub fn set_split(&mut self, book_id: &str, page_id: &str, s: Split) -> Result<()> {
        match self.split.get_mut(&(book_id.to_string(), page_id.to_string())) {
            Some(slot) => {
                *slot = s;
                Ok(())
            }
            None => Err(Error::InvalidConfig(format!(
                "no page {page_id} in book {book_id}"
            ))),
        }
    }

    /// All `(book_id, page)` pairs in book order.
    pub fn pages(&self) -> impl Iterator<Item = (&str, &Page)> {
        self.books
            .iter()
            .flat_map(|b| b.pages.iter().map(move |p| (b.book_id.as_str(), p)))
    }

    pub fn pages_in(&self, s: Split) -> impl Iterator<Item = (&str, &Page)> {
        self.pages()
            .filter(move |(b, p)| self.split_of(b, &p.page_id) == Some(s))
    }

    pub fn page_count(&self) -> usize {
        self.split.len()
    }

    pub fn count(&self, s: Split) -> usize {
        self.split.values().filter(|&&v| v == s).count()
    }
}

/// Assigns `round(ratio * n)` uniformly chosen pages to train and the rest to
/// validation. The same seed always yields the same assignment.
pub fn split_dataset(d: &Dataset, ratio: f64, seed: u64) -> Result<Dataset> {
    if !(ratio > 0.0 && ratio < 1.0) {
        return Err(Error::InvalidConfig(format!("split ratio {ratio} outside (0, 1)")));
    }
    let mut keys: Vec<PageKey> = d
        .pages()
        .map(|(b, p)| (b.to_string(), p.page_id.clone()))
        .collect();
    let n_train = (ratio * keys.len() as f64).round() as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    keys.shuffle(&mut rng);

    let mut out = d.clone();
    for (i, key) in keys.into_iter().enumerate() {
        let s = if i < n_train {
            Split::Train
        } else {
            Split::Validation
        };
        out.split.insert(key, s);
    }
    Ok(out)
}

const SPLIT_FILE: &str = "split.csv";

pub fn save_dataset(d: &Dataset, root: &Path) -> Result<()> {
    std::fs::create_dir_all(root).map_err(|e| Error::io(root, e))?;
    for b in &d.books {
        let dir = root.join(&b.book_id);
        std::fs::create_dir_all(&dir).map_err(|e| Error::io(&dir, e))?;
        for p in &b.pages {
            save_page(p, &dir.join(format!("{}.csv", p.page_id)))?;
        }
    }
    let path = root.join(SPLIT_FILE);
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_path(&path)?;
    w.write_record(["book_id", "page_id", "split"])?;
    for (b, p) in d.pages() {
        let s = d.split_of(b, &p.page_id).unwrap_or(Split::Train);
        w.write_record([b, p.page_id.as_str(), &s.to_string()])?;
    }
    w.flush().map_err(|e| Error::io(&path, e))
}

pub fn load_dataset(root: &Path) -> Result<Dataset> {
    let mut book_dirs = Vec::new();
    for entry in std::fs::read_dir(root).map_err(|e| Error::io(root, e))? {
        let entry = entry.map_err(|e| Error::io(root, e))?;
        if entry.path().is_dir() {
            book_dirs.push(entry.path());
        }
    }
    book_dirs.sort();

    let mut books = Vec::new();
    for dir in book_dirs {
        let book_id = dir
            .file_name()
            .and_then(|n| n.to_str())
            .unwrap_or_default()
            .to_string();
        let mut files: Vec<_> = std::fs::read_dir(&dir)
            .map_err(|e| Error::io(&dir, e))?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "csv"))
            .collect();
        files.sort();
        let pages = files
            .iter()
            .map(|f| load_page(f))
            .collect::<Result<Vec<_>>>()?;
        books.push(Book::new(book_id, pages)?);
    }
    let mut d = Dataset::new(books)?;

    let split_path = root.join(SPLIT_FILE);
    if split_path.is_file() {
        let mut r = csv::Reader::from_path(&split_path)?;
        for rec in r.records() {
            let rec = rec?;
            let (b, p, s) = (&rec[0], &rec[1], &rec[2]);
            d.set_split(b, p, s.parse()?)?;
        }
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::CharBox;

    fn dataset(n: usize) -> Dataset {
        let pages = (0..n)
            .map(|i| {
                let c = CharBox::new(0, 'a', 0.1, 0.1, 0.1, 0.1).unwrap();
                Page::new(format!("p{i:04}"), 100, 100, vec![c], None).unwrap()
            })
            .collect();
        Dataset::new(vec![Book::new("b", pages).unwrap()]).unwrap()
    }

    #[test]
    fn ten_pages_split_nine_one() {
        let d = split_dataset(&dataset(10), 0.9, 7).unwrap();
        assert_eq!(d.count(Split::Train), 9);
        assert_eq!(d.count(Split::Validation), 1);
    }

    #[test]
    fn split_is_deterministic() {
        let d = dataset(50);
        assert_eq!(split_dataset(&d, 0.7, 3).unwrap(), split_dataset(&d, 0.7, 3).unwrap());
        assert_ne!(split_dataset(&d, 0.7, 3).unwrap(), split_dataset(&d, 0.7, 4).unwrap());
    }

    #[test]
    fn corpus_scale_split_counts() {
        let d = split_dataset(&dataset(4377), 3961.0 / 4377.0, 0).unwrap();
        assert_eq!(d.count(Split::Train), 3961);
        assert_eq!(d.count(Split::Validation), 416);
        assert_eq!(d.page_count(), 4377);
    }

    #[test]
    fn rejects_bad_ratio_and_duplicate_pages() {
        assert!(split_dataset(&dataset(3), 1.0, 0).is_err());
        let p = dataset(1).books()[0].pages[0].clone();
        let a = Book::new("a", vec![p.clone()]).unwrap();
        let b = Book::new("b", vec![p]).unwrap();
        assert!(matches!(Dataset::new(vec![a, b]), Err(Error::DuplicatePage(_))));
    }

    #[test]
    fn saves_and_loads() {
        let tmp = tempfile::tempdir().unwrap();
        let d = split_dataset(&dataset(5), 0.6, 1).unwrap();
        save_dataset(&d, tmp.path()).unwrap();
        let back = load_dataset(tmp.path()).unwrap();
        assert_eq!(back, d);
    }
}
