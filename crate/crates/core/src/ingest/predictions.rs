//! Prediction interchange: one page per line, the page id followed by the
//! whitespace-separated character indices in predicted reading order.
//!
//! ```text
//! p001 0 1 2 5 4 3
//! p002 3 0 1 2
//! ```

use std::collections::BTreeMap;
use std::io::{BufRead, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::model::ReadingOrder;

pub type Predictions = BTreeMap<String, ReadingOrder>;

pub fn write_predictions<'a, W, I>(mut out: W, preds: I) -> Result<()>
where
    W: Write,
    I: IntoIterator<Item = (&'a str, &'a ReadingOrder)>,
{
    let io = |e| Error::io("<predictions>", e);
    for (page_id, order) in preds {
        let mut line = page_id.to_string();
        for id in order.as_slice() {
            line.push(' ');
            line.push_str(&id.to_string());
        }
        line.push('\n');
        out.write_all(line.as_bytes()).map_err(io)?;
    }
    out.flush().map_err(io)
}

pub fn read_predictions<R: BufRead>(input: R) -> Result<Predictions> {
    let mut preds = Predictions::new();
    for (i, line) in input.lines().enumerate() {
        let line_no = i + 1;
        let line = line.map_err(|e| Error::io("<predictions>", e))?;
        let mut fields = line.split_whitespace();
        let Some(page_id) = fields.next() else {
            continue;
        };
        let ids = fields
            .map(|f| {
                f.parse::<usize>().map_err(|_| Error::MalformedPrediction {
                    line: line_no,
                    reason: format!("`{f}` is not a character index"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        if preds.insert(page_id.to_string(), ReadingOrder::new(ids)).is_some() {
            return Err(Error::DuplicatePage(page_id.to_string()));
        }
    }
    Ok(preds)
}

pub fn load_predictions(path: &Path) -> Result<Predictions> {
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    read_predictions(std::io::BufReader::new(file))
}

pub fn save_predictions(path: &Path, preds: &Predictions) -> Result<()> {
    let file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    write_predictions(
        std::io::BufWriter::new(file),
        preds.iter().map(|(k, v)| (k.as_str(), v)),
    )
}
