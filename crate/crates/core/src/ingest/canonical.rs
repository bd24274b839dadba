//! Canonical per-page file.
//!
//! ```text
//! #image_width=1000,image_height=1500
//! page_id,char_index,codepoint,x,y,width,height,reading_index
//! p001,0,U+4E00,812,96,44,51,0
//! p001,1,U+3042,810,160,46,49,1
//! ```
//!
//! Geometry is in pixels. `char_index` must equal the row index.
//! `reading_index` is the character's position in the ground-truth order, or
//! `-1` on every row when the order is unknown.

use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{format_codepoint, format_pixels, import_page, parse_codepoint, CoordinateRow};
use crate::error::{Error, Result};
use crate::model::Page;

pub const HEADER: [&str; 8] = [
    "page_id",
    "char_index",
    "codepoint",
    "x",
    "y",
    "width",
    "height",
    "reading_index",
];

#[derive(Debug, Serialize, Deserialize)]
struct Record {
    page_id: String,
    char_index: String,
    codepoint: String,
    x: String,
    y: String,
    width: String,
    height: String,
    reading_index: String,
}

pub fn write_page<W: Write>(page: &Page, mut out: W) -> Result<()> {
    let io = |e| Error::io(format!("<page {}>", page.page_id), e);
    writeln!(
        out,
        "#image_width={},image_height={}",
        page.image_width, page.image_height
    )
    .map_err(io)?;

    let mut reading_index = vec![-1i64; page.len()];
    if let Some(gt) = &page.ground_truth {
        for (pos, &id) in gt.as_slice().iter().enumerate() {
            reading_index[id] = pos as i64;
        }
    }
    let (wf, hf) = (f64::from(page.image_width), f64::from(page.image_height));

    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(HEADER)?;
    for c in &page.chars {
        w.write_record([
            page.page_id.clone(),
            c.id.to_string(),
            format_codepoint(c.label),
            format_pixels(c.x * wf),
            format_pixels(c.y * hf),
            format_pixels(c.w * wf),
            format_pixels(c.h * hf),
            reading_index[c.id].to_string(),
        ])?;
    }
    w.flush().map_err(io)?;
    Ok(())
}

pub fn page_to_string(page: &Page) -> Result<String> {
    let mut buf = Vec::new();
    write_page(page, &mut buf)?;
    Ok(String::from_utf8(buf).expect("writer emits UTF-8"))
}

/// Reads one canonical page. `fallback_id` names pages without rows.
pub fn read_page<R: Read>(mut input: R, fallback_id: &str) -> Result<Page> {
    let mut text = String::new();
    input
        .read_to_string(&mut text)
        .map_err(|e| Error::io(fallback_id, e))?;
    parse_page(&text, fallback_id)
}

pub fn parse_page(text: &str, fallback_id: &str) -> Result<Page> {
    let (first, rest) = text.split_once('\n').unwrap_or((text, ""));
    let dims = parse_dims(first.trim_end_matches('\r')).ok_or_else(|| Error::MalformedRow {
        line: 1,
        reason: "expected `#image_width=W,image_height=H` preamble".into(),
    })?;

    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(rest.as_bytes());
    let headers = reader.headers()?.clone();
    if headers.iter().collect::<Vec<_>>() != HEADER {
        return Err(Error::MalformedRow {
            line: 2,
            reason: format!("unexpected header {:?}", headers.iter().collect::<Vec<_>>()),
        });
    }

    let mut page_id: Option<String> = None;
    let mut rows = Vec::new();
    for (index, rec) in reader.deserialize::<Record>().enumerate() {
        // +1 for the preamble, +1 for the header, +1 for 1-based numbering
        let line = index as u64 + 3;
        let rec = rec?;
        let malformed = |reason: String| Error::MalformedRow { line, reason };
        match &page_id {
            None => page_id = Some(rec.page_id.clone()),
            Some(id) if *id != rec.page_id => {
                return Err(malformed(format!("page_id {} differs from {id}", rec.page_id)))
            }
            _ => {}
        }
        if rec.char_index.trim().parse::<usize>().ok() != Some(index) {
            return Err(malformed(format!(
                "char_index {} does not match row index {index}",
                rec.char_index
            )));
        }
        let label = parse_codepoint(&rec.codepoint)
            .ok_or_else(|| malformed(format!("bad codepoint {}", rec.codepoint)))?;
        let num = |field: &str, v: &str| {
            v.trim()
                .parse::<f64>()
                .map_err(|_| malformed(format!("non-numeric {field} `{v}`")))
        };
        let reading_index: i64 = rec
            .reading_index
            .trim()
            .parse()
            .map_err(|_| malformed(format!("bad reading_index `{}`", rec.reading_index)))?;
        if reading_index < -1 {
            return Err(malformed(format!("bad reading_index {reading_index}")));
        }
        rows.push(CoordinateRow {
            line,
            label,
            x: num("x", &rec.x)?,
            y: num("y", &rec.y)?,
            width: num("width", &rec.width)?,
            height: num("height", &rec.height)?,
            char_id: (reading_index >= 0).then_some(reading_index),
        });
    }

    let page_id = page_id.unwrap_or_else(|| fallback_id.to_string());
    import_page(&page_id, &rows, dims)
}

fn parse_dims(line: &str) -> Option<(u32, u32)> {
    let body = line.strip_prefix('#')?;
    let mut width = None;
    let mut height = None;
    for part in body.split(',') {
        let (k, v) = part.split_once('=')?;
        match k.trim() {
            "image_width" => width = v.trim().parse().ok(),
            "image_height" => height = v.trim().parse().ok(),
            _ => return None,
        }
    }
    Some((width?, height?))
}

pub fn save_page(page: &Page, path: &Path) -> Result<()> {
    let text = page_to_string(page)?;
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}

pub fn load_page(path: &Path) -> Result<Page> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let stem = path
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("page");
    parse_page(&text, stem)
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "#image_width=1000,image_height=2000
page_id,char_index,codepoint,x,y,width,height,reading_index
p1,0,U+4E00,100,50,30,40,1
p1,1,U+3042,100.25,150,30.5,40,0
";

    #[test]
    fn parses_and_rewrites_identically() {
        let page = parse_page(SAMPLE, "x").unwrap();
        assert_eq!(page.page_id, "p1");
        assert_eq!(page.ground_truth.as_ref().unwrap().0, vec![1, 0]);
        assert_eq!(page.chars[0].x, 0.1);
        assert_eq!(page_to_string(&page).unwrap(), SAMPLE);
    }

    #[test]
    fn unknown_order_round_trips() {
        let text = SAMPLE.replace(",1\n", ",-1\n").replace(",0\n", ",-1\n");
        let page = parse_page(&text, "x").unwrap();
        assert!(page.ground_truth.is_none());
        assert_eq!(page_to_string(&page).unwrap(), text);
    }

    #[test]
    fn empty_page_takes_fallback_id() {
        let text = "#image_width=10,image_height=10\npage_id,char_index,codepoint,x,y,width,height,reading_index\n";
        let page = parse_page(text, "blank").unwrap();
        assert_eq!(page.page_id, "blank");
        assert!(page.is_empty());
        assert_eq!(page_to_string(&page).unwrap(), text);
    }

    #[test]
    fn rejects_bad_rows() {
        let bad = SAMPLE.replace("30,40,1", "abc,40,1");
        assert!(matches!(
            parse_page(&bad, "x"),
            Err(Error::MalformedRow { line: 3, .. })
        ));
        let bad = SAMPLE.replace("p1,1,", "p1,7,");
        assert!(matches!(
            parse_page(&bad, "x"),
            Err(Error::MalformedRow { line: 4, .. })
        ));
        let bad = SAMPLE.replace(",0\n", ",1\n");
        assert!(matches!(
            parse_page(&bad, "x"),
            Err(Error::DuplicateCharId { .. })
        ));
        assert!(parse_page(&SAMPLE[1..], "x").is_err());
    }
}
