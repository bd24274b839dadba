// Imports a coordinate table in the dataset's CSV layout, normalizes it and
// round-trips one page through the canonical page format.

use reading_order::ingest::canonical::{page_to_string, parse_page};
use reading_order::ingest::codh::{import_coordinates, ColumnMapping};

const TABLE: &str = "\
Unicode,Image,X,Y,Block ID,Char ID,Width,Height
U+3042,book_00001,800,100,B0001,C0001,60,70
U+3044,book_00001,805,190,B0001,C0002,55,65
U+3046,book_00001,600,110,B0002,C0003,58,72
U+3048,book_00002,700,300,B0003,C0001,62,62
";

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let pages = import_coordinates(TABLE.as_bytes(), &ColumnMapping::default(), |_| Ok((1000, 1400)))?;
    for page in &pages {
        println!("{}: {} chars, ground truth {:?}", page.page_id, page.len(), page.ground_truth);
    }

    let text = page_to_string(&pages[0])?;
    print!("{text}");
    let back = parse_page(&text, "unused")?;
    assert_eq!(back, pages[0]);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
