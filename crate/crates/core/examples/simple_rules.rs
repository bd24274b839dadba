// Orders a hand-made two-column page with the fixed-threshold rules.

use reading_order::rules::{simple_order, SimpleRulesConfig};
use reading_order::{CharBox, Page};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    // two columns of three characters; ids are deliberately scrambled
    let boxes = [
        (0, '春', 0.30, 0.10),
        (1, '秋', 0.70, 0.30),
        (2, '夏', 0.70, 0.10),
        (3, '冬', 0.30, 0.20),
        (4, '花', 0.70, 0.20),
        (5, '月', 0.30, 0.30),
    ];
    let chars = boxes
        .iter()
        .map(|&(id, label, x, y)| CharBox::new(id, label, x, y, 0.05, 0.05))
        .collect::<Result<Vec<_>, _>>()?;
    let page = Page::new("demo", 1000, 1400, chars, None)?;

    let order = simple_order(&page, &SimpleRulesConfig::default());
    let text: String = order.as_slice().iter().map(|&id| page.chars[id].label).collect();
    println!("order {:?} reads {text}", order.as_slice());
    assert_eq!(text, "夏花秋春冬月");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
