// Pools two models' predictions: a window counts as found if either model
// produced it.

use reading_order::ensemble::{evaluate_ensemble, union_precision, union_recall};
use reading_order::report::ensemble_table;
use reading_order::rules::{order_pages, AdaptiveRulesConfig, SimpleRulesConfig};
use reading_order::synth::{generate_page, LayoutKind, SynthConfig};
use reading_order::ReadingOrder;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    // two models that each get a different part wrong
    let gt = ReadingOrder::new(vec![0, 1, 2, 3, 4, 5]);
    let a = ReadingOrder::new(vec![1, 0, 2, 3, 4, 5]);
    let b = ReadingOrder::new(vec![0, 1, 2, 3, 5, 4]);
    let preds = [a, b];
    println!(
        "L=2: union recall {:.2}, union precision {:.2}",
        union_recall(&gt, &preds, 2)?,
        union_precision(&gt, &preds, 2)?
    );

    let pages = (0..40)
        .map(|seed| {
            let mut page = generate_page(&SynthConfig::random(LayoutKind::ALL[seed % 4], seed as u64))?;
            page.page_id = format!("p{seed:02}");
            Ok(page)
        })
        .collect::<reading_order::Result<Vec<_>>>()?;
    let models = vec![
        ("simple".to_string(), order_pages(&SimpleRulesConfig::default(), &pages, 0)?),
        ("adaptive".to_string(), order_pages(&AdaptiveRulesConfig::default(), &pages, 0)?),
    ];
    let report = evaluate_ensemble(pages.iter().map(|p| ("synthetic", p)), &models, &(2..=20).collect::<Vec<_>>())?;
    println!("{}", ensemble_table(&report));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
