// Orders a synthetic corpus with both rule models and prints the
// accuracy and recall tables.

use reading_order::ingest::dataset::Dataset;
use reading_order::metrics::{default_lengths, evaluate};
use reading_order::report::{accuracy_table, pooled_recall_table, recall_by_length_table};
use reading_order::rules::{order_pages, AdaptiveRulesConfig, Orderer, SimpleRulesConfig};
use reading_order::synth::{generate_page, LayoutKind, SynthConfig};
use reading_order::Book;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let mut books = Vec::new();
    for kind in LayoutKind::ALL {
        let pages = (0..20)
            .map(|seed| {
                let mut page = generate_page(&SynthConfig::random(kind, seed))?;
                page.page_id = format!("{kind}_{seed:02}");
                Ok(page)
            })
            .collect::<reading_order::Result<Vec<_>>>()?;
        books.push(Book::new(kind.as_str(), pages)?);
    }
    let dataset = Dataset::new(books)?;
    let pages: Vec<_> = dataset.pages().map(|(_, p)| p).collect();

    let models: [&dyn Orderer; 2] = [&SimpleRulesConfig::default(), &AdaptiveRulesConfig::default()];
    let mut reports = Vec::new();
    for model in models {
        let preds = order_pages(model, pages.iter().copied(), 0)?;
        reports.push((model.name().to_string(), evaluate(&dataset, &preds, &default_lengths())?));
    }
    println!("{}", accuracy_table(&reports));
    println!("{}", pooled_recall_table(&reports));
    println!("{}", recall_by_length_table(&reports));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
