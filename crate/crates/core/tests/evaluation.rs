use reading_order::ingest::dataset::Dataset;
use reading_order::ingest::predictions::Predictions;
use reading_order::metrics::{default_lengths, evaluate};
use reading_order::report::{accuracy_table, recall_by_length_table};
use reading_order::{Book, CharBox, Error, Page, ReadingOrder};

fn column_page(id: &str, n: usize) -> Page {
    let chars = (0..n)
        .map(|i| CharBox::new(i, '字', 0.5, 0.02 + 0.09 * i as f64, 0.04, 0.04).unwrap())
        .collect();
    Page::new(id, 1000, 1400, chars, Some(ReadingOrder::identity(n))).unwrap()
}

fn dataset(pages: Vec<Page>) -> Dataset {
    Dataset::new(vec![Book::new("b1", pages).unwrap()]).unwrap()
}

#[test]
fn perfect_prediction_scores_one() {
    let d = dataset(vec![column_page("p1", 6)]);
    let mut preds = Predictions::new();
    preds.insert("p1".into(), ReadingOrder::identity(6));
    let r = evaluate(&d, &preds, &default_lengths()).unwrap();
    assert_eq!(r.overall.accuracy(), 1.0);
    assert_eq!(r.overall.recall(6), Some(1.0));
    assert_eq!(r.overall.recall(7), None);
}

#[test]
fn accuracy_is_pooled_over_characters() {
    // 10 chars each; the second page has two swaps' worth of edits
    let d = dataset(vec![column_page("p1", 10), column_page("p2", 10)]);
    let mut preds = Predictions::new();
    preds.insert("p1".into(), ReadingOrder::identity(10));
    preds.insert("p2".into(), ReadingOrder::new(vec![1, 0, 2, 3, 4, 5, 6, 7, 9, 8]));
    let r = evaluate(&d, &preds, &default_lengths()).unwrap();
    assert_eq!(r.per_page["p2"].accuracy, 0.6);
    assert!((r.overall.accuracy() - 0.8).abs() < 1e-12);
    let table = accuracy_table(&[("m".to_string(), r.clone())]);
    assert!(table.contains("b1,80.00\n"), "{table}");
    assert!(table.ends_with("Overall,80.00\n"), "{table}");
    let by_length = recall_by_length_table(&[("m".to_string(), r)]);
    assert!(by_length.starts_with("# recall by query length\nquery_length,m\n1,100.00\n"));
    assert!(by_length.contains("\n15,-\n"), "{by_length}");
}

#[test]
fn missing_prediction_is_an_error() {
    let d = dataset(vec![column_page("p1", 3), column_page("p2", 3)]);
    let mut preds = Predictions::new();
    preds.insert("p1".into(), ReadingOrder::identity(3));
    let err = evaluate(&d, &preds, &default_lengths()).unwrap_err();
    assert!(matches!(err, Error::MissingPrediction(ref p) if p == "p2"), "{err}");
}

#[test]
fn prediction_must_cover_the_page() {
    let d = dataset(vec![column_page("p1", 3)]);
    let mut preds = Predictions::new();
    preds.insert("p1".into(), ReadingOrder::new(vec![0, 1]));
    assert!(evaluate(&d, &preds, &default_lengths()).is_err());
}
