//! Command-line front end. The binary is a thin wrapper around [`run`].

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::ensemble::evaluate_ensemble;
use crate::error::{Error, Result};
use crate::ingest::canonical::load_page;
use crate::ingest::codh::{import_coordinates, probe_image_size, ColumnMapping};
use crate::ingest::dataset::{load_dataset, save_dataset, split_dataset, Dataset, Split};
use crate::ingest::predictions::{load_predictions, save_predictions, Predictions};
use crate::metrics::{default_lengths, evaluate_pages, RECALL_NOTE};
use crate::model::{Book, Page};
use crate::render::{default_color, render_paths, PathLayer, RenderSpec};
use crate::report;
use crate::rules::{order_pages, AdaptiveRulesConfig, Orderer, SimpleRulesConfig};
use crate::synth::{generate_page, LayoutKind, SynthConfig};

#[derive(Debug, Parser)]
#[command(name = "reading-order", version, about = "Reading-order prediction and evaluation for vertically written pages")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Convert a coordinate table into a dataset directory of canonical page files
    Import(ImportArgs),
    /// Generate synthetic pages with known reading order
    Synth(SynthArgs),
    /// Predict reading orders with a rule-based model
    Order(OrderArgs),
    /// Score prediction files against ground truth
    Eval(EvalArgs),
    /// Score the union of several models' predictions
    Ensemble(EnsembleArgs),
    /// Draw reading paths over a page as SVG
    Render(RenderArgs),
}

#[derive(Debug, Args)]
struct ImportArgs {
    /// Coordinate table (CSV)
    #[arg(long)]
    coords: PathBuf,
    /// Book id; defaults to the table's file stem without `_coordinate`
    #[arg(long)]
    book_id: Option<String>,
    /// Directory holding the page images, used to read page sizes
    #[arg(long, conflicts_with_all = ["image_size", "dims"])]
    images: Option<PathBuf>,
    /// Size shared by every page, as WIDTHxHEIGHT
    #[arg(long, value_parser = parse_size, conflicts_with = "dims")]
    image_size: Option<(u32, u32)>,
    /// CSV with columns image,width,height
    #[arg(long)]
    dims: Option<PathBuf>,
    #[arg(long, default_value = "Unicode")]
    col_unicode: String,
    #[arg(long, default_value = "Image")]
    col_image: String,
    #[arg(long, default_value = "X")]
    col_x: String,
    #[arg(long, default_value = "Y")]
    col_y: String,
    #[arg(long, default_value = "Width")]
    col_width: String,
    #[arg(long, default_value = "Height")]
    col_height: String,
    /// Reading-position column; pass an empty string to import without ground truth
    #[arg(long, default_value = "Char ID")]
    col_char_id: String,
    /// Fraction of pages assigned to the training split
    #[arg(long)]
    split_ratio: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum LayoutArg {
    RegularColumns,
    IrregularSpacing,
    Warichu,
    Chirashigaki,
    /// Cycle through every layout kind with random sizes
    Mixed,
}

#[derive(Debug, Args)]
struct SynthArgs {
    #[arg(long, value_enum, default_value = "regular-columns")]
    layout: LayoutArg,
    /// Columns per page; random when omitted
    #[arg(long)]
    columns: Option<usize>,
    /// Row slots per column; random when omitted
    #[arg(long)]
    chars: Option<usize>,
    /// Random offset as a fraction of character size; random when omitted
    #[arg(long)]
    jitter: Option<f64>,
    #[arg(long, default_value_t = 1)]
    pages: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "synth")]
    book_id: String,
    #[arg(long)]
    split_ratio: Option<f64>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModelArg {
    Simple,
    Adaptive,
}

#[derive(Debug, Args)]
struct DataArgs {
    /// Dataset directory
    #[arg(long)]
    data: PathBuf,
    /// Restrict to one split
    #[arg(long, value_parser = parse_split)]
    split: Option<Split>,
}

#[derive(Debug, Args)]
struct OrderArgs {
    #[arg(long, value_enum)]
    model: ModelArg,
    #[command(flatten)]
    data: DataArgs,
    #[arg(long)]
    out: PathBuf,
    /// Worker threads (0 = one per core)
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    #[arg(long, default_value_t = SimpleRulesConfig::default().column_x_tolerance)]
    column_x_tolerance: f64,
    #[arg(long, default_value_t = SimpleRulesConfig::default().column_break_distance)]
    column_break_distance: f64,
    #[arg(long, default_value_t = SimpleRulesConfig::default().start_tiebreak_band)]
    start_tiebreak_band: f64,
    #[arg(long, default_value_t = AdaptiveRulesConfig::default().width_multiplier)]
    width_multiplier: f64,
    #[arg(long, default_value_t = AdaptiveRulesConfig::default().span_overlap_fraction)]
    span_overlap_fraction: f64,
    #[arg(long, default_value_t = AdaptiveRulesConfig::default().min_spanned)]
    min_spanned: usize,
    #[arg(long, default_value_t = AdaptiveRulesConfig::default().column_break_multiplier)]
    column_break_multiplier: f64,
}

#[derive(Debug, Args)]
struct EvalArgs {
    #[command(flatten)]
    data: DataArgs,
    /// Prediction files; each file is one model, named by its file stem
    #[arg(long, num_args = 1.., required = true)]
    preds: Vec<PathBuf>,
    /// Write the full report as JSON
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct EnsembleArgs {
    #[command(flatten)]
    data: DataArgs,
    #[arg(long, num_args = 1.., required = true)]
    preds: Vec<PathBuf>,
    #[arg(long, default_value_t = 2)]
    min_length: usize,
    #[arg(long, default_value_t = 20)]
    max_length: usize,
}

#[derive(Debug, Args)]
struct RenderArgs {
    /// Canonical page file
    #[arg(long)]
    page: PathBuf,
    /// Prediction files to overlay, named by file stem
    #[arg(long, num_args = 0..)]
    preds: Vec<PathBuf>,
    /// Skip the ground-truth path
    #[arg(long)]
    no_gt: bool,
    #[arg(long)]
    no_boxes: bool,
    #[arg(long, default_value_t = 3.0)]
    stroke_width: f64,
    #[arg(long)]
    out: PathBuf,
}

fn parse_size(s: &str) -> std::result::Result<(u32, u32), String> {
    let (w, h) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected WIDTHxHEIGHT, got `{s}`"))?;
    let w = w.trim().parse().map_err(|_| format!("bad width in `{s}`"))?;
    let h = h.trim().parse().map_err(|_| format!("bad height in `{s}`"))?;
    Ok((w, h))
}

fn parse_split(s: &str) -> std::result::Result<Split, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Runs the command line and returns the process exit status: 0 on success,
/// 1 when the command fails and 2 for usage errors.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let stdout = std::io::stdout();
    match execute(cli.command, &mut stdout.lock()) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn execute(cmd: Command, out: &mut dyn Write) -> Result<()> {
    match cmd {
        Command::Import(a) => import(a, out),
        Command::Synth(a) => synth(a, out),
        Command::Order(a) => order(a, out),
        Command::Eval(a) => eval(a, out),
        Command::Ensemble(a) => ensemble(a, out),
        Command::Render(a) => render(a, out),
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Result<()> {
    out.write_all(text.as_bytes())
        .map_err(|e| Error::io("<stdout>", e))
}

fn finish_dataset(books: Vec<Book>, ratio: Option<f64>, seed: u64, dir: &Path) -> Result<Dataset> {
    let mut d = Dataset::new(books)?;
    if let Some(r) = ratio {
        d = split_dataset(&d, r, seed)?;
    }
    save_dataset(&d, dir)?;
    Ok(d)
}

fn import(a: ImportArgs, out: &mut dyn Write) -> Result<()> {
    let mapping = ColumnMapping {
        unicode: a.col_unicode,
        image: a.col_image,
        x: a.col_x,
        y: a.col_y,
        width: a.col_width,
        height: a.col_height,
        char_id: (!a.col_char_id.is_empty()).then_some(a.col_char_id),
    };
    let table_dims = match &a.dims {
        Some(p) => Some(read_dims_table(p)?),
        None => None,
    };
    let file = std::fs::File::open(&a.coords).map_err(|e| Error::io(&a.coords, e))?;
    let pages = import_coordinates(file, &mapping, |image| {
        if let Some(size) = a.image_size {
            return Ok(size);
        }
        if let Some(table) = &table_dims {
            return table
                .get(image)
                .copied()
                .ok_or_else(|| Error::InvalidConfig(format!("no size for image {image}")));
        }
        let dir = a
            .images
            .as_ref()
            .ok_or_else(|| Error::InvalidConfig("one of --images, --image-size or --dims is required".into()))?;
        let path = ["", ".jpg", ".jpeg", ".png"]
            .iter()
            .map(|ext| dir.join(format!("{image}{ext}")))
            .find(|p| p.is_file())
            .unwrap_or_else(|| dir.join(image));
        probe_image_size(&path)
    })?;
    let book_id = a.book_id.unwrap_or_else(|| {
        a.coords
            .file_stem()
            .and_then(|s| s.to_str())
            .unwrap_or("book")
            .trim_end_matches("_coordinate")
            .to_string()
    });
    let n = pages.len();
    let d = finish_dataset(vec![Book::new(book_id, pages)?], a.split_ratio, a.seed, &a.out)?;
    emit(
        out,
        &format!(
            "imported {n} pages ({} train, {} validation) into {}\n",
            d.count(Split::Train),
            d.count(Split::Validation),
            a.out.display()
        ),
    )
}

fn read_dims_table(path: &Path) -> Result<std::collections::HashMap<String, (u32, u32)>> {
    let mut r = csv::Reader::from_path(path)?;
    let mut map = std::collections::HashMap::new();
    for (i, rec) in r.records().enumerate() {
        let rec = rec?;
        let bad = || Error::MalformedRow {
            line: i as u64 + 2,
            reason: "expected image,width,height".into(),
        };
        let w = rec.get(1).and_then(|v| v.trim().parse().ok()).ok_or_else(bad)?;
        let h = rec.get(2).and_then(|v| v.trim().parse().ok()).ok_or_else(bad)?;
        map.insert(rec.get(0).ok_or_else(bad)?.trim().to_string(), (w, h));
    }
    Ok(map)
}

fn synth(a: SynthArgs, out: &mut dyn Write) -> Result<()> {
    let mut pages = Vec::with_capacity(a.pages);
    for i in 0..a.pages {
        let seed = a.seed.wrapping_add(i as u64);
        let kind = match a.layout {
            LayoutArg::RegularColumns => LayoutKind::RegularColumns,
            LayoutArg::IrregularSpacing => LayoutKind::IrregularSpacing,
            LayoutArg::Warichu => LayoutKind::Warichu,
            LayoutArg::Chirashigaki => LayoutKind::Chirashigaki,
            LayoutArg::Mixed => LayoutKind::ALL[i % LayoutKind::ALL.len()],
        };
        let mut cfg = SynthConfig::random(kind, seed);
        if let Some(c) = a.columns {
            cfg.n_columns = c;
        }
        if let Some(c) = a.chars {
            cfg.chars_per_column = c;
        }
        if let Some(j) = a.jitter {
            cfg.jitter = j;
        }
        let mut page = generate_page(&cfg)?;
        page.page_id = format!("{}-{i:05}", a.book_id);
        pages.push(page);
    }
    let d = finish_dataset(vec![Book::new(a.book_id, pages)?], a.split_ratio, a.seed, &a.out)?;
    emit(out, &format!("wrote {} pages to {}\n", d.page_count(), a.out.display()))
}

fn selected_pages(d: &Dataset, split: Option<Split>) -> Vec<(&str, &Page)> {
    match split {
        Some(s) => d.pages_in(s).collect(),
        None => d.pages().collect(),
    }
}

fn order(a: OrderArgs, out: &mut dyn Write) -> Result<()> {
    let orderer: Box<dyn Orderer> = match a.model {
        ModelArg::Simple => {
            let cfg = SimpleRulesConfig {
                column_x_tolerance: a.column_x_tolerance,
                column_break_distance: a.column_break_distance,
                start_tiebreak_band: a.start_tiebreak_band,
            };
            cfg.validate()?;
            Box::new(cfg)
        }
        ModelArg::Adaptive => {
            let cfg = AdaptiveRulesConfig {
                width_multiplier: a.width_multiplier,
                span_overlap_fraction: a.span_overlap_fraction,
                min_spanned: a.min_spanned,
                column_break_multiplier: a.column_break_multiplier,
            };
            cfg.validate()?;
            Box::new(cfg)
        }
    };
    let d = load_dataset(&a.data.data)?;
    let pages = selected_pages(&d, a.data.split);
    let preds = order_pages(orderer.as_ref(), pages.iter().map(|(_, p)| *p), a.jobs)?;
    save_predictions(&a.out, &preds)?;
    emit(
        out,
        &format!(
            "ordered {} pages with the {} model into {}\n",
            preds.len(),
            orderer.name(),
            a.out.display()
        ),
    )
}

fn model_name(path: &Path) -> String {
    path.file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("model")
        .to_string()
}

fn load_models(paths: &[PathBuf]) -> Result<Vec<(String, Predictions)>> {
    paths
        .iter()
        .map(|p| Ok((model_name(p), load_predictions(p)?)))
        .collect()
}

fn eval(a: EvalArgs, out: &mut dyn Write) -> Result<()> {
    let d = load_dataset(&a.data.data)?;
    let pages = selected_pages(&d, a.data.split);
    let lengths = default_lengths();
    let mut reports = Vec::new();
    for (name, preds) in load_models(&a.preds)? {
        let r = evaluate_pages(pages.iter().copied(), &preds, &lengths)?;
        reports.push((name, r));
    }
    let text = format!(
        "{}\n{}\n{}\n{}\n",
        report::accuracy_table(&reports),
        report::pooled_recall_table(&reports),
        report::recall_by_length_table(&reports),
        RECALL_NOTE
    );
    emit(out, &text)?;
    if let Some(path) = &a.json {
        std::fs::write(path, report::reports_json(&reports)?).map_err(|e| Error::io(path, e))?;
    }
    Ok(())
}

fn ensemble(a: EnsembleArgs, out: &mut dyn Write) -> Result<()> {
    if a.min_length == 0 || a.min_length > a.max_length {
        return Err(Error::InvalidConfig(format!(
            "query lengths {}..={} are empty",
            a.min_length, a.max_length
        )));
    }
    let d = load_dataset(&a.data.data)?;
    let pages = selected_pages(&d, a.data.split);
    let models = load_models(&a.preds)?;
    let lengths: Vec<usize> = (a.min_length..=a.max_length).collect();
    let r = evaluate_ensemble(pages.iter().copied(), &models, &lengths)?;
    emit(out, &report::ensemble_table(&r))
}

fn render(a: RenderArgs, out: &mut dyn Write) -> Result<()> {
    let page = load_page(&a.page)?;
    let mut orders = Vec::new();
    if !a.no_gt {
        if let Some(gt) = &page.ground_truth {
            orders.push(("ground_truth".to_string(), gt.clone()));
        }
    }
    for (name, preds) in load_models(&a.preds)? {
        let order = preds
            .get(&page.page_id)
            .cloned()
            .ok_or_else(|| Error::MissingPrediction(page.page_id.clone()))?;
        orders.push((name, order));
    }
    let spec = RenderSpec {
        orders: orders
            .into_iter()
            .enumerate()
            .map(|(i, (name, order))| PathLayer {
                color: default_color(&name, i),
                name,
                order,
            })
            .collect(),
        page,
        stroke_width: a.stroke_width,
        draw_boxes: !a.no_boxes,
    };
    let svg = render_paths(&spec)?;
    std::fs::write(&a.out, svg).map_err(|e| Error::io(&a.out, e))?;
    emit(out, &format!("wrote {}\n", a.out.display()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run(["reading-order", "frobnicate"]), 2);
        assert_eq!(run(["reading-order", "order", "--model", "simple"]), 2);
        assert_eq!(run(["reading-order", "--help"]), 0);
    }

    #[test]
    fn sizes_parse() {
        assert_eq!(parse_size("1000x1500"), Ok((1000, 1500)));
        assert!(parse_size("1000").is_err());
    }
}
