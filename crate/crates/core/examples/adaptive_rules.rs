// Compares the two rule models on layouts where fixed thresholds struggle:
// inline double sub-columns and columns with uneven spacing.

use reading_order::metrics::accuracy;
use reading_order::rules::{adaptive_order, simple_order, AdaptiveRulesConfig, SimpleRulesConfig};
use reading_order::synth::{generate_page, LayoutKind, SynthConfig};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let simple = SimpleRulesConfig::default();
    let adaptive = AdaptiveRulesConfig::default();
    for kind in [LayoutKind::Warichu, LayoutKind::IrregularSpacing] {
        let (mut s, mut a) = (0.0, 0.0);
        let n = 50;
        for seed in 0..n {
            let page = generate_page(&SynthConfig::random(kind, seed))?;
            let gt = page.ground_truth.as_ref().ok_or("synthetic page without ground truth")?;
            s += accuracy(gt, &simple_order(&page, &simple))?;
            a += accuracy(gt, &adaptive_order(&page, &adaptive))?;
        }
        println!(
            "{kind:<18} simple {:6.2}%  adaptive {:6.2}%",
            100.0 * s / n as f64,
            100.0 * a / n as f64
        );
        assert!(a > s);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
