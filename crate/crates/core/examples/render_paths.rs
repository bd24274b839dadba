// Draws the ground truth and both rule models' paths over a warichu page.

use reading_order::render::{default_color, render_paths, PathLayer, RenderSpec};
use reading_order::rules::{adaptive_order, simple_order, AdaptiveRulesConfig, SimpleRulesConfig};
use reading_order::synth::{generate_page, LayoutKind, SynthConfig};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let page = generate_page(&SynthConfig::random(LayoutKind::Warichu, 5))?;
    let gt = page.ground_truth.clone().ok_or("synthetic page without ground truth")?;
    let layers = [
        ("gt", gt),
        ("simple", simple_order(&page, &SimpleRulesConfig::default())),
        ("adaptive", adaptive_order(&page, &AdaptiveRulesConfig::default())),
    ];
    let spec = RenderSpec {
        orders: layers
            .into_iter()
            .enumerate()
            .map(|(i, (name, order))| PathLayer {
                name: name.to_string(),
                order,
                color: default_color(name, i),
            })
            .collect(),
        page,
        stroke_width: 3.0,
        draw_boxes: true,
    };
    let svg = render_paths(&spec)?;
    let out = std::env::temp_dir().join("reading_order_paths.svg");
    std::fs::write(&out, &svg)?;
    println!("wrote {} ({} bytes)", out.display(), svg.len());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
