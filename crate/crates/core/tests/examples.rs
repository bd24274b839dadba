mod simple_rules {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/simple_rules.rs"));
}
mod adaptive_rules {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/adaptive_rules.rs"));
}
mod synth_layouts {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/synth_layouts.rs"));
}
mod evaluate_models {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/evaluate_models.rs"));
}
mod ensemble_recall {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/ensemble_recall.rs"));
}
mod render_paths {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/render_paths.rs"));
}
mod import_coordinates {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/import_coordinates.rs"));
}

#[test]
fn simple_rules_example_runs() {
    simple_rules::run_example().expect("simple rules example should run");
}

#[test]
fn adaptive_rules_example_runs() {
    adaptive_rules::run_example().expect("adaptive rules example should run");
}

#[test]
fn synth_layouts_example_runs() {
    synth_layouts::run_example().expect("synth example should run");
}

#[test]
fn evaluate_models_example_runs() {
    evaluate_models::run_example().expect("evaluation example should run");
}

#[test]
fn ensemble_recall_example_runs() {
    ensemble_recall::run_example().expect("ensemble example should run");
}

#[test]
fn render_paths_example_runs() {
    render_paths::run_example().expect("render example should run");
}

#[test]
fn import_coordinates_example_runs() {
    import_coordinates::run_example().expect("import example should run");
}
