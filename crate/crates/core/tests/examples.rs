#[path = "../examples/latin_hypercube.rs"]
mod latin_hypercube;

#[path = "../examples/low_discrepancy.rs"]
mod low_discrepancy;

#[path = "../examples/adaptive_sampling.rs"]
mod adaptive_sampling;

#[path = "../examples/fluttering_lhs.rs"]
mod fluttering_lhs;

#[path = "../examples/voronoi_cells.rs"]
mod voronoi_cells;

#[path = "../examples/surrogate_models.rs"]
mod surrogate_models;

#[path = "../examples/benchmark_campaign.rs"]
mod benchmark_campaign;


#[test]
fn latin_hypercube_runs() {
    latin_hypercube::run_example().unwrap();
}

#[test]
fn low_discrepancy_runs() {
    low_discrepancy::run_example().unwrap();
}

#[test]
fn adaptive_sampling_runs() {
    adaptive_sampling::run_example().unwrap();
}

#[test]
fn fluttering_lhs_runs() {
    fluttering_lhs::run_example().unwrap();
}

#[test]
fn voronoi_cells_runs() {
    voronoi_cells::run_example().unwrap();
}

#[test]
fn surrogate_models_runs() {
    surrogate_models::run_example().unwrap();
}

#[test]
fn benchmark_campaign_runs() {
    benchmark_campaign::run_example().unwrap();
}

#[test]
fn sample_config_parses() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/campaign.conf");
    let config = adaptive_doe::evaluation::ExperimentConfig::from_file(path).unwrap();
    assert_eq!(config.methods.len(), 7);
    assert_eq!(config.max_samples, 100);
}
