//! Command-line surface.
//!
//! One subcommand per pipeline stage; every run is reproducible from its
//! manifest (same argv + same input bytes + same seed => byte-identical
//! outputs). Exit codes: 0 success, 1 domain errors, 2 usage/IO errors.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use windrank_core::dataset::{build_feature_matrix, split_by_role, SiteRecord, FEATURE_NAMES};
use windrank_core::metrics::ErrorHistogram;
use windrank_core::relief::SampleCount;
use windrank_core::scale::NormalizationParams;
use windrank_core::train::TrainConfig;
use windrank_core::windmodels::{
    fit_lag_model, lag_predict, persistence_forecast, wind_power, PowerSpec,
};

use crate::csvio;
use crate::error::WindrankError;
use crate::formats::{
    self, EvaluationFile, ModelFile, PowerFile, PowerForecast, PowerRow, PredictionsFile,
    RanksFile, RankingSummary, SweepFile, TrainReportFile,
};
use crate::manifest::{RunManifest, SCHEMA_VERSION};
use crate::nasa::{PowerClient, WindHeight, CACHE_ENV};
use crate::pipeline;

#[derive(Parser, Debug)]
#[command(
    name = "windrank",
    version,
    about = "Wind resource assessment: Relief feature ranking and cascade-forward wind speed prediction"
)]
struct Cli {
    /// Seed for every random choice in the run; recorded in the manifest.
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct ReliefArgs {
    /// Neighbor count for the Relief estimator.
    #[arg(long, default_value_t = 10)]
    k: usize,
    /// Instances to sample: "all" or a count (with replacement).
    #[arg(long, default_value = "all")]
    m: String,
}

#[derive(Args, Debug)]
struct TrainArgs {
    /// Number of top-ranked features fed to the network.
    #[arg(long, default_value_t = 3)]
    top: usize,
    /// Hidden-layer size.
    #[arg(long, default_value_t = 10)]
    hidden: usize,
    /// Epoch budget.
    #[arg(long, default_value_t = 1000)]
    max_epochs: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build or update a site CSV from a coordinates file via the NASA
    /// POWER climatology service (cached responses are reused).
    Fetch {
        /// Coordinates CSV: site,state,role,latitude,longitude,elevation.
        #[arg(long)]
        coords: PathBuf,
        /// Site CSV to write.
        #[arg(long)]
        out: PathBuf,
        /// Wind measurement height in meters (10 or 50).
        #[arg(long, default_value_t = 50)]
        height: u32,
    },
    /// Check a site CSV against the format and print a summary.
    Validate {
        #[arg(long)]
        data: PathBuf,
    },
    /// Rank the input features by regression Relief weight.
    Rank {
        #[arg(long)]
        data: PathBuf,
        #[command(flatten)]
        relief: ReliefArgs,
        /// Ranks JSON to write.
        #[arg(long)]
        out: PathBuf,
    },
    /// Train the cascade network on Training-role sites.
    Train {
        #[arg(long)]
        data: PathBuf,
        #[command(flatten)]
        relief: ReliefArgs,
        #[command(flatten)]
        train: TrainArgs,
        /// Model JSON to write.
        #[arg(long)]
        out: PathBuf,
        /// Training-report JSON to write.
        #[arg(long, default_value = "train_report.json")]
        report: PathBuf,
    },
    /// Score a model on the Testing-role sites.
    Evaluate {
        #[arg(long)]
        data: PathBuf,
        #[arg(long)]
        model: PathBuf,
        /// Evaluation JSON to write.
        #[arg(long)]
        out: PathBuf,
        /// Error-histogram bin count.
        #[arg(long, default_value_t = 20)]
        bins: usize,
    },
    /// Apply a model to every site row in a CSV.
    Predict {
        #[arg(long)]
        data: PathBuf,
        #[arg(long)]
        model: PathBuf,
        /// Predictions JSON to write.
        #[arg(long)]
        out: PathBuf,
    },
    /// Retrain across hidden-layer sizes and report held-out MAPE.
    Sweep {
        #[arg(long)]
        data: PathBuf,
        #[command(flatten)]
        relief: ReliefArgs,
        #[command(flatten)]
        train: TrainArgs,
        /// Half-width of the hidden-size range around --hidden.
        #[arg(long, default_value_t = 5)]
        delta: usize,
        /// Sweep JSON to write.
        #[arg(long)]
        out: PathBuf,
    },
    /// Convert wind speeds to kinetic power.
    Power {
        /// Site CSV; uses its wind_speed column.
        #[arg(long, conflicts_with = "predictions")]
        data: Option<PathBuf>,
        /// Predictions JSON from `predict`; uses the predicted speeds.
        #[arg(long)]
        predictions: Option<PathBuf>,
        /// Air density, kg/m³.
        #[arg(long, default_value_t = windrank_core::windmodels::DEFAULT_AIR_DENSITY)]
        rho: f64,
        /// Rotor swept area, m².
        #[arg(long, default_value_t = 1.0)]
        area: f64,
        /// Also fit the two-lag baseline and forecast this many steps
        /// ahead (plus the persistence baseline).
        #[arg(long)]
        horizon: Option<usize>,
        /// Power JSON to write.
        #[arg(long)]
        out: PathBuf,
    },
}

/// Parse argv and execute. Never calls `process::exit`; returns the code.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv: Vec<String> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let manifest_argv: Vec<String> = argv.iter().skip(1).cloned().collect();
    match execute(cli, manifest_argv) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn parse_sample_count(text: &str) -> Result<SampleCount, WindrankError> {
    if text.eq_ignore_ascii_case("all") {
        Ok(SampleCount::All)
    } else {
        text.parse::<usize>().map(SampleCount::Count).map_err(|_| {
            WindrankError::Usage(format!("--m expects \"all\" or a count, got {text:?}"))
        })
    }
}

fn load_sites(path: &Path) -> Result<Vec<SiteRecord>, WindrankError> {
    Ok(csvio::load_site_table(path)?)
}

fn train_config(seed: u64, train: &TrainArgs) -> TrainConfig {
    TrainConfig {
        seed,
        max_epochs: train.max_epochs,
        n_hidden: train.hidden,
        ..TrainConfig::default()
    }
}

fn execute(cli: Cli, manifest_argv: Vec<String>) -> Result<(), WindrankError> {
    let seed = cli.seed;
    match cli.command {
        Command::Fetch { coords, out, height } => fetch(&coords, &out, height, seed, manifest_argv),
        Command::Validate { data } => validate(&data),
        Command::Rank { data, relief, out } => {
            let m = parse_sample_count(&relief.m)?;
            let sites = load_sites(&data)?;
            let (weights, rank) = pipeline::rank_sites(&sites, relief.k, m, seed)?;
            let mut manifest = RunManifest::new("rank", manifest_argv, seed);
            manifest.add_input(&data)?;
            manifest.add_output(&out);
            let names = FEATURE_NAMES.iter().map(|&n| n.to_string()).collect();
            let file = RanksFile::new(names, &weights, &rank, manifest);
            formats::write_json(&out, &file)?;
            println!("ranked {} features over {} sites -> {}", FEATURE_NAMES.len(), sites.len(), out.display());
            for (position, &feature) in rank.order.iter().enumerate() {
                println!(
                    "  {:>2}. {:<22} W = {:+.6}",
                    position + 1,
                    FEATURE_NAMES[feature],
                    weights.weights[feature]
                );
            }
            Ok(())
        }
        Command::Train { data, relief, train, out, report } => {
            let m = parse_sample_count(&relief.m)?;
            let sites = load_sites(&data)?;
            let config = train_config(seed, &train);
            let outcome = pipeline::train_sites(&sites, relief.k, m, train.top, &config)?;

            let mut manifest = RunManifest::new("train", manifest_argv, seed);
            manifest.add_input(&data)?;
            manifest.add_output(&out);
            manifest.add_output(&report);

            let model = ModelFile {
                schema_version: SCHEMA_VERSION,
                feature_names: outcome.selected_names.clone(),
                selected_columns: outcome.selected_columns.clone(),
                ranking: RankingSummary {
                    weights: outcome.weights.weights.clone(),
                    ranks: outcome.rank.ranks.clone(),
                    order: outcome.rank.order.clone(),
                },
                network: outcome.report.network.clone(),
                normalization: outcome.normalization.clone(),
                train_config: config.clone(),
                best_epoch: outcome.report.best_epoch,
                stop: outcome.report.stop,
                manifest: manifest.clone(),
            };
            formats::write_json(&out, &model)?;
            let report_file = TrainReportFile {
                schema_version: SCHEMA_VERSION,
                train_mse: outcome.report.train_mse.clone(),
                val_mse: outcome.report.val_mse.clone(),
                monitor_mse: outcome.report.monitor_mse.clone(),
                best_epoch: outcome.report.best_epoch,
                stop: outcome.report.stop,
                train_metrics: outcome.train_metrics.clone(),
                manifest,
            };
            formats::write_json(&report, &report_file)?;

            println!(
                "trained on features [{}] | best epoch {} ({:?}) | train RMSE {:.3} m/s -> {}",
                outcome.selected_names.join(", "),
                outcome.report.best_epoch,
                outcome.report.stop,
                outcome.train_metrics.rmse,
                out.display()
            );
            Ok(())
        }
        Command::Evaluate { data, model, out, bins } => {
            let sites = load_sites(&data)?;
            let model_file: ModelFile = formats::read_json(&model)?;
            let (metrics, histogram) = pipeline::evaluate_sites(&sites, &model_file, bins)?;
            let mut manifest = RunManifest::new("evaluate", manifest_argv, seed);
            manifest.add_input(&data)?;
            manifest.add_input(&model)?;
            manifest.add_output(&out);
            let file = EvaluationFile {
                schema_version: SCHEMA_VERSION,
                metrics: metrics.clone(),
                histogram: histogram.clone(),
                manifest,
            };
            formats::write_json(&out, &file)?;
            println!(
                "test RMSE {:.3} m/s | MAE {:.3} m/s | MAPE {} | n = {}",
                metrics.rmse,
                metrics.mae,
                metrics
                    .mape
                    .map(|m| format!("{m:.1}%"))
                    .unwrap_or_else(|| "n/a".to_string()),
                metrics.n
            );
            print!("{}", render_histogram(&histogram));
            Ok(())
        }
        Command::Predict { data, model, out } => {
            let sites = load_sites(&data)?;
            let model_file: ModelFile = formats::read_json(&model)?;
            let predictions = pipeline::predict_sites(&sites, &model_file)?;
            let mut manifest = RunManifest::new("predict", manifest_argv, seed);
            manifest.add_input(&data)?;
            manifest.add_input(&model)?;
            manifest.add_output(&out);
            let n = predictions.len();
            let file =
                PredictionsFile { schema_version: SCHEMA_VERSION, predictions, manifest };
            formats::write_json(&out, &file)?;
            println!("predicted {} site-months -> {}", n, out.display());
            Ok(())
        }
        Command::Sweep { data, relief, train, delta, out } => {
            let m = parse_sample_count(&relief.m)?;
            let sites = load_sites(&data)?;
            let config = train_config(seed, &train);
            let trials =
                pipeline::sweep_sites(&sites, train.hidden, delta, relief.k, m, train.top, &config)?;
            let mut manifest = RunManifest::new("sweep", manifest_argv, seed);
            manifest.add_input(&data)?;
            manifest.add_output(&out);
            let selected = trials.iter().find(|t| t.selected).map(|t| t.n_hidden);
            let file = SweepFile {
                schema_version: SCHEMA_VERSION,
                base_hidden: train.hidden,
                delta,
                trials: trials.clone(),
                selected_n_hidden: selected,
                manifest,
            };
            formats::write_json(&out, &file)?;
            println!("hidden  MAPE");
            for trial in &trials {
                match (trial.mape, &trial.error) {
                    (Some(mape), _) => println!(
                        "  {:>4}  {:>6.2}%{}",
                        trial.n_hidden,
                        mape,
                        if trial.selected { "  <- selected" } else { "" }
                    ),
                    (None, Some(error)) => println!("  {:>4}  failed: {error}", trial.n_hidden),
                    (None, None) => println!("  {:>4}  n/a", trial.n_hidden),
                }
            }
            Ok(())
        }
        Command::Power { data, predictions, rho, area, horizon, out } => {
            let spec = PowerSpec::new(rho, area)?;
            let (speeds, input_path) = match (&data, &predictions) {
                (Some(path), None) => {
                    let sites = load_sites(path)?;
                    let matrix = build_feature_matrix(&sites)?;
                    (matrix.target().to_vec(), path.clone())
                }
                (None, Some(path)) => {
                    let file: PredictionsFile = formats::read_json(path)?;
                    (
                        file.predictions.iter().map(|p| p.predicted_wind_speed).collect(),
                        path.clone(),
                    )
                }
                _ => {
                    return Err(WindrankError::Usage(
                        "power needs exactly one of --data or --predictions".to_string(),
                    ))
                }
            };
            let rows = speeds
                .iter()
                .map(|&speed| Ok(PowerRow { speed, power_w: wind_power(&spec, speed)? }))
                .collect::<Result<Vec<_>, WindrankError>>()?;
            let mean_power_w = if rows.is_empty() {
                0.0
            } else {
                rows.iter().map(|r| r.power_w).sum::<f64>() / rows.len() as f64
            };
            let forecast = match horizon {
                None => None,
                Some(h) => {
                    let lag_model = fit_lag_model(&speeds)?;
                    let window = [speeds[speeds.len() - 2], speeds[speeds.len() - 1]];
                    let lag = lag_predict(&lag_model, &window, h)?
                        .into_iter()
                        .map(|speed| {
                            let clamped = speed.max(0.0);
                            Ok(PowerRow { speed, power_w: wind_power(&spec, clamped)? })
                        })
                        .collect::<Result<Vec<_>, WindrankError>>()?;
                    let persistence = persistence_forecast(&speeds, h)?
                        .into_iter()
                        .map(|speed| Ok(PowerRow { speed, power_w: wind_power(&spec, speed)? }))
                        .collect::<Result<Vec<_>, WindrankError>>()?;
                    Some(PowerForecast { horizon: h, lag_model, lag, persistence })
                }
            };
            let mut manifest = RunManifest::new("power", manifest_argv, seed);
            manifest.add_input(&input_path)?;
            manifest.add_output(&out);
            let file = PowerFile {
                schema_version: SCHEMA_VERSION,
                rho,
                area,
                rows,
                mean_power_w,
                forecast,
                manifest,
            };
            formats::write_json(&out, &file)?;
            println!(
                "converted {} speeds (rho = {rho} kg/m^3, A = {area} m^2); mean power {:.1} W -> {}",
                speeds.len(),
                mean_power_w,
                out.display()
            );
            Ok(())
        }
    }
}

fn fetch(
    coords: &Path,
    out: &Path,
    height: u32,
    seed: u64,
    manifest_argv: Vec<String>,
) -> Result<(), WindrankError> {
    let height = WindHeight::from_meters(height).ok_or_else(|| {
        WindrankError::Usage(format!("--height must be 10 or 50, got {height}"))
    })?;
    let rows = csvio::load_coords(coords)?;
    if rows.is_empty() {
        return Err(WindrankError::Domain(format!(
            "{}: coordinates file has no rows",
            coords.display()
        )));
    }
    // Cache lives beside the dataset unless the environment overrides it.
    let client = match std::env::var_os(CACHE_ENV) {
        Some(dir) => PowerClient::new().with_cache_dir(dir),
        None => {
            let beside = out.parent().unwrap_or_else(|| Path::new(".")).join("nasa-cache");
            PowerClient::new().with_cache_dir(beside)
        }
    };
    let mut sites = Vec::with_capacity(rows.len());
    for row in rows {
        log::info!("fetching climatology for {} ({}, {})", row.site, row.latitude, row.longitude);
        let months = client.fetch_monthly_climatology(row.latitude, row.longitude, height)?;
        let site = SiteRecord {
            name: row.site,
            state: row.state,
            latitude: row.latitude,
            longitude: row.longitude,
            elevation: row.elevation,
            role: row.role,
            months,
        };
        site.validate()?;
        sites.push(site);
    }
    csvio::write_site_table(out, &sites)?;
    let mut manifest = RunManifest::new("fetch", manifest_argv, seed);
    manifest.add_input(coords)?;
    manifest.add_output(out);
    let manifest_path = sidecar_manifest_path(out);
    formats::write_json(&manifest_path, &manifest)?;
    println!("wrote {} sites -> {} (manifest {})", sites.len(), out.display(), manifest_path.display());
    Ok(())
}

/// `<out>.manifest.json` beside a non-JSON artifact.
pub fn sidecar_manifest_path(out: &Path) -> PathBuf {
    let mut name = out.file_name().unwrap_or_default().to_os_string();
    name.push(".manifest.json");
    out.with_file_name(name)
}

fn validate(data: &Path) -> Result<(), WindrankError> {
    let sites = load_sites(data)?;
    let (training, testing) = split_by_role(&sites);
    let matrix = build_feature_matrix(&sites)?;
    let params = NormalizationParams::fit(&matrix)?;
    println!(
        "{}: {} sites ({} training / {} testing), {} site-month rows",
        data.display(),
        sites.len(),
        training.len(),
        testing.len(),
        matrix.n_rows()
    );
    println!("column ranges:");
    for (c, name) in FEATURE_NAMES.iter().enumerate() {
        println!(
            "  {:<22} [{:.3}, {:.3}]{}",
            name,
            params.feature_min(c),
            params.feature_max(c),
            if params.is_constant(c) { "  (constant)" } else { "" }
        );
    }
    println!(
        "  {:<22} [{:.3}, {:.3}]",
        "wind_speed (target)",
        params.target_min(),
        params.target_max()
    );
    Ok(())
}

/// Plain-text histogram: one bar per bin.
pub fn render_histogram(histogram: &ErrorHistogram) -> String {
    let max_count = histogram.counts.iter().copied().max().unwrap_or(1).max(1);
    let mut text = String::from("error histogram (m/s):\n");
    for (i, &count) in histogram.counts.iter().enumerate() {
        let bar_len = (count * 40).div_ceil(max_count);
        let closing = if i + 1 == histogram.counts.len() { ']' } else { ')' };
        text.push_str(&format!(
            "  [{:>7.3}, {:>7.3}{} {:>5} {}\n",
            histogram.edges[i],
            histogram.edges[i + 1],
            closing,
            count,
            "#".repeat(bar_len)
        ));
    }
    text
}
