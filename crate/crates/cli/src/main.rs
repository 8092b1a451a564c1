use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use mollow_rts::curve::Provenance;
use mollow_rts::oracle::oracle_spectrum;
use mollow_rts::{spectrum_curve_fixed_v, PhysicalParams, RtsParams, UnitScale};
use mollow_rts_cli::config::{parse_config, AnalysisConfig, ConfigError, QuadratureConfig, RunConfig, Scenario, ScenarioMode};
use mollow_rts_cli::emit::{emit_curve, OutputFormat};
use mollow_rts_cli::report::sha256_hex;
use mollow_rts_cli::runner::{run, RunOptions};
use mollow_rts_cli::{presets, ScenarioOutcome};

/// Spectra of a driven two-level atom under telegraph collision noise:
/// closed-form line shapes, thermal averaging and a Monte Carlo cross-check.
#[derive(Parser)]
#[command(name = "mollow-rts", version, about, long_about = None)]
struct Cli {
    /// Worker threads; the MOLLOW_RTS_THREADS environment variable overrides
    /// this flag.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a single spectrum from command-line parameters.
    Spectrum(SpectrumArgs),
    /// Execute every scenario of a TOML configuration file.
    Run(RunArgs),
    /// Compare the Monte Carlo spectrum against the closed form at fixed
    /// noise parameters.
    Oracle(OracleArgs),
    /// List shipped figure presets or emit one as a config file.
    Presets(PresetsArgs),
}

#[derive(clap::Args)]
struct SpectrumArgs {
    /// Scenario name, used as the output file stem.
    #[arg(long, default_value = "spectrum")]
    name: String,
    #[arg(long, value_parser = ["fixed_v", "thermal"], default_value = "thermal")]
    mode: String,
    #[arg(long)]
    rabi_frequency: f64,
    #[arg(long, default_value_t = 0.0)]
    detuning: f64,
    #[arg(long)]
    gamma: f64,
    #[arg(long, default_value_t = 0.0)]
    wave_number: f64,
    #[arg(long, default_value_t = 0.0)]
    collision_density: f64,
    #[arg(long)]
    thermal_c: f64,
    #[arg(long, value_parser = ["gamma", "rabi"], default_value = "gamma")]
    unit_scale: String,
    #[arg(long, allow_hyphen_values = true)]
    omega_min: f64,
    #[arg(long, allow_hyphen_values = true)]
    omega_max: f64,
    #[arg(long, default_value_t = 2001)]
    omega_count: usize,
    /// Molecule speed (required for fixed_v mode).
    #[arg(long)]
    speed: Option<f64>,
    /// Quadrature nodes for thermal mode.
    #[arg(long)]
    nodes: Option<usize>,
    #[arg(long, default_value = "out")]
    out: PathBuf,
    #[arg(long, value_parser = ["csv", "json"], default_value = "csv")]
    format: String,
    /// Also write a gnuplot script next to the data.
    #[arg(long)]
    plot_script: bool,
}

#[derive(clap::Args)]
struct RunArgs {
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_parser = ["csv", "json"])]
    format: Option<String>,
    /// Override the seed of every oracle scenario.
    #[arg(long)]
    seed: Option<u64>,
    /// Abort on the first scenario error.
    #[arg(long)]
    fail_fast: bool,
    /// Also write a gnuplot script next to the data.
    #[arg(long)]
    plot_script: bool,
}

#[derive(clap::Args)]
struct OracleArgs {
    #[arg(long)]
    rabi_frequency: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    detuning: f64,
    #[arg(long)]
    gamma: f64,
    /// Telegraph amplitude a.
    #[arg(long)]
    amplitude: f64,
    /// Telegraph switching rate 1/τ_a.
    #[arg(long)]
    switch_rate: f64,
    #[arg(long, allow_hyphen_values = true)]
    omega_min: f64,
    #[arg(long, allow_hyphen_values = true)]
    omega_max: f64,
    #[arg(long, default_value_t = 161)]
    omega_count: usize,
    #[arg(long, default_value_t = 20_000)]
    n_traj: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Smallest acceptable fraction of grid points within 3σ.
    #[arg(long, default_value_t = 0.95)]
    min_fraction: f64,
    #[arg(long, default_value = "out")]
    out: PathBuf,
    #[arg(long, value_parser = ["csv", "json"], default_value = "json")]
    format: String,
}

#[derive(clap::Args)]
struct PresetsArgs {
    #[command(subcommand)]
    action: PresetsAction,
}

#[derive(Subcommand)]
enum PresetsAction {
    /// List available presets.
    List,
    /// Print a preset config (or write it with --out).
    Emit {
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn init_threads(flag: Option<usize>) {
    let from_env = std::env::var("MOLLOW_RTS_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok());
    if let Some(n) = from_env.or(flag) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    init_threads(cli.threads);
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(AppError::Config(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(AppError::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

enum AppError {
    Config(ConfigError),
    Runtime(String),
}

impl From<ConfigError> for AppError {
    fn from(e: ConfigError) -> Self {
        AppError::Config(e)
    }
}

fn runtime(msg: impl std::fmt::Display) -> AppError {
    AppError::Runtime(msg.to_string())
}

fn dispatch(command: Command) -> Result<ExitCode, AppError> {
    match command {
        Command::Spectrum(args) => cmd_spectrum(args),
        Command::Run(args) => cmd_run(args),
        Command::Oracle(args) => cmd_oracle(args),
        Command::Presets(args) => cmd_presets(args),
    }
}

fn write_plot_script(out: &std::path::Path, stems: &[String]) -> Result<(), AppError> {
    let mut body = String::from("set datafile separator ','\nset xlabel 'omega'\nset ylabel 'intensity'\nplot \\\n");
    let lines: Vec<String> = stems
        .iter()
        .map(|s| format!("  '{s}.csv' using 1:2 with lines title '{s}'"))
        .collect();
    body.push_str(&lines.join(", \\\n"));
    body.push('\n');
    std::fs::write(out.join("plot.gp"), body).map_err(runtime)
}

fn cmd_spectrum(args: SpectrumArgs) -> Result<ExitCode, AppError> {
    let mode = match args.mode.as_str() {
        "fixed_v" => ScenarioMode::FixedV,
        _ => ScenarioMode::Thermal,
    };
    let scenario = Scenario {
        name: args.name.clone(),
        mode,
        rabi_frequency: args.rabi_frequency,
        detuning: args.detuning,
        gamma: args.gamma,
        wave_number: args.wave_number,
        collision_density: args.collision_density,
        thermal_c: args.thermal_c,
        unit_scale: if args.unit_scale == "rabi" { UnitScale::RabiUnits } else { UnitScale::GammaUnits },
        omega_min: args.omega_min,
        omega_max: args.omega_max,
        omega_count: args.omega_count,
        speed: args.speed,
        n_trajectories: None,
        seed: None,
        quadrature: QuadratureConfig { node_count: args.nodes, ..Default::default() },
        analysis: AnalysisConfig::default(),
    };
    let config = RunConfig {
        output_dir: args.out.display().to_string(),
        format: args.format.clone(),
        scenarios: vec![scenario],
    };
    config.validate()?;
    let config_text = toml::to_string_pretty(&config).map_err(runtime)?;
    let report = run(&config, &config_text, &RunOptions::default()).map_err(runtime)?;
    if args.plot_script && args.format == "csv" {
        write_plot_script(&args.out, &[args.name.clone()])?;
    }
    print_report_summary(&report);
    Ok(if report.has_errors() { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

fn cmd_run(args: RunArgs) -> Result<ExitCode, AppError> {
    let text = std::fs::read_to_string(&args.config)
        .map_err(|e| runtime(format!("cannot read {}: {e}", args.config.display())))?;
    let config = parse_config(&text)?;
    let options = RunOptions {
        output_dir: args.out.clone(),
        format: args.format.as_deref().and_then(OutputFormat::from_name),
        seed: args.seed,
        fail_fast: args.fail_fast,
    };
    let report = run(&config, &text, &options).map_err(runtime)?;
    if args.plot_script {
        let out = options
            .output_dir
            .unwrap_or_else(|| PathBuf::from(&config.output_dir));
        let stems: Vec<String> = report
            .scenarios
            .iter()
            .filter_map(|s| match &s.outcome {
                ScenarioOutcome::Ok { curve_file, .. } if curve_file.ends_with(".csv") => {
                    Some(s.name.clone())
                }
                _ => None,
            })
            .collect();
        if !stems.is_empty() {
            write_plot_script(&out, &stems)?;
        }
    }
    print_report_summary(&report);
    Ok(if report.has_errors() { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

fn print_report_summary(report: &mollow_rts_cli::RunReport) {
    for s in &report.scenarios {
        match &s.outcome {
            ScenarioOutcome::Ok { curve_file, analysis, .. } => {
                let peaks = analysis
                    .as_ref()
                    .map(|a| format!(", {} peak(s)", a.peaks.len()))
                    .unwrap_or_default();
                println!("{}: ok -> {curve_file}{peaks}", s.name);
            }
            ScenarioOutcome::Error { message } => println!("{}: error: {message}", s.name),
        }
    }
}

fn cmd_oracle(args: OracleArgs) -> Result<ExitCode, AppError> {
    let params = PhysicalParams::new(
        args.rabi_frequency,
        args.detuning,
        args.gamma,
        0.0,
        0.0,
        1.0,
        UnitScale::GammaUnits,
    )
    .map_err(runtime)?;
    let rts = RtsParams::raw(args.amplitude, args.switch_rate, 0.0);
    if args.omega_count < 3 || !(args.omega_min < args.omega_max) {
        return Err(runtime("need omega_min < omega_max and at least 3 grid points"));
    }
    let grid = mollow_rts::curve::linspace(args.omega_min, args.omega_max, args.omega_count);
    let formula = spectrum_curve_fixed_v(&params, &rts, &grid).map_err(runtime)?;
    let mc = oracle_spectrum(&params, &rts, &grid, args.n_traj, args.seed).map_err(runtime)?;

    std::fs::create_dir_all(&args.out).map_err(runtime)?;
    let format = OutputFormat::from_name(&args.format).expect("validated by clap");
    let formula_path = args.out.join(format!("oracle_formula.{}", format.extension()));
    let mc_path = args.out.join(format!("oracle_mc.{}", format.extension()));
    emit_curve(&formula, &formula_path, format).map_err(runtime)?;
    emit_curve(&mc, &mc_path, format).map_err(runtime)?;

    let band = match &mc.provenance {
        Provenance::MonteCarlo { std_error, .. } => std_error.clone(),
        _ => unreachable!("oracle curve carries Monte Carlo provenance"),
    };
    let step = grid[1] - grid[0];
    let mut compared = 0usize;
    let mut within = 0usize;
    for k in 0..grid.len() {
        if grid[k].abs() <= step * (1.0 + 1e-9) {
            continue; // elastic-component ambiguity near omega = 0
        }
        compared += 1;
        let dev = (mc.intensity[k] - formula.intensity[k]).abs();
        if dev <= 3.0 * band[k] {
            within += 1;
        }
    }
    let fraction = within as f64 / compared.max(1) as f64;
    let summary = serde_json::json!({
        "n_trajectories": args.n_traj,
        "seed": args.seed,
        "points_compared": compared,
        "points_within_3_sigma": within,
        "fraction_within_3_sigma": fraction,
        "formula_file": formula_path.display().to_string(),
        "mc_file": mc_path.display().to_string(),
        "config_sha256": sha256_hex(format!(
            "{:?}|{:?}|{:?}|{}|{}", params, rts, grid.len(), args.n_traj, args.seed
        ).as_bytes()),
    });
    let report_path = args.out.join("oracle_report.json");
    std::fs::write(&report_path, format!("{}\n", serde_json::to_string_pretty(&summary).map_err(runtime)?))
        .map_err(runtime)?;
    println!(
        "oracle: {within}/{compared} points within 3 sigma ({:.1}%), report -> {}",
        100.0 * fraction,
        report_path.display()
    );
    Ok(if fraction >= args.min_fraction { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_presets(args: PresetsArgs) -> Result<ExitCode, AppError> {
    match args.action {
        PresetsAction::List => {
            for (name, description, _) in presets::all() {
                println!("{name}: {description}");
            }
            Ok(ExitCode::SUCCESS)
        }
        PresetsAction::Emit { name, out } => match presets::get(&name) {
            Some(doc) => {
                match out {
                    Some(path) => std::fs::write(&path, doc).map_err(runtime)?,
                    None => print!("{doc}"),
                }
                Ok(ExitCode::SUCCESS)
            }
            None => Err(runtime(format!(
                "unknown preset '{name}'; available: {}",
                presets::all().iter().map(|(n, _, _)| *n).collect::<Vec<_>>().join(", ")
            ))),
        },
    }
}
