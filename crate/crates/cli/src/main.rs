use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use ipek_core::config::{ScenarioConfig, Scheme};
use ipek_core::error::ConfigError;
use ipek_core::sweep::{self, SweepSpec};
use ipek_core::{output, sim};

#[derive(Parser)]
#[command(
    name = "ipek",
    version,
    about = "Vehicular trust simulator and sweep driver"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one scenario and write its time series, summary, and schedule.
    Run {
        /// Scenario config (JSON).
        config: PathBuf,
        #[arg(long, env = "IPEK_OUT_DIR", default_value = "out")]
        out: PathBuf,
        /// Overrides the config's seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Overrides the config's scheme.
        #[arg(long, value_parser = parse_scheme)]
        scheme: Option<Scheme>,
        /// Also print the radar quadruple (recall, precision, f1, 1-fpr).
        #[arg(long)]
        radar: bool,
    },
    /// Run every (ratio, seed, scheme) cell of a sweep spec.
    Sweep {
        /// Sweep spec (JSON).
        spec: PathBuf,
        #[arg(long, env = "IPEK_OUT_DIR", default_value = "out")]
        out: PathBuf,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Also print the radar quadruple per (ratio, scheme).
        #[arg(long)]
        radar: bool,
    },
}

fn parse_scheme(s: &str) -> Result<Scheme, String> {
    match s {
        "ipek" => Ok(Scheme::Ipek),
        "symmetric_baseline" => Ok(Scheme::SymmetricBaseline),
        other => Err(format!(
            "unknown scheme `{other}` (expected ipek or symmetric_baseline)"
        )),
    }
}

enum Failure {
    Config(ConfigError),
    Runtime(String),
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        match e {
            ConfigError::Io { .. } => Failure::Runtime(e.to_string()),
            other => Failure::Config(other),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

fn fmt_metric(v: Option<f64>) -> String {
    v.map_or_else(|| "n/a".to_string(), |x| format!("{x:.4}"))
}

fn fmt_quad(label: &str, values: [Option<f64>; 4]) -> String {
    format!(
        "{label}: recall={} precision={} f1={} {}",
        fmt_metric(values[0]),
        fmt_metric(values[1]),
        fmt_metric(values[2]),
        if label.starts_with("radar") {
            format!("1-fpr={}", fmt_metric(values[3]))
        } else {
            format!("fpr={}", fmt_metric(values[3]))
        }
    )
}

/// Makes a relative `schedule_file` relative to the config's directory.
fn resolve_schedule(cfg: &mut ScenarioConfig, config_path: &Path) {
    if let Some(file) = &cfg.schedule_file {
        let p = Path::new(file);
        if p.is_relative() {
            let base = config_path.parent().unwrap_or(Path::new("."));
            cfg.schedule_file = Some(base.join(p).display().to_string());
        }
    }
}

fn run_scenario(
    config: &Path,
    out: &Path,
    seed: Option<u64>,
    scheme: Option<Scheme>,
    radar: bool,
) -> Result<(), Failure> {
    let mut cfg = ScenarioConfig::from_path(config)?;
    resolve_schedule(&mut cfg, config);
    if let Some(seed) = seed {
        cfg.seed = seed;
    }
    if let Some(scheme) = scheme {
        cfg.scheme = scheme;
    }
    let trace = sim::run(&cfg)?;
    output::write_trace(&trace, out)?;

    let scores = trace.final_scores();
    let cm = trace.final_cm;
    println!(
        "{} seed={} ratio={} tp={} fp={} tn={} fn={}",
        cfg.scheme, cfg.seed, cfg.attacker_ratio, cm.tp, cm.fp, cm.tn, cm.fn_
    );
    println!(
        "{}",
        fmt_quad(
            "final",
            [scores.recall, scores.precision, scores.f1, scores.fpr]
        )
    );
    if radar {
        println!(
            "{}",
            fmt_quad(&format!("radar {}", cfg.scheme), scores.radar())
        );
    }
    println!("wrote {}", out.display());
    Ok(())
}

fn run_sweep(spec_path: &Path, out: &Path, jobs: usize, radar: bool) -> Result<(), Failure> {
    let mut spec = SweepSpec::from_path(spec_path)?;
    resolve_schedule(&mut spec.base, spec_path);
    let result = sweep::run_sweep(&spec, jobs)?;

    fs::create_dir_all(out)?;
    let summary = fs::File::create(out.join("sweep_summary.csv"))?;
    sweep::write_summary(&result.rows, io::BufWriter::new(summary))?;
    let cells = fs::File::create(out.join("sweep_cells.csv"))?;
    sweep::write_cells(&result.cells, io::BufWriter::new(cells))?;

    for row in &result.rows {
        let label = format!("ratio={} {}", row.attacker_ratio, row.scheme);
        println!(
            "{}",
            fmt_quad(&label, [row.recall, row.precision, row.f1, row.fpr])
        );
        if radar {
            println!(
                "{}",
                fmt_quad(
                    &format!("radar ratio={} {}", row.attacker_ratio, row.scheme),
                    row.radar()
                )
            );
        }
    }
    println!("{} runs, wrote {}", result.cells.len(), out.display());
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Run {
            config,
            out,
            seed,
            scheme,
            radar,
        } => run_scenario(&config, &out, seed, scheme, radar),
        Command::Sweep {
            spec,
            out,
            jobs,
            radar,
        } => run_sweep(&spec, &out, jobs, radar),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Config(e)) => {
            eprintln!("config error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Runtime(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
