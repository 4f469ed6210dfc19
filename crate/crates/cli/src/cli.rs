use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use mlcap_core::baa::baa_capacity;
use mlcap_core::bounds::DGrid;
use mlcap_core::Approach;

use crate::commands::{self, BaaSettings, Channel};
use crate::config::ConfigFile;
use crate::error::{CliError, CliResult};

#[derive(Debug, Parser)]
#[command(name = "mlcap", version, about = "Maximum-likelihood capacity bounds for binary channels")]
pub struct Cli {
    /// Worker threads for exhaustive searches (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Plain key=value file supplying defaults for any flag.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count the deletion patterns taking X to Y.
    Count {
        x: String,
        y: String,
        /// Also run the brute-force enumerator.
        #[arg(long)]
        verify: bool,
    },
    /// Exhaustive maximal-count table for every y of length M at input length N.
    MdmTable(MdmTableArgs),
    /// Bound curves over a grid of channel parameters, as CSV.
    Bounds(BoundsArgs),
    /// Blahut-Arimoto capacity proxy for the deletion channel.
    Baa(BaaArgs),
    /// Duplication-ratio minimizers and trends.
    Hypotheses(HypothesesArgs),
}

#[derive(Debug, Args)]
pub struct MdmTableArgs {
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    /// assign-to-last, assign-by-length or gamma.
    #[arg(long)]
    pub approach: Option<Approach>,
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Resume from and record progress in this file.
    #[arg(long)]
    pub checkpoint: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    /// bec, bsc or bdc.
    #[arg(long)]
    pub channel: Option<Channel>,
    /// Block length; 0 selects closed forms where they exist.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub d_start: Option<f64>,
    #[arg(long)]
    pub d_stop: Option<f64>,
    #[arg(long)]
    pub d_step: Option<f64>,
    /// Comma-separated kinds: ml-raw, ml-adjusted, dup-assign-to-last,
    /// dup-assign-by-length, dup-gamma, explicit, golden, trivial, baa,
    /// dobrushin-lower.
    #[arg(long)]
    pub kinds: Option<String>,
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Also write a gnuplot script that plots the CSV.
    #[arg(long)]
    pub gnuplot: Option<PathBuf>,
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub max_iter: Option<usize>,
}

#[derive(Debug, Args)]
pub struct BaaArgs {
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub d: Option<f64>,
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub max_iter: Option<usize>,
    /// Write the per-iteration mutual information here as CSV.
    #[arg(long)]
    pub history: Option<PathBuf>,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct HypothesesArgs {
    /// Comma-separated block lengths, each a multiple of the factor.
    #[arg(long, value_delimiter = ',')]
    pub n: Vec<usize>,
    #[arg(long)]
    pub factor: Option<usize>,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

fn write_output(path: Option<&Path>, text: &str, stdout: &mut dyn Write) -> CliResult<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Io(e.to_string())),
    }
}

fn configure_threads(threads: Option<usize>) -> CliResult<()> {
    let Some(t) = threads else { return Ok(()) };
    if t == 0 {
        return Err(CliError::Usage("--threads must be at least 1".into()));
    }
    // a second call in the same process keeps the first pool
    let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    Ok(())
}

/// Runs a parsed command, writing results to `stdout` (or to the requested
/// files) and diagnostics to `stderr`.
pub fn execute(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> CliResult<()> {
    let cfg = match &cli.config {
        Some(p) => ConfigFile::load(p)?,
        None => ConfigFile::default(),
    };
    configure_threads(cfg.or(cli.threads, "threads")?)?;
    match cli.command {
        Command::Count { x, y, verify } => write_output(None, &commands::count(&x, &y, verify)?, stdout),
        Command::MdmTable(a) => {
            let n = cfg.require(a.n, "n")?;
            let m = cfg.require(a.m, "m")?;
            let approach = cfg.or(a.approach, "approach")?.unwrap_or_default();
            let checkpoint = cfg.or(a.checkpoint, "checkpoint")?;
            let csv = commands::mdm_table_command(n, m, approach, checkpoint.as_deref())?;
            write_output(cfg.or(a.output, "output")?.as_deref(), &csv, stdout)
        }
        Command::Bounds(a) => {
            let channel = cfg.require(a.channel, "channel")?;
            let n = cfg.or(a.n, "n")?.unwrap_or(0);
            let grid = DGrid::new(
                cfg.or(a.d_start, "d-start")?.unwrap_or(0.1),
                cfg.or(a.d_stop, "d-stop")?.unwrap_or(0.9),
                cfg.or(a.d_step, "d-step")?.unwrap_or(0.1),
            )?;
            let kinds = match cfg.or(a.kinds, "kinds")? {
                Some(list) => commands::parse_kinds(&list)?,
                None => commands::default_bdc_kinds(),
            };
            let mut baa = BaaSettings::default();
            baa.tol = cfg.or(a.tol, "tol")?.unwrap_or(baa.tol);
            baa.max_iter = cfg.or(a.max_iter, "max-iter")?.unwrap_or(baa.max_iter);
            let (points, warnings) = commands::bound_points(channel, n, &grid, &kinds, baa)?;
            for w in warnings {
                writeln!(stderr, "warning: {w}").ok();
            }
            let output = cfg.or(a.output, "output")?;
            write_output(output.as_deref(), &commands::bounds_csv(&points), stdout)?;
            if let Some(script) = cfg.or(a.gnuplot, "gnuplot")? {
                let csv_name = output
                    .as_deref()
                    .map(|p| p.display().to_string())
                    .unwrap_or_else(|| "bounds.csv".into());
                write_output(Some(&script), &commands::gnuplot_script(&csv_name, &points), stdout)?;
            }
            Ok(())
        }
        Command::Baa(a) => {
            let n = cfg.require(a.n, "n")?;
            let d = cfg.require(a.d, "d")?;
            let tol = cfg.or(a.tol, "tol")?.unwrap_or(1e-10);
            let max_iter = cfg.or(a.max_iter, "max-iter")?.unwrap_or(100_000);
            let report = baa_capacity(n, d, tol, max_iter)?;
            if !report.converged {
                writeln!(stderr, "warning: no convergence within {max_iter} iterations").ok();
            }
            write_output(cfg.or(a.output, "output")?.as_deref(), &commands::baa_text(&report), stdout)?;
            if let Some(h) = cfg.or(a.history, "history")? {
                write_output(Some(&h), &commands::baa_history_csv(&report), stdout)?;
            }
            Ok(())
        }
        Command::Hypotheses(a) => {
            let ns = if a.n.is_empty() {
                match cfg.raw("n") {
                    Some(list) => list
                        .split(',')
                        .map(|s| {
                            s.trim()
                                .parse::<usize>()
                                .map_err(|e| CliError::Usage(format!("config key n: {e}")))
                        })
                        .collect::<CliResult<Vec<_>>>()?,
                    None => vec![8, 10, 12, 14],
                }
            } else {
                a.n
            };
            let factor = cfg.or(a.factor, "factor")?.unwrap_or(2);
            let csv = commands::hypotheses_csv(&ns, factor)?;
            write_output(cfg.or(a.output, "output")?.as_deref(), &csv, stdout)
        }
    }
}

/// Parses `args` and runs the command, returning the process exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                stdout.write_all(text.as_bytes()).ok();
            } else {
                stderr.write_all(text.as_bytes()).ok();
            }
            return code;
        }
    };
    match execute(cli, stdout, stderr) {
        Ok(()) => 0,
        Err(e) => {
            writeln!(stderr, "error: {e}").ok();
            e.exit_code()
        }
    }
}
