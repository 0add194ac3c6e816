use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use tatelab::report::{emit_json, Report};
use tatelab::suite::{
    auslander_report, betti_report, complex_report, ext_report, invsys_report, is_config_failure, ring_report,
    run_suite, tate_report, IndexRange, Ranges, Suite,
};
use tatelab_core::homalg::ModulePreset;
use tatelab_core::scalars::{parse_rational, FieldConfig, FieldMode};

#[derive(Parser)]
#[command(name = "tatelab", version, about = "Verify the homological claims about the codimension-six Gorenstein ring")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Args)]
struct Opts {
    /// `q` for the rationals or `fp:<p>` for a prime field.
    #[arg(long, global = true, default_value = "q")]
    field: String,
    /// The parameter alpha, a rational literal such as 2 or 3/2.
    #[arg(long, global = true, default_value = "2", allow_hyphen_values = true)]
    alpha: String,
    /// Negative extent of the complete resolution and the Tate range.
    #[arg(long, global = true, default_value_t = 8)]
    neg: usize,
    /// Positive Tate range.
    #[arg(long, global = true, default_value_t = 8)]
    pos: usize,
    /// Resolution depth for the growth and Ext/Tor checks.
    #[arg(long, global = true, default_value_t = 8)]
    depth: usize,
    /// Largest q of the Auslander check; the single q for `auslander`.
    #[arg(long, global = true, default_value_t = 3)]
    q: u32,
    /// First seed of the length-two sample.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Also write the report as JSON to this path.
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    /// Report every runtime as 0, for byte-identical reports.
    #[arg(long, global = true)]
    no_timings: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run a group of checks.
    Verify { suite: Suite },
    /// Structure checks of the preset ring or a ring file.
    Ring {
        #[command(subcommand)]
        action: RingAction,
    },
    /// Exactness and minimality of the complete resolution on -neg..pos.
    Complex {
        #[command(subcommand)]
        action: VerifyOnly,
    },
    /// Betti numbers of a preset module.
    Betti {
        #[arg(long)]
        module: String,
        #[arg(long, default_value_t = 4)]
        n: usize,
    },
    /// Dimensions of Ext between preset modules.
    Ext {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        /// Inclusive range A..B.
        #[arg(long, allow_hyphen_values = true)]
        range: IndexRange,
    },
    /// Tate Ext and Tor of M and N over an inclusive range A..B.
    Tate {
        #[arg(long, allow_hyphen_values = true)]
        range: IndexRange,
    },
    /// The vanishing pattern of Ext(M, N_q) for the q given by --q.
    Auslander,
    /// Apolarity of the defining ideal against a cubic form.
    Invsys {
        #[command(subcommand)]
        action: InvsysAction,
    },
}

#[derive(Subcommand)]
enum RingAction {
    Verify {
        /// A ring presentation in the text format; the preset ring by default.
        #[arg(long)]
        file: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum VerifyOnly {
    Verify,
}

#[derive(Subcommand)]
enum InvsysAction {
    Verify {
        /// A cubic in tT, tU, tV, tX, tY, tZ; the built-in form by default.
        #[arg(long)]
        form: Option<PathBuf>,
    },
}

fn field_config(opts: &Opts, ranges: &Ranges) -> Result<FieldConfig, String> {
    let mode: FieldMode = opts.field.parse().map_err(|e| format!("{e}"))?;
    let alpha = parse_rational(&opts.alpha).map_err(|e| format!("{e}"))?;
    Ok(FieldConfig { mode, alpha, range_bound: ranges.range_bound() })
}

fn read(path: &PathBuf) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

fn preset(name: &str) -> Result<ModulePreset, String> {
    name.parse().map_err(|e| format!("{e}; known presets: {}", ModulePreset::NAMES))
}

fn run(cli: &Cli) -> Result<Report, String> {
    let o = &cli.opts;
    let ranges = Ranges { neg: o.neg, pos: o.pos, depth: o.depth, q_max: o.q, seed: o.seed, ..Ranges::default() };
    let cfg = field_config(o, &ranges)?;
    Ok(match &cli.command {
        Command::Verify { suite } => run_suite(*suite, &cfg, &ranges),
        Command::Ring { action: RingAction::Verify { file } } => {
            let text = file.as_ref().map(read).transpose()?;
            ring_report(&cfg, text.as_deref())
        }
        Command::Complex { action: VerifyOnly::Verify } => complex_report(&cfg, o.neg, o.pos),
        Command::Betti { module, n } => betti_report(&cfg, preset(module)?, *n),
        Command::Ext { from, to, range } => ext_report(&cfg, preset(from)?, preset(to)?, *range),
        Command::Tate { range } => tate_report(&cfg, *range),
        Command::Auslander => auslander_report(&cfg, o.q),
        Command::Invsys { action: InvsysAction::Verify { form } } => {
            let text = form.as_ref().map(read).transpose()?;
            invsys_report(&cfg, text.as_deref())
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut report = match run(&cli) {
        Ok(r) => r,
        Err(e) => tatelab::report::config_report(e),
    };
    if cli.opts.no_timings {
        report.strip_timings();
    }
    print!("{}", report.to_text());
    if let Some(path) = &cli.opts.json {
        if let Err(e) = emit_json(&report, path) {
            eprintln!("cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    if is_config_failure(&report) {
        ExitCode::from(2)
    } else if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
