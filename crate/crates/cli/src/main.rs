use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lagrange3_core::report::{self, Config, Format, Stage};

#[derive(Parser)]
#[command(name = "lagrange3", version, about = "Exact verification of the Lagrangian P^3 self-intersection on K3^[3]-type sixfolds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Product table of the cohomology ring and the Fujiki relation
    Ring(Opts),
    /// Middle-degree Gram matrix and the class eta
    Hodge(Opts),
    /// Riemann-Roch constants and the relations at the solution
    Fujiki(Opts),
    /// Elimination to an elliptic curve and the conclusion (l, l) = -3
    Eliminate(Opts),
    /// Discriminant, reductions and torsion of the curve
    Curve(Opts),
    /// Two-isogeny descent, epsilon ladders and saturation
    Descent(Opts),
    /// Denominator certificates for points in Z[1/2]
    Integral(Opts),
    /// Betti numbers and orthogonal group branching
    Enumerative(Opts),
    /// Every stage in order
    All(Opts),
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Json,
    Markdown,
}

#[derive(Args)]
struct Opts {
    #[arg(long, value_enum, default_value = "markdown")]
    format: OutputFormat,
    /// Largest |n| in the scan over nP + kQ
    #[arg(long, default_value_t = 10)]
    scan_bound: i64,
    /// Extra p-adic precision beyond the resultant bound
    #[arg(long, default_value_t = 2)]
    padic_extra_precision: u32,
    /// Seed for the random Fujiki cases
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (stages, opts) = match cli.command {
        Command::Ring(o) => (vec![Stage::Ring], o),
        Command::Hodge(o) => (vec![Stage::Hodge], o),
        Command::Fujiki(o) => (vec![Stage::Fujiki], o),
        Command::Eliminate(o) => (vec![Stage::Eliminate], o),
        Command::Curve(o) => (vec![Stage::Curve], o),
        Command::Descent(o) => (vec![Stage::Descent], o),
        Command::Integral(o) => (vec![Stage::Integral], o),
        Command::Enumerative(o) => (vec![Stage::Enumerative], o),
        Command::All(o) => (Stage::ALL.to_vec(), o),
    };
    let config = Config {
        scan_bound: opts.scan_bound,
        padic_extra_precision: opts.padic_extra_precision,
        seed: opts.seed,
        ..Config::default()
    };
    let format = match opts.format {
        OutputFormat::Json => Format::Json,
        OutputFormat::Markdown => Format::Markdown,
    };
    let rendered = report::run(&stages, &config).and_then(|r| Ok((r.render(format)?, r.has_failures())));
    let (text, failed) = match rendered {
        Ok(x) => x,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match &opts.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    if failed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
