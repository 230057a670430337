use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use stackcalc::run::{DEFAULT_DEGREE, DEFAULT_SAMPLES};
use stackcalc::{Command, Exec, Format, RunConfig};

#[derive(Parser)]
#[command(name = "stackcalc", version, about = "Exact checks of multiplicative calculus on Lie groupoids")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the presentation axioms and closure of the differentials.
    Validate(Opts),
    /// Derivative identities and the module axioms on seeded samples.
    Lemmas(Opts),
    /// The Van-Est square and chain-map identities.
    Vanest(Opts),
    /// Invariants, windowed cohomology, the anchor map and derivation probes.
    Cohomology(Opts),
    /// Graded Leibniz rule and anchor-map morphism checks.
    LieRinehart(Opts),
    /// Window comparison along a Morita morphism (all built-in pairs by default).
    Morita(Opts),
    /// Composition in the hom-category versus natural transformations.
    HomCategory(Opts),
    /// Everything, on every built-in example.
    Gallery(Opts),
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Text,
    Json,
}

#[derive(Args)]
struct Opts {
    /// Built-in example name.
    #[arg(long, conflicts_with = "input")]
    example: Option<String>,
    /// Groupoid or algebroid presentation (JSON).
    #[arg(long)]
    input: Option<PathBuf>,
    /// Total degree bound of the windows.
    #[arg(long, default_value_t = DEFAULT_DEGREE)]
    degree: u32,
    /// Samples per identity suite.
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: usize,
    #[arg(long, env = "STACKCALC_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = OutFormat::Text)]
    format: OutFormat,
    /// Write the report here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Evaluate samples on the calling thread only.
    #[arg(long)]
    sequential: bool,
}

fn config(cmd: Cmd) -> RunConfig {
    let (command, o) = match cmd {
        Cmd::Validate(o) => (Command::Validate, o),
        Cmd::Lemmas(o) => (Command::Lemmas, o),
        Cmd::Vanest(o) => (Command::Vanest, o),
        Cmd::Cohomology(o) => (Command::Cohomology, o),
        Cmd::LieRinehart(o) => (Command::LieRinehart, o),
        Cmd::Morita(o) => (Command::Morita, o),
        Cmd::HomCategory(o) => (Command::HomCategory, o),
        Cmd::Gallery(o) => (Command::Gallery, o),
    };
    RunConfig {
        command,
        example: o.example,
        input: o.input,
        degree: o.degree,
        samples: o.samples,
        seed: o.seed,
        format: match o.format {
            OutFormat::Text => Format::Text,
            OutFormat::Json => Format::Json,
        },
        output: o.output,
        exec: if o.sequential { Exec::Sequential } else { Exec::Parallel },
    }
}

fn main() -> ExitCode {
    // `stackcalc run <command> ...` is accepted as a synonym.
    let mut args: Vec<String> = std::env::args().collect();
    if args.get(1).map(String::as_str) == Some("run") {
        args.remove(1);
    }
    let cli = Cli::parse_from(args);
    let cfg = config(cli.command);
    let out = stackcalc::run(&cfg);
    if out.status == 2 {
        eprint!("{}", out.output);
    } else if cfg.output.is_none() {
        print!("{}", out.output);
    }
    ExitCode::from(out.status as u8)
}
