use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use khlasagna::cli::{
    cmd_exotic_demo, cmd_facts_check, cmd_kh, cmd_lasagna, cmd_lee, cmd_s, parse_class, CliError, FactsStore, Output,
    RunConfig,
};
use khlasagna::khovanov::RingTag;
use khlasagna::lasagna::DEFAULT_MAX_CROSSINGS;

#[derive(Parser)]
#[command(name = "khlasagna", version, about = "Khovanov, Lee and gl2 homology; lasagna s-invariants of 2-handlebodies")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Ring {
    Z,
    Q,
}

#[derive(Args)]
struct Global {
    /// Coefficient ring.
    #[arg(long, global = true, value_enum, default_value = "z")]
    ring: Ring,
    /// Largest diagram or cable, in crossings, that is computed.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_CROSSINGS)]
    budget: usize,
    /// Last cable index of the s-sequence.
    #[arg(long, global = true, default_value_t = 1)]
    rmax: usize,
    /// Worker threads.
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,
    /// Print JSON instead of text tables.
    #[arg(long, global = true)]
    json: bool,
    /// Ignore every ingested fact.
    #[arg(long, global = true)]
    bounds_only: bool,
    /// Also write the output to this file.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Reserved; nothing is randomized.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Khovanov homology table of a diagram file.
    Kh {
        diagram: String,
        /// Use the gl2 normalization.
        #[arg(long)]
        gl2: bool,
    },
    /// Lee homology and canonical classes.
    Lee { diagram: String },
    /// s, s_gl2 and writhe.
    S {
        diagram: String,
        #[arg(long)]
        facts: Option<String>,
    },
    /// Lasagna s-invariants of a handlebody file.
    Lasagna {
        handlebody: String,
        #[arg(long)]
        facts: Option<String>,
        /// A class `a,b,...`; repeat for several.
        #[arg(long = "class", allow_hyphen_values = true)]
        classes: Vec<String>,
    },
    /// The exotic pair X1, X2 from bundled data.
    ExoticDemo {
        /// Replace the bundled facts.
        #[arg(long)]
        facts: Option<String>,
    },
    /// Validate a facts file.
    FactsCheck { facts: String },
}

fn facts(path: &Option<String>) -> Result<Option<FactsStore>, CliError> {
    match path {
        Some(p) => Ok(Some(FactsStore::parse(&khlasagna::cli::read_file(p)?)?)),
        None => Ok(None),
    }
}

fn run(cli: Cli) -> Result<(Output, RunConfig), CliError> {
    let g = cli.global;
    let cfg = RunConfig {
        ring: match g.ring {
            Ring::Z => RingTag::Integers,
            Ring::Q => RingTag::Rationals,
        },
        budget: g.budget,
        r_max: g.rmax,
        workers: g.workers,
        output: g.output,
        seed: g.seed,
        json: g.json,
        bounds_only: g.bounds_only,
    };
    cfg.validate()?;
    rayon::ThreadPoolBuilder::new().num_threads(cfg.workers).build_global().ok();
    let out = match &cli.command {
        Command::Kh { diagram, gl2 } => cmd_kh(&cfg, diagram, *gl2)?,
        Command::Lee { diagram } => cmd_lee(&cfg, diagram)?,
        Command::S { diagram, facts: f } => cmd_s(&cfg, diagram, facts(f)?.as_ref())?,
        Command::Lasagna { handlebody, facts: f, classes } => {
            let classes = classes.iter().map(|c| parse_class(c)).collect::<Result<Vec<_>, _>>()?;
            cmd_lasagna(&cfg, handlebody, facts(f)?.as_ref(), &classes)?
        }
        Command::ExoticDemo { facts } => cmd_exotic_demo(&cfg, facts.as_deref())?,
        Command::FactsCheck { facts } => cmd_facts_check(facts)?,
    };
    Ok((out, cfg))
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok((out, cfg)) => {
            let text = out.render(cfg.json);
            print!("{text}");
            if let Some(p) = &cfg.output {
                if let Err(e) = std::fs::write(p, &text) {
                    eprintln!("error: cannot write {}: {e}", p.display());
                    return ExitCode::from(2);
                }
            }
            match out.failure {
                Some(f) => {
                    eprintln!("assertion failed: {f}");
                    ExitCode::from(1)
                }
                None => ExitCode::SUCCESS,
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
