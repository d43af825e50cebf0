//! `nri`: command-line access to index-vector statistics, NRI tensor files,
//! recovery experiments and the co-occurrence text pipeline.
//!
//! Exit status is 0 on success, 1 on a usage error and 2 on a runtime error.

mod experiment;
mod output;
mod parse;
mod tensor;
mod ternary;
mod text;

use std::io::Write;
use std::process::ExitCode;

use clap::{ArgAction, Parser, Subcommand};

use output::{Format, Table};

#[derive(Parser)]
#[command(name = "nri", version, about = "N-way random indexing")]
struct Cli {
    /// Master seed for index vectors and sampling.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Output format for tables.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Cap on any state allocation, in bytes (suffixes K, M, G, T).
    #[arg(long, global = true, env = "NRI_MEMCAP", value_parser = parse::bytes)]
    memcap: Option<u64>,

    /// Worker threads; defaults to the available parallelism.
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// More log output on stderr (repeatable).
    #[arg(short, long, global = true, action = ArgAction::Count)]
    verbose: u8,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Probability of a dot product between two random index vectors.
    Prob(ternary::ProbArgs),
    /// Monte Carlo histogram of dot products against the analytic values.
    Mc(ternary::McArgs),
    /// Analytic and sampled dot-product probabilities in table form.
    Table1(ternary::TableArgs),
    /// Create, update and query tensor files.
    #[command(subcommand)]
    Tensor(tensor::TensorCommand),
    /// Planted-feature recovery experiments.
    #[command(subcommand)]
    Experiment(experiment::ExperimentCommand),
    /// Word co-occurrence models.
    #[command(subcommand)]
    Text(text::TextCommand),
}

pub struct Context {
    pub seed: u64,
    pub format: Format,
    pub memcap: u64,
}

impl Context {
    pub fn emit(&self, table: &Table) -> anyhow::Result<()> {
        let stdout = std::io::stdout();
        let mut lock = stdout.lock();
        table.write(self.format, &mut lock)?;
        lock.flush()?;
        Ok(())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };

    let level = match cli.verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        2 => log::LevelFilter::Debug,
        _ => log::LevelFilter::Trace,
    };
    env_logger::Builder::new()
        .filter_level(level)
        .format_timestamp(None)
        .init();

    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }

    let ctx = Context {
        seed: cli.seed,
        format: cli.format,
        memcap: cli.memcap.unwrap_or(nri::tensor::DEFAULT_MEMORY_CAP),
    };
    let result = match cli.command {
        Command::Prob(a) => ternary::prob(&ctx, a),
        Command::Mc(a) => ternary::mc(&ctx, a),
        Command::Table1(a) => ternary::table1(&ctx, a),
        Command::Tensor(c) => tensor::run(&ctx, c),
        Command::Experiment(c) => experiment::run(&ctx, c),
        Command::Text(c) => text::run(&ctx, c),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if is_broken_pipe(&e) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn is_broken_pipe(e: &anyhow::Error) -> bool {
    e.chain().any(|c| {
        c.downcast_ref::<std::io::Error>()
            .is_some_and(|io| io.kind() == std::io::ErrorKind::BrokenPipe)
    })
}
