use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;

use anyhow::{Context as _, Result};
use clap::{Args, Subcommand};
use nri::experiments::{
    run_recovery_with_cap, sweep_configs, write_sweep_csv, RecoveryConfig, RecoveryMode, SweepAxis,
    SweepRow, SWEEP_HEADER,
};

use crate::output::{sci, Table};
use crate::{parse, Context};

#[derive(Subcommand)]
pub enum ExperimentCommand {
    /// Encode a planted class/feature matrix and score the top lists.
    Recover(RecoverArgs),
    /// Run `recover` over a list of values of one parameter.
    Sweep(SweepArgs),
}

#[derive(Args)]
pub struct Base {
    /// Rows and columns of the class/feature matrix.
    #[arg(long = "N", default_value_t = 10_000)]
    big_n: usize,
    /// Index-vector length of the random dimensions.
    #[arg(long = "n", default_value_t = 5_000)]
    small_n: usize,
    #[arg(long, default_value_t = 8)]
    chi: usize,
    /// one_way, two_way or direct.
    #[arg(long, default_value = "two_way")]
    mode: RecoveryMode,
    /// Planted features per class as a fraction of N.
    #[arg(long, default_value_t = 0.005)]
    rho: f64,
    /// Weight of a planted feature.
    #[arg(long, default_value_t = 100)]
    w: i64,
    /// Background noise is uniform on 0..=M.
    #[arg(long = "M", default_value_t = 10)]
    noise_max: u32,
    /// Classes whose top lists are scored; min(N, 200) when omitted.
    #[arg(long)]
    classes: Option<usize>,
}

impl Base {
    fn config(&self, seed: u64) -> RecoveryConfig {
        let mut c = RecoveryConfig::new(self.big_n, self.small_n, self.mode, self.rho);
        c.chi = self.chi;
        c.feature_weight = self.w;
        c.noise_max = self.noise_max;
        c.classes_sampled = self.classes.unwrap_or(self.big_n.min(200));
        c.seed = seed;
        c
    }
}

#[derive(Args)]
pub struct RecoverArgs {
    #[command(flatten)]
    base: Base,
    /// Also write the decoded weight profile (rank, mean, std) as CSV.
    #[arg(long)]
    profile: Option<PathBuf>,
}

#[derive(Args)]
pub struct SweepArgs {
    #[command(flatten)]
    base: Base,
    /// Parameter to vary: rho, xi or chi.
    #[arg(long)]
    axis: SweepAxis,
    /// Comma-separated values of the parameter.
    #[arg(long, value_parser = parse::floats)]
    values: ::std::vec::Vec<f64>,
    /// Output CSV file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

pub fn run(ctx: &Context, cmd: ExperimentCommand) -> Result<()> {
    match cmd {
        ExperimentCommand::Recover(a) => recover(ctx, a),
        ExperimentCommand::Sweep(a) => sweep(ctx, a),
    }
}

fn table(rows: &[SweepRow]) -> Table {
    let mut t = Table::new(&SWEEP_HEADER);
    rows.iter().for_each(|r| t.push(r.fields()));
    t
}

fn recover(ctx: &Context, a: RecoverArgs) -> Result<()> {
    let cfg = a.base.config(ctx.seed);
    let report = run_recovery_with_cap(&cfg, ctx.memcap)?;
    log::info!(
        "mean correct {:.2} +- {:.2} of {}",
        report.mean_correct,
        report.std_correct,
        report.features_per_class
    );
    if let Some(path) = a.profile {
        let mut t = Table::new(&["rank", "mean", "std"]);
        for (r, (m, s)) in report
            .profile_mean
            .iter()
            .zip(&report.profile_std)
            .enumerate()
        {
            t.push(vec![(r + 1).to_string(), sci(*m), sci(*s)]);
        }
        let file = File::create(&path).with_context(|| format!("creating {}", path.display()))?;
        t.write(crate::output::Format::Csv, BufWriter::new(file))?;
    }
    ctx.emit(&table(&[SweepRow {
        config: cfg,
        outcome: Ok(report),
    }]))
}

fn sweep(ctx: &Context, a: SweepArgs) -> Result<()> {
    let base = a.base.config(ctx.seed);
    let configs = sweep_configs(&base, a.axis, &a.values)?;
    let rows: Vec<SweepRow> = configs
        .into_iter()
        .map(|c| SweepRow {
            outcome: run_recovery_with_cap(&c, ctx.memcap),
            config: c,
        })
        .collect();
    for r in &rows {
        if let Err(e) = &r.outcome {
            log::warn!("{} = {:?}: {e}", a.axis_name(), r.config);
        }
    }
    match a.out {
        Some(path) => {
            let file =
                File::create(&path).with_context(|| format!("creating {}", path.display()))?;
            write_sweep_csv(&rows, BufWriter::new(file))?;
            Ok(())
        }
        None => ctx.emit(&table(&rows)),
    }
}

impl SweepArgs {
    fn axis_name(&self) -> &'static str {
        match self.axis {
            SweepAxis::Rho => "rho",
            SweepAxis::Xi => "xi",
            SweepAxis::Chi => "chi",
        }
    }
}
