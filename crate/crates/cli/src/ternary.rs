use anyhow::Result;
use clap::Args;
use nri::ternary::{
    monte_carlo_dot, prob_dot_exact, prob_dot_series, DotDistribution, SeriesWarning,
};

use crate::output::{sci, Table};
use crate::{parse, Context};

const HEADER: [&str; 6] = ["n", "2k", "d", "P_analytic", "P_mc", "stderr"];

#[derive(Args)]
pub struct ProbArgs {
    /// Vector length.
    #[arg(long)]
    n: u64,
    /// Trits of each sign (chi = 2k).
    #[arg(long)]
    k: u64,
    /// Dot product magnitude; all of 0..=k when omitted.
    #[arg(long)]
    d: Option<u64>,
    /// Exact leading-order ratio of big-integer counts.
    #[arg(long, conflicts_with = "series")]
    exact: bool,
    /// Second-order series in 1/n (the default).
    #[arg(long)]
    series: bool,
}

#[derive(Args)]
pub struct McArgs {
    #[arg(long)]
    n: u64,
    #[arg(long)]
    k: u64,
    /// Number of sampled vectors, e.g. 1e7.
    #[arg(long, value_parser = parse::count, default_value = "1e6")]
    samples: u64,
}

#[derive(Args)]
pub struct TableArgs {
    /// Vector length; 100, 1000 and 10000 when omitted.
    #[arg(long)]
    n: Option<u64>,
    /// Nonzero count 2k; 4, 8, 12, 16 and 20 when omitted.
    #[arg(long)]
    chi: Option<u64>,
    /// Monte Carlo samples per block; 0 skips sampling.
    #[arg(long, value_parser = parse::count, default_value = "1e6")]
    samples: u64,
    /// Largest dot product listed.
    #[arg(long, default_value_t = 4)]
    max_d: u64,
}

fn series(n: u64, k: u64, d: u64) -> Result<f64> {
    let p = prob_dot_series(n, k, d)?;
    if p.warning == Some(SeriesWarning::SmallN) {
        log::warn!(
            "n = {n} < 50k = {}: series value for 2k = {} is marginal",
            50 * k,
            2 * k
        );
    }
    Ok(p.value)
}

fn row(n: u64, k: u64, d: u64, analytic: f64, mc: Option<&DotDistribution>) -> Vec<String> {
    let (p_mc, se) = match mc {
        Some(dist) => (sci(dist.prob(d as usize)), sci(dist.stderr(d as usize))),
        None => (String::new(), String::new()),
    };
    vec![
        n.to_string(),
        (2 * k).to_string(),
        d.to_string(),
        sci(analytic),
        p_mc,
        se,
    ]
}

pub fn prob(ctx: &Context, a: ProbArgs) -> Result<()> {
    let mut t = Table::new(&HEADER);
    let ds: Vec<u64> = match a.d {
        Some(d) => vec![d],
        None => (0..=a.k).collect(),
    };
    for d in ds {
        let p = if a.exact {
            prob_dot_exact(a.n, a.k, d)?
        } else {
            series(a.n, a.k, d)?
        };
        t.push(row(a.n, a.k, d, p, None));
    }
    ctx.emit(&t)
}

pub fn mc(ctx: &Context, a: McArgs) -> Result<()> {
    let dist = monte_carlo_dot(a.n, a.k, a.samples, ctx.seed)?;
    let mut t = Table::new(&HEADER);
    for d in 0..=a.k {
        t.push(row(a.n, a.k, d, series(a.n, a.k, d)?, Some(&dist)));
    }
    ctx.emit(&t)
}

pub fn table1(ctx: &Context, a: TableArgs) -> Result<()> {
    let ns = a.n.map_or(vec![100, 1000, 10_000], |n| vec![n]);
    let chis = a.chi.map_or(vec![4, 8, 12, 16, 20], |c| vec![c]);
    if chis.iter().any(|c| c % 2 != 0 || *c == 0) {
        anyhow::bail!("chi must be even and positive");
    }
    let mut t = Table::new(&HEADER);
    for &chi in &chis {
        let k = chi / 2;
        for &n in &ns {
            let dist = match a.samples {
                0 => None,
                s => Some(monte_carlo_dot(n, k, s, ctx.seed)?),
            };
            for d in 0..=k.min(a.max_d) {
                t.push(row(n, k, d, series(n, k, d)?, dist.as_ref()));
            }
        }
    }
    ctx.emit(&t)
}
