use std::fs;
use std::path::PathBuf;

use anyhow::{bail, Context as _, Result};
use clap::{Args, Subcommand};
use nri::textlang::{
    evaluate, format_items, parse_items, planted_corpus, shuffled, tokenize, CoocConfig, CoocModel,
    EncodePolicy, Method, PlantedConfig, TextMode, Transform,
};

use crate::output::{sci, Table};
use crate::Context;

#[derive(Subcommand)]
pub enum TextCommand {
    /// Build a co-occurrence model from a plain-text corpus.
    Build(BuildArgs),
    /// Top correlates of a word.
    Query(QueryArgs),
    /// Answer synonym items and report the accuracy.
    Synonym(SynonymArgs),
    /// Write a synthetic corpus with planted synonym pairs and its items.
    Synth(SynthArgs),
}

#[derive(Args)]
pub struct BuildArgs {
    /// UTF-8 plain text.
    #[arg(long)]
    corpus: PathBuf,
    /// Neighbours on each side of a token.
    #[arg(long, default_value_t = 2)]
    window: usize,
    /// identity, sqrt or log1p.
    #[arg(long, default_value = "identity")]
    transform: Transform,
    /// one_way, two_way or direct.
    #[arg(long, default_value = "one_way")]
    mode: TextMode,
    /// incremental_raw or batch_transformed; batch whenever a transform is set.
    #[arg(long)]
    policy: Option<EncodePolicy>,
    /// Index-vector length.
    #[arg(long, default_value_t = 1000)]
    n: usize,
    #[arg(long, default_value_t = 8)]
    chi: usize,
    /// Model file; metadata goes to `<out>.meta.json`.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
pub struct QueryArgs {
    #[arg(long)]
    model: PathBuf,
    #[arg(long)]
    word: String,
    #[arg(long, default_value_t = 10)]
    top: usize,
}

#[derive(Args)]
pub struct SynonymArgs {
    #[arg(long)]
    model: PathBuf,
    /// Tab-separated `given alt1 alt2 alt3 alt4 answer_index` lines.
    #[arg(long)]
    items: PathBuf,
    /// Top-list length.
    #[arg(long = "L", default_value_t = 60)]
    len: usize,
    /// jaccard or cosine.
    #[arg(long, default_value = "jaccard")]
    method: Method,
    /// Rebuilds with seeds seed..seed+repeats; needs --corpus when above 1.
    #[arg(long, default_value_t = 1)]
    repeats: u64,
    /// Corpus to rebuild from for repeated runs.
    #[arg(long)]
    corpus: Option<PathBuf>,
}

#[derive(Args)]
pub struct SynthArgs {
    #[arg(long)]
    corpus_out: PathBuf,
    #[arg(long)]
    items_out: PathBuf,
    #[arg(long, default_value_t = 20)]
    pairs: usize,
    #[arg(long, default_value_t = 60)]
    sentences: usize,
    /// Distinct stop tokens to inject.
    #[arg(long, default_value_t = 0)]
    stop_words: usize,
    /// Expected stop tokens after each token.
    #[arg(long, default_value_t = 0.0)]
    stop_rate: f64,
    /// Shuffle the token order.
    #[arg(long)]
    shuffle: bool,
}

pub fn run(ctx: &Context, cmd: TextCommand) -> Result<()> {
    match cmd {
        TextCommand::Build(a) => build(ctx, a),
        TextCommand::Query(a) => query(ctx, a),
        TextCommand::Synonym(a) => synonym(ctx, a),
        TextCommand::Synth(a) => synth(ctx, a),
    }
}

fn read_tokens(path: &PathBuf) -> Result<Vec<String>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(tokenize(&text))
}

fn build(ctx: &Context, a: BuildArgs) -> Result<()> {
    let policy = a.policy.unwrap_or(match a.transform {
        Transform::Identity => EncodePolicy::IncrementalRaw,
        _ => EncodePolicy::BatchTransformed,
    });
    let cfg = CoocConfig {
        window: a.window,
        transform: a.transform,
        mode: a.mode,
        policy,
        state_size: a.n,
        chi: a.chi,
        seed: ctx.seed,
        memory_cap: ctx.memcap,
        ..CoocConfig::default()
    };
    let tokens = read_tokens(&a.corpus)?;
    let model = CoocModel::build(cfg, &tokens)?;
    log::info!(
        "{} tokens, {} word types",
        tokens.len(),
        model.vocabulary().len()
    );
    model.save(&a.out)?;
    Ok(())
}

fn query(ctx: &Context, a: QueryArgs) -> Result<()> {
    let model = CoocModel::load(&a.model, ctx.memcap)?;
    let mut t = Table::new(&["rank", "word", "value"]);
    for (r, (w, v)) in model
        .top_correlates(&a.word, a.top)?
        .into_iter()
        .enumerate()
    {
        t.push(vec![(r + 1).to_string(), w, sci(v)]);
    }
    ctx.emit(&t)
}

fn synonym(ctx: &Context, a: SynonymArgs) -> Result<()> {
    let text =
        fs::read_to_string(&a.items).with_context(|| format!("reading {}", a.items.display()))?;
    let items = parse_items(&text)?;
    let model = CoocModel::load(&a.model, ctx.memcap)?;
    let (mean, std) = match (a.repeats, &a.corpus) {
        (0, _) => bail!("--repeats must be at least 1"),
        (1, None) => (model.accuracy(&items, a.len, a.method)?, 0.0),
        (_, None) => bail!("--repeats above 1 needs --corpus to rebuild the model"),
        (r, Some(corpus)) => {
            let tokens = read_tokens(corpus)?;
            let seeds: Vec<u64> = (0..r).map(|i| ctx.seed.wrapping_add(i)).collect();
            let cfg = CoocConfig {
                memory_cap: ctx.memcap,
                ..model.config().clone()
            };
            let e = evaluate(&cfg, &tokens, &items, a.len, a.method, &seeds)?;
            (e.mean, e.std)
        }
    };
    let mut t = Table::new(&["items", "L", "repeats", "mean", "std"]);
    t.push(vec![
        items.len().to_string(),
        a.len.to_string(),
        a.repeats.to_string(),
        sci(mean),
        sci(std),
    ]);
    ctx.emit(&t)
}

fn synth(ctx: &Context, a: SynthArgs) -> Result<()> {
    let cfg = PlantedConfig {
        pairs: a.pairs,
        sentences_per_pair: a.sentences,
        stop_words: a.stop_words,
        stop_rate: a.stop_rate,
        seed: ctx.seed,
        ..PlantedConfig::default()
    };
    let b = planted_corpus(&cfg)?;
    let tokens = if a.shuffle {
        shuffled(&b.tokens, ctx.seed)
    } else {
        b.tokens
    };
    let mut text = String::with_capacity(tokens.len() * 6);
    for line in tokens.chunks(20) {
        text.push_str(&line.join(" "));
        text.push('\n');
    }
    fs::write(&a.corpus_out, text)
        .with_context(|| format!("writing {}", a.corpus_out.display()))?;
    fs::write(&a.items_out, format_items(&b.items))
        .with_context(|| format!("writing {}", a.items_out.display()))?;
    Ok(())
}
