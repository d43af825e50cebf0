use std::fs::{self, File};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context as _, Result};
use clap::{Args, Subcommand, ValueEnum};
use nri::tensor::{self, DimensionSpec, ElementKind, Mode, NriSpec, NriTensor, Value};

use crate::output::{sci, Table};
use crate::{parse, Context};

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Int64,
    Float64,
}

#[derive(Subcommand)]
pub enum TensorCommand {
    /// Create a zero tensor file.
    New(NewArgs),
    /// Add weights to components, in place.
    Encode(EncodeArgs),
    /// Decode one component.
    Decode(DecodeArgs),
    /// Highest decoded components along one free index.
    Find(FindArgs),
    /// Grow the component range of a random dimension, in place.
    Extend(ExtendArgs),
    /// Print the header and counters of a tensor file.
    Info(InfoArgs),
}

#[derive(Args)]
pub struct NewArgs {
    /// Component ranges, e.g. 100x100.
    #[arg(long, value_parser = parse::shape)]
    dims: ::std::vec::Vec<Option<usize>>,
    /// Index-vector lengths, `d` for a direct dimension, e.g. 50xd.
    #[arg(long, value_parser = parse::shape)]
    state: ::std::vec::Vec<Option<usize>>,
    /// Nonzero trits per index vector, e.g. 8x8; ignored for direct dimensions.
    #[arg(long, value_parser = parse::shape)]
    chi: Option<::std::vec::Vec<Option<usize>>>,
    #[arg(long, value_enum, default_value = "int64")]
    kind: Kind,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
pub struct EncodeArgs {
    #[arg(long)]
    tensor: PathBuf,
    /// Component indices, e.g. 3,7.
    #[arg(long, value_parser = parse::indices, requires = "w")]
    at: Option<::std::vec::Vec<usize>>,
    /// Weight; integers for int64 tensors.
    #[arg(long, allow_hyphen_values = true)]
    w: Option<String>,
    /// File of `i,j,...,w` lines to encode in order.
    #[arg(long, conflicts_with = "at")]
    input: Option<PathBuf>,
}

#[derive(Args)]
pub struct DecodeArgs {
    #[arg(long)]
    tensor: PathBuf,
    #[arg(long, value_parser = parse::indices)]
    at: ::std::vec::Vec<usize>,
}

#[derive(Args)]
pub struct FindArgs {
    #[arg(long)]
    tensor: PathBuf,
    /// Fixed indices with one free slot, e.g. 3,:
    #[arg(long, value_parser = parse::fixed)]
    at: ::std::vec::Vec<Option<usize>>,
    /// Length of the top list.
    #[arg(long, default_value_t = 10)]
    len: usize,
}

#[derive(Args)]
pub struct ExtendArgs {
    #[arg(long)]
    tensor: PathBuf,
    #[arg(long)]
    dim: usize,
    /// New component range.
    #[arg(long)]
    to: usize,
}

#[derive(Args)]
pub struct InfoArgs {
    #[arg(long)]
    tensor: PathBuf,
}

pub fn run(ctx: &Context, cmd: TensorCommand) -> Result<()> {
    match cmd {
        TensorCommand::New(a) => new(ctx, a),
        TensorCommand::Encode(a) => encode(ctx, a),
        TensorCommand::Decode(a) => decode(ctx, a),
        TensorCommand::Find(a) => find(ctx, a),
        TensorCommand::Extend(a) => extend(ctx, a),
        TensorCommand::Info(a) => info(ctx, a),
    }
}

pub fn open(path: &Path, cap: u64) -> Result<NriTensor> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    tensor::load_with_cap(file, cap).with_context(|| format!("loading {}", path.display()))
}

/// Writes through a temporary file in the same directory, then renames.
pub fn store(t: &NriTensor, path: &Path) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let tmp = tempfile::NamedTempFile::new_in(dir)?;
    tensor::save(t, tmp.as_file())?;
    tmp.persist(path)
        .with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

fn new(ctx: &Context, a: NewArgs) -> Result<()> {
    let rank = a.dims.len();
    if a.state.len() != rank {
        bail!("--state has {} entries, --dims has {rank}", a.state.len());
    }
    let chi = a.chi.unwrap_or_else(|| vec![Some(8); rank]);
    if chi.len() != rank {
        bail!("--chi has {} entries, --dims has {rank}", chi.len());
    }
    let mut dims = Vec::with_capacity(rank);
    for (d, ((&big, &small), &c)) in a.dims.iter().zip(&a.state).zip(&chi).enumerate() {
        let Some(big) = big else {
            bail!("--dims entries must be numbers")
        };
        dims.push(match (small, c) {
            (None, _) => DimensionSpec::direct(big),
            (Some(small), Some(c)) => DimensionSpec::random(big, small, c),
            (Some(_), None) => bail!("dimension {d}: random dimensions need a numeric chi"),
        });
    }
    let kind = match a.kind {
        Kind::Int64 => ElementKind::Int64,
        Kind::Float64 => ElementKind::Float64,
    };
    let t = NriTensor::with_memory_cap(NriSpec::new(dims, ctx.seed).with_kind(kind), ctx.memcap)?;
    store(&t, &a.out)
}

fn weight(s: &str) -> Result<Value> {
    if let Ok(i) = s.parse::<i64>() {
        return Ok(Value::Int(i));
    }
    s.parse::<f64>()
        .map(Value::Float)
        .map_err(|_| anyhow::anyhow!("bad weight `{s}`"))
}

fn encode(ctx: &Context, a: EncodeArgs) -> Result<()> {
    let mut t = open(&a.tensor, ctx.memcap)?;
    let float = t.element_kind() == ElementKind::Float64;
    let as_kind = |v: Value| match (v, float) {
        (Value::Int(i), true) => Value::Float(i as f64),
        _ => v,
    };
    match (a.at, a.w, a.input) {
        (Some(at), Some(w), None) => t.encode_add(&at, as_kind(weight(&w)?))?,
        (None, None, Some(input)) => {
            let text = fs::read_to_string(&input)
                .with_context(|| format!("reading {}", input.display()))?;
            for (lineno, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let (idx, w) = line
                    .rsplit_once(',')
                    .with_context(|| format!("line {}: expected `i,...,w`", lineno + 1))?;
                let at =
                    parse::indices(idx).map_err(|e| anyhow::anyhow!("line {}: {e}", lineno + 1))?;
                t.encode_add(&at, as_kind(weight(w.trim())?))
                    .with_context(|| format!("line {}", lineno + 1))?;
            }
        }
        _ => bail!("give either --at with --w, or --input"),
    }
    store(&t, &a.tensor)
}

fn index_header(rank: usize) -> Vec<String> {
    (0..rank).map(|d| format!("i{d}")).collect()
}

fn decode(ctx: &Context, a: DecodeArgs) -> Result<()> {
    let t = open(&a.tensor, ctx.memcap)?;
    let v = t.decode(&a.at)?;
    let mut header = index_header(t.rank());
    header.push("value".into());
    let mut table = Table::new(&header);
    let mut row: Vec<String> = a.at.iter().map(usize::to_string).collect();
    row.push(sci(v));
    table.push(row);
    ctx.emit(&table)
}

fn find(ctx: &Context, a: FindArgs) -> Result<()> {
    let t = open(&a.tensor, ctx.memcap)?;
    let top = t.find_top(&a.at, a.len)?;
    let mut header = vec!["rank".to_string()];
    header.extend(index_header(t.rank()));
    header.push("value".into());
    let mut table = Table::new(&header);
    for (r, e) in top.entries.iter().enumerate() {
        let mut row = vec![(r + 1).to_string()];
        row.extend(top.indices(e).iter().map(usize::to_string));
        row.push(sci(e.value));
        table.push(row);
    }
    ctx.emit(&table)
}

fn extend(ctx: &Context, a: ExtendArgs) -> Result<()> {
    let mut t = open(&a.tensor, ctx.memcap)?;
    t.extend_dimension(a.dim, a.to)?;
    store(&t, &a.tensor)
}

fn info(ctx: &Context, a: InfoArgs) -> Result<()> {
    let t = open(&a.tensor, ctx.memcap)?;
    let spec = t.spec();
    let mut table = Table::new(&["field", "value"]);
    let mut add = |k: &str, v: String| table.push(vec![k.to_string(), v]);
    add("rank", spec.rank().to_string());
    add(
        "kind",
        match spec.element_kind {
            ElementKind::Int64 => "int64",
            ElementKind::Float64 => "float64",
        }
        .into(),
    );
    add("seed", spec.master_seed.to_string());
    for (d, ds) in spec.dims.iter().enumerate() {
        let mode = match ds.mode {
            Mode::Random => "random",
            Mode::Direct => "direct",
        };
        add(
            &format!("dim{d}"),
            format!(
                "{mode} N={} n={} chi={}",
                ds.component_range, ds.state_range, ds.chi
            ),
        );
    }
    add("state_cells", spec.state_cells().to_string());
    add("state_bytes", spec.state_bytes().to_string());
    add("reduction_ratio", sci(spec.reduction_ratio()));
    add("normalization", t.normalization().to_string());
    add("update_count", t.update_count().to_string());
    add("saturated", t.is_saturated().to_string());
    ctx.emit(&table)
}
