//! File loading and the flags that select a source or a code.

use std::path::{Path, PathBuf};

use clap::Args;
use swldpc_core::experiments::{bsc_family_source, erasure_source, BscFamilyPoint};
use swldpc_core::ldpc::{parse_bits, sample_graph, DegreeDistribution, TannerGraph};
use swldpc_core::source::{JointSource, StochasticMap};

use crate::CliError;

pub fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e))
}

/// Writes `text` to `path`, or to standard output.
pub fn write_output(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Io(p.to_path_buf(), e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Drops `#` comment lines.
fn strip_comments(text: &str) -> String {
    text.lines()
        .filter(|l| !l.trim_start().starts_with('#'))
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn load_bits(path: &Path) -> Result<Vec<u8>, CliError> {
    Ok(parse_bits(&strip_comments(&read_file(path)?))?)
}

/// Whitespace-separated integer labels.
pub fn load_labels(path: &Path) -> Result<Vec<i64>, CliError> {
    strip_comments(&read_file(path)?)
        .split_whitespace()
        .map(|t| {
            t.parse()
                .map_err(|_| CliError::Domain(swldpc_core::Error::Parse {
                    line: 1,
                    msg: format!("{}: bad label {t:?}", path.display()),
                }))
        })
        .collect()
}

pub fn load_source(path: &Path) -> Result<JointSource, CliError> {
    Ok(JointSource::parse(&read_file(path)?)?)
}

pub fn load_map(path: &Path) -> Result<StochasticMap, CliError> {
    Ok(StochasticMap::parse(&read_file(path)?)?)
}

/// A degree distribution file, or a preset: `dv,dc` or `code2`.
pub fn load_dd(spec: &str) -> Result<DegreeDistribution, CliError> {
    let path = Path::new(spec);
    if path.is_file() {
        return Ok(DegreeDistribution::parse(&read_file(path)?)?);
    }
    DegreeDistribution::preset(spec).ok_or_else(|| {
        CliError::Usage(format!(
            "--dd {spec:?} is neither a file nor a preset (use e.g. 3,6 or code2)"
        ))
    })
}

/// Selects a joint source from a file or from a built-in family.
#[derive(Debug, Clone, Args)]
pub struct SourceFlags {
    /// Joint source file ("x y prob" lines).
    #[arg(long)]
    pub source: Option<PathBuf>,
    /// P(x=0) of the binary symmetric family.
    #[arg(long)]
    pub p: Option<f64>,
    /// Crossover of the binary symmetric family.
    #[arg(long)]
    pub q: Option<f64>,
    /// Erasure probability of the erasure family.
    #[arg(long)]
    pub epsilon: Option<f64>,
}

impl SourceFlags {
    /// The source and a one-line description for output preambles.
    pub fn resolve(&self) -> Result<(JointSource, String), CliError> {
        match (&self.source, self.p, self.q, self.epsilon) {
            (Some(path), None, None, None) => Ok((load_source(path)?, format!("file {}", path.display()))),
            (None, Some(p), Some(q), None) => Ok((
                bsc_family_source(BscFamilyPoint::new(p, q).map_err(|e| CliError::Usage(e.to_string()))?)?,
                format!("bsc family p={p} q={q}"),
            )),
            (None, None, None, Some(e)) => Ok((erasure_source(e, 0.5)?, format!("erasure family epsilon={e}"))),
            _ => Err(CliError::Usage(
                "choose a source with exactly one of --source FILE, --p P --q Q, or --epsilon E".into(),
            )),
        }
    }
}

/// Selects a Tanner graph from a file or by sampling the ensemble.
#[derive(Debug, Clone, Args)]
pub struct GraphFlags {
    /// Adjacency-list graph file.
    #[arg(long)]
    pub graph: Option<PathBuf>,
    /// Degree distribution to sample from (file, `dv,dc` or `code2`).
    #[arg(long)]
    pub dd: Option<String>,
    /// Block length when sampling.
    #[arg(long)]
    pub n: Option<usize>,
    /// Seed for graph sampling.
    #[arg(long, default_value_t = 1)]
    pub graph_seed: u64,
}

impl GraphFlags {
    pub fn resolve(&self) -> Result<(TannerGraph, String), CliError> {
        match (&self.graph, &self.dd, self.n) {
            (Some(path), None, None) => Ok((
                TannerGraph::parse_adjacency(&read_file(path)?)?,
                format!("file {}", path.display()),
            )),
            (None, Some(dd), Some(n)) => {
                let d = load_dd(dd)?;
                Ok((
                    sample_graph(n, &d, self.graph_seed)?,
                    format!("sampled n={n} dd={} seed={}", d.label(), self.graph_seed),
                ))
            }
            _ => Err(CliError::Usage(
                "choose a graph with --graph FILE, or --dd SPEC --n N [--graph-seed S]".into(),
            )),
        }
    }
}
