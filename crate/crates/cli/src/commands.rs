//! One handler per subcommand.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::Args;
use swldpc_core::bp::decode as bp_decode;
use swldpc_core::de::{find_threshold, DeSettings, DensityEvolution};
use swldpc_core::experiments::{
    boundary_to_csv, bsc_family_source, bsc_mismatch_thresholds, concentration_experiment, erasure_source,
    feasible_boundary, feasible_domain_sweep, mismatch_experiment, monte_carlo_ber, render_csv, unit_half_grid,
    BscFamilyPoint, Preamble,
};
use swldpc_core::ldpc::{format_bits, syndrome_encode};
use swldpc_core::source::{
    are_equivalent, degrade_source, equivalence_class_source, is_degraded, source_to_channel, DEGRADE_TOL,
};

use crate::inputs::{load_bits, load_dd, load_labels, load_map, load_source, write_output, GraphFlags, SourceFlags};
use crate::{CliError, DeFlags, OutputFlag};

type CmdResult = Result<(), CliError>;

fn preamble(command: &str) -> Preamble {
    Preamble::new().with("command", command)
}

fn with_settings(mut pre: Preamble, s: &DeSettings) -> Preamble {
    pre.push("de", s.describe());
    pre
}

fn engine(flags: &DeFlags) -> Result<DensityEvolution, CliError> {
    Ok(DensityEvolution::new(flags.settings()?)?)
}

fn parse_list<T: std::str::FromStr>(flag: &str, text: &str) -> Result<Vec<T>, CliError> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("{flag}: cannot parse {t:?}")))
        })
        .collect()
}

#[derive(Debug, Args)]
pub struct EncodeArgs {
    #[command(flatten)]
    graph: GraphFlags,
    /// Bit file (ASCII 0/1).
    #[arg(long)]
    input: PathBuf,
    /// Also save the graph used, as an adjacency list.
    #[arg(long)]
    export_graph: Option<PathBuf>,
    #[command(flatten)]
    out: OutputFlag,
}

pub fn encode(a: EncodeArgs) -> CmdResult {
    let (g, desc) = a.graph.resolve()?;
    let x = load_bits(&a.input)?;
    let s = syndrome_encode(&g, &x)?;
    if let Some(p) = &a.export_graph {
        write_output(Some(p), &g.to_adjacency())?;
    }
    let mut text = preamble("encode").with("graph", desc).with("n", g.num_variables()).render();
    text.push_str(&format_bits(s.bits()));
    text.push('\n');
    write_output(a.out.output.as_deref(), &text)
}

#[derive(Debug, Args)]
pub struct DecodeArgs {
    #[command(flatten)]
    graph: GraphFlags,
    /// Syndrome bit file.
    #[arg(long)]
    syndrome: PathBuf,
    /// Side-information file: whitespace-separated labels of y.
    #[arg(long)]
    side: PathBuf,
    #[command(flatten)]
    source: SourceFlags,
    #[arg(long, default_value_t = 200)]
    max_iter: usize,
    #[command(flatten)]
    out: OutputFlag,
}

pub fn decode(a: DecodeArgs) -> CmdResult {
    let (g, gdesc) = a.graph.resolve()?;
    let (source, sdesc) = a.source.resolve()?;
    let s = swldpc_core::ldpc::Syndrome(load_bits(&a.syndrome)?);
    let y = load_labels(&a.side)?;
    let init = y.iter().map(|&l| source.initial_llr(l)).collect::<Result<Vec<_>, _>>()?;
    let r = bp_decode(&g, &s, &init, a.max_iter)?;
    if !r.syndrome_satisfied {
        eprintln!("warning: syndrome not satisfied after {} iterations", r.iterations_used);
    }
    let mut text = preamble("decode")
        .with("graph", gdesc)
        .with("source", sdesc)
        .with("max_iter", a.max_iter)
        .with("iterations", r.iterations_used)
        .with("syndrome_satisfied", r.syndrome_satisfied)
        .render();
    text.push_str(&format_bits(&r.x_hat));
    text.push('\n');
    write_output(a.out.output.as_deref(), &text)
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    source: SourceFlags,
    /// Degree distribution (file, `dv,dc` or `code2`).
    #[arg(long)]
    dd: String,
    #[arg(long, default_value_t = 10_000)]
    n: usize,
    #[arg(long, default_value_t = 20)]
    trials: usize,
    #[arg(long, default_value_t = 200)]
    max_iter: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[command(flatten)]
    out: OutputFlag,
}

pub fn simulate(a: SimulateArgs) -> CmdResult {
    let (source, sdesc) = a.source.resolve()?;
    let dd = load_dd(&a.dd)?;
    let r = monte_carlo_ber(&source, &dd, a.n, a.trials, a.max_iter, a.seed)?;
    let pre = preamble("simulate")
        .with("source", sdesc)
        .with("dd", dd.label())
        .with("max_iter", a.max_iter)
        .with("seed", a.seed);
    write_output(a.out.output.as_deref(), &r.to_csv(&pre))
}

#[derive(Debug, Args)]
pub struct DeRunArgs {
    #[command(flatten)]
    source: SourceFlags,
    /// Degree distribution (file, `dv,dc` or `code2`).
    #[arg(long)]
    dd: String,
    #[command(flatten)]
    de: DeFlags,
    /// Run exactly this many iterations instead of stopping at the target.
    #[arg(long)]
    iterations: Option<usize>,
    /// Save the final density in dump format.
    #[arg(long)]
    dump: Option<PathBuf>,
    #[command(flatten)]
    out: OutputFlag,
}

pub fn de_run(a: DeRunArgs) -> CmdResult {
    let (source, sdesc) = a.source.resolve()?;
    let dd = load_dd(&a.dd)?;
    let de = engine(&a.de)?;
    let d0 = de.quantize(&source.initial_density());
    let (t, last) = match a.iterations {
        Some(l) => de.run_fixed(&d0, &dd, l)?,
        None => de.run_with_density(&d0, &dd)?,
    };
    if let Some(p) = &a.dump {
        write_output(Some(p), &last.to_text())?;
    }
    let pre = with_settings(preamble("de-run"), de.settings())
        .with("source", sdesc)
        .with("dd", dd.label())
        .with("converged", t.converged)
        .with("iterations", t.iterations)
        .with("max_mass_defect", format!("{:e}", t.max_mass_defect));
    let mut text = pre.render();
    text.push_str(&t.to_csv());
    write_output(a.out.output.as_deref(), &text)
}

#[derive(Debug, Args)]
pub struct DeThresholdArgs {
    /// Source family: bsc (search over q at fixed --p) or bec (search over
    /// the erasure probability).
    #[arg(long)]
    family: String,
    /// P(x=0) for the bsc family.
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    /// Degree distribution (file, `dv,dc` or `code2`).
    #[arg(long)]
    dd: String,
    #[arg(long, default_value_t = 1e-3)]
    tol: f64,
    /// Parameter value where density evolution converges.
    #[arg(long)]
    lo: Option<f64>,
    /// Parameter value where it fails.
    #[arg(long)]
    hi: Option<f64>,
    #[command(flatten)]
    de: DeFlags,
    #[command(flatten)]
    out: OutputFlag,
}

pub fn de_threshold(a: DeThresholdArgs) -> CmdResult {
    let dd = load_dd(&a.dd)?;
    let de = engine(&a.de)?;
    let p = a.p;
    let (t, family_desc) = match a.family.as_str() {
        "bsc" => {
            BscFamilyPoint::new(p, 0.0).map_err(|e| CliError::Usage(e.to_string()))?;
            let family = |q: f64| Ok(bsc_family_source(BscFamilyPoint::new(p, q)?)?.initial_density());
            let t = find_threshold(family, &dd, a.lo.unwrap_or(0.0), a.hi.unwrap_or(0.5), a.tol, &de)?;
            (t, format!("bsc p={p}"))
        }
        "bec" => {
            let family = |e: f64| Ok(erasure_source(e, 0.5)?.initial_density());
            let t = find_threshold(family, &dd, a.lo.unwrap_or(0.0), a.hi.unwrap_or(1.0), a.tol, &de)?;
            (t, "bec".to_string())
        }
        other => return Err(CliError::Usage(format!("--family {other:?}: expected bsc or bec"))),
    };
    let mut text = with_settings(preamble("de-threshold"), de.settings())
        .with("family", family_desc)
        .with("dd", dd.label())
        .with("tol", a.tol)
        .render();
    let _ = writeln!(text, "{t:.6}");
    write_output(a.out.output.as_deref(), &text)
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Degree distribution (file, `dv,dc` or `code2`).
    #[arg(long)]
    dd: String,
    /// Grid points per axis over [0, 0.5].
    #[arg(long, default_value_t = 26)]
    points: usize,
    /// Explicit p values (comma separated); overrides --points for p.
    #[arg(long)]
    p_grid: Option<String>,
    /// Explicit q values (comma separated); overrides --points for q.
    #[arg(long)]
    q_grid: Option<String>,
    /// Emit the bisected boundary q*(p) instead of the grid.
    #[arg(long)]
    boundary: bool,
    #[arg(long, default_value_t = 1e-3)]
    tol: f64,
    #[command(flatten)]
    de: DeFlags,
    #[command(flatten)]
    out: OutputFlag,
}

pub fn sweep(a: SweepArgs) -> CmdResult {
    let dd = load_dd(&a.dd)?;
    let de = engine(&a.de)?;
    let p_grid = match &a.p_grid {
        Some(t) => parse_list("--p-grid", t)?,
        None => unit_half_grid(a.points),
    };
    let q_grid = match &a.q_grid {
        Some(t) => parse_list("--q-grid", t)?,
        None => unit_half_grid(a.points),
    };
    let text = if a.boundary {
        let b = feasible_boundary(&dd, &p_grid, a.tol, &de)?;
        let pre = with_settings(preamble("sweep --boundary"), de.settings())
            .with("dd", dd.label())
            .with("syndrome_rate", dd.design_rates().1)
            .with("tol", a.tol);
        boundary_to_csv(&b, &pre)
    } else {
        let r = feasible_domain_sweep(&dd, &p_grid, &q_grid, &de)?;
        let v = r.violations().len();
        if v > 0 {
            eprintln!("warning: {v} converged points exceed the syndrome rate");
        }
        let mut csv = preamble("sweep").render();
        csv.push_str(&format!("# violations: {v}\n"));
        csv.push_str(&r.to_csv());
        csv
    };
    write_output(a.out.output.as_deref(), &text)
}

#[derive(Debug, Args)]
pub struct ConvertArgs {
    #[command(flatten)]
    source: SourceFlags,
    #[command(flatten)]
    out: OutputFlag,
}

pub fn convert(a: ConvertArgs) -> CmdResult {
    let (source, sdesc) = a.source.resolve()?;
    let ch = source_to_channel(&source);
    let h = source.conditional_entropy();
    let c = ch.capacity();
    let mut text = preamble("convert")
        .with("source", sdesc)
        .with("capacity", format!("{c:.15}"))
        .with("conditional_entropy", format!("{h:.15}"))
        .with("identity_residual", format!("{:e}", h + c - 1.0))
        .render();
    text.push_str(&ch.to_text());
    write_output(a.out.output.as_deref(), &text)
}

#[derive(Debug, Args)]
pub struct EquivArgs {
    #[command(flatten)]
    source: SourceFlags,
    /// Second source to compare against.
    #[arg(long)]
    other: Option<PathBuf>,
    /// Build the class member with these alphas (comma separated, one per
    /// atom of the initial density) instead of comparing.
    #[arg(long)]
    alphas: Option<String>,
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    #[command(flatten)]
    out: OutputFlag,
}

pub fn equiv(a: EquivArgs) -> CmdResult {
    let (source, sdesc) = a.source.resolve()?;
    let pre = preamble("equiv").with("source", &sdesc);
    let text = match (&a.other, &a.alphas) {
        (Some(path), None) => {
            let other = load_source(path)?;
            let eq = are_equivalent(&source, &other, a.tol);
            let mut t = pre.with("other", path.display()).with("tol", a.tol).render();
            let _ = writeln!(t, "equivalent: {eq}");
            t
        }
        (None, Some(alphas)) => {
            let alphas: Vec<f64> = parse_list("--alphas", alphas)?;
            let member = equivalence_class_source(&source.initial_density(), &alphas)?;
            let mut t = pre.with("alphas", alphas.iter().map(f64::to_string).collect::<Vec<_>>().join(",")).render();
            t.push_str(&member.to_text());
            t
        }
        _ => return Err(CliError::Usage("equiv needs exactly one of --other FILE or --alphas LIST".into())),
    };
    write_output(a.out.output.as_deref(), &text)
}

#[derive(Debug, Args)]
pub struct DegradeArgs {
    /// The better source.
    #[arg(long)]
    source: PathBuf,
    /// The candidate degraded source.
    #[arg(long)]
    other: Option<PathBuf>,
    /// Stochastic map ("y y' prob" lines) to apply to --source instead.
    #[arg(long)]
    map: Option<PathBuf>,
    #[arg(long, default_value_t = DEGRADE_TOL)]
    tol: f64,
    #[command(flatten)]
    out: OutputFlag,
}

pub fn degrade_check(a: DegradeArgs) -> CmdResult {
    let source = load_source(&a.source)?;
    let pre = preamble("degrade-check").with("source", a.source.display()).with("tol", a.tol);
    let text = match (&a.other, &a.map) {
        (Some(path), None) => {
            let other = load_source(path)?;
            let d = is_degraded(&source_to_channel(&source), &source_to_channel(&other), a.tol)?;
            let mut t = pre.with("other", path.display()).render();
            let _ = writeln!(t, "degraded: {d}");
            t
        }
        (None, Some(path)) => {
            let out = degrade_source(&source, &load_map(path)?)?;
            let d = is_degraded(&source_to_channel(&source), &source_to_channel(&out), a.tol)?;
            let mut t = pre.with("map", path.display()).with("degraded", d).render();
            t.push_str(&out.to_text());
            t
        }
        _ => return Err(CliError::Usage("degrade-check needs exactly one of --other FILE or --map FILE".into())),
    };
    write_output(a.out.output.as_deref(), &text)
}

#[derive(Debug, Args)]
pub struct ConcentrationArgs {
    #[command(flatten)]
    source: SourceFlags,
    /// Regular degree distribution, e.g. 3,6.
    #[arg(long)]
    dd: String,
    /// Block lengths, comma separated.
    #[arg(long, default_value = "2000,10000")]
    n_list: String,
    /// BP iterations before counting message errors.
    #[arg(long, default_value_t = 2)]
    iterations: usize,
    #[arg(long, default_value_t = 20)]
    trials: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[command(flatten)]
    de: DeFlags,
    #[command(flatten)]
    out: OutputFlag,
}

pub fn concentration(a: ConcentrationArgs) -> CmdResult {
    let (source, sdesc) = a.source.resolve()?;
    let dd = load_dd(&a.dd)?;
    let de = engine(&a.de)?;
    let n_list: Vec<usize> = parse_list("--n-list", &a.n_list)?;
    let r = concentration_experiment(&dd, &n_list, a.iterations, a.trials, &source, a.seed, &de)?;
    let pre = with_settings(preamble("concentration"), de.settings())
        .with("source", sdesc)
        .with("dd", dd.label())
        .with("outliers_non_increasing", r.outliers_non_increasing());
    write_output(a.out.output.as_deref(), &r.to_csv(&pre))
}

#[derive(Debug, Args)]
pub struct MismatchArgs {
    #[command(flatten)]
    source: SourceFlags,
    /// Source the decoder assumes.
    #[arg(long)]
    estimate: Option<PathBuf>,
    /// Decoder uses channel likelihoods only (uniform prior on x).
    #[arg(long)]
    channel_llr: bool,
    /// Instead of one run, bisect matched and channel-LLR thresholds in q at
    /// this P(x=0).
    #[arg(long)]
    threshold_p: Option<f64>,
    /// Degree distribution (file, `dv,dc` or `code2`).
    #[arg(long)]
    dd: String,
    #[arg(long, default_value_t = 1e-3)]
    tol: f64,
    #[command(flatten)]
    de: DeFlags,
    #[command(flatten)]
    out: OutputFlag,
}

pub fn mismatch(a: MismatchArgs) -> CmdResult {
    let dd = load_dd(&a.dd)?;
    let de = engine(&a.de)?;
    let pre = with_settings(preamble("mismatch"), de.settings()).with("dd", dd.label());
    if let Some(p) = a.threshold_p {
        BscFamilyPoint::new(p, 0.0).map_err(|e| CliError::Usage(e.to_string()))?;
        let (matched, channel) = bsc_mismatch_thresholds(p, &dd, a.tol, &de)?;
        let pre = pre.with("p", p).with("tol", a.tol);
        let csv = render_csv(
            &pre,
            &["p", "matched_threshold", "channel_llr_threshold"],
            [vec![p.to_string(), format!("{matched:.6}"), format!("{channel:.6}")]],
        );
        return write_output(a.out.output.as_deref(), &csv);
    }
    let (truth, sdesc) = a.source.resolve()?;
    let (est, edesc) = match (&a.estimate, a.channel_llr) {
        (Some(path), false) => (load_source(path)?, format!("file {}", path.display())),
        (None, true) => (truth.uniform_prior_estimate()?, "channel likelihoods".to_string()),
        _ => {
            return Err(CliError::Usage(
                "mismatch needs exactly one of --estimate FILE, --channel-llr or --threshold-p P".into(),
            ))
        }
    };
    let r = mismatch_experiment(&truth, &est, &dd, &de)?;
    let pre = pre
        .with("source", sdesc)
        .with("estimate", edesc)
        .with("mismatched_converged", r.mismatched.converged)
        .with("matched_converged", r.matched.converged)
        .with("identical", r.identical);
    let len = r.mismatched.p_e_by_iter.len().max(r.matched.p_e_by_iter.len());
    let cell = |v: &[f64], i: usize| v.get(i).map_or_else(String::new, |x| format!("{x:.17e}"));
    let rows = (0..len).map(|i| {
        vec![
            i.to_string(),
            cell(&r.mismatched.p_e_by_iter, i),
            cell(&r.matched.p_e_by_iter, i),
        ]
    });
    write_output(
        a.out.output.as_deref(),
        &render_csv(&pre, &["iteration", "p_e_mismatched", "p_e_matched"], rows),
    )
}
