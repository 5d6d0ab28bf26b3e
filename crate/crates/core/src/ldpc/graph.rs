//! Tanner graphs and the configuration-model ensemble sampler.

use std::collections::HashSet;
use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::ldpc::degree::DegreeDistribution;
use crate::rng::seeded;

/// Socket permutations tried before falling back to edge swaps.
const MAX_REDRAWS: usize = 100;

/// Bipartite variable/check graph. Edge `e` joins `edges[e].0` (variable)
/// and `edges[e].1` (check); both sides keep their incident edge lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TannerGraph {
    n: usize,
    m: usize,
    edges: Vec<(usize, usize)>,
    var_edges: Vec<Vec<usize>>,
    check_edges: Vec<Vec<usize>>,
}

impl TannerGraph {
    /// Builds a graph from explicit edges. Duplicate edges are rejected;
    /// node degrees are unconstrained so that trees and hand-written codes
    /// are representable.
    pub fn from_edges(n: usize, m: usize, mut edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(edges.len());
        for &(v, c) in &edges {
            if v >= n || c >= m {
                return Err(Error::InvalidGraph(format!("edge ({v}, {c}) out of range")));
            }
            if !seen.insert((v, c)) {
                return Err(Error::InvalidGraph(format!("duplicate edge ({v}, {c})")));
            }
        }
        edges.sort_unstable();
        let mut var_edges = vec![Vec::new(); n];
        let mut check_edges = vec![Vec::new(); m];
        for (e, &(v, c)) in edges.iter().enumerate() {
            var_edges[v].push(e);
            check_edges[c].push(e);
        }
        Ok(Self {
            n,
            m,
            edges,
            var_edges,
            check_edges,
        })
    }

    /// Builds a graph from per-check variable lists (rows of `H`).
    pub fn from_checks(n: usize, checks: &[Vec<usize>]) -> Result<Self> {
        let edges = checks
            .iter()
            .enumerate()
            .flat_map(|(c, vs)| vs.iter().map(move |&v| (v, c)))
            .collect();
        Self::from_edges(n, checks.len(), edges)
    }

    pub fn num_variables(&self) -> usize {
        self.n
    }

    pub fn num_checks(&self) -> usize {
        self.m
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn var_edges(&self, v: usize) -> &[usize] {
        &self.var_edges[v]
    }

    pub fn check_edges(&self, c: usize) -> &[usize] {
        &self.check_edges[c]
    }

    pub fn variable_degree(&self, v: usize) -> usize {
        self.var_edges[v].len()
    }

    pub fn check_degree(&self, c: usize) -> usize {
        self.check_edges[c].len()
    }

    /// Variables attached to check `c`.
    pub fn check_neighbors(&self, c: usize) -> impl Iterator<Item = usize> + '_ {
        self.check_edges[c].iter().map(|&e| self.edges[e].0)
    }

    /// Edge-perspective degree fractions on the variable side.
    pub fn variable_edge_fractions(&self) -> Vec<(usize, f64)> {
        edge_fractions(self.var_edges.iter().map(Vec::len), self.num_edges())
    }

    /// Edge-perspective degree fractions on the check side.
    pub fn check_edge_fractions(&self) -> Vec<(usize, f64)> {
        edge_fractions(self.check_edges.iter().map(Vec::len), self.num_edges())
    }

    /// Adjacency export: a `# variables N checks M` header, then one
    /// `c v1 v2 ...` line per check.
    pub fn to_adjacency(&self) -> String {
        let mut out = format!("# variables {} checks {}\n", self.n, self.m);
        for c in 0..self.m {
            let _ = write!(out, "{c}");
            for v in self.check_neighbors(c) {
                let _ = write!(out, " {v}");
            }
            out.push('\n');
        }
        out
    }

    /// Parses the adjacency format. Without a header the variable count is
    /// one past the largest index and the check count one past the largest
    /// check label.
    pub fn parse_adjacency(text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize)> = None;
        let mut rows: Vec<(usize, Vec<usize>)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: &str| Error::Parse {
                line: i + 1,
                msg: msg.to_string(),
            };
            if let Some(rest) = line.strip_prefix('#') {
                let f: Vec<&str> = rest.split_whitespace().collect();
                if f.len() == 4 && f[0] == "variables" && f[2] == "checks" {
                    let n = f[1].parse().map_err(|_| err("bad variable count"))?;
                    let m = f[3].parse().map_err(|_| err("bad check count"))?;
                    header = Some((n, m));
                }
                continue;
            }
            let mut nums = line.split_whitespace().map(|t| t.parse::<usize>());
            let c = nums
                .next()
                .ok_or_else(|| err("empty row"))?
                .map_err(|_| err("bad check index"))?;
            let vs = nums
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| err("bad variable index"))?;
            rows.push((c, vs));
        }
        let (n, m) = match header {
            Some(h) => h,
            None => {
                let n = rows.iter().flat_map(|r| r.1.iter()).max().map_or(0, |v| v + 1);
                let m = rows.iter().map(|r| r.0).max().map_or(0, |c| c + 1);
                (n, m)
            }
        };
        let edges = rows
            .iter()
            .flat_map(|(c, vs)| vs.iter().map(move |&v| (v, *c)))
            .collect();
        Self::from_edges(n, m, edges)
    }
}

fn edge_fractions(degrees: impl Iterator<Item = usize>, total: usize) -> Vec<(usize, f64)> {
    let mut count = std::collections::BTreeMap::new();
    for d in degrees {
        *count.entry(d).or_insert(0usize) += d;
    }
    count
        .into_iter()
        .filter(|&(d, _)| d > 0)
        .map(|(d, e)| (d, e as f64 / total as f64))
        .collect()
}

/// Largest-remainder rounding of `weights * total / sum(weights)`.
fn apportion(weights: &[f64], total: usize) -> Vec<usize> {
    let sum: f64 = weights.iter().sum();
    let exact: Vec<f64> = weights.iter().map(|w| w / sum * total as f64).collect();
    let mut counts: Vec<usize> = exact.iter().map(|x| x.floor() as usize).collect();
    let short = total - counts.iter().sum::<usize>();
    let mut order: Vec<usize> = (0..weights.len()).collect();
    order.sort_by(|&a, &b| {
        let ra = exact[a] - exact[a].floor();
        let rb = exact[b] - exact[b].floor();
        rb.total_cmp(&ra).then(a.cmp(&b))
    });
    for &k in order.iter().take(short) {
        counts[k] += 1;
    }
    counts
}

/// Node degree sequences for `n` variables: variable side by
/// largest-remainder rounding, check side matched to the exact edge count
/// with at most one check of a different degree.
pub fn degree_sequences(n: usize, dd: &DegreeDistribution) -> Result<(Vec<usize>, Vec<usize>)> {
    if n == 0 {
        return Err(Error::InvalidGraph("n must be positive".into()));
    }
    let lam = dd.lambda();
    let var_counts = apportion(&lam.iter().map(|&(d, c)| c / d as f64).collect::<Vec<_>>(), n);
    let var_degrees: Vec<usize> = lam
        .iter()
        .zip(&var_counts)
        .flat_map(|(&(d, _), &k)| std::iter::repeat(d).take(k))
        .collect();
    let edges: usize = var_degrees.iter().sum();

    let rho = dd.rho();
    let inv_rho: f64 = rho.iter().map(|&(d, c)| c / d as f64).sum();
    let m = (edges as f64 * inv_rho).round() as usize;
    if m == 0 {
        return Err(Error::InvalidGraph(format!("n = {n} too small: no check nodes")));
    }
    let check_counts = apportion(&rho.iter().map(|&(d, c)| c / d as f64).collect::<Vec<_>>(), m);
    let mut check_degrees: Vec<usize> = rho
        .iter()
        .zip(&check_counts)
        .flat_map(|(&(d, _), &k)| std::iter::repeat(d).take(k))
        .collect();
    let sockets: usize = check_degrees.iter().sum();
    let last = check_degrees.len() - 1;
    let adjusted = check_degrees[last] as i64 + edges as i64 - sockets as i64;
    if adjusted < 1 {
        return Err(Error::InvalidGraph(format!(
            "cannot integerize degrees for n = {n}: check degree would be {adjusted}"
        )));
    }
    check_degrees[last] = adjusted as usize;
    if check_degrees[last] > n {
        return Err(Error::InvalidGraph(format!(
            "n = {n} too small for check degree {}",
            check_degrees[last]
        )));
    }
    Ok((var_degrees, check_degrees))
}

/// Samples a graph from the configuration model of `dd`: variable and check
/// sockets are paired by a uniform random permutation. Permutations with
/// repeated edges are redrawn up to 100 times; remaining repeats are removed
/// by degree-preserving edge swaps.
pub fn sample_graph(n: usize, dd: &DegreeDistribution, seed: u64) -> Result<TannerGraph> {
    let (var_deg, check_deg) = degree_sequences(n, dd)?;
    let m = check_deg.len();
    if var_deg.iter().any(|&d| d > m) {
        return Err(Error::InvalidGraph(format!(
            "n = {n} too small: variable degree exceeds {m} checks"
        )));
    }
    let var_sockets: Vec<usize> = var_deg
        .iter()
        .enumerate()
        .flat_map(|(v, &d)| std::iter::repeat(v).take(d))
        .collect();
    let mut check_sockets: Vec<usize> = check_deg
        .iter()
        .enumerate()
        .flat_map(|(c, &d)| std::iter::repeat(c).take(d))
        .collect();

    let mut rng = seeded(seed);
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for _ in 0..MAX_REDRAWS {
        check_sockets.shuffle(&mut rng);
        edges = var_sockets.iter().copied().zip(check_sockets.iter().copied()).collect();
        if count_duplicates(&edges) == 0 {
            return TannerGraph::from_edges(n, m, edges);
        }
    }
    remove_duplicates(&mut edges, &mut rng)?;
    TannerGraph::from_edges(n, m, edges)
}

fn count_duplicates(edges: &[(usize, usize)]) -> usize {
    let mut seen = HashSet::with_capacity(edges.len());
    edges.iter().filter(|e| !seen.insert(**e)).count()
}

fn remove_duplicates<R: Rng>(edges: &mut [(usize, usize)], rng: &mut R) -> Result<()> {
    let mut present: std::collections::HashMap<(usize, usize), usize> = Default::default();
    for &e in edges.iter() {
        *present.entry(e).or_default() += 1;
    }
    let len = edges.len();
    for i in 0..len {
        let mut tries = 0;
        while present[&edges[i]] > 1 {
            tries += 1;
            if tries > 100 * len {
                return Err(Error::InvalidGraph("could not remove repeated edges".into()));
            }
            let j = rng.gen_range(0..len);
            let (v, c) = edges[i];
            let (w, d) = edges[j];
            if w == v || d == c || present.contains_key(&(v, d)) || present.contains_key(&(w, c)) {
                continue;
            }
            for old in [(v, c), (w, d)] {
                let k = present.get_mut(&old).expect("edge is present");
                *k -= 1;
                if *k == 0 {
                    present.remove(&old);
                }
            }
            edges[i] = (v, d);
            edges[j] = (w, c);
            *present.entry((v, d)).or_default() += 1;
            *present.entry((w, c)).or_default() += 1;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_regular_graph() {
        let dd = DegreeDistribution::regular(3, 6).unwrap();
        for seed in 0..5 {
            let g = sample_graph(6, &dd, seed).unwrap();
            assert_eq!(g.num_checks(), 3);
            assert_eq!(g.num_edges(), 18);
            assert!((0..6).all(|v| g.variable_degree(v) == 3));
            assert!((0..3).all(|c| g.check_degree(c) == 6));
        }
    }

    #[test]
    fn determinism() {
        let dd = DegreeDistribution::regular(3, 6).unwrap();
        assert_eq!(sample_graph(500, &dd, 9).unwrap(), sample_graph(500, &dd, 9).unwrap());
        assert_ne!(sample_graph(500, &dd, 9).unwrap(), sample_graph(500, &dd, 10).unwrap());
    }

    #[test]
    fn irregular_check_count() {
        let dd = DegreeDistribution::awgn_rate_half();
        let g = sample_graph(1000, &dd, 3).unwrap();
        assert!((g.num_checks() as i64 - 500).abs() <= 1, "m = {}", g.num_checks());
    }

    #[test]
    fn too_small() {
        let dd = DegreeDistribution::regular(3, 6).unwrap();
        assert!(sample_graph(0, &dd, 1).is_err());
        assert!(sample_graph(1, &dd, 1).is_err());
    }

    #[test]
    fn adjacency_round_trip() {
        let dd = DegreeDistribution::regular(3, 6).unwrap();
        let g = sample_graph(40, &dd, 2).unwrap();
        assert_eq!(TannerGraph::parse_adjacency(&g.to_adjacency()).unwrap(), g);
        let h = TannerGraph::parse_adjacency("0 0 1\n1 1 2\n").unwrap();
        assert_eq!((h.num_variables(), h.num_checks()), (3, 2));
        assert!(TannerGraph::parse_adjacency("0 0 0\n").is_err());
        assert!(TannerGraph::parse_adjacency("0 x\n").is_err());
    }
}
