//! Randomized construction of a dense minor on half the vertices: remove a
//! maximum clique `Z`, contract a random matching of the rest, pack the
//! leftover vertices into seagulls, and account for every missing edge.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::alpha2::{clique_stats, is_alpha_le_2, CliqueStats};
use crate::bitset::VertexSet;
use crate::bounds::BoundReport;
use crate::clique::{find_max_clique, CliqueSearch};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::graph::{contract, verify_minor, BranchDecomposition, Graph};
use crate::rng::trial_rng;
use crate::sampler::{
    in_event_a, pairing_edge_count, sample_until, subsample_matching, Lambda, SubMatching,
};
use crate::seagull::{seagull_partition_with_budget, SeagullPartition, DEFAULT_PARTITION_BUDGET};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LambdaPolicy {
    /// `λ = n^{2/3}`, rounded down to a rational.
    N23,
    Explicit(Lambda),
    /// `λ = min(n^{2/3}, (k−1)/2)`.
    Clamped,
}

impl LambdaPolicy {
    pub fn resolve(&self, n: usize, k: usize) -> Lambda {
        let n23 = Lambda::floor_of((n as f64).powf(2.0 / 3.0));
        match *self {
            LambdaPolicy::N23 => n23,
            LambdaPolicy::Explicit(l) => l,
            LambdaPolicy::Clamped => n23.min(Lambda::new(k.saturating_sub(1) as u64, 2)),
        }
    }
}

impl fmt::Display for LambdaPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LambdaPolicy::N23 => write!(f, "n23"),
            LambdaPolicy::Explicit(l) => write!(f, "{l}"),
            LambdaPolicy::Clamped => write!(f, "clamped"),
        }
    }
}

impl FromStr for LambdaPolicy {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "n23" => Ok(LambdaPolicy::N23),
            "clamped" => Ok(LambdaPolicy::Clamped),
            other => {
                let l: Lambda = other.parse()?;
                if !l.is_positive() {
                    return Err("lambda must be positive".into());
                }
                Ok(LambdaPolicy::Explicit(l))
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Condition on the concentration event; certify against the bound.
    Strict,
    /// Condition only on having enough matching edges; no certificate.
    Advisory,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Strict => "strict",
            Mode::Advisory => "advisory",
        })
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "strict" => Ok(Mode::Strict),
            "advisory" => Ok(Mode::Advisory),
            _ => Err(format!("unknown mode `{s}`")),
        }
    }
}

pub const DEFAULT_CLIQUE_BUDGET: u64 = 1_000_000;
pub const DEFAULT_REJECTION_TRIES: u64 = 100_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PipelineConfig {
    pub lambda_policy: LambdaPolicy,
    pub seed: u64,
    pub mode: Mode,
    pub max_rejection_tries: u64,
    /// Node budget of the maximum clique search; `None` is unbounded.
    pub clique_budget: Option<u64>,
    pub partition_budget: u64,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            lambda_policy: LambdaPolicy::N23,
            seed: 0,
            mode: Mode::Strict,
            max_rejection_tries: DEFAULT_REJECTION_TRIES,
            clique_budget: Some(DEFAULT_CLIQUE_BUDGET),
            partition_budget: DEFAULT_PARTITION_BUDGET,
        }
    }
}

/// Hypothesis flags and derived sizes for one input.
#[derive(Clone, Debug, PartialEq)]
pub struct PreconditionReport {
    pub vertex_count: usize,
    pub n: usize,
    pub k: usize,
    /// `|V(G′)|`
    pub x: usize,
    pub lambda: Lambda,
    pub q: f64,
    pub even_order: bool,
    pub alpha_le_2: bool,
    /// `4k < |V|`; a statement about ω only when `clique_exact`.
    pub omega_lt_quarter: bool,
    pub lambda_le_half_k_minus_1: bool,
    pub lambda_sq_gt_2n: bool,
    pub n_minus_2k_nonneg: bool,
    /// `Z` is a proven maximum clique.
    pub clique_exact: bool,
    /// Every complement degree is at most `k`; implied by `clique_exact`.
    pub complement_degree_le_k: bool,
}

impl PreconditionReport {
    /// Flags needed to construct the minor at all.
    pub fn eligible(&self) -> bool {
        self.even_order && self.alpha_le_2 && self.omega_lt_quarter && self.n_minus_2k_nonneg
    }

    /// First failing flag among those the expectation bound needs.
    pub fn strict_failure(&self) -> Option<&'static str> {
        [
            (self.even_order, "|V| odd or < 6"),
            (self.alpha_le_2, "α > 2"),
            (self.omega_lt_quarter, "ω ≥ |V|/4"),
            (self.n_minus_2k_nonneg, "n − 2k < 0"),
            (self.lambda_sq_gt_2n, "λ² ≤ 2n"),
            (self.lambda_le_half_k_minus_1, "λ > (k−1)/2"),
            (self.complement_degree_le_k, "complement degree > k"),
        ]
        .into_iter()
        .find(|(ok, _)| !ok)
        .map(|(_, why)| why)
    }

    pub fn strict_ok(&self) -> bool {
        self.strict_failure().is_none()
    }
}

/// Deterministic choice of `G′`: `g − z`, minus the lowest-index remaining
/// vertex when that leaves an odd count. Returns `G′`, its labels in `g`,
/// and the deleted vertex.
pub fn choose_g_prime(g: &Graph, z: &VertexSet) -> (Graph, Vec<usize>, Option<usize>) {
    let mut rest = z.complement();
    let deleted = if rest.len() % 2 == 1 { rest.first() } else { None };
    if let Some(v) = deleted {
        rest.remove(v);
    }
    let (gp, map) = g.induced_subgraph(&rest);
    (gp, map, deleted)
}

/// Triples `{z, u, w}` with `z ∈ Z` non-adjacent to both `u, w ∉ Z`, as
/// `[z, u, w]` with `u < w`.
pub fn enumerate_bad_triples(g: &Graph, z: &VertexSet) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for zv in z.iter() {
        let far = g.non_neighbors(zv).difference(z);
        for u in far.iter() {
            for w in far.iter().filter(|&w| w > u) {
                out.push([zv, u, w]);
            }
        }
    }
    out
}

pub fn count_bad_triples(g: &Graph, z: &VertexSet) -> usize {
    z.iter()
        .map(|zv| {
            let d = g.non_neighbors(zv).difference(z).len();
            d * d.saturating_sub(1) / 2
        })
        .sum()
}

/// Complement common-neighbour sets, used to list 4-sets whose induced
/// edges form a perfect matching. Such a set is a 4-cycle of the
/// complement; it is reported once through the diagonal holding its
/// smallest vertex.
fn for_each_bad_quadruple(g: &Graph, mut visit: impl FnMut([usize; 4])) {
    let n = g.vertex_count();
    let non: Vec<VertexSet> = (0..n).map(|v| g.non_neighbors(v)).collect();
    for u in 0..n {
        for w in (u + 1..n).filter(|&w| g.has_edge(u, w)) {
            let common = non[u].intersection(&non[w]);
            let later: Vec<usize> = common.iter().filter(|&v| v > u).collect();
            for (i, &v) in later.iter().enumerate() {
                for &x in &later[i + 1..] {
                    // Complement edges u–v–w–x–u; G-edges u–w and v–x.
                    if g.has_edge(v, x) {
                        visit([u, v, w, x]);
                    }
                }
            }
        }
    }
}

/// 4-sets inducing exactly two disjoint edges, each sorted.
pub fn enumerate_bad_quadruples(g: &Graph) -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for_each_bad_quadruple(g, |mut q| {
        q.sort_unstable();
        out.push(q);
    });
    out.sort_unstable();
    out
}

pub fn count_bad_quadruples(g: &Graph) -> usize {
    let mut c = 0;
    for_each_bad_quadruple(g, |_| c += 1);
    c
}

/// Everything about an input that does not depend on the random trial.
#[derive(Clone, Debug)]
pub struct Prepared {
    pub g: Graph,
    pub config: PipelineConfig,
    pub clique: CliqueSearch,
    pub stats: CliqueStats,
    pub g_prime: Graph,
    /// `G′` label -> `g` label
    pub g_prime_map: Vec<usize>,
    pub deleted_vertex: Option<usize>,
    pub preconditions: PreconditionReport,
    pub bound: BoundReport,
}

pub fn preconditions(g: &Graph, cfg: &PipelineConfig) -> Result<Prepared> {
    let vertex_count = g.vertex_count();
    let clique = find_max_clique(g, cfg.clique_budget);
    let stats = clique_stats(g, &clique.clique)?;
    let k = stats.k;
    let n = vertex_count / 2;
    let (g_prime, g_prime_map, deleted_vertex) = choose_g_prime(g, &clique.clique);
    let lambda = cfg.lambda_policy.resolve(n, k);
    let max_non_degree = g.vertices().iter().map(|v| g.non_degree(v)).max().unwrap_or(0);
    let pre = PreconditionReport {
        vertex_count,
        n,
        k,
        x: g_prime.vertex_count(),
        lambda,
        q: crate::bounds::q_value(n, lambda.as_f64()),
        even_order: vertex_count.is_multiple_of(2) && vertex_count >= 6,
        alpha_le_2: is_alpha_le_2(g),
        omega_lt_quarter: 4 * k < vertex_count,
        lambda_le_half_k_minus_1: k >= 1 && lambda.le_ratio(k as u64 - 1, 2),
        lambda_sq_gt_2n: lambda.square_gt(2 * n as u64),
        n_minus_2k_nonneg: 2 * k <= n,
        clique_exact: clique.exact,
        complement_degree_le_k: max_non_degree <= k,
    };
    let bound = BoundReport::new(n, k, stats.a, stats.b, lambda.as_f64());
    Ok(Prepared {
        g: g.clone(),
        config: cfg.clone(),
        clique,
        stats,
        g_prime,
        g_prime_map,
        deleted_vertex,
        preconditions: pre,
        bound,
    })
}

/// Output of the sampling stage of a trial.
#[derive(Clone, Debug)]
pub struct MatchingDraw {
    pub m_star: Vec<(usize, usize)>,
    pub leftover: VertexSet,
    pub tries: u64,
    pub pairing_edges: usize,
}

/// One completed construction.
#[derive(Clone, Debug)]
pub struct PipelineResult {
    pub trial: u64,
    pub h: Graph,
    pub decomposition: BranchDecomposition,
    pub deleted_vertex: Option<usize>,
    /// Contracted matching edges, in host labels.
    pub m_star: SubMatching,
    /// Seagulls covering `S`, in host labels.
    pub seagulls: SeagullPartition,
    pub s_size: usize,
    /// Pairings drawn until one was accepted.
    pub tries: u64,
    /// `|M ∩ E(G′)|` of the accepted pairing.
    pub pairing_edges: usize,
    pub missing_edges: usize,
    pub realized_bad_triples: usize,
    pub realized_bad_quadruples: usize,
    /// `realized_bad_triples ≤ a(k−1)/2` and
    /// `realized_bad_quadruples ≤ b(k−1)²/4`.
    pub count_bounds_hold: bool,
}

impl Prepared {
    fn ineligibility(&self) -> Option<Error> {
        let p = &self.preconditions;
        if !p.alpha_le_2 {
            return Some(Error::AlphaTooLarge);
        }
        if !p.even_order {
            return Some(Error::Ineligible(format!(
                "|V| = {} must be even and at least 6",
                p.vertex_count
            )));
        }
        if !p.omega_lt_quarter {
            return Some(Error::Ineligible(format!(
                "ω ≥ {} ≥ |V|/4; such graphs have a K_{} minor by the clique-minor route, \
                 which this tool does not construct",
                p.k,
                p.vertex_count / 2
            )));
        }
        None
    }

    /// Builds one minor using the random stream of `trial`.
    pub fn run_trial(&self, trial: u64) -> Result<PipelineResult> {
        if let Some(e) = self.ineligibility() {
            return Err(e);
        }
        let mut rng = trial_rng(self.config.seed, trial);
        self.run_with_rng(trial, &mut rng)
    }

    /// The random part of a trial: the accepted pairing, the contracted
    /// matching `M*` in host labels, and the leftover set `S`.
    pub fn draw_matching<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<MatchingDraw> {
        let pre = &self.preconditions;
        let need = pre.n - 2 * pre.k;
        let gp = &self.g_prime;
        let draw = match self.config.mode {
            Mode::Strict => sample_until(gp, self.config.max_rejection_tries, rng, |m| {
                in_event_a(m, gp, pre.lambda)
            })?,
            Mode::Advisory => sample_until(gp, self.config.max_rejection_tries, rng, |m| {
                pairing_edge_count(m, gp) >= need
            })?,
        };
        let pairing_edges = pairing_edge_count(&draw.pairing, gp);
        let local = subsample_matching(&draw.pairing, gp, need, rng)?;
        let map = &self.g_prime_map;
        let mut m_star: Vec<(usize, usize)> = local
            .edges
            .iter()
            .map(|&(u, v)| (map[u].min(map[v]), map[u].max(map[v])))
            .collect();
        m_star.sort_unstable();
        let mut s = self.clique.clique.complement();
        for &(u, v) in &m_star {
            s.remove(u);
            s.remove(v);
        }
        if s.len() != 3 * pre.k {
            return Err(Error::SeagullFailure(format!("|S| = {} ≠ 3k = {}", s.len(), 3 * pre.k)));
        }
        Ok(MatchingDraw {
            m_star,
            leftover: s,
            tries: draw.tries,
            pairing_edges,
        })
    }

    fn run_with_rng<R: Rng + ?Sized>(&self, trial: u64, rng: &mut R) -> Result<PipelineResult> {
        let g = &self.g;
        let (n, k) = (self.preconditions.n, self.preconditions.k);
        let z = &self.clique.clique;
        let MatchingDraw {
            m_star,
            leftover: s,
            tries,
            pairing_edges,
        } = self.draw_matching(rng)?;
        let (gs, s_map) = g.induced_subgraph(&s);
        let seagulls = match seagull_partition_with_budget(&gs, self.config.partition_budget) {
            Ok(Some(p)) => SeagullPartition {
                triples: p.triples.iter().map(|t| t.mapped(&s_map)).collect(),
            },
            Ok(None) => return Err(Error::SeagullFailure("G[S] has no seagull partition".into())),
            Err(e) => return Err(Error::SeagullFailure(e.to_string())),
        };

        let mut parts: Vec<Vec<usize>> = z.iter().map(|v| vec![v]).collect();
        parts.extend(m_star.iter().map(|&(u, v)| vec![u, v]));
        parts.extend(seagulls.triples.iter().map(|t| t.vertices().to_vec()));
        let decomposition = BranchDecomposition::from_lists(g.vertex_count(), &parts);
        let h = contract(g, &decomposition)?;
        let check = verify_minor(g, &h, &decomposition);
        if !check.is_valid() || h.vertex_count() != n {
            return Err(Error::InvalidDecomposition(format!("{check:?}")));
        }

        // Constructive accounting of the non-adjacent pairs of H.
        let realized_bad_triples = z
            .iter()
            .map(|zv| {
                m_star
                    .iter()
                    .filter(|&&(u, v)| !g.has_edge(zv, u) && !g.has_edge(zv, v))
                    .count()
            })
            .sum::<usize>();
        let mut realized_bad_quadruples = 0;
        for (i, &(u, v)) in m_star.iter().enumerate() {
            for &(w, x) in &m_star[i + 1..] {
                if !(g.has_edge(u, w) || g.has_edge(u, x) || g.has_edge(v, w) || g.has_edge(v, x)) {
                    realized_bad_quadruples += 1;
                }
            }
        }
        let missing_edges = n * (n - 1) / 2 - h.edge_count();
        if missing_edges != realized_bad_triples + realized_bad_quadruples {
            return Err(Error::InvalidDecomposition(format!(
                "{missing_edges} missing edges, {} classified",
                realized_bad_triples + realized_bad_quadruples
            )));
        }
        let km1 = k.saturating_sub(1);
        let count_bounds_hold = 2 * realized_bad_triples <= self.stats.a * km1
            && 4 * realized_bad_quadruples <= self.stats.b * km1 * km1;

        Ok(PipelineResult {
            trial,
            h,
            decomposition,
            deleted_vertex: self.deleted_vertex,
            m_star: SubMatching { edges: m_star },
            seagulls,
            s_size: s.len(),
            tries,
            pairing_edges,
            missing_edges,
            realized_bad_triples,
            realized_bad_quadruples,
            count_bounds_hold,
        })
    }

    /// Runs trials `0..trials`, in trial order.
    pub fn run_batch(&self, trials: u64, exec: Execution) -> Vec<Result<PipelineResult>> {
        exec.map(trials, |t| self.run_trial(t))
    }
}

/// A single run with trial index 0.
pub fn run_pipeline(g: &Graph, cfg: &PipelineConfig) -> Result<(Prepared, PipelineResult)> {
    let prepared = preconditions(g, cfg)?;
    let result = prepared.run_trial(0)?;
    Ok((prepared, result))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// A single run; the bound concerns an expectation.
    Sample,
    Pass,
    Fail,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Sample => "sample",
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
        })
    }
}

/// Comparison of realized missing edges with the expectation bound.
#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub verdict: Verdict,
    pub bound: f64,
    pub trials: usize,
    pub mean: f64,
    /// Standard error of the mean; 0 for a single run.
    pub stderr: f64,
    /// `bound + 3·stderr − mean`; nonnegative iff PASS.
    pub margin: f64,
}

fn certifiable_bound(prepared: &Prepared) -> Result<f64> {
    if prepared.config.mode == Mode::Advisory {
        return Err(Error::NotCertifiable("advisory mode".into()));
    }
    if let Some(why) = prepared.preconditions.strict_failure() {
        return Err(Error::NotCertifiable(why.into()));
    }
    prepared
        .bound
        .rhs_j
        .ok_or_else(|| Error::NotCertifiable("bound undefined".into()))
}

/// Single-run certificate, marked as a sample.
pub fn certify(prepared: &Prepared, result: &PipelineResult) -> Result<Certificate> {
    let bound = certifiable_bound(prepared)?;
    let mean = result.missing_edges as f64;
    Ok(Certificate {
        verdict: Verdict::Sample,
        bound,
        trials: 1,
        mean,
        stderr: 0.0,
        margin: bound - mean,
    })
}

/// Aggregated certificate: PASS iff the mean is at most the bound plus three
/// standard errors.
pub fn certify_batch(prepared: &Prepared, results: &[PipelineResult]) -> Result<Certificate> {
    let bound = certifiable_bound(prepared)?;
    if results.len() < 2 {
        return Err(Error::NotCertifiable("fewer than two trials".into()));
    }
    let m = results.len() as f64;
    let mean = results.iter().map(|r| r.missing_edges as f64).sum::<f64>() / m;
    let var = results
        .iter()
        .map(|r| (r.missing_edges as f64 - mean).powi(2))
        .sum::<f64>()
        / (m - 1.0);
    let stderr = (var / m).sqrt();
    let margin = bound + 3.0 * stderr - mean;
    Ok(Certificate {
        verdict: if margin >= 0.0 { Verdict::Pass } else { Verdict::Fail },
        bound,
        trials: results.len(),
        mean,
        stderr,
        margin,
    })
}
