//! Monte Carlo checks of the pairing distribution, the concentration tail
//! bound, and the expectation bound on missing edges.

use std::collections::HashMap;

use rand::seq::index::sample;
use rand::Rng;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::pipeline::{certify_batch, Prepared, PipelineResult, Verdict};
use crate::rng::trial_rng;
use crate::sampler::{in_event_a, sample_uniform_pairing};

/// One estimated quantity compared against its reference value.
#[derive(Clone, Debug, PartialEq)]
pub struct McRecord {
    pub suite: &'static str,
    pub quantity: String,
    pub estimate: f64,
    pub stderr: f64,
    /// Exact value for two-sided checks, upper bound for one-sided ones.
    pub bound: f64,
    pub pass: bool,
}

pub const SUITES: [&str; 5] = [
    "pairing-marginals",
    "pairing-joint",
    "exact-distribution",
    "chebyshev",
    "expectation-bound",
];

/// Trials are split into this many chunks, each with its own stream, so
/// results do not depend on the thread count.
const CHUNKS: u64 = 64;

/// Sums `per_trial` over `trials` draws.
fn count_hits<F>(seed: u64, trials: u64, exec: Execution, per_trial: F) -> Vec<u64>
where
    F: Fn(&mut rand_chacha::ChaCha8Rng) -> Vec<u64> + Sync + Send,
{
    let chunks = CHUNKS.min(trials.max(1));
    let parts = exec.map(chunks, |c| {
        let mut rng = trial_rng(seed, c);
        let share = trials / chunks + u64::from(c < trials % chunks);
        let mut acc: Vec<u64> = Vec::new();
        for _ in 0..share {
            let hit = per_trial(&mut rng);
            if acc.is_empty() {
                acc = vec![0; hit.len()];
            }
            for (a, h) in acc.iter_mut().zip(hit) {
                *a += h;
            }
        }
        acc
    });
    parts.into_iter().fold(Vec::new(), |mut total, part| {
        if total.len() < part.len() {
            total.resize(part.len(), 0);
        }
        for (t, p) in total.iter_mut().zip(part) {
            *t += p;
        }
        total
    })
}

/// Binomial proportion compared with `p` within `sigmas` standard errors,
/// using the standard error under the reference value.
fn proportion_record(
    suite: &'static str,
    quantity: String,
    hits: u64,
    trials: u64,
    p: f64,
    sigmas: f64,
) -> McRecord {
    let est = hits as f64 / trials as f64;
    let se = (p * (1.0 - p) / trials as f64).sqrt();
    McRecord {
        suite,
        quantity,
        estimate: est,
        stderr: se,
        bound: p,
        pass: (est - p).abs() <= sigmas * se,
    }
}

/// `Pr[{0,1} ∈ M]` against `1/(x−1)`.
pub fn pairing_marginals(x_size: usize, trials: u64, seed: u64, exec: Execution) -> Result<McRecord> {
    check_ground(x_size, 2)?;
    let hits = count_hits(seed, trials, exec, |rng| {
        let m = sample_uniform_pairing(x_size, rng).expect("even ground set");
        vec![u64::from(m.contains_pair(0, 1))]
    });
    Ok(proportion_record(
        "pairing-marginals",
        format!("Pr[{{0,1}} in M], |X|={x_size}"),
        hits[0],
        trials,
        1.0 / (x_size as f64 - 1.0),
        4.0,
    ))
}

/// `Pr[{0,1}, {2,3} ∈ M]` against `1/((x−1)(x−3))`.
pub fn pairing_joint(x_size: usize, trials: u64, seed: u64, exec: Execution) -> Result<McRecord> {
    check_ground(x_size, 4)?;
    let hits = count_hits(seed, trials, exec, |rng| {
        let m = sample_uniform_pairing(x_size, rng).expect("even ground set");
        vec![u64::from(m.contains_pair(0, 1) && m.contains_pair(2, 3))]
    });
    let x = x_size as f64;
    Ok(proportion_record(
        "pairing-joint",
        format!("Pr[{{0,1}},{{2,3}} in M], |X|={x_size}"),
        hits[0],
        trials,
        1.0 / ((x - 1.0) * (x - 3.0)),
        4.0,
    ))
}

fn check_ground(x_size: usize, min: usize) -> Result<()> {
    if x_size % 2 == 1 {
        return Err(Error::OddGroundSet(x_size));
    }
    if x_size < min {
        return Err(Error::DomainError("ground set too small"));
    }
    Ok(())
}

/// Every pairing of `{0..x}` in canonical form.
pub fn all_pairings(x_size: usize) -> Vec<Vec<(usize, usize)>> {
    fn rec(rest: &[usize], prefix: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        let Some((&first, tail)) = rest.split_first() else {
            out.push(prefix.clone());
            return;
        };
        for i in 0..tail.len() {
            let mut remaining = tail.to_vec();
            let partner = remaining.remove(i);
            prefix.push((first, partner));
            rec(&remaining, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(&(0..x_size).collect::<Vec<_>>(), &mut Vec::new(), &mut out);
    out
}

/// Pearson chi-square test of pairing frequencies against uniform. The
/// estimate is the p-value; it passes when above `1e−4`.
pub fn exact_distribution(x_size: usize, trials: u64, seed: u64, exec: Execution) -> Result<McRecord> {
    check_ground(x_size, 2)?;
    if x_size > 10 {
        return Err(Error::TooLarge { vertex_count: x_size, limit: 10 });
    }
    let all = all_pairings(x_size);
    let index: HashMap<Vec<(usize, usize)>, usize> =
        all.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let cells = all.len();
    let counts = count_hits(seed, trials, exec, |rng| {
        let m = sample_uniform_pairing(x_size, rng).expect("even ground set");
        let mut hit = vec![0; cells];
        hit[index[&m.canonical()]] = 1;
        hit
    });
    let expect = trials as f64 / cells as f64;
    let stat: f64 = counts
        .iter()
        .map(|&c| (c as f64 - expect).powi(2) / expect)
        .sum();
    let p_value = if cells > 1 {
        let dist = ChiSquared::new((cells - 1) as f64).expect("positive degrees of freedom");
        1.0 - dist.cdf(stat)
    } else {
        1.0
    };
    Ok(McRecord {
        suite: "exact-distribution",
        quantity: format!("chi-square p-value, |X|={x_size}, {cells} pairings, stat={stat:.4}"),
        estimate: p_value,
        stderr: 0.0,
        bound: 1e-4,
        pass: p_value > 1e-4,
    })
}

/// A fixed random family of `round(density·C(x,2))` pairs of `{0..x}`, as
/// an adjacency lookup.
pub fn random_pair_family<R: Rng + ?Sized>(x_size: usize, density: f64, rng: &mut R) -> Vec<Vec<bool>> {
    let pairs: Vec<(usize, usize)> = (0..x_size)
        .flat_map(|u| (u + 1..x_size).map(move |v| (u, v)))
        .collect();
    let size = (density * pairs.len() as f64).round() as usize;
    let mut member = vec![vec![false; x_size]; x_size];
    for i in sample(rng, pairs.len(), size.min(pairs.len())) {
        let (u, v) = pairs[i];
        member[u][v] = true;
        member[v][u] = true;
    }
    member
}

/// Empirical `Pr[| |F∩M| − |F|/(x−1) | ≥ λ]` against `x/λ²` for a random
/// family `F` of the given density.
pub fn chebyshev(
    x_size: usize,
    density: f64,
    lambda: f64,
    trials: u64,
    seed: u64,
    exec: Execution,
) -> Result<McRecord> {
    check_ground(x_size, 4)?;
    if lambda <= 0.0 {
        return Err(Error::DomainError("λ must be positive"));
    }
    // The family uses a stream no chunk uses.
    let family = random_pair_family(x_size, density, &mut trial_rng(seed, u64::MAX));
    let f_size = family.iter().flatten().filter(|&&b| b).count() / 2;
    let x1 = (x_size - 1) as f64;
    let mean = f_size as f64 / x1;
    let hits = count_hits(seed, trials, exec, |rng| {
        let m = sample_uniform_pairing(x_size, rng).expect("even ground set");
        let c = m.pairs.iter().filter(|&&(u, v)| family[u][v]).count();
        // |c − |F|/(x−1)| ≥ λ, scaled by x − 1.
        vec![u64::from((c as f64 * x1 - f_size as f64).abs() >= lambda * x1)]
    });
    let est = hits[0] as f64 / trials as f64;
    let bound = x_size as f64 / (lambda * lambda);
    Ok(McRecord {
        suite: "chebyshev",
        quantity: format!(
            "Pr[deviation >= {lambda}], |X|={x_size}, |F|={f_size}, E|F∩M|={mean:.4}"
        ),
        estimate: est,
        stderr: (est * (1.0 - est) / trials as f64).sqrt(),
        bound,
        pass: est <= bound,
    })
}

/// Runs the chebyshev suite over the standard grid of sizes, densities
/// and deviations.
pub fn chebyshev_grid(trials: u64, seed: u64, exec: Execution) -> Result<Vec<McRecord>> {
    let mut out = Vec::new();
    for (i, &x) in [20usize, 50].iter().enumerate() {
        for (j, &d) in [0.1, 0.25].iter().enumerate() {
            for (l, &lambda) in [2.0, 5.0, 10.0].iter().enumerate() {
                let cell_seed = seed ^ ((i * 100 + j * 10 + l) as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
                out.push(chebyshev(x, d, lambda, trials, cell_seed, exec)?);
            }
        }
    }
    Ok(out)
}

/// Fraction of uniform pairings of `G′` inside the concentration event,
/// against the lower bound `1 − x/λ²`.
pub fn event_a_acceptance(prepared: &Prepared, trials: u64, exec: Execution) -> McRecord {
    let gp = &prepared.g_prime;
    let lambda = prepared.preconditions.lambda;
    let hits = count_hits(prepared.config.seed, trials, exec, |rng| {
        let m = sample_uniform_pairing(gp.vertex_count(), rng).expect("G′ has even order");
        vec![u64::from(in_event_a(&m, gp, lambda))]
    });
    let est = hits[0] as f64 / trials as f64;
    let bound = 1.0 - gp.vertex_count() as f64 / lambda.as_f64().powi(2);
    let se = (est * (1.0 - est) / trials as f64).sqrt();
    McRecord {
        suite: "event-acceptance",
        quantity: format!("Pr[M in A], x={}, λ={lambda}", gp.vertex_count()),
        estimate: est,
        stderr: se,
        bound,
        // The bound is a lower bound; allow sampling noise below it.
        pass: est + 4.0 * se >= bound,
    }
}

/// Mean missing edges over a strict batch against the expectation bound.
pub fn expectation_bound(prepared: &Prepared, results: &[PipelineResult]) -> Result<McRecord> {
    let cert = certify_batch(prepared, results)?;
    Ok(McRecord {
        suite: "expectation-bound",
        quantity: format!(
            "mean missing edges, |V|={}, k={}, trials={}",
            prepared.preconditions.vertex_count, prepared.preconditions.k, cert.trials
        ),
        estimate: cert.mean,
        stderr: cert.stderr,
        bound: cert.bound,
        pass: cert.verdict == Verdict::Pass,
    })
}
