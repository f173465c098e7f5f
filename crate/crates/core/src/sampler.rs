//! Uniform random pairings, the concentration event, conditioned sampling
//! and uniform sub-matchings.

use std::fmt;
use std::str::FromStr;

use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A nonnegative rational `num/den`, used for the deviation parameter so
/// that membership in the concentration event is decided exactly.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Lambda {
    num: u64,
    den: u64,
}

/// Denominator used when a real λ is rounded down to a rational.
pub const LAMBDA_SCALE: u64 = 1_000_000;

impl Lambda {
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den > 0, "zero denominator");
        let g = gcd(num, den);
        Lambda {
            num: num / g,
            den: den / g,
        }
    }

    pub fn integer(v: u64) -> Self {
        Lambda::new(v, 1)
    }

    /// Rounds a nonnegative real down to a multiple of `1/LAMBDA_SCALE`.
    pub fn floor_of(x: f64) -> Self {
        assert!(x.is_finite() && x >= 0.0, "lambda must be finite and nonnegative");
        Lambda::new((x * LAMBDA_SCALE as f64).floor() as u64, LAMBDA_SCALE)
    }

    pub fn numer(&self) -> u64 {
        self.num
    }

    pub fn denom(&self) -> u64 {
        self.den
    }

    pub fn as_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    pub fn is_positive(&self) -> bool {
        self.num > 0
    }

    pub fn min(self, other: Lambda) -> Lambda {
        if (self.num as u128) * (other.den as u128) <= (other.num as u128) * (self.den as u128) {
            self
        } else {
            other
        }
    }

    /// `λ ≤ p/q` exactly.
    pub fn le_ratio(&self, p: u64, q: u64) -> bool {
        (self.num as u128) * (q as u128) <= (p as u128) * (self.den as u128)
    }

    /// `λ² > m` exactly.
    pub fn square_gt(&self, m: u64) -> bool {
        (self.num as u128).pow(2) > (m as u128) * (self.den as u128).pow(2)
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a.max(1)
    } else {
        gcd(b, a % b)
    }
}

impl fmt::Display for Lambda {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for Lambda {
    type Err = String;

    /// Accepts `p`, `p/q`, or a decimal such as `12.5`.
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let bad = || format!("`{s}` is not a nonnegative rational");
        if let Some((p, q)) = s.split_once('/') {
            let p: u64 = p.trim().parse().map_err(|_| bad())?;
            let q: u64 = q.trim().parse().map_err(|_| bad())?;
            if q == 0 {
                return Err(bad());
            }
            return Ok(Lambda::new(p, q));
        }
        if let Some((int, frac)) = s.split_once('.') {
            if frac.is_empty() || frac.len() > 18 || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let int: u64 = if int.is_empty() { 0 } else { int.parse().map_err(|_| bad())? };
            let den = 10u64.pow(frac.len() as u32);
            let frac: u64 = frac.parse().map_err(|_| bad())?;
            return Ok(Lambda::new(int * den + frac, den));
        }
        s.trim().parse().map(Lambda::integer).map_err(|_| bad())
    }
}

/// A partition of a ground set into unordered pairs; each pair is stored
/// with its smaller element first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Pairing {
    pub pairs: Vec<(usize, usize)>,
}

impl Pairing {
    pub fn ground_size(&self) -> usize {
        2 * self.pairs.len()
    }

    pub fn contains_pair(&self, u: usize, v: usize) -> bool {
        let key = (u.min(v), u.max(v));
        self.pairs.contains(&key)
    }

    /// Canonical form: pairs sorted. Two pairings are equal as partitions iff
    /// their canonical forms are equal.
    pub fn canonical(&self) -> Vec<(usize, usize)> {
        let mut p = self.pairs.clone();
        p.sort_unstable();
        p
    }

    /// Partner of each ground element.
    pub fn partner_map(&self) -> Vec<usize> {
        let mut m = vec![usize::MAX; self.ground_size()];
        for &(u, v) in &self.pairs {
            m[u] = v;
            m[v] = u;
        }
        m
    }
}

/// A set of pairs drawn from a pairing, all of them graph edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubMatching {
    pub edges: Vec<(usize, usize)>,
}

/// Uniform over the `(x−1)!!` pairings of `{0, .., x−1}`: shuffle and pair
/// consecutive elements.
pub fn sample_uniform_pairing<R: Rng + ?Sized>(x_size: usize, rng: &mut R) -> Result<Pairing> {
    if x_size % 2 == 1 {
        return Err(Error::OddGroundSet(x_size));
    }
    let mut perm: Vec<usize> = (0..x_size).collect();
    perm.shuffle(rng);
    Ok(Pairing {
        pairs: perm
            .chunks_exact(2)
            .map(|c| (c[0].min(c[1]), c[0].max(c[1])))
            .collect(),
    })
}

/// `|M ∩ E(g)|`.
pub fn pairing_edge_count(m: &Pairing, g: &Graph) -> usize {
    m.pairs.iter().filter(|&&(u, v)| g.has_edge(u, v)).count()
}

/// Whether `count ≥ |E|/(x−1) − λ`, compared exactly:
/// `count·(x−1)·den + num·(x−1) ≥ |E|·den`.
pub fn meets_concentration(count: usize, edges: usize, x: usize, lambda: Lambda) -> bool {
    let x1 = x.saturating_sub(1) as u128;
    if x1 == 0 {
        return true;
    }
    let (num, den) = (lambda.num as u128, lambda.den as u128);
    (count as u128) * x1 * den + num * x1 >= (edges as u128) * den
}

/// Membership of `m` in the concentration event
/// `|M ∩ E(g)| ≥ |E(g)|/(x−1) − λ` with `x = |V(g)|`.
pub fn in_event_a(m: &Pairing, g: &Graph, lambda: Lambda) -> bool {
    meets_concentration(pairing_edge_count(m, g), g.edge_count(), g.vertex_count(), lambda)
}

/// A conditioned draw together with the number of tries it took.
#[derive(Clone, Debug)]
pub struct ConditionedDraw {
    pub pairing: Pairing,
    pub tries: u64,
}

/// Rejection sampling of uniform pairings of `V(g)` until `accept` holds;
/// the result is uniform on the accepted set.
pub fn sample_until<R, F>(g: &Graph, max_tries: u64, rng: &mut R, mut accept: F) -> Result<ConditionedDraw>
where
    R: Rng + ?Sized,
    F: FnMut(&Pairing) -> bool,
{
    for tries in 1..=max_tries {
        let m = sample_uniform_pairing(g.vertex_count(), rng)?;
        if accept(&m) {
            return Ok(ConditionedDraw { pairing: m, tries });
        }
    }
    Err(Error::RejectionExhausted(max_tries))
}

/// A uniform pairing conditioned on the concentration event.
pub fn sample_conditioned<R: Rng + ?Sized>(
    g: &Graph,
    lambda: Lambda,
    max_tries: u64,
    rng: &mut R,
) -> Result<ConditionedDraw> {
    sample_until(g, max_tries, rng, |m| in_event_a(m, g, lambda))
}

/// A uniformly random `count`-subset of the pairs of `m` that are edges of
/// `g`, in pairing order.
pub fn subsample_matching<R: Rng + ?Sized>(
    m: &Pairing,
    g: &Graph,
    count: usize,
    rng: &mut R,
) -> Result<SubMatching> {
    let edges: Vec<(usize, usize)> = m
        .pairs
        .iter()
        .copied()
        .filter(|&(u, v)| g.has_edge(u, v))
        .collect();
    if edges.len() < count {
        return Err(Error::NotEnoughEdges {
            available: edges.len(),
            needed: count,
        });
    }
    let mut picked: Vec<usize> = (0..edges.len())
        .collect::<Vec<_>>()
        .choose_multiple(rng, count)
        .copied()
        .collect();
    picked.sort_unstable();
    Ok(SubMatching {
        edges: picked.into_iter().map(|i| edges[i]).collect(),
    })
}

/// The concentration tail bound `|X|/λ²`.
pub fn chebyshev_rhs(x_size: usize, lambda: f64) -> f64 {
    x_size as f64 / (lambda * lambda)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::named;
    use crate::rng::trial_rng;
    use std::collections::HashMap;

    /// All pairings of `{0..x}` by recursion on the smallest element.
    fn all_pairings(x: usize) -> Vec<Vec<(usize, usize)>> {
        fn rec(rest: &[usize]) -> Vec<Vec<(usize, usize)>> {
            let Some((&first, tail)) = rest.split_first() else {
                return vec![vec![]];
            };
            let mut out = Vec::new();
            for (i, &partner) in tail.iter().enumerate() {
                let mut remaining = tail.to_vec();
                remaining.remove(i);
                for mut p in rec(&remaining) {
                    p.insert(0, (first, partner));
                    p.sort_unstable();
                    out.push(p);
                }
            }
            out
        }
        rec(&(0..x).collect::<Vec<_>>())
    }

    #[test]
    fn lambda_parsing_and_comparisons() {
        assert_eq!("5".parse::<Lambda>().unwrap(), Lambda::integer(5));
        assert_eq!("3/6".parse::<Lambda>().unwrap(), Lambda::new(1, 2));
        assert_eq!("12.25".parse::<Lambda>().unwrap(), Lambda::new(49, 4));
        assert!("x".parse::<Lambda>().is_err());
        assert!("1/0".parse::<Lambda>().is_err());
        assert!("1.".parse::<Lambda>().is_err());
        assert_eq!(Lambda::floor_of(34.199_518_9).to_string(), "17099759/500000");
        assert!(Lambda::integer(20).square_gt(399));
        assert!(!Lambda::integer(20).square_gt(400));
        assert!(Lambda::new(7, 2).le_ratio(7, 2));
        assert!(!Lambda::new(7, 2).le_ratio(6, 2));
        assert_eq!(Lambda::integer(3).min(Lambda::new(5, 2)), Lambda::new(5, 2));
    }

    #[test]
    fn uniform_pairing_basics() {
        let mut rng = trial_rng(1, 0);
        assert_eq!(sample_uniform_pairing(5, &mut rng), Err(Error::OddGroundSet(5)));
        let m = sample_uniform_pairing(2, &mut rng).unwrap();
        assert_eq!(m.pairs, vec![(0, 1)]);
        let m = sample_uniform_pairing(10, &mut rng).unwrap();
        let mut seen: Vec<usize> = m.pairs.iter().flat_map(|&(u, v)| [u, v]).collect();
        seen.sort_unstable();
        assert_eq!(seen, (0..10).collect::<Vec<_>>());
    }

    #[test]
    fn pairing_counts() {
        let mut rng = trial_rng(2, 0);
        let m = sample_uniform_pairing(8, &mut rng).unwrap();
        assert_eq!(pairing_edge_count(&m, &Graph::complete(8)), 4);
        assert_eq!(pairing_edge_count(&m, &Graph::empty(8)), 0);
        let c4 = crate::generators::circulant(4, &[1]);
        let diag = Pairing { pairs: vec![(0, 2), (1, 3)] };
        assert_eq!(pairing_edge_count(&diag, &c4), 0);
    }

    #[test]
    fn event_a_examples() {
        let mut rng = trial_rng(3, 0);
        let m = sample_uniform_pairing(6, &mut rng).unwrap();
        assert!(in_event_a(&m, &Graph::complete(6), Lambda::integer(0)));
        assert!(in_event_a(&m, &Graph::empty(6), Lambda::integer(0)));
        let c4 = crate::generators::circulant(4, &[1]);
        let diag = Pairing { pairs: vec![(0, 2), (1, 3)] };
        // 0 ≥ 4/3 − 1 fails; 0 ≥ 4/3 − 4/3 holds.
        assert!(!in_event_a(&diag, &c4, Lambda::integer(1)));
        assert!(in_event_a(&diag, &c4, Lambda::new(4, 3)));
    }

    #[test]
    fn conditioned_sampling() {
        let mut rng = trial_rng(4, 0);
        let d = sample_conditioned(&Graph::complete(10), Lambda::integer(0), 1, &mut rng).unwrap();
        assert_eq!(d.tries, 1);
        // One edge on 10 vertices: λ = 0 demands count ≥ 1/9, i.e. the pair
        // (0, 1) itself, which a uniform pairing contains with probability 1/9.
        let sparse = Graph::from_edges(10, &[(0, 1)]).unwrap();
        let mut failures = 0;
        for t in 0..900 {
            match sample_conditioned(&sparse, Lambda::integer(0), 1, &mut trial_rng(4, t)) {
                Err(Error::RejectionExhausted(1)) => failures += 1,
                Ok(d) => assert!(d.pairing.contains_pair(1, 0)),
                Err(e) => panic!("{e}"),
            }
        }
        // Mean 800, standard deviation about 9.4.
        assert!((760..=840).contains(&failures), "{failures}");
    }

    #[test]
    fn conditioned_is_uniform_on_event() {
        // P3 plus an isolated edge on 6 vertices: the event keeps pairings
        // with at least one graph edge at λ = 1/5.
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (3, 4), (4, 5), (2, 3)]).unwrap();
        let lambda = Lambda::new(1, 5);
        let all = all_pairings(6);
        assert_eq!(all.len(), 15);
        let accepted: Vec<_> = all
            .iter()
            .filter(|p| in_event_a(&Pairing { pairs: (*p).clone() }, &g, lambda))
            .cloned()
            .collect();
        assert!(accepted.len() < 15 && !accepted.is_empty());
        let trials = 60_000;
        let mut counts: HashMap<Vec<(usize, usize)>, u32> = HashMap::new();
        let mut rng = trial_rng(5, 0);
        for _ in 0..trials {
            let d = sample_conditioned(&g, lambda, 1000, &mut rng).unwrap();
            *counts.entry(d.pairing.canonical()).or_default() += 1;
        }
        assert_eq!(counts.len(), accepted.len());
        let expect = trials as f64 / accepted.len() as f64;
        let sigma = (expect * (1.0 - 1.0 / accepted.len() as f64)).sqrt();
        for p in &accepted {
            let c = counts[p] as f64;
            assert!((c - expect).abs() < 4.5 * sigma, "{p:?}: {c} vs {expect}");
        }
    }

    #[test]
    fn subsample_examples() {
        let g = Graph::complete(8);
        let mut rng = trial_rng(6, 0);
        let m = sample_uniform_pairing(8, &mut rng).unwrap();
        let all = subsample_matching(&m, &g, 4, &mut rng).unwrap();
        assert_eq!(all.edges.len(), 4);
        assert!(subsample_matching(&m, &g, 0, &mut rng).unwrap().edges.is_empty());
        assert_eq!(
            subsample_matching(&m, &Graph::empty(8), 1, &mut rng),
            Err(Error::NotEnoughEdges { available: 0, needed: 1 })
        );
    }

    #[test]
    fn subsample_inclusion_rate() {
        // Each of the 5 edges of a fixed pairing is kept with probability 2/5.
        let g = Graph::complete(10);
        let m = Pairing { pairs: vec![(0, 1), (2, 3), (4, 5), (6, 7), (8, 9)] };
        let trials = 40_000;
        let mut hits = [0u32; 5];
        let mut rng = trial_rng(7, 0);
        for _ in 0..trials {
            for e in subsample_matching(&m, &g, 2, &mut rng).unwrap().edges {
                hits[e.0 / 2] += 1;
            }
        }
        let sigma = (0.4 * 0.6 / trials as f64).sqrt();
        for h in hits {
            assert!((h as f64 / trials as f64 - 0.4).abs() < 4.0 * sigma);
        }
    }

    #[test]
    fn chebyshev_rhs_examples() {
        assert!((chebyshev_rhs(10, 5.0) - 0.4).abs() < 1e-15);
        assert!((chebyshev_rhs(4, 2.0) - 1.0).abs() < 1e-15);
        let l = 400f64.powf(2.0 / 3.0);
        assert!((chebyshev_rhs(400, l) - 0.135_720_880_829_745_3).abs() < 1e-12);
    }

    #[test]
    fn named_graph_sanity() {
        let g = named("petersen_complement").unwrap();
        let d = sample_conditioned(&g, Lambda::integer(1), 100, &mut trial_rng(8, 0)).unwrap();
        assert!(in_event_a(&d.pairing, &g, Lambda::integer(1)));
    }
}
