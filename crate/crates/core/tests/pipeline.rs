mod common;

use minorforge::error::Error;
use minorforge::exec::Execution;
use minorforge::generators::{gen_tfp_complement, named};
use minorforge::graph::Graph;
use minorforge::pipeline::{
    certify, certify_batch, count_bad_quadruples, enumerate_bad_triples, preconditions,
    run_pipeline, LambdaPolicy, Mode, PipelineConfig, Verdict,
};
use minorforge::rng::trial_rng;

fn instance() -> Graph {
    gen_tfp_complement(100, &mut trial_rng(0, 0))
}

fn strict() -> PipelineConfig {
    PipelineConfig {
        lambda_policy: LambdaPolicy::Clamped,
        mode: Mode::Strict,
        ..PipelineConfig::default()
    }
}

#[test]
fn end_to_end_structure() {
    let g = instance();
    let (p, r) = run_pipeline(&g, &strict()).unwrap();
    assert!(p.preconditions.strict_ok());
    let parts: Vec<Vec<usize>> = r.decomposition.parts().iter().map(|s| s.to_vec()).collect();
    assert_eq!(r.h.vertex_count(), 50);
    assert!(common::is_contraction(&g, &r.h, &parts));
    let (t, q, other) = common::classify_missing(&r.h, &parts);
    assert_eq!(other, 0);
    assert_eq!((t, q), (r.realized_bad_triples, r.realized_bad_quadruples));
    let k = p.preconditions.k;
    assert_eq!(r.s_size, 3 * k);
    assert_eq!(r.m_star.edges.len(), 50 - 2 * k);
    let (a, b) = common::clique_statistics(&g, &p.clique.clique.to_vec());
    assert!(2 * t <= a * (k - 1));
    assert!(4 * q <= b * (k - 1) * (k - 1));
    assert!(r.count_bounds_hold);
}

#[test]
fn trials_are_reproducible_and_thread_independent() {
    let g = instance();
    let p = preconditions(&g, &strict()).unwrap();
    let summary = |exec| {
        p.run_batch(6, exec)
            .into_iter()
            .map(|r| {
                let r = r.unwrap();
                (r.missing_edges, r.m_star.edges.clone(), r.tries)
            })
            .collect::<Vec<_>>()
    };
    let seq = summary(Execution::Sequential);
    assert_eq!(seq, summary(Execution::Auto));
    assert_eq!(seq, summary(Execution::Threads(3)));
    assert_ne!(seq[0].1, seq[1].1);
}

#[test]
fn realized_counts_never_exceed_the_host_counts() {
    let g = instance();
    let p = preconditions(&g, &strict()).unwrap();
    let triples = enumerate_bad_triples(&p.g_prime, &minorforge::bitset::VertexSet::new(p.g_prime.vertex_count()));
    assert!(triples.is_empty());
    let all_quads = count_bad_quadruples(&g);
    for r in p.run_batch(5, Execution::Sequential) {
        let r = r.unwrap();
        assert!(r.realized_bad_quadruples <= all_quads);
    }
}

#[test]
fn certification_rules() {
    let g = instance();
    let p = preconditions(&g, &strict()).unwrap();
    let results: Vec<_> = p
        .run_batch(40, Execution::Auto)
        .into_iter()
        .map(Result::unwrap)
        .collect();
    let single = certify(&p, &results[0]).unwrap();
    assert_eq!(single.verdict, Verdict::Sample);
    let batch = certify_batch(&p, &results).unwrap();
    assert_eq!(batch.verdict, Verdict::Pass);
    assert!(batch.mean <= batch.bound);
    assert!(matches!(certify_batch(&p, &results[..1]), Err(Error::NotCertifiable(_))));

    let advisory = PipelineConfig {
        mode: Mode::Advisory,
        ..strict()
    };
    let pa = preconditions(&g, &advisory).unwrap();
    let ra: Vec<_> = pa.run_batch(3, Execution::Auto).into_iter().map(Result::unwrap).collect();
    assert!(matches!(certify_batch(&pa, &ra), Err(Error::NotCertifiable(_))));
}

#[test]
fn ineligible_inputs_are_reported() {
    let cfg = strict();
    let odd = named("c5").unwrap();
    assert!(matches!(run_pipeline(&odd, &cfg), Err(Error::Ineligible(_))));
    let big_clique = Graph::complete(12);
    assert!(matches!(run_pipeline(&big_clique, &cfg), Err(Error::Ineligible(_))));
    let sparse = Graph::empty(12);
    assert!(matches!(run_pipeline(&sparse, &cfg), Err(Error::AlphaTooLarge)));
}

#[test]
fn strict_mode_rejects_small_lambda() {
    let g = instance();
    let cfg = PipelineConfig {
        lambda_policy: "5".parse().unwrap(),
        ..strict()
    };
    let p = preconditions(&g, &cfg).unwrap();
    assert_eq!(p.preconditions.strict_failure(), Some("λ² ≤ 2n"));
    let results: Vec<_> = p.run_batch(2, Execution::Sequential).into_iter().flatten().collect();
    assert!(matches!(certify_batch(&p, &results), Err(Error::NotCertifiable(_))));
}
