use std::fs;
use std::path::Path;

use minorforge::alpha2::{capacity, is_alpha_le_2, is_five_wheel, min_capacity, seagull_conditions};
use minorforge::bounds::gamma_optimize;
use minorforge::connectivity::vertex_connectivity;
use minorforge::error::Error as CoreError;
use minorforge::exec::Execution;
use minorforge::format::{read_graph, write_branch_map, write_graph};
use minorforge::generators::{
    gen_c5_blowup_complement, gen_tfp_complement, gen_two_clique_complement, named,
};
use minorforge::graph::Graph;
use minorforge::matching::complement_matching_size;
use minorforge::montecarlo::{
    chebyshev_grid, exact_distribution, expectation_bound, pairing_joint, pairing_marginals,
    McRecord, SUITES,
};
use minorforge::pipeline::{
    certify, certify_batch, preconditions, PipelineConfig, PipelineResult, Prepared,
};
use minorforge::rng::trial_rng;
use serde_json::Value;

use crate::error::{CliError, Result};
use crate::record::{emit, float, opt_float, sha256_hex, Format, Record};
use crate::{BuildArgs, Cli, Command, Family, GammaArgs, GenArgs, McArgs};

/// Graphs up to this size also get the all-cliques capacity minimum and the
/// largest k satisfying every seagull condition.
const FULL_ANALYSIS_LIMIT: usize = 64;

pub fn run(cli: &Cli) -> Result<Vec<Record>> {
    match &cli.command {
        Command::Gen(args) => cmd_gen(cli, args),
        Command::Analyze(args) => cmd_analyze(cli, &args.input),
        Command::BuildMinor(args) => cmd_build_minor(cli, args),
        Command::Mc(args) => cmd_mc(cli, args),
        Command::Gamma(args) => Ok(vec![cmd_gamma(args)]),
    }
}

fn exec(cli: &Cli) -> Execution {
    Execution::from_jobs(cli.jobs)
}

fn config(cli: &Cli) -> PipelineConfig {
    PipelineConfig {
        lambda_policy: cli.lambda,
        seed: cli.seed,
        mode: cli.mode,
        clique_budget: (cli.clique_budget > 0).then_some(cli.clique_budget),
        ..PipelineConfig::default()
    }
}

struct Input {
    graph: Graph,
    sha256: String,
}

fn load(path: &Path) -> Result<Input> {
    let bytes = fs::read(path).map_err(|e| CliError::io(path, e))?;
    let text = String::from_utf8(bytes.clone())
        .map_err(|_| CliError::Usage(format!("{}: not UTF-8 text", path.display())))?;
    Ok(Input {
        graph: read_graph(&text)?,
        sha256: sha256_hex(&bytes),
    })
}

fn write(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|e| CliError::io(path, e))
}

fn one_based(set: impl IntoIterator<Item = usize>) -> Vec<usize> {
    set.into_iter().map(|v| v + 1).collect()
}

fn need(value: Option<usize>, flag: &str, family: &str) -> Result<usize> {
    value.ok_or_else(|| CliError::Usage(format!("--family {family} requires --{flag}")))
}

fn cmd_gen(cli: &Cli, args: &GenArgs) -> Result<Vec<Record>> {
    let (label, g) = match (&args.named, args.family) {
        (Some(name), _) => (name.clone(), named(name)?),
        (None, Some(Family::Tfp)) => {
            let n = need(args.n, "n", "tfp")?;
            ("tfp".into(), gen_tfp_complement(n, &mut trial_rng(cli.seed, 0)))
        }
        (None, Some(Family::C5blowup)) => {
            let t = need(args.t, "t", "c5blowup")?;
            ("c5blowup".into(), gen_c5_blowup_complement(t))
        }
        (None, Some(Family::TwoClique)) => {
            let l = need(args.left, "left", "two-clique")?;
            let r = need(args.right, "right", "two-clique")?;
            ("two-clique".into(), gen_two_clique_complement(l, r))
        }
        (None, None) => return Err(CliError::Usage("give --family or --named".into())),
    };
    let text = write_graph(&g);
    let Some(out) = &args.out else {
        print!("{text}");
        return Ok(Vec::new());
    };
    write(out, &text)?;
    Ok(vec![Record::new("gen")
        .with("family", label)
        .with("seed", cli.seed)
        .with("vertex_count", g.vertex_count())
        .with("edge_count", g.edge_count())
        .with("output_sha256", sha256_hex(text.as_bytes()))])
}

/// Largest k whose five seagull conditions all hold.
fn max_seagull_k(g: &Graph) -> Result<usize> {
    for k in (1..=g.vertex_count() / 3).rev() {
        if seagull_conditions(g, k)?.all_hold() {
            return Ok(k);
        }
    }
    Ok(0)
}

fn cmd_analyze(cli: &Cli, path: &Path) -> Result<Vec<Record>> {
    let input = load(path)?;
    let g = &input.graph;
    if !is_alpha_le_2(g) {
        return Err(CoreError::AlphaTooLarge.into());
    }
    let p = preconditions(g, &config(cli))?;
    let pre = &p.preconditions;
    let z = &p.clique.clique;
    let small = g.vertex_count() <= FULL_ANALYSIS_LIMIT;
    let (min_cap, min_cap_clique) = match small.then(|| min_capacity(g)).flatten() {
        Some((c, set)) => (Value::from(c.as_f64()), Value::from(one_based(set.iter()))),
        None => (Value::Null, Value::Null),
    };
    let verdict = if !pre.even_order {
        "ineligible: |V| odd or below 6"
    } else if !pre.omega_lt_quarter {
        "clique-minor route (ω ≥ |V|/4)"
    } else if !pre.n_minus_2k_nonneg {
        "ineligible: n − 2k < 0"
    } else {
        "pipeline"
    };
    let mut r = Record::new("analysis")
        .with("input_sha256", input.sha256.clone())
        .with("vertex_count", g.vertex_count())
        .with("edge_count", g.edge_count())
        .with("alpha_le_2", true)
        .with("omega", pre.k)
        .with("clique_exact", pre.clique_exact)
        .with("clique_nodes", p.clique.nodes)
        .with("z", one_based(z.iter()))
        .with("a", p.stats.a)
        .with("b", p.stats.b)
        .with("capacity_z", capacity(g, z)?.as_f64())
        .with("min_capacity", min_cap)
        .with("min_capacity_clique", min_cap_clique)
        .with("vertex_connectivity", vertex_connectivity(g))
        .with("complement_matching", complement_matching_size(g))
        .with("five_wheel", is_five_wheel(g))
        .with(
            "max_seagull_k",
            if small { Value::from(max_seagull_k(g)?) } else { Value::Null },
        )
        .with("verdict", verdict)
        .with("lambda_policy", cli.lambda.to_string())
        .with("lambda", pre.lambda.to_string())
        .with("strict_ok", pre.strict_ok())
        .with("strict_failure", pre.strict_failure().map_or(Value::Null, Value::from))
        .with("bound_j", opt_float(p.bound.rhs_j));
    if !small {
        r.set("note", format!("min_capacity and max_seagull_k are computed only for |V| <= {FULL_ANALYSIS_LIMIT}"));
    }
    Ok(vec![r])
}

fn trial_record(r: &PipelineResult) -> Record {
    Record::new("trial")
        .with("trial", r.trial)
        .with("tries", r.tries)
        .with("pairing_edges", r.pairing_edges)
        .with("m_star", r.m_star.edges.len())
        .with("seagulls", r.seagulls.len())
        .with("s_size", r.s_size)
        .with("deleted_vertex", r.deleted_vertex.map_or(Value::Null, |v| Value::from(v + 1)))
        .with("h_vertices", r.h.vertex_count())
        .with("h_edges", r.h.edge_count())
        .with("missing_edges", r.missing_edges)
        .with("realized_bad_triples", r.realized_bad_triples)
        .with("realized_bad_quadruples", r.realized_bad_quadruples)
        .with("count_bounds_hold", r.count_bounds_hold)
}

fn run_record(cli: &Cli, command: &str, sha: &str, p: &Prepared, trials: u64) -> Record {
    let pre = &p.preconditions;
    Record::new("run")
        .with("command", command)
        .with("input_sha256", sha)
        .with("seed", cli.seed)
        .with("trials", trials)
        .with("mode", p.config.mode.to_string())
        .with("lambda_policy", cli.lambda.to_string())
        .with("lambda", pre.lambda.to_string())
        .with("vertex_count", pre.vertex_count)
        .with("n", pre.n)
        .with("k", pre.k)
        .with("x", pre.x)
        .with("clique_exact", pre.clique_exact)
        .with("a", p.stats.a)
        .with("b", p.stats.b)
        .with("p", opt_float(p.bound.p))
        .with("q", float(p.bound.q))
        .with("bound_j", opt_float(p.bound.rhs_j))
        .with("strict_ok", pre.strict_ok())
        .with("strict_failure", pre.strict_failure().map_or(Value::Null, Value::from))
}

/// Runs `trials` trials in parallel; the first failure, in trial order, wins.
fn run_trials(cli: &Cli, p: &Prepared, trials: u64) -> Result<Vec<PipelineResult>> {
    p.run_batch(trials, exec(cli))
        .into_iter()
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(CliError::from)
}

fn cmd_build_minor(cli: &Cli, args: &BuildArgs) -> Result<Vec<Record>> {
    let input = load(&args.input)?;
    let cfg = PipelineConfig {
        max_rejection_tries: args.max_tries,
        ..config(cli)
    };
    let p = preconditions(&input.graph, &cfg)?;
    let trials = cli.trials.unwrap_or(1).max(1);
    let results = run_trials(cli, &p, trials)?;
    let mut records = vec![run_record(cli, "build-minor", &input.sha256, &p, trials)];
    records.extend(results.iter().map(trial_record));
    let cert = if results.len() == 1 {
        certify(&p, &results[0])
    } else {
        certify_batch(&p, &results)
    };
    let mut c = Record::new("certificate");
    match cert {
        Ok(cert) => {
            c = c
                .with("verdict", cert.verdict.to_string())
                .with("trials", cert.trials)
                .with("mean", float(cert.mean))
                .with("stderr", float(cert.stderr))
                .with("bound", float(cert.bound))
                .with("margin", float(cert.margin));
        }
        Err(CoreError::NotCertifiable(why)) => {
            c = c.with("verdict", "NotCertifiable").with("reason", why);
        }
        Err(e) => return Err(e.into()),
    }
    records.push(c);
    if let Some(dir) = &args.out {
        fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
        let first = &results[0];
        write(&dir.join("h.graph"), &write_graph(&first.h))?;
        write(&dir.join("branch.map"), &write_branch_map(&first.decomposition))?;
        let mut buf = Vec::new();
        emit(&records, Format::Records, &mut buf).map_err(|e| CliError::io(dir, e))?;
        let path = dir.join("run.jsonl");
        fs::write(&path, buf).map_err(|e| CliError::io(path, e))?;
    }
    Ok(records)
}

fn mc_record(cli: &Cli, trials: u64, r: &McRecord) -> Record {
    Record::new("mc")
        .with("suite", r.suite)
        .with("quantity", r.quantity.clone())
        .with("seed", cli.seed)
        .with("trials", trials)
        .with("estimate", float(r.estimate))
        .with("stderr", float(r.stderr))
        .with("bound", float(r.bound))
        .with("pass", r.pass)
}

fn cmd_mc(cli: &Cli, args: &McArgs) -> Result<Vec<Record>> {
    let exec = exec(cli);
    let seed = cli.seed;
    let (trials, found) = match args.suite.as_str() {
        "pairing-marginals" | "pairing-joint" => {
            let trials = cli.trials.unwrap_or(100_000);
            let x = args.x.unwrap_or(10);
            let r = if args.suite == "pairing-marginals" {
                pairing_marginals(x, trials, seed, exec)?
            } else {
                pairing_joint(x, trials, seed, exec)?
            };
            (trials, vec![r])
        }
        "exact-distribution" => {
            let trials = cli.trials.unwrap_or(1_000_000);
            (trials, vec![exact_distribution(args.x.unwrap_or(6), trials, seed, exec)?])
        }
        "chebyshev" => {
            let trials = cli.trials.unwrap_or(20_000);
            (trials, chebyshev_grid(trials, seed, exec)?)
        }
        "expectation-bound" => {
            let path = args
                .input
                .as_ref()
                .ok_or_else(|| CliError::Usage("expectation-bound requires --input".into()))?;
            let input = load(path)?;
            let trials = cli.trials.unwrap_or(200);
            let p = preconditions(&input.graph, &config(cli))?;
            let results = run_trials(cli, &p, trials)?;
            let r = expectation_bound(&p, &results)?;
            let head = run_record(cli, "mc", &input.sha256, &p, trials);
            return Ok(vec![head, mc_record(cli, trials, &r)]);
        }
        other => return Err(CliError::UnknownSuite(other.to_string(), SUITES.join(", "))),
    };
    Ok(found.iter().map(|r| mc_record(cli, trials, r)).collect())
}

fn cmd_gamma(args: &GammaArgs) -> Record {
    let r = gamma_optimize(args.tolerance);
    Record::new("gamma")
        .with("tolerance", float(args.tolerance))
        .with("z_star", float(r.z_star))
        .with("max_f", float(r.max_f))
        .with("gamma", float(r.gamma))
}
