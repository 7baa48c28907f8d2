use std::fs;
use std::path::{Path, PathBuf};

use burnkit::bounds::{
    linear_threshold, tether_bound, trianglefree_preset, trianglefree_wellburnable, BoundError, Tethering,
};
use burnkit::burn::{is_well_burnable, verify_schedule, BallCoverSolver, BurnError, BurningSchedule};
use burnkit::campaign::{load_state, run_campaign, CampaignError, CampaignSpec, CampaignState, RunOptions};
use burnkit::degree::{
    degree_two_threshold, excess_degree_condition, min_degree_criterion, stripped_criterion, DegreeProfile,
};
use burnkit::graph::{parse_graph, Graph, GraphError, GraphFormat, ParsedGraph};
use burnkit::intmath::ceil_sqrt;
use burnkit::registry::{bound_methods, solvers};
use burnkit::report::{
    digest_bytes, BoundPayload, CampaignPayload, DegreeTwoThreshold, ExactPayload, MinDegreeOutcome, Payload,
    PredicateOutcome, Report, TaggedBound, TreePayload, VerifyPayload,
};
use num_rational::Ratio;

use crate::config::read_structured;
use crate::{
    BoundArgs, CampaignArgs, Context, ExactArgs, Failure, GraphArgs, Outcome, TreeArgs, VerifyArgs,
    EXIT_BUDGET, EXIT_COUNTEREXAMPLE, EXIT_INVALID, EXIT_PARSE, EXIT_RESUME, EXIT_TETHER,
};

struct LoadedGraph {
    parsed: ParsedGraph,
    digest: String,
}

fn load_graph(ctx: &Context, args: &GraphArgs) -> Result<Option<LoadedGraph>, Failure> {
    let Some(path) = &args.input else { return Ok(None) };
    let bytes = fs::read(path).map_err(|e| Failure::io(path, e))?;
    let text = String::from_utf8(bytes.clone()).map_err(|_| Failure::parse(format!("{}: not UTF-8", path.display())))?;
    let format = match (args.format, &ctx.config.format) {
        (Some(f), _) => f,
        (None, Some(name)) => name.parse().map_err(Failure::parse)?,
        (None, None) if path.extension().is_some_and(|e| e == "g6" || e == "graph6") => GraphFormat::Graph6,
        (None, None) => GraphFormat::EdgeList,
    };
    let parsed = parse_graph(&text, format).map_err(|e| Failure::parse(format!("{}: {e}", path.display())))?;
    Ok(Some(LoadedGraph { parsed, digest: digest_bytes(&bytes) }))
}

fn require_graph(ctx: &Context, args: &GraphArgs) -> Result<LoadedGraph, Failure> {
    load_graph(ctx, args)?.ok_or_else(|| Failure::parse("a graph file is required"))
}

fn connected(graph: &Graph) -> Result<(), Failure> {
    graph.require_connected().map_err(|e| Failure::parse(e.to_string()))
}

fn burn_failure(err: BurnError) -> Failure {
    match err {
        BurnError::BudgetExhausted { .. } => Failure::new(EXIT_BUDGET, err.to_string()),
        other => Failure::parse(other.to_string()),
    }
}

fn bound_failure(err: BoundError) -> Failure {
    Failure::parse(err.to_string())
}

fn report(ctx: &Context, digest: Option<String>, payload: Payload) -> Report {
    Report::new(ctx.argv.clone(), digest, payload)
}

fn labels_of(parsed: &ParsedGraph, schedule: &BurningSchedule) -> Vec<u64> {
    schedule.sources.iter().map(|&v| parsed.labels[v]).collect()
}

pub fn exact(ctx: &Context, args: ExactArgs) -> Result<Outcome, Failure> {
    let loaded = require_graph(ctx, &args.graph)?;
    let graph = &loaded.parsed.graph;
    connected(graph)?;
    let budget = args.budget.or(ctx.config.budget);
    let name = args.solver.or_else(|| ctx.config.solver.clone()).unwrap_or_else(|| "branch-and-bound".into());
    let registry = solvers();
    let solver = registry.get(&name).map_err(|e| Failure::parse(e.to_string()))?;

    let (burning_number, witness, lower_bound_proof) = if name == "branch-and-bound" {
        let result = BallCoverSolver::new(graph).and_then(|mut s| s.solve(budget)).map_err(burn_failure)?;
        (result.burning_number, result.witness, Some(result.lower_bound_proof))
    } else {
        // Oracles report a number only; the witness comes from a decision search at that number.
        let b = solver.solve(graph, budget).map_err(burn_failure)?.burning_number;
        let witness = BallCoverSolver::new(graph)
            .map_err(burn_failure)?
            .decide(b)
            .ok_or_else(|| Failure::new(EXIT_INVALID, format!("{name} reported {b} rounds but no schedule exists")))?;
        (b, witness, None)
    };
    if !verify_schedule(graph, &witness).map_err(burn_failure)? {
        return Err(Failure::new(EXIT_INVALID, "witness schedule failed verification"));
    }
    let n = graph.vertex_count();
    let sqrt_rounds = ceil_sqrt(n as u64) as usize;
    let payload = Payload::Exact(ExactPayload {
        vertex_count: n,
        edge_count: graph.edge_count(),
        solver: name,
        burning_number,
        witness_labels: labels_of(&loaded.parsed, &witness),
        witness,
        lower_bound_proof,
        sqrt_rounds,
        well_burnable: burning_number <= sqrt_rounds,
    });
    Ok(Outcome { report: report(ctx, Some(loaded.digest), payload), code: 0 })
}

fn load_tethering(path: &Path) -> Result<Tethering, Failure> {
    read_structured(path)
}

pub fn bound(ctx: &Context, args: BoundArgs) -> Result<Outcome, Failure> {
    let cfg = &ctx.config;
    let tether_file = args.tether.or_else(|| cfg.tether.clone());
    let d = args.d.or(cfg.d);
    let tethering = match (&tether_file, d) {
        (Some(path), _) => Some(load_tethering(path)?),
        (None, Some(d)) if d >= 1 => Some(trianglefree_preset(d)),
        (None, Some(_)) => return Err(Failure::parse("--d must be at least 1")),
        (None, None) => None,
    };
    let method = args.method.or_else(|| cfg.method.clone());

    if let Some(loaded) = load_graph(ctx, &args.graph)? {
        if args.n.is_some() {
            return Err(Failure::parse("--n applies only when no graph is given"));
        }
        let graph = &loaded.parsed.graph;
        connected(graph)?;
        let method = method.unwrap_or_else(|| "pack".into());
        let registry = bound_methods();
        let strategy = registry.get(&method).map_err(|e| Failure::parse(e.to_string()))?;
        let outcome = strategy.bound(graph, tethering.as_ref()).map_err(bound_failure)?;
        let code = if outcome.sound_for_graph { 0 } else { EXIT_TETHER };
        let payload = Payload::Bound(BoundPayload {
            n: graph.vertex_count() as u64,
            bound: TaggedBound { rounds: outcome.rounds as u64, method },
            outcome: Some(outcome),
            tether: None,
            trianglefree: None,
            linear_threshold: None,
        });
        if code == EXIT_TETHER {
            eprintln!("burnkit: the graph violates the tethering; the bound does not apply to it");
        }
        return Ok(Outcome { report: report(ctx, Some(loaded.digest), payload), code });
    }

    // Pure-n mode: a bound for every graph on n vertices meeting the tethering.
    let n = args.n.or(cfg.n).ok_or_else(|| Failure::parse("give a graph file or --n"))?;
    if method.as_deref().is_some_and(|m| m != "tether") {
        return Err(Failure::parse("without a graph only the tether method applies"));
    }
    let tethering = tethering.ok_or_else(|| Failure::parse("the tether method needs --tether FILE or --d"))?;
    let tether = tether_bound(n, &tethering).map_err(bound_failure)?;
    let trianglefree = match (d, &tether_file) {
        (Some(d), None) => Some(trianglefree_wellburnable(n, d)),
        _ => None,
    };
    let linear = match args.linear_h.or_else(|| cfg.linear_h.clone()) {
        Some(text) => {
            let h: Ratio<u64> = text.trim().parse().map_err(|e| Failure::parse(format!("--linear-h {text}: {e}")))?;
            Some(linear_threshold(h))
        }
        None => None,
    };
    let payload = Payload::Bound(BoundPayload {
        n,
        bound: TaggedBound { rounds: tether.rounds, method: "tether".into() },
        outcome: None,
        tether: Some(tether),
        trianglefree,
        linear_threshold: linear,
    });
    Ok(Outcome { report: report(ctx, None, payload), code: 0 })
}

fn parse_histogram(text: &str) -> Result<Vec<(u64, u64)>, Failure> {
    text.split(',')
        .filter(|part| !part.trim().is_empty())
        .map(|part| {
            let (k, c) = part.split_once(':').ok_or_else(|| Failure::parse(format!("histogram entry `{part}` is not K:COUNT")))?;
            let num = |s: &str| s.trim().parse::<u64>().map_err(|e| Failure::parse(format!("histogram entry `{part}`: {e}")));
            Ok((num(k)?, num(c)?))
        })
        .collect()
}

pub fn tree(ctx: &Context, args: TreeArgs) -> Result<Outcome, Failure> {
    let loaded = load_graph(ctx, &args.graph)?;
    let histogram = args.histogram.or_else(|| ctx.config.histogram.clone());
    let (profile, tree, digest) = match (loaded, histogram) {
        (Some(_), Some(_)) => return Err(Failure::parse("give either a tree file or --histogram, not both")),
        (Some(loaded), None) => {
            let graph = loaded.parsed.graph;
            if !graph.is_tree() {
                return Err(Failure::parse(GraphError::NotATree.to_string()));
            }
            let profile = DegreeProfile::from_graph(&graph).map_err(|e| Failure::parse(e.to_string()))?;
            (profile, Some(graph), Some(loaded.digest))
        }
        (None, Some(text)) => {
            let profile = DegreeProfile::from_histogram(parse_histogram(&text)?).map_err(|e| Failure::parse(e.to_string()))?;
            (profile, None, None)
        }
        (None, None) => return Err(Failure::parse("give a tree file or --histogram")),
    };

    let well = "well-burnable";
    let stripped = stripped_criterion(&profile).ok().map(|holds| PredicateOutcome::new(holds, well));
    let least_nonleaf = profile.histogram().iter().map(|&(k, _)| k).filter(|&k| k >= 2).min();
    let min_degree = args.d.or(ctx.config.d).map(u64::from).or(least_nonleaf).and_then(|d| {
        let holds = min_degree_criterion(profile.n(), d).ok()?;
        // The criterion speaks only about trees in the family.
        let member = least_nonleaf.is_some_and(|least| least >= d);
        Some(MinDegreeOutcome { d, outcome: PredicateOutcome::new(holds && member, well) })
    });
    let degree_two = profile.degree_two_concentration().map(|p| {
        let threshold = degree_two_threshold(p).ok();
        let holds = threshold.is_some_and(|t| profile.n_prime() >= t);
        DegreeTwoThreshold { p: p.to_string(), threshold, outcome: PredicateOutcome::new(holds, well) }
    });
    let excess = excess_degree_condition(&profile).ok().map(|holds| PredicateOutcome::new(holds, well));
    let exact_well_burnable = match &tree {
        Some(graph) => Some(is_well_burnable(graph).map_err(burn_failure)?.well_burnable),
        None => None,
    };
    let payload = Payload::Tree(TreePayload {
        profile,
        stripped_criterion: stripped,
        min_degree_criterion: min_degree,
        degree_two_threshold: degree_two,
        excess_degree: excess,
        exact_well_burnable,
    });
    Ok(Outcome { report: report(ctx, digest, payload), code: 0 })
}

fn campaign_failure(err: CampaignError) -> Failure {
    let code = match err {
        CampaignError::DigestMismatch { .. } => EXIT_RESUME,
        CampaignError::InvalidSpec(_) | CampaignError::UnknownCheck(_) | CampaignError::Json { .. } => EXIT_PARSE,
        _ => EXIT_INVALID,
    };
    Failure::new(code, err.to_string())
}

fn campaign_spec(ctx: &Context, args: &CampaignArgs) -> Result<CampaignSpec, Failure> {
    let cfg = &ctx.config;
    let mut spec = match &args.spec {
        Some(path) => read_structured::<CampaignSpec>(path)?,
        None => CampaignSpec {
            n_min: 1,
            n_max: 0,
            min_nonleaf_degree: 2,
            checks: vec!["exact-well-burnable".into()],
            checkpoint_interval: burnkit::campaign::DEFAULT_CHECKPOINT_INTERVAL,
        },
    };
    if let Some(v) = args.n_min.or(cfg.n_min) {
        spec.n_min = v;
    }
    if let Some(v) = args.n_max.or(cfg.n_max) {
        spec.n_max = v;
    }
    if let Some(v) = args.d.or(cfg.d) {
        spec.min_nonleaf_degree = v as usize;
    }
    if let Some(v) = args.checks.clone().or_else(|| cfg.checks.clone()) {
        spec.checks = v;
    }
    if let Some(v) = args.checkpoint_interval.or(cfg.checkpoint_interval) {
        spec.checkpoint_interval = v;
    }
    if args.spec.is_none() && spec.n_max == 0 {
        return Err(Failure::parse("give a campaign spec file or --n-max"));
    }
    spec.validate().map_err(campaign_failure)?;
    Ok(spec)
}

fn progress_line(state: &CampaignState) {
    let Some((n, tally)) = state.tallies.iter().next_back() else { return };
    eprintln!(
        "progress n={n} trees_seen={} in_family={} counterexamples={} elapsed_ms={}{}",
        tally.trees_seen,
        tally.in_family,
        state.counterexamples.len(),
        state.elapsed_ms,
        if state.complete { " complete" } else { "" },
    );
}

pub fn campaign(ctx: &Context, args: CampaignArgs) -> Result<Outcome, Failure> {
    let spec = campaign_spec(ctx, &args)?;
    let resume = match args.resume.clone().or_else(|| ctx.config.resume.clone()) {
        Some(path) => Some(load_state(&path).map_err(campaign_failure)?),
        None => None,
    };
    let checkpoint: Option<PathBuf> = match &ctx.out {
        Some(dir) => {
            fs::create_dir_all(dir).map_err(|e| Failure::io(dir, e))?;
            Some(dir.join("checkpoint.json"))
        }
        None => None,
    };
    let mut on_checkpoint = progress_line;
    let options = RunOptions {
        jobs: args.jobs.or(ctx.config.jobs).unwrap_or(1),
        checkpoint,
        stop_after_checkpoints: args.stop_after,
        on_checkpoint: Some(&mut on_checkpoint),
    };
    let run = run_campaign(&spec, resume, options).map_err(campaign_failure)?;
    let code = if run.state.counterexamples.is_empty() { 0 } else { EXIT_COUNTEREXAMPLE };
    let spec = spec.normalized();
    let payload = Payload::Campaign(CampaignPayload {
        spec_digest: spec.digest(),
        spec,
        status: run.status,
        state: run.state,
    });
    Ok(Outcome { report: report(ctx, None, payload), code })
}

pub fn verify(ctx: &Context, args: VerifyArgs) -> Result<Outcome, Failure> {
    let loaded = require_graph(ctx, &args.graph)?;
    let parsed = &loaded.parsed;
    let text = args.sources.or_else(|| ctx.config.sources.clone()).ok_or_else(|| Failure::parse("--sources is required"))?;
    let labels: Vec<u64> = text
        .split(',')
        .map(|s| s.trim().parse::<u64>().map_err(|e| Failure::parse(format!("source `{s}`: {e}"))))
        .collect::<Result<_, _>>()?;
    let dense: Vec<usize> = labels
        .iter()
        .map(|label| {
            parsed
                .labels
                .iter()
                .position(|l| l == label)
                .ok_or_else(|| Failure::parse(format!("source {label} is not a vertex label")))
        })
        .collect::<Result<_, _>>()?;
    let schedule = BurningSchedule::new(dense).map_err(burn_failure)?;
    let valid = verify_schedule(&parsed.graph, &schedule).map_err(burn_failure)?;
    let payload = Payload::Verify(VerifyPayload {
        vertex_count: parsed.graph.vertex_count(),
        rounds: schedule.rounds(),
        sources: labels,
        valid,
    });
    let code = if valid { 0 } else { EXIT_INVALID };
    Ok(Outcome { report: report(ctx, Some(loaded.digest), payload), code })
}
