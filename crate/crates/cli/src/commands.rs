use highconn::coloring::{check_respects, optimal_coloring};
use highconn::formats::to_graph6;
use highconn::generators::random_graph;
use highconn::lab::{
    catalog as generate_catalog, empirical_g, g_upper_bound, h_construction, qualifying_subgraph,
    star_witness, theorem_oracle, GVerdict, LabError,
};
use highconn::proof::{ExtractError, ProofError};
use highconn::witness::cost_limit;
use highconn::{
    chromatic_number, extend_316k, extend_4k, extract_subgraph, find_respecting_coloring,
    minimal_inextensible_subgraph, vertex_connectivity_at_least, verify_witness, Budget,
    BudgetExhausted, ColorSet, Graph, ShrinkError, SolveError, Template, Variant, Witness,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::input::{read_catalog, read_graph, read_partition, read_template};
use crate::{
    Assertion, CatalogArgs, CliError, DemoHArgs, DemoStarArgs, ExtendArgs, ExtractArgs,
    MinimalizeArgs, Outcome, PipelineArg, SearchGArgs, VerifyArgs,
};

impl From<BudgetExhausted> for CliError {
    fn from(e: BudgetExhausted) -> Self {
        CliError::Indeterminate(e.to_string())
    }
}

impl From<SolveError> for CliError {
    fn from(e: SolveError) -> Self {
        match e {
            SolveError::Budget(b) => b.into(),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<LabError> for CliError {
    fn from(e: LabError) -> Self {
        match e {
            LabError::Budget(b) => b.into(),
            other => CliError::Input(other.to_string()),
        }
    }
}

fn positive_k(k: usize) -> Result<(), CliError> {
    if k == 0 {
        return Err(CliError::Input("--k must be positive".into()));
    }
    Ok(())
}

fn template_or_empty(path: &Option<std::path::PathBuf>, g: &Graph, colors: ColorSet) -> Result<Template, CliError> {
    match path {
        Some(p) => read_template(p, g, colors),
        None => Ok(Template::empty(g.n())),
    }
}

fn sample_graphs(nmax: usize, samples: usize, seed: u64) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples)
        .map(|_| {
            let n = rng.gen_range(1..=nmax.max(1));
            random_graph(n, rng.gen_range(0.2..0.95), rng.gen()).expect("probability in range")
        })
        .collect()
}

pub fn verify_theorem(a: &VerifyArgs, seed: u64, budget: &Budget) -> Result<Outcome, CliError> {
    positive_k(a.k)?;
    let graphs = match (&a.catalog, a.exhaustive) {
        (Some(path), _) => read_catalog(path)?,
        (None, true) => generate_catalog(a.nmax),
        (None, false) => sample_graphs(a.nmax, a.samples, seed),
    };
    if let Some(g) = graphs.iter().find(|g| g.n() > a.bound) {
        return Err(CliError::Input(format!("graph on {} vertices exceeds --bound {}", g.n(), a.bound)));
    }
    let variant: Variant = a.variant.into();
    let threshold = variant.min_chromatic(a.k);
    let rows: Vec<(String, Result<(usize, bool), LabError>)> = graphs
        .par_iter()
        .map(|g| {
            let verdict = chromatic_number(g, budget)
                .map_err(LabError::from)
                .and_then(|chi| Ok((chi, theorem_oracle(g, a.k, variant, a.bound, budget)?)));
            (to_graph6(g), verdict)
        })
        .collect();
    let mut table = Vec::new();
    let (mut failures, mut unknown, mut nonvacuous) = (Vec::new(), Vec::new(), 0);
    for (g6, verdict) in rows {
        match verdict {
            Ok((chi, holds)) => {
                nonvacuous += usize::from(chi >= threshold);
                if !holds {
                    failures.push(g6.clone());
                }
                table.push(json!({"graph6": g6, "chromatic_number": chi, "holds": holds}));
            }
            Err(e) if e.is_indeterminate() => {
                unknown.push(g6.clone());
                table.push(json!({"graph6": g6, "chromatic_number": null, "holds": null}));
            }
            Err(e) => return Err(e.into()),
        }
    }
    let detail = format!(
        "{} graphs, {nonvacuous} with chromatic number at least {threshold}, {} failures",
        table.len(),
        failures.len()
    );
    Ok(Outcome {
        results: json!({
            "graphs": table.len(),
            "nonvacuous": nonvacuous,
            "threshold": threshold,
            "failures": failures,
            "indeterminate": unknown,
            "per_graph": table,
        }),
        assertions: vec![Assertion::new("extraction-guarantee", failures.is_empty(), detail)],
        indeterminate: (!unknown.is_empty()).then(|| format!("{} graphs undecided", unknown.len())),
        table,
    })
}

pub fn extract(a: &ExtractArgs, budget: &Budget) -> Result<Outcome, CliError> {
    positive_k(a.k)?;
    let g = read_graph(&a.graph)?;
    let variant: Variant = a.variant.into();
    let r = match extract_subgraph(&g, a.k, variant, a.mode.into(), budget) {
        Ok(r) => r,
        Err(e) if e.is_indeterminate() => return Err(CliError::Indeterminate(e.to_string())),
        Err(ExtractError::Shrink(e)) => {
            return Ok(Outcome {
                results: json!({"error": e.to_string()}),
                assertions: vec![Assertion::new("extraction:shrink", false, e.to_string())],
                ..Outcome::default()
            })
        }
        Err(e) => return Err(CliError::Input(e.to_string())),
    };
    // independent re-check of the emitted subgraph
    let h = g.induced(r.vertices.as_slice()).expect("subgraph in range").graph;
    let chi_h = chromatic_number(&h, budget)?;
    let need = variant.chromatic_guarantee(a.k, r.chromatic_number);
    let assertions = vec![
        Assertion::new(
            "extraction:connectivity",
            vertex_connectivity_at_least(&h, a.k + 1),
            format!("subgraph is {}-connected", a.k + 1),
        ),
        Assertion::new(
            "extraction:order",
            h.n() + a.k > r.chromatic_number,
            format!("{} vertices, need more than {}", h.n(), r.chromatic_number.saturating_sub(a.k)),
        ),
        Assertion::new("extraction:chromatic", chi_h >= need, format!("chromatic number {chi_h}, need {need}")),
    ];
    let table = r.vertices.iter().map(|v| json!({"vertex": v})).collect();
    Ok(Outcome {
        results: json!({
            "report": r,
            "subgraph_graph6": to_graph6(&h),
        }),
        table,
        assertions,
        indeterminate: None,
    })
}

fn default_partition(g: &Graph, budget: &Budget) -> Result<Vec<Vec<usize>>, CliError> {
    Ok(optimal_coloring(g, budget)?.1.classes())
}

pub fn extend(a: &ExtendArgs, budget: &Budget) -> Result<Outcome, CliError> {
    positive_k(a.k)?;
    let g = read_graph(&a.graph)?;
    let colors = ColorSet::new(a.colors);
    let t = template_or_empty(&a.template, &g, colors)?;
    let partition = match &a.partition {
        Some(p) => read_partition(p)?,
        None => default_partition(&g, budget)?,
    };
    let run = match a.variant {
        PipelineArg::FourK => extend_4k(&g, &t, &partition, a.k, colors),
        PipelineArg::ThreeSixteenth => extend_316k(&g, &t, &partition, a.k, colors),
    };
    let out = match run {
        Ok(out) => out,
        Err(e) if e.is_input_error() => return Err(CliError::Input(e.to_string())),
        Err(ProofError::Invariant { label, detail, trace }) => {
            return Ok(Outcome {
                results: json!({"trace": trace.to_json()}),
                assertions: vec![Assertion::new(format!("extension:{label}"), false, detail)],
                ..Outcome::default()
            })
        }
        Err(e) => return Err(CliError::Input(e.to_string())),
    };
    let mut assertions: Vec<Assertion> = out
        .trace
        .stages
        .iter()
        .flat_map(|s| s.checks.iter().map(move |c| Assertion::new(format!("{}:{}", s.stage, c.label), c.passed, c.detail.clone())))
        .collect();
    let verified = check_respects(&g, &t, &out.coloring, colors);
    assertions.push(Assertion::new(
        "extension:respects-template",
        verified.is_ok(),
        verified.err().map(|v| v.to_string()).unwrap_or_else(|| "re-verified".into()),
    ));
    assertions.push(Assertion::new(
        "extension:no-matching-fallback",
        out.trace.discrepancies.is_empty(),
        format!("{} greedy failures", out.trace.discrepancies.len()),
    ));
    let table = out
        .coloring
        .as_slice()
        .iter()
        .enumerate()
        .map(|(v, c)| json!({"vertex": v, "color": c}))
        .collect();
    let mut results = json!({
        "coloring": out.coloring,
        "colors_used": out.coloring.distinct_colors(),
        "branch": out.branch,
        "partition": partition,
        "checks": out.trace.check_count(),
    });
    if a.trace {
        results["trace"] = out.trace.to_json();
    }
    Ok(Outcome { results, table, assertions, indeterminate: None })
}

pub fn minimalize(a: &MinimalizeArgs, budget: &Budget) -> Result<Outcome, CliError> {
    positive_k(a.k)?;
    let g = read_graph(&a.graph)?;
    let colors = ColorSet::new(a.colors);
    let t = template_or_empty(&a.template, &g, colors)?;
    let Some(w) = Witness::certify(&g, t, a.k, colors, budget)? else {
        return Err(CliError::Input("template is not an inextensibility witness for this graph".into()));
    };
    let out = match minimal_inextensible_subgraph(&g, &w, a.mode.into(), budget) {
        Ok(out) => out,
        Err(ShrinkError::Indeterminate { partial, cause }) => {
            return Err(CliError::Indeterminate(format!("{cause} (partial result {:?})", partial.as_slice())))
        }
        Err(e) => {
            return Ok(Outcome {
                results: json!({"error": e.to_string()}),
                assertions: vec![Assertion::new("minimalization:shrink", false, e.to_string())],
                ..Outcome::default()
            })
        }
    };
    let h = g.induced(out.vertices.as_slice()).expect("subgraph in range").graph;
    let still = verify_witness(&h, &out.witness.template, a.k, out.witness.colors, budget)?;
    let mut assertions = vec![Assertion::new(
        "minimalization:witness",
        still,
        format!("cost {} below {}", out.witness.cost, cost_limit(a.k)),
    )];
    if let Some(c) = &out.checks {
        assertions.push(Assertion::new("structure:order-bound", c.order_bound, format!("{} vertices", h.n())));
        assertions.push(Assertion::new("structure:connectivity", c.connectivity, format!("{}-connected", a.k + 1)));
        assertions.push(Assertion::new("structure:degree-bounds", c.degree_bounds, "under the good template"));
    }
    let table = out.vertices.iter().map(|v| json!({"vertex": v})).collect();
    Ok(Outcome {
        results: json!({
            "vertices": out.vertices,
            "subgraph_graph6": to_graph6(&h),
            "template": out.witness.template.to_json(),
            "cost": out.witness.cost,
            "mode": out.mode,
            "certified_minimal": out.certified_minimal,
            "checks": out.checks,
        }),
        table,
        assertions,
        indeterminate: None,
    })
}

fn unsat(g: &Graph, t: &Template, colors: ColorSet, budget: &Budget) -> Result<bool, CliError> {
    Ok(find_respecting_coloring(g, t, colors, budget)?.is_none())
}

pub fn demo_star(a: &DemoStarArgs, budget: &Budget) -> Result<Outcome, CliError> {
    let s = star_witness(a.k)?;
    let cost = s.template.k_cost(a.k);
    let is_unsat = unsat(&s.graph, &s.template, s.colorset, budget)?;
    let two_connected = qualifying_subgraph(&s.graph, 2, 0, 0, budget)?;
    let results = json!({
        "graph6": to_graph6(&s.graph),
        "template": s.template.to_json(),
        "colors": s.colorset.size(),
        "k": a.k,
        "cost": cost,
        "cost_limit": cost_limit(a.k),
        "verdict": if is_unsat { "UNSAT" } else { "SAT" },
    });
    let assertions = vec![
        Assertion::new("star:witness", is_unsat && cost < cost_limit(a.k), format!("cost {cost}, limit {}", cost_limit(a.k))),
        Assertion::new("star:palette", s.colorset.size() as usize == 3 * a.k - 2, format!("{} colors", s.colorset.size())),
        Assertion::new("star:no-two-connected-subgraph", two_connected.is_none(), "every edge is a bridge"),
    ];
    Ok(Outcome { table: vec![results.clone()], results, assertions, indeterminate: None })
}

pub fn demo_h(a: &DemoHArgs, budget: &Budget) -> Result<Outcome, CliError> {
    let h = h_construction(a.k, a.colors)?;
    let chi = chromatic_number(&h.graph, budget)?;
    let want = a.colors + 3 - 2 * a.k;
    let witness = verify_witness(&h.graph, &h.template, a.k, h.colorset, budget)?;
    let results = json!({
        "graph6": to_graph6(&h.graph),
        "template": h.template.to_json(),
        "colors": a.colors,
        "k": a.k,
        "m": a.colors + 4 - 2 * a.k,
        "chromatic_number": chi,
        "cost": h.template.k_cost(a.k),
        "verdict": if witness { "UNSAT" } else { "SAT" },
    });
    let assertions = vec![
        Assertion::new("clique-join:chromatic-number", chi == want, format!("{chi}, expected {want}")),
        Assertion::new("clique-join:witness", witness, format!("cost {}", h.template.k_cost(a.k))),
    ];
    Ok(Outcome { table: vec![results.clone()], results, assertions, indeterminate: None })
}

pub fn search_g(a: &SearchGArgs, budget: &Budget) -> Result<Outcome, CliError> {
    positive_k(a.k)?;
    if a.catalog.is_none() && a.nmax > 9 {
        return Err(CliError::Input("--nmax above 9 needs a graph6 --catalog file".into()));
    }
    let graphs = match &a.catalog {
        Some(p) => read_catalog(p)?,
        None => generate_catalog(a.nmax),
    };
    let rows = empirical_g(a.k, a.m, a.nmax, &graphs, budget)?;
    let violations: Vec<usize> = rows.iter().filter(|r| r.violation).map(|r| r.n).collect();
    let partial = rows.iter().map(|r| r.indeterminate).max().unwrap_or(0);
    let largest = rows.iter().filter(|r| r.verdict == GVerdict::LowerBoundWitness).map(|r| r.n).max();
    let table: Vec<Value> = rows.iter().map(|r| serde_json::to_value(r).unwrap()).collect();
    Ok(Outcome {
        results: json!({
            "records": table,
            "largest_witness": largest,
            "lower_bound": largest.map_or(1, |n| n + 1),
            "upper_bound": g_upper_bound(a.k, a.m),
        }),
        assertions: vec![Assertion::new(
            "g-bound:no-violation",
            violations.is_empty(),
            format!("witnesses at or above {}: {violations:?}", g_upper_bound(a.k, a.m)),
        )],
        indeterminate: (partial > 0).then(|| format!("{partial} graphs undecided")),
        table,
    })
}

pub fn catalog(a: &CatalogArgs) -> Result<Outcome, CliError> {
    if a.nmax > 9 {
        return Err(CliError::Input("--nmax above 9 is out of range for generation; ingest a graph6 file instead".into()));
    }
    let graphs: Vec<Graph> = generate_catalog(a.nmax).into_iter().filter(|g| !a.connected || g.is_connected()).collect();
    let mut counts = vec![0usize; a.nmax];
    for g in &graphs {
        counts[g.n() - 1] += 1;
    }
    let table: Vec<Value> = graphs.iter().map(|g| json!({"n": g.n(), "graph6": to_graph6(g)})).collect();
    Ok(Outcome {
        results: json!({"counts": counts, "graphs": table}),
        assertions: vec![Assertion::new("catalog:distinct", true, format!("{} graphs", graphs.len()))],
        table,
        indeterminate: None,
    })
}
