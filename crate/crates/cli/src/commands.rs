use crate::report::{read_file, CliError, CliResult, RunReport, EXIT_FAILED};
use crate::{Cli, Command, ComposeKind, CspKind, GenKind, PaddingArg, ReduceKind, ScaleArg, VcKind};
use num_bigint::{BigInt, BigUint};
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use wkern::codec::{self, parse_signed, Instance};
use wkern::compositions::{
    characteristic_polynomial, erbds_to_subset_sum, hyperclique_lift, hyperclique_to_csp, language_degree, pad_to_power,
    rbds_cross_compose_with, CompositionError, Padding,
};
use wkern::interval_reduction::{turing_kernel_max_hyperclique, IntervalError, TuringKernel};
use wkern::oracles::vertex_cover::min_weight_vertex_covers;
use wkern::oracles::{solve_csp, solve_eewhc_exact, solve_eewhc_max, solve_rbds, solve_subset_sum, CspMode, OracleError};
use wkern::prime_hash::{
    kernelize_csp_and, kernelize_eewhc_exact, kernelize_subset_sum, Epsilon, KernelConfig, ModulusCert, PrimeHashError,
};
use wkern::suite::{run_criterion, Scale, SuiteConfig, CRITERIA};
use wkern::vc_compress::{
    compress_vc_weights, max_b_matching, star_witness, threshold_gadget, vertex_cover_equivalent,
    verify_min_cover_preservation, CompressionTrace,
};
use wkern::{Caps, Exec, NodeWeightedBipartiteGraph, Validate};

struct Ctx {
    seed: u64,
    epsilon: Epsilon,
    caps: Caps,
    exec: Exec,
    output: Option<PathBuf>,
    report: RunReport,
}

fn caps_from(flag: Option<usize>) -> CliResult<Caps> {
    if let Some(c) = flag {
        return Ok(Caps::uniform(c));
    }
    match std::env::var("WKERN_CAP") {
        Ok(s) => s.trim().parse().map(Caps::uniform).map_err(|_| CliError::usage(format!("WKERN_CAP must be an integer, got \"{s}\""))),
        Err(_) => Ok(Caps::default()),
    }
}

pub fn run(cli: Cli, argv: Vec<String>) -> CliResult<u8> {
    let g = cli.global;
    if g.jobs == 0 {
        return Err(CliError::usage("--jobs must be at least 1"));
    }
    let epsilon: Epsilon = g.epsilon.parse().map_err(|e: PrimeHashError| CliError::usage(e.to_string()))?;
    let mut ctx = Ctx {
        seed: g.seed,
        epsilon,
        caps: caps_from(g.cap)?,
        exec: if g.jobs > 1 { Exec::Parallel } else { Exec::Sequential },
        output: g.output,
        report: RunReport::new(argv),
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(g.jobs)
        .build()
        .map_err(|e| CliError::failed(format!("thread pool: {e}")))?;
    pool.install(|| {
        let code = dispatch(&mut ctx, cli.command)?;
        print!("{}", ctx.report.finish());
        Ok(code)
    })
}

fn dispatch(ctx: &mut Ctx, command: Command) -> CliResult<u8> {
    match command {
        Command::Solve { file, max } => solve(ctx, &file, max),
        Command::Kernelize { file, emit_cert } => kernelize(ctx, &file, emit_cert.as_deref()),
        Command::TuringMax { file, decide } => turing_max(ctx, &file, decide),
        Command::Compose { what: ComposeKind::Rbds { files, padding } } => compose(ctx, &files, padding),
        Command::Lift { d, files } => lift(ctx, &files, d),
        Command::Reduce { what } => reduce(ctx, what),
        Command::Csp { what: CspKind::Degree { file } } => degree(ctx, &file),
        Command::Vc { what } => vc(ctx, what),
        Command::Gen { what } => generate(ctx, what),
        Command::VerifySuite { scale, only } => verify_suite(ctx, scale, &only),
    }
}

fn load(ctx: &mut Ctx, path: &Path) -> CliResult<Instance> {
    let bytes = read_file(&path.to_path_buf())?;
    ctx.report.input(path, &bytes);
    let x = codec::parse(&bytes).map_err(|e| CliError::parse(path, &e))?;
    x.validate().map_err(|v| CliError::invalid(format!("{}: {v}", path.display())))?;
    Ok(x)
}

fn wrong_kind(path: &Path, x: &Instance, want: &str) -> CliError {
    CliError::usage(format!("{}: expected a {want} instance, found {}", path.display(), x.kind()))
}

fn oracle_err(e: OracleError) -> CliError {
    match e {
        OracleError::Invalid(v) => CliError::invalid(v.to_string()),
        other => CliError::failed(other.to_string()),
    }
}

fn kernel_err(e: PrimeHashError) -> CliError {
    match e {
        PrimeHashError::BadEpsilon(_) => CliError::usage(e.to_string()),
        PrimeHashError::TooLarge { .. } => CliError::failed(e.to_string()),
        _ => CliError::invalid(e.to_string()),
    }
}

fn composition_err(e: CompositionError) -> CliError {
    CliError::invalid(e.to_string())
}

fn dec(x: &BigUint) -> Value {
    Value::from(x.to_string())
}

/// Writes the instance to `-o`, or embeds it in the report.
fn emit(ctx: &mut Ctx, x: Instance) -> CliResult<()> {
    let text = codec::serialize(&x);
    match ctx.output.clone() {
        Some(path) => ctx.report.write_output(&path, &text),
        None => {
            ctx.report.set("instance", serde_json::from_str::<Value>(&text).expect("codec emits JSON"));
            Ok(())
        }
    }
}

fn solve(ctx: &mut Ctx, path: &Path, max: bool) -> CliResult<u8> {
    let x = load(ctx, path)?;
    let caps = ctx.caps;
    let r = &mut ctx.report;
    let (result, extra) = match &x {
        Instance::Hypergraph(h) if max => {
            let m = solve_eewhc_max(h, &caps).map_err(oracle_err)?;
            (m.result, Some(dec(&m.max)))
        }
        Instance::Hypergraph(h) => (solve_eewhc_exact(h, &caps).map_err(oracle_err)?, None),
        Instance::SubsetSum(s) => (solve_subset_sum(s, &caps).map_err(oracle_err)?, None),
        Instance::Rbds(s) => (solve_rbds(s, &caps).map_err(oracle_err)?, None),
        Instance::Csp(phi) => {
            let mode = if max { CspMode::Max } else { CspMode::Exact };
            let m = solve_csp(phi, mode, &caps).map_err(oracle_err)?;
            (m.result, Some(Value::from(m.max.to_string())))
        }
        Instance::Bipartite(g) => {
            let covers = min_weight_vertex_covers(g, &caps).map_err(oracle_err)?;
            let z = max_b_matching(g).map_err(|v| CliError::invalid(v.to_string()))?;
            r.set("min_weight", dec(&covers.min_weight));
            r.set("covers", json!(covers.covers));
            r.set("b_matching", json!({ "z": z.values.iter().map(dec).collect::<Vec<_>>(), "value": dec(&z.value) }));
            return Ok(0);
        }
    };
    r.set("kind", x.kind());
    r.set("answer", serde_json::to_value(result.answer).expect("answer"));
    r.set("witness", json!(result.witness));
    r.set("states_explored", result.states_explored);
    if let Some(m) = extra {
        r.set("max", m);
    }
    Ok(0)
}

fn cert_json(cert: &ModulusCert) -> Value {
    serde_json::to_value(cert).expect("certificate serializes")
}

fn kernelize(ctx: &mut Ctx, path: &Path, cert_path: Option<&Path>) -> CliResult<u8> {
    let x = load(ctx, path)?;
    let cfg = KernelConfig::default();
    let (out, cert, layout): (Instance, ModulusCert, Value) = match &x {
        Instance::Hypergraph(h) => {
            let k = kernelize_eewhc_exact(h, ctx.epsilon, ctx.seed, &cfg).map_err(kernel_err)?;
            (k.instance.into(), k.cert, serde_json::to_value(&k.layout).expect("layout"))
        }
        Instance::SubsetSum(s) => {
            let k = kernelize_subset_sum(s, ctx.epsilon, ctx.seed, &cfg).map_err(kernel_err)?;
            let layout = json!({ "kept": k.kept, "slack": [k.slack.start, k.slack.end] });
            (k.instance.into(), k.cert, layout)
        }
        Instance::Csp(phi) => {
            let k = kernelize_csp_and(phi, ctx.epsilon, ctx.seed, &cfg).map_err(kernel_err)?;
            (k.formula.into(), k.cert, serde_json::to_value(&k.layout).expect("layout"))
        }
        other => return Err(wrong_kind(path, other, "eewhc, subset_sum or csp")),
    };
    ctx.report.seed(ctx.seed);
    ctx.report.set("epsilon", ctx.epsilon.to_string());
    ctx.report.set("certificate", cert_json(&cert));
    ctx.report.set("layout", layout);
    if let Some(p) = cert_path {
        let text = serde_json::to_string_pretty(&cert_json(&cert)).expect("cert") + "\n";
        ctx.report.write_certificate(p, &text)?;
    }
    emit(ctx, out)?;
    Ok(0)
}

fn interval_err(e: IntervalError) -> CliError {
    match e {
        IntervalError::Kernel(k) => kernel_err(k),
        other => CliError::invalid(other.to_string()),
    }
}

fn turing_max(ctx: &mut Ctx, path: &Path, decide: bool) -> CliResult<u8> {
    let x = load(ctx, path)?;
    let Instance::Hypergraph(h) = &x else { return Err(wrong_kind(path, &x, "eewhc")) };
    let tk = turing_kernel_max_hyperclique(h, ctx.epsilon, ctx.seed, &KernelConfig::default()).map_err(interval_err)?;
    ctx.report.seed(ctx.seed);
    ctx.report.set("epsilon", ctx.epsilon.to_string());
    let manifest = match &tk {
        TuringKernel::Decided { answer, reason } => json!({ "decided": answer, "reason": reason }),
        TuringKernel::Family { family, epsilon_per_query, members } => {
            let mut entries = Vec::new();
            for (i, m) in members.iter().enumerate() {
                let file = format!("query_{i:03}.json");
                if let Some(dir) = ctx.output.clone() {
                    ctx.report.write_output(&dir.join(&file), &codec::serialize(&m.kernel.instance.clone().into()))?;
                }
                entries.push(json!({
                    "file": file,
                    "lo": dec(&m.query.lo),
                    "hi": dec(&m.query.hi),
                    "target": dec(&m.query.target),
                    "slack": m.query.slack.iter().map(dec).collect::<Vec<_>>(),
                    "certificate": cert_json(&m.kernel.cert),
                }));
            }
            json!({
                "lo": dec(&family.lo),
                "hi": dec(&family.hi),
                "k": family.k(),
                "size_bound": family.size_bound(),
                "epsilon_per_query": epsilon_per_query.to_string(),
                "queries": entries,
            })
        }
    };
    if let Some(dir) = ctx.output.clone() {
        let text = serde_json::to_string_pretty(&manifest).expect("manifest") + "\n";
        ctx.report.write_certificate(&dir.join("manifest.json"), &text)?;
    } else {
        ctx.report.set("manifest", manifest);
    }
    if decide {
        let caps = ctx.caps;
        let answer = tk
            .decide(ctx.exec, |g| solve_eewhc_exact(g, &caps).map(|r| r.is_yes()))
            .map_err(oracle_err)?;
        ctx.report.set("answer", serde_json::to_value(answer).expect("answer"));
    }
    Ok(0)
}

fn compose(ctx: &mut Ctx, files: &[PathBuf], padding: PaddingArg) -> CliResult<u8> {
    let mut inputs = Vec::new();
    for f in files {
        match load(ctx, f)? {
            Instance::Rbds(r) => inputs.push(r),
            other => return Err(wrong_kind(f, &other, "rbds")),
        }
    }
    let padded = pad_to_power(&inputs, 3);
    let padding = match padding {
        PaddingArg::Standard => Padding::Standard,
        PaddingArg::Widened => Padding::Widened,
    };
    let c = rbds_cross_compose_with(&padded, padding).map_err(composition_err)?;
    ctx.report.set(
        "layout",
        json!({
            "inputs": inputs.len(),
            "padded_inputs": padded.len(),
            "z": c.layout.z,
            "vertices": c.layout.vertex_count(),
            "digits": c.layout.digits(),
            "base": c.layout.base(),
        }),
    );
    emit(ctx, c.instance.into())?;
    Ok(0)
}

fn lift(ctx: &mut Ctx, files: &[PathBuf], d: usize) -> CliResult<u8> {
    let mut inputs = Vec::new();
    for f in files {
        match load(ctx, f)? {
            Instance::Hypergraph(h) => inputs.push(h),
            other => return Err(wrong_kind(f, &other, "eewhc")),
        }
    }
    let out = hyperclique_lift(&inputs, d).map_err(composition_err)?;
    emit(ctx, out.into())?;
    Ok(0)
}

fn reduce(ctx: &mut Ctx, what: ReduceKind) -> CliResult<u8> {
    let out: Instance = match what {
        ReduceKind::Erbds2ss { file } => match load(ctx, &file)? {
            Instance::Rbds(r) => erbds_to_subset_sum(&r).map_err(composition_err)?.into(),
            other => return Err(wrong_kind(&file, &other, "erbds")),
        },
        ReduceKind::Hc2csp { file } => match load(ctx, &file)? {
            Instance::Hypergraph(h) => hyperclique_to_csp(&h).map_err(|v| CliError::invalid(v.to_string()))?.into(),
            other => return Err(wrong_kind(&file, &other, "eewhc")),
        },
    };
    emit(ctx, out)?;
    Ok(0)
}

fn degree(ctx: &mut Ctx, path: &Path) -> CliResult<u8> {
    let x = load(ctx, path)?;
    let Instance::Csp(phi) = &x else { return Err(wrong_kind(path, &x, "csp")) };
    let mut polys = Vec::new();
    for f in &phi.language {
        let p = characteristic_polynomial(f).map_err(|v| CliError::invalid(v.to_string()))?;
        let terms: Vec<Value> = p
            .coeffs
            .iter()
            .map(|(m, c)| json!({ "vars": (0..p.arity).filter(|j| m >> j & 1 == 1).collect::<Vec<_>>(), "coeff": c.to_string() }))
            .collect();
        polys.push(json!({ "arity": f.arity, "degree": p.degree(), "terms": terms }));
    }
    let d = language_degree(&phi.language).map_err(|v| CliError::invalid(v.to_string()))?;
    ctx.report.set("degree", d);
    ctx.report.set("polynomials", polys);
    Ok(0)
}

fn load_graph(ctx: &mut Ctx, path: &Path) -> CliResult<NodeWeightedBipartiteGraph> {
    match load(ctx, path)? {
        Instance::Bipartite(g) => Ok(g),
        other => Err(wrong_kind(path, &other, "bwvc")),
    }
}

/// A second weighting: a `bwvc` file on the same graph, or a JSON array of
/// decimal strings indexed by vertex.
fn load_weights(ctx: &mut Ctx, path: &Path, g: &NodeWeightedBipartiteGraph) -> CliResult<Vec<BigUint>> {
    let bytes = read_file(&path.to_path_buf())?;
    let weights = if let Ok(list) = serde_json::from_slice::<Vec<String>>(&bytes) {
        ctx.report.input(path, &bytes);
        list.iter()
            .map(|s| codec::parse_unsigned(s).map_err(|e| CliError::invalid(format!("{}: {e}", path.display()))))
            .collect::<CliResult<Vec<_>>>()?
    } else {
        let other = load_graph(ctx, path)?;
        if (&other.left, &other.right, other.sorted_edges()) != (&g.left, &g.right, g.sorted_edges()) {
            return Err(CliError::invalid(format!("{}: graph differs from the first file", path.display())));
        }
        other.weights
    };
    g.with_weights(weights.clone()).validate().map_err(|v| CliError::invalid(format!("{}: {v}", path.display())))?;
    Ok(weights)
}

fn trace_json(t: &CompressionTrace) -> Value {
    json!({
        "initial_value": dec(&t.initial_value),
        "matching": t.matching.values.iter().map(dec).collect::<Vec<_>>(),
        "rule1": t.rule1.iter().map(|s| json!({ "edge": [s.edge.0, s.edge.1], "delta": dec(&s.delta) })).collect::<Vec<_>>(),
        "rule2": t.rule2.iter().map(|s| json!({ "vertex": s.vertex, "old": dec(&s.old) })).collect::<Vec<_>>(),
        "final": t.final_weights.iter().map(dec).collect::<Vec<_>>(),
    })
}

fn vc(ctx: &mut Ctx, what: VcKind) -> CliResult<u8> {
    match what {
        VcKind::Compress { file, trace } => {
            let g = load_graph(ctx, &file)?;
            let (w, t) = compress_vc_weights(&g).map_err(|v| CliError::invalid(v.to_string()))?;
            ctx.report.set("weights", w.iter().map(dec).collect::<Vec<_>>());
            ctx.report.set("rule1_applications", t.rule1.len());
            ctx.report.set("rule2_applications", t.rule2.len());
            match trace {
                Some(p) => ctx.report.write_certificate(&p, &(serde_json::to_string_pretty(&trace_json(&t)).expect("trace") + "\n"))?,
                None => ctx.report.set("trace", trace_json(&t)),
            }
            emit(ctx, g.with_weights(w).into())?;
            Ok(0)
        }
        VcKind::VerifyMin { graph, weights } => {
            let g = load_graph(ctx, &graph)?;
            let w2 = load_weights(ctx, &weights, &g)?;
            let r = verify_min_cover_preservation(&g, &w2, &ctx.caps).map_err(oracle_err)?;
            ctx.report.set("answer", if r.is_none() { "yes" } else { "no" });
            ctx.report.set("counterexample", json!(r));
            Ok(0)
        }
        VcKind::Equiv { graph, weights } => {
            let g = load_graph(ctx, &graph)?;
            let w2 = load_weights(ctx, &weights, &g)?;
            let r = vertex_cover_equivalent(&g, &w2, &ctx.caps).map_err(oracle_err)?;
            ctx.report.set("answer", if r.is_none() { "yes" } else { "no" });
            ctx.report.set("counterexample", json!(r));
            Ok(0)
        }
        VcKind::Gen(g) => generate(ctx, g),
    }
}

fn signed(s: &str) -> CliResult<BigInt> {
    parse_signed(&s.trim().replace('−', "-")).map_err(CliError::usage)
}

fn generate(ctx: &mut Ctx, what: GenKind) -> CliResult<u8> {
    let g = match what {
        GenKind::Star { n } if n < 2 => return Err(CliError::usage("a star needs n ≥ 2")),
        GenKind::Star { n } => star_witness(n),
        GenKind::Threshold { w, t } => {
            let w = w.iter().map(|s| signed(s)).collect::<CliResult<Vec<_>>>()?;
            threshold_gadget(&w, &signed(&t)?)
        }
    };
    emit(ctx, g.into())?;
    Ok(0)
}

fn verify_suite(ctx: &mut Ctx, scale: ScaleArg, only: &[u8]) -> CliResult<u8> {
    let cfg = SuiteConfig {
        scale: match scale {
            ScaleArg::Small => Scale::Small,
            ScaleArg::Full => Scale::Full,
        },
        exec: ctx.exec,
        caps: ctx.caps,
        epsilon: ctx.epsilon,
    };
    if let Some(bad) = only.iter().find(|id| !CRITERIA.iter().any(|(c, _)| c == *id)) {
        return Err(CliError::usage(format!("no criterion {bad}")));
    }
    let reports: Vec<_> = CRITERIA
        .iter()
        .filter(|(id, _)| only.is_empty() || only.contains(id))
        .map(|&(id, _)| run_criterion(id, &cfg))
        .collect();
    let failed = reports.iter().filter(|r| !r.passed).count();
    ctx.report.set("scale", serde_json::to_value(cfg.scale).expect("scale"));
    ctx.report.set("criteria", serde_json::to_value(&reports).expect("reports"));
    ctx.report.set("failed", failed);
    Ok(if failed == 0 { 0 } else { EXIT_FAILED })
}

