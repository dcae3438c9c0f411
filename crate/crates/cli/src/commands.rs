use std::fmt::Write as _;
use std::fs;

use anyhow::{bail, Context};
use graphjac::instance::{gen_instance as generate, Family};
use graphjac::oracle::DEFAULT_BOUND;
use graphjac::perf::cycle_scaling;
use graphjac::selfcheck::{judge_scaling, run_all, Plan};
use graphjac::{
    analyze, brute_force_dlp, dhar_reduce, dlp_cyclic, dlp_general, enumerate_group, gen_inverse_minor,
    monodromy_pairing, moore_penrose, verify_solution, BigInt, Divisor, DlpInstance, Error, GeneralizedInverse,
    MultiGraph,
};
use serde_json::{json, Number, Value};

/// What a command prints: JSON under `--json`, text otherwise.
pub struct Output {
    pub json: Value,
    pub text: String,
    pub success: bool,
}

impl Output {
    fn ok(json: Value, text: String) -> Self {
        Output {
            json,
            text,
            success: true,
        }
    }
}

fn num(x: &BigInt) -> Value {
    Value::Number(x.to_string().parse::<Number>().expect("integers are valid JSON numbers"))
}

fn nums(xs: &[BigInt]) -> Value {
    Value::Array(xs.iter().map(num).collect())
}

fn list(xs: &[BigInt]) -> String {
    let parts: Vec<String> = xs.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}

fn load_graph(path: &str) -> anyhow::Result<MultiGraph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading graph file {path}"))?;
    MultiGraph::parse(&text).with_context(|| format!("in graph file {path}"))
}

fn divisor(arg: &str, what: &str) -> anyhow::Result<Divisor> {
    arg.parse::<Divisor>().with_context(|| format!("in {what}"))
}

pub fn info(path: &str) -> anyhow::Result<Output> {
    let g = load_graph(path)?;
    let s = analyze(&g);
    let json = json!({
        "n": g.vertex_count(),
        "m": g.edge_count(),
        "kappa": num(s.group_order()),
        "invariant_factors": nums(s.invariant_factors()),
        "cyclic": s.is_cyclic(),
    });
    let text = format!(
        "n: {}\nm: {}\nkappa: {}\ninvariant factors: {}\ncyclic: {}\n",
        g.vertex_count(),
        g.edge_count(),
        s.group_order(),
        list(s.invariant_factors()),
        s.is_cyclic()
    );
    Ok(Output::ok(json, text))
}

pub fn structure(path: &str) -> anyhow::Result<Output> {
    let g = load_graph(path)?;
    let s = analyze(&g);
    let gens: Vec<String> = s.generators().iter().map(ToString::to_string).collect();
    let json = json!({
        "order": num(s.group_order()),
        "invariant_factors": nums(s.invariant_factors()),
        "cyclic": s.is_cyclic(),
        "generators": gens,
    });
    let mut text = format!(
        "order: {}\ninvariant factors: {}\ncyclic: {}\n",
        s.group_order(),
        list(s.invariant_factors()),
        s.is_cyclic()
    );
    for (d, gen) in s.invariant_factors().iter().zip(&gens) {
        writeln!(text, "generator of order {d}: {gen}").unwrap();
    }
    Ok(Output::ok(json, text))
}

fn inverse_by_name(g: &MultiGraph, name: &str) -> anyhow::Result<GeneralizedInverse> {
    match name {
        "mp" | "moore-penrose" => Ok(moore_penrose(g)),
        _ => {
            let Some(i) = name.strip_prefix("minor:") else {
                return Err(Error::InvalidArgument(format!("unknown inverse {name:?}; use minor:i or mp")).into());
            };
            let i: usize = i
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad vertex in {name:?}")))?;
            Ok(gen_inverse_minor(g, i)?)
        }
    }
}

pub fn pairing(path: &str, d1: &str, d2: &str, inverse: &str, all: bool) -> anyhow::Result<Output> {
    let g = load_graph(path)?;
    let (d1, d2) = (divisor(d1, "--d1")?, divisor(d2, "--d2")?);
    if !all {
        let l = inverse_by_name(&g, inverse)?;
        let v = monodromy_pairing(&d1, &d2, &l)?;
        let json = json!({ "value": v.to_string(), "inverse": l.kind().to_string() });
        return Ok(Output::ok(json, format!("{v}\n")));
    }
    let mut inverses: Vec<GeneralizedInverse> = (0..g.vertex_count())
        .map(|i| gen_inverse_minor(&g, i))
        .collect::<graphjac::Result<_>>()?;
    inverses.push(moore_penrose(&g));
    let mut values = Vec::new();
    let mut text = String::new();
    for l in &inverses {
        let v = monodromy_pairing(&d1, &d2, l)?;
        writeln!(text, "{} {v}", l.kind()).unwrap();
        values.push((l.kind().to_string(), v));
    }
    let agree = values.windows(2).all(|w| w[0].1 == w[1].1);
    let json = json!({
        "value": values[0].1.to_string(),
        "agree": agree,
        "values": values
            .iter()
            .map(|(k, v)| json!({ "inverse": k, "value": v.to_string() }))
            .collect::<Vec<_>>(),
    });
    Ok(Output {
        json,
        text,
        success: agree,
    })
}

pub fn dlp(path: &str, base: &str, target: &str, general: bool, oracle: bool) -> anyhow::Result<Output> {
    let g = load_graph(path)?;
    let s = analyze(&g);
    let inst = DlpInstance::new(&s, divisor(base, "--base")?, divisor(target, "--target")?)?;
    // non-cyclic Jacobians go to the general solver
    let use_general = general || !s.is_cyclic();
    let sol = if use_general { dlp_general(&inst) } else { dlp_cyclic(&inst) }?;
    let verified = verify_solution(&inst, &sol);
    let mut json = json!({
        "x": num(&sol.x),
        "mod": num(&sol.modulus),
        "method": if use_general { "general" } else { "cyclic" },
        "verified": verified,
    });
    let mut text = format!("x = {} mod {}\nverified: {verified}\n", sol.x, sol.modulus);
    let mut success = verified;
    if oracle {
        let report = match enumerate_group(&g, DEFAULT_BOUND) {
            Ok(table) => {
                let brute = brute_force_dlp(&table, &inst.base, &inst.target)?;
                let agrees = brute == sol.x;
                success &= agrees;
                writeln!(text, "oracle: x = {brute} ({})", if agrees { "agrees" } else { "DISAGREES" }).unwrap();
                json!({ "x": num(&brute), "agrees": agrees })
            }
            Err(Error::TooLarge { what, limit }) => {
                writeln!(text, "oracle: skipped ({what} above {limit})").unwrap();
                json!({ "skipped": format!("{what} above {limit}") })
            }
            Err(e) => return Err(e.into()),
        };
        json["oracle"] = report;
    }
    Ok(Output { json, text, success })
}

pub fn reduce(path: &str, d: &str, q: usize) -> anyhow::Result<Output> {
    let g = load_graph(path)?;
    let r = dhar_reduce(&g, &divisor(d, "--divisor")?, q)?;
    Ok(Output::ok(json!({ "reduced": r.to_string(), "q": q }), format!("{r}\n")))
}

pub fn gen_instance(family: &str, size: usize, seed: u64, out: Option<&str>) -> anyhow::Result<Output> {
    let family: Family = family.parse()?;
    let inst = generate(family, size, seed)?;
    let graph_text = inst.graph.to_text();
    let mut json = json!({
        "family": family.to_string(),
        "size": size,
        "seed": seed,
        "n": inst.graph.vertex_count(),
        "kappa": num(inst.structure.group_order()),
        "cyclic": inst.structure.is_cyclic(),
        "base": inst.base.to_string(),
        "target": inst.target.to_string(),
        "secret": num(&inst.secret),
    });
    let tail = format!(
        "# family {family} size {size} seed {seed}\n# base: {}\n# target: {}\n# secret: {}\n",
        inst.base, inst.target, inst.secret
    );
    let text = match out {
        Some(path) => {
            fs::write(path, &graph_text).with_context(|| format!("writing {path}"))?;
            json["graph_file"] = json!(path);
            tail
        }
        None => {
            json["graph"] = json!(graph_text);
            format!("{graph_text}{tail}")
        }
    };
    Ok(Output::ok(json, text))
}

pub fn self_check(pairs: usize, instances: u64, lift_trials: u64, bench: bool, seed: u64) -> anyhow::Result<Output> {
    let plan = Plan {
        pairs_per_graph: pairs,
        dlp_instances: instances,
        lift_trials,
        bench_instances: bench.then_some(20),
        seed,
    };
    let outcomes = run_all(&plan);
    let mut text = String::new();
    for o in &outcomes {
        writeln!(text, "{o}").unwrap();
    }
    let success = outcomes.iter().all(|o| o.passed);
    let json = json!({
        "passed": success,
        "criteria": outcomes
            .iter()
            .map(|o| json!({ "criterion": o.id, "name": o.name, "passed": o.passed, "detail": o.detail }))
            .collect::<Vec<_>>(),
    });
    Ok(Output { json, text, success })
}

pub fn bench(sizes: &[usize], instances: usize, seed: u64) -> anyhow::Result<Output> {
    if sizes.is_empty() || sizes.iter().any(|&n| n < 3) {
        bail!(Error::InvalidArgument("sizes must be at least 3".into()));
    }
    let points = cycle_scaling(sizes, instances, seed)?;
    let mut text = String::new();
    let mut rows = Vec::new();
    for p in &points {
        writeln!(
            text,
            "C_{:<6} precompute {:>10.3?}  mean solve {:>10.3?}  ({} instances)",
            p.n, p.precompute, p.mean_solve, p.instances
        )
        .unwrap();
        rows.push(json!({
            "n": p.n,
            "instances": p.instances,
            "precompute_ms": p.precompute.as_secs_f64() * 1e3,
            "mean_solve_us": p.mean_solve.as_secs_f64() * 1e6,
        }));
    }
    let mut json = json!({ "points": rows });
    if let [small, large] = points.as_slice() {
        if large.n == 2 * small.n {
            let verdict = judge_scaling(small, large);
            writeln!(text, "{verdict}").unwrap();
            json["ratio"] = json!(large.mean_solve.as_secs_f64() / small.mean_solve.as_secs_f64());
            json["criterion"] = json!({ "passed": verdict.passed, "detail": verdict.detail });
        }
    }
    Ok(Output::ok(json, text))
}
