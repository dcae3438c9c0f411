//! The acceptance checks, shared by the CLI and the acceptance test. Each
//! returns an [`Outcome`] and never panics.

use std::fmt;
use std::time::Duration;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::corpus::{corpus, CorpusGraph};
use crate::divisor::Divisor;
use crate::dlp::{dlp_cyclic, dlp_general, verify_solution, DlpInstance, DlpSolution};
use crate::error::Result;
use crate::graph::{families, MultiGraph};
use crate::instance::{gen_instance, random_divisor, Family};
use crate::jacobian::{analyze, spanning_tree_count, JacobianStructure};
use crate::linalg::smith_normal_form;
use crate::oracle::{brute_force_dlp, enumerate_group, spanning_trees_by_enumeration, GroupTable, DEFAULT_BOUND};
use crate::pairing::{gen_inverse_minor, monodromy_pairing, moore_penrose, DefinitionalPairing, PairingValue};
use crate::perf::{cycle_scaling, ScalingPoint};

/// Graphs with at most this many classes get exhaustive checks.
pub const ENUMERATION_LIMIT: u64 = 60;

#[derive(Clone, Debug)]
pub struct Outcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{status}] criterion {:>2} {}: {}", self.id, self.name, self.detail)
    }
}

/// Collects failures inside one criterion.
struct Tally {
    checks: u64,
    failures: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            checks: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn outcome(self, id: u8, name: &'static str, summary: String) -> Outcome {
        let passed = self.failures.is_empty();
        let mut detail = format!("{summary}; {} checks", self.checks);
        if !passed {
            let shown: Vec<_> = self.failures.iter().take(3).cloned().collect();
            detail += &format!(", {} failed (first: {})", self.failures.len(), shown.join(" | "));
        }
        Outcome {
            id,
            name,
            passed,
            detail,
        }
    }
}

fn random_function(n: usize, spread: i64, rng: &mut ChaCha8Rng) -> Vec<BigInt> {
    (0..n).map(|_| BigInt::from(rng.random_range(-spread..=spread))).collect()
}

fn plus_principal(g: &MultiGraph, d: &Divisor, rng: &mut ChaCha8Rng) -> Divisor {
    let f = random_function(g.vertex_count(), 6, rng);
    d + &Divisor::new(g.laplacian_apply(&f))
}

struct Analyzed {
    entry: CorpusGraph,
    structure: JacobianStructure,
    table: Option<GroupTable>,
}

fn analyzed_corpus() -> Vec<Analyzed> {
    corpus()
        .into_iter()
        .map(|entry| {
            let structure = analyze(&entry.graph);
            let small = structure.group_order() <= &BigInt::from(ENUMERATION_LIMIT);
            let table = small.then(|| enumerate_group(&entry.graph, DEFAULT_BOUND).expect("small group"));
            Analyzed {
                entry,
                structure,
                table,
            }
        })
        .collect()
}

/// Criterion 1: bilinearity, symmetry and invariance under principal
/// divisors, on random pairs.
pub fn pairing_axioms(pairs: usize, seed: u64) -> Outcome {
    let mut t = Tally::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let graphs = corpus();
    for c in &graphs {
        let (g, name) = (&c.graph, &c.name);
        let s = analyze(g);
        let n = g.vertex_count();
        let pair = |a: &Divisor, b: &Divisor| s.pairing(a, b).expect("degree zero");
        for _ in 0..pairs {
            let d1 = random_divisor(n, 4, &mut rng);
            let d2 = random_divisor(n, 4, &mut rng);
            let d3 = random_divisor(n, 4, &mut rng);
            let (a, b) = (BigInt::from(rng.random_range(-9..=9)), BigInt::from(rng.random_range(-9..=9)));
            let combo = &d1.scale(&a) + &d3.scale(&b);
            let lhs = pair(&combo, &d2);
            let rhs = pair(&d1, &d2).scale(&a).add(&pair(&d3, &d2).scale(&b));
            t.check(lhs == rhs, || format!("{name}: linearity at {d1} {d3} {d2}"));
            let right = pair(&d2, &combo);
            t.check(right == lhs, || format!("{name}: symmetry / right linearity at {combo} {d2}"));
            let moved = pair(&plus_principal(g, &d1, &mut rng), &plus_principal(g, &d2, &mut rng));
            t.check(moved == pair(&d1, &d2), || format!("{name}: not well defined at {d1} {d2}"));
        }
    }
    t.outcome(1, "pairing axioms", format!("{} graphs x {pairs} random pairs", graphs.len()))
}

/// Criterion 2: only the zero class pairs trivially with everything.
fn non_degeneracy(all: &[Analyzed]) -> Outcome {
    let mut t = Tally::new();
    let mut graphs = 0;
    for a in all {
        let Some(table) = &a.table else { continue };
        graphs += 1;
        for (i, h) in table.elements().iter().enumerate() {
            let trivial = table
                .elements()
                .iter()
                .all(|g| a.structure.pairing(h, g).expect("degree zero").is_zero());
            t.check(trivial == (i == table.zero()), || {
                format!("{}: class {h} trivial={trivial}", a.entry.name)
            });
        }
    }
    t.outcome(2, "non-degeneracy", format!("{graphs} graphs with kappa <= {ENUMERATION_LIMIT}, all classes"))
}

/// Criterion 3: every minor inverse and the Moore–Penrose inverse give the
/// same values.
fn inverse_independence(all: &[Analyzed], seed: u64) -> Outcome {
    let mut t = Tally::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for a in all {
        let g = &a.entry.graph;
        let n = g.vertex_count();
        let mut inverses: Vec<_> = (0..n).map(|i| gen_inverse_minor(g, i).expect("in range")).collect();
        inverses.push(moore_penrose(g));
        let pairs: Vec<(Divisor, Divisor)> = match &a.table {
            Some(table) => {
                let e = table.elements();
                e.iter().flat_map(|x| e.iter().map(move |y| (x.clone(), y.clone()))).collect()
            }
            None => (0..100)
                .map(|_| (random_divisor(n, 4, &mut rng), random_divisor(n, 4, &mut rng)))
                .collect(),
        };
        for (d1, d2) in &pairs {
            let values: Vec<PairingValue> = inverses
                .iter()
                .map(|l| monodromy_pairing(d1, d2, l).expect("degree zero"))
                .collect();
            t.check(values.windows(2).all(|w| w[0] == w[1]), || {
                let shown: Vec<String> = values.iter().map(ToString::to_string).collect();
                format!("{}: {d1} {d2} -> {}", a.entry.name, shown.join(" "))
            });
        }
    }
    t.outcome(3, "inverse independence", format!("{} graphs, L_(i) for every i and Q+", all.len()))
}

/// Criterion 4: the inverse based pairing equals the definition.
fn oracle_equivalence(all: &[Analyzed]) -> Outcome {
    let mut t = Tally::new();
    let mut graphs = 0;
    for a in all {
        let Some(table) = &a.table else { continue };
        graphs += 1;
        let def = DefinitionalPairing::new(&a.entry.graph);
        for d2 in table.elements() {
            let potential = def.potential(d2).expect("degree zero");
            for d1 in table.elements() {
                let fast = a.structure.pairing(d1, d2).expect("degree zero");
                let slow = def.evaluate(d1, &potential).expect("degree zero");
                t.check(fast == slow, || format!("{}: {d1} {d2}: {fast} vs {slow}", a.entry.name));
            }
        }
    }
    t.outcome(4, "matrix pairing = definition", format!("{graphs} graphs, all class pairs"))
}

/// Criterion 5: on cyclic groups the pairing denominator against a
/// generator is the order found by repeated addition.
fn order_law(all: &[Analyzed]) -> Outcome {
    let mut t = Tally::new();
    let mut graphs = 0;
    for a in all {
        let Some(table) = &a.table else { continue };
        if !a.structure.is_cyclic() {
            continue;
        }
        graphs += 1;
        let gen = a.structure.generator().expect("cyclic");
        t.check(table.order(table.class_of(&gen).expect("degree zero")) == table.len() as u64, || {
            format!("{}: generator {gen} does not generate", a.entry.name)
        });
        for (i, h) in table.elements().iter().enumerate() {
            let denom = a.structure.pairing(h, &gen).expect("degree zero").denom().clone();
            t.check(denom == BigInt::from(table.order(i)), || {
                format!("{}: {h} denominator {denom} vs order {}", a.entry.name, table.order(i))
            });
        }
    }
    t.outcome(5, "order law", format!("{graphs} cyclic groups, every element"))
}

/// Criterion 6: four independent counts of `|Jac(G)|`.
fn group_order(all: &[Analyzed]) -> Outcome {
    let mut t = Tally::new();
    for a in all {
        let g = &a.entry.graph;
        let snf: BigInt = smith_normal_form(&g.laplacian())
            .diagonal()
            .into_iter()
            .filter(|d| !d.is_zero())
            .product();
        let det = spanning_tree_count(g);
        let trees = spanning_trees_by_enumeration(g).expect("small corpus graph");
        let reduced = match &a.table {
            Some(table) => BigInt::from(table.len()),
            None => BigInt::from(enumerate_group(g, DEFAULT_BOUND).expect("corpus group fits").len()),
        };
        t.check(snf == det && det == trees && trees == reduced, || {
            format!("{}: snf {snf}, det {det}, trees {trees}, reduced {reduced}", a.entry.name)
        });
    }
    let k5 = spanning_tree_count(&families::complete(5));
    let k4 = spanning_tree_count(&families::complete(4));
    t.check(k5 == BigInt::from(125), || format!("kappa(K5) = {k5}"));
    t.check(k4 == BigInt::from(16), || format!("kappa(K4) = {k4}"));
    t.outcome(6, "group order", format!("{} graphs, four-way agreement, Cayley checks", all.len()))
}

/// Sizes cycled through by the seeded DLP batches.
fn batch_size(family: Family, i: u64) -> usize {
    let i = i as usize;
    match family {
        Family::Cycle => 3 + i % 18,
        Family::Banana => 2 + i % 19,
        Family::Wheel => 3 + i % 8,
        Family::Random => 3 + i % 10,
        Family::Complete => 4,
    }
}

fn recovered(sol: &Result<DlpSolution>, secret: &BigInt) -> std::result::Result<(), String> {
    match sol {
        Ok(sol) if sol.x == secret.mod_floor(&sol.modulus) => Ok(()),
        Ok(sol) => Err(format!("got x={} mod {}", sol.x, sol.modulus)),
        Err(e) => Err(e.to_string()),
    }
}

/// Result of one family batch in criterion 7.
#[derive(Clone, Debug)]
pub struct BatchResult {
    pub label: String,
    pub solved: usize,
    pub total: usize,
    pub first_failure: Option<String>,
}

/// Seeded instances of one family solved by `solver`, compared with the
/// planted secret (and with the brute-force oracle when `oracle` is set).
pub fn dlp_batch(
    family: Family,
    count: u64,
    seed: u64,
    general: bool,
    oracle: bool,
) -> Result<BatchResult> {
    let mut solved = 0;
    let mut first_failure = None;
    for i in 0..count {
        let size = batch_size(family, i);
        let inst = gen_instance(family, size, seed.wrapping_add(i))?;
        let s = &inst.structure;
        let dlp = DlpInstance::new(s, inst.base.clone(), inst.target.clone())?;
        let sol = if general { dlp_general(&dlp) } else { dlp_cyclic(&dlp) };
        let mut verdict = recovered(&sol, &inst.secret);
        if let (Ok(()), Ok(sol)) = (&verdict, &sol) {
            if !verify_solution(&dlp, sol) {
                verdict = Err("verification rejected the answer".into());
            } else if oracle {
                let table = enumerate_group(&inst.graph, DEFAULT_BOUND)?;
                let brute = brute_force_dlp(&table, &inst.base, &inst.target)?;
                if brute != sol.x {
                    verdict = Err(format!("oracle says {brute}, solver says {}", sol.x));
                }
            }
        }
        match verdict {
            Ok(()) => solved += 1,
            Err(why) => {
                first_failure.get_or_insert_with(|| format!("{family} size {size} seed {}: {why}", seed + i));
            }
        }
    }
    let solver = if general { "dlp_general" } else { "dlp_cyclic" };
    Ok(BatchResult {
        label: format!("{solver}/{family}"),
        solved,
        total: count as usize,
        first_failure,
    })
}

/// Criterion 7, one batch per family and solver.
pub fn dlp_correctness_batches(count: u64, seed: u64) -> Result<Vec<BatchResult>> {
    let cyclic_families = [Family::Cycle, Family::Banana, Family::Wheel, Family::Random];
    let mut out = Vec::new();
    for general in [false, true] {
        for family in cyclic_families {
            out.push(dlp_batch(family, count, seed, general, false)?);
        }
    }
    out.push(dlp_batch(Family::Complete, count, seed, true, true)?);
    Ok(out)
}

pub fn dlp_correctness(count: u64, seed: u64) -> Outcome {
    let batches = match dlp_correctness_batches(count, seed) {
        Ok(b) => b,
        Err(e) => {
            return Outcome {
                id: 7,
                name: "DLP correctness",
                passed: false,
                detail: e.to_string(),
            }
        }
    };
    let passed = batches.iter().all(|b| b.solved == b.total);
    let mut parts: Vec<String> = batches.iter().map(|b| format!("{} {}/{}", b.label, b.solved, b.total)).collect();
    if let Some(f) = batches.iter().find_map(|b| b.first_failure.clone()) {
        parts.push(format!("first failure: {f}"));
    }
    Outcome {
        id: 7,
        name: "DLP correctness",
        passed,
        detail: parts.join(", "),
    }
}

/// Criterion 8: hand-derived values.
pub fn golden_values() -> Outcome {
    let mut t = Tally::new();
    let c3 = analyze(&families::cycle(3));
    let d = Divisor::from_i64s(&[1, -1, 0]);
    let v = c3.pairing(&d, &d).expect("degree zero");
    t.check(v.to_string() == "2/3", || format!("C3 pairing {v}"));
    for m in 2..=6u64 {
        let b = analyze(&families::banana(m));
        let e = Divisor::from_i64s(&[1, -1]);
        let v = b.pairing(&e, &e).expect("degree zero");
        t.check(v == PairingValue::from_ratio(BigInt::one(), BigInt::from(m)), || format!("B{m} pairing {v}"));
    }
    let target = c3.reduce(&d.scale(&BigInt::from(2)));
    let inst = DlpInstance::new(&c3, d.clone(), target).expect("degree zero");
    let sol = dlp_cyclic(&inst);
    let want = DlpSolution {
        x: BigInt::from(2),
        modulus: BigInt::from(3),
    };
    t.check(sol.as_ref() == Ok(&want), || format!("C3 DLP {sol:?}"));
    t.outcome(8, "golden values", "C3 pairing, B2..B6 pairings, C3 DLP".into())
}

/// Thresholds for criterion 9.
pub const SCALING_BAND: (f64, f64) = (2.0, 8.0);
pub const PRECOMPUTE_LIMIT: Duration = Duration::from_secs(300);

/// Criterion 9 judged from measured points at `n` and `2n`.
pub fn judge_scaling(small: &ScalingPoint, large: &ScalingPoint) -> Outcome {
    let ratio = large.mean_solve.as_secs_f64() / small.mean_solve.as_secs_f64();
    let in_band = (SCALING_BAND.0..=SCALING_BAND.1).contains(&ratio);
    let fast = small.precompute < PRECOMPUTE_LIMIT;
    Outcome {
        id: 9,
        name: "complexity contract",
        passed: in_band && fast && small.instances >= 20 && large.instances >= 20,
        detail: format!(
            "mean solve n={} {:.3?}, n={} {:.3?}, ratio {ratio:.2} (band {:?}); precompute n={} {:.2?} (limit {:?}); {} + {} instances",
            small.n,
            small.mean_solve,
            large.n,
            large.mean_solve,
            SCALING_BAND,
            small.n,
            small.precompute,
            PRECOMPUTE_LIMIT,
            small.instances,
            large.instances
        ),
    }
}

pub fn complexity_contract(instances: usize, seed: u64) -> Outcome {
    match cycle_scaling(&[800, 1600], instances, seed) {
        Ok(points) => judge_scaling(&points[0], &points[1]),
        Err(e) => Outcome {
            id: 9,
            name: "complexity contract",
            passed: false,
            detail: e.to_string(),
        },
    }
}

/// Criterion 10: solving from other lifts of the same classes.
pub fn lift_independence(trials: u64, seed: u64) -> Outcome {
    let mut t = Tally::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let families = [Family::Cycle, Family::Random, Family::Complete, Family::Wheel, Family::Banana];
    for i in 0..trials {
        let family = families[i as usize % families.len()];
        let size = batch_size(family, i);
        let inst = match gen_instance(family, size, seed.wrapping_add(i)) {
            Ok(inst) => inst,
            Err(e) => {
                t.check(false, || e.to_string());
                continue;
            }
        };
        let s = &inst.structure;
        let g = &inst.graph;
        let solve = |base: &Divisor, target: &Divisor| {
            let dlp = DlpInstance::new(s, base.clone(), target.clone())?;
            if s.is_cyclic() {
                dlp_cyclic(&dlp)
            } else {
                dlp_general(&dlp)
            }
        };
        let first = solve(&inst.base, &inst.target);
        let base = plus_principal(g, &inst.base, &mut rng);
        let target = plus_principal(g, &inst.target, &mut rng);
        let second = solve(&base, &target);
        t.check(first.is_ok() && first == second, || {
            format!("{family} {size}: {first:?} vs {second:?}")
        });
    }
    t.outcome(10, "lift independence", format!("{trials} trials over five families"))
}

/// Criteria 2 to 6, which share one pass over the corpus.
pub fn corpus_criteria(seed: u64) -> Vec<Outcome> {
    let all = analyzed_corpus();
    vec![
        non_degeneracy(&all),
        inverse_independence(&all, seed),
        oracle_equivalence(&all),
        order_law(&all),
        group_order(&all),
    ]
}

/// What to include in [`run_all`].
#[derive(Clone, Copy, Debug)]
pub struct Plan {
    pub pairs_per_graph: usize,
    pub dlp_instances: u64,
    pub lift_trials: u64,
    /// `None` skips the timing criterion.
    pub bench_instances: Option<usize>,
    pub seed: u64,
}

impl Default for Plan {
    fn default() -> Self {
        Plan {
            pairs_per_graph: 200,
            dlp_instances: 100,
            lift_trials: 100,
            bench_instances: Some(20),
            seed: 2024,
        }
    }
}

pub fn run_all(plan: &Plan) -> Vec<Outcome> {
    let mut out = vec![pairing_axioms(plan.pairs_per_graph, plan.seed)];
    out.extend(corpus_criteria(plan.seed));
    out.push(dlp_correctness(plan.dlp_instances, plan.seed));
    out.push(golden_values());
    if let Some(k) = plan.bench_instances {
        out.push(complexity_contract(k, plan.seed));
    }
    out.push(lift_independence(plan.lift_trials, plan.seed));
    out
}
