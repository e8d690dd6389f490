//! Randomized canonicity and oracle checks.
//!
//! Each trial draws a vtree shape, a leaf order and a combination set from a
//! ChaCha stream selected by `(seed, trial)`, so any failure can be replayed
//! in isolation with [`run_trial`].

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::kind::DiagramKind;
use crate::manager::{Dd, Manager};
use crate::ops::SetOp;
use crate::oracle::{validate, CombinationSet};
use crate::rules::Rule;
use crate::vtree::{numbered_labels, Var, Vtree};

pub const DEFAULT_SEED: u64 = 0x7d5d_d00d;
pub const MAX_VARS: usize = 5;
const TRACE_LINES: usize = 40;

#[derive(Clone, Debug)]
pub struct FuzzConfig {
    pub vars: usize,
    pub trials: u64,
    pub seed: u64,
    pub kinds: Vec<DiagramKind>,
    /// Rules switched off in the manager under test.
    pub disabled: Vec<Rule>,
    pub check_rewrites: bool,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig {
            vars: 3,
            trials: 100,
            seed: DEFAULT_SEED,
            kinds: DiagramKind::ALL.to_vec(),
            disabled: Vec::new(),
            check_rewrites: true,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub seed: u64,
    pub trial: u64,
    pub kind: DiagramKind,
    pub vtree: String,
    pub reason: String,
    pub trace: Vec<String>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct KindReport {
    pub trials: u64,
    pub failures: u64,
    pub checked_firings: u64,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct FuzzReport {
    pub seed: u64,
    pub trials: u64,
    pub kinds: BTreeMap<String, KindReport>,
    pub failures: Vec<Failure>,
}

impl FuzzReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// The random inputs of one trial.
#[derive(Clone, Debug)]
pub struct TrialInput {
    pub vtree: Vtree,
    pub set: CombinationSet,
    pub other: CombinationSet,
    pub op: SetOp,
    pub insertion_order: Vec<u64>,
}

pub fn trial_input(vars: usize, seed: u64, trial: u64) -> TrialInput {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    let vtree = random_vtree(&mut rng, vars);
    let universe = (1u64 << vars) - 1;
    let set = random_set(&mut rng, universe);
    let other = random_set(&mut rng, universe);
    let op = SetOp::ALL[rng.gen_range(0..SetOp::ALL.len())];
    let mut insertion_order: Vec<u64> = set.members().collect();
    insertion_order.shuffle(&mut rng);
    TrialInput {
        vtree,
        set,
        other,
        op,
        insertion_order,
    }
}

/// A vtree over `x1..xn` with uniformly shuffled leaves and a random split at
/// every internal node.
pub fn random_vtree<R: Rng>(rng: &mut R, n: usize) -> Vtree {
    assert!(n >= 1);
    let mut labels = numbered_labels(n);
    labels.shuffle(rng);
    fn build<R: Rng>(rng: &mut R, labels: &[String]) -> String {
        if labels.len() == 1 {
            return labels[0].clone();
        }
        let k = rng.gen_range(1..labels.len());
        format!(
            "({} {})",
            build(rng, &labels[..k]),
            build(rng, &labels[k..])
        )
    }
    let text = build(rng, &labels);
    Vtree::from_sexpr(&text).expect("generated vtree is well formed")
}

pub fn random_set<R: Rng>(rng: &mut R, universe: u64) -> CombinationSet {
    let n = universe.count_ones();
    let density: f64 = rng.gen();
    let members = (0..1u64 << n)
        .filter(|_| rng.gen_bool(density))
        .map(|bits| spread(bits, universe));
    CombinationSet::new(universe, members).expect("members lie in universe")
}

fn spread(bits: u64, universe: u64) -> u64 {
    let mut out = 0;
    let mut i = 0;
    for b in 0..64 {
        if universe >> b & 1 == 1 {
            out |= (bits >> i & 1) << b;
            i += 1;
        }
    }
    out
}

pub fn run(cfg: &FuzzConfig) -> FuzzReport {
    let mut report = FuzzReport {
        seed: cfg.seed,
        trials: cfg.trials,
        ..FuzzReport::default()
    };
    if cfg.trials == 0 {
        return report;
    }
    for &kind in &cfg.kinds {
        report
            .kinds
            .insert(kind.name().to_owned(), KindReport::default());
    }
    for trial in 0..cfg.trials {
        let input = trial_input(cfg.vars, cfg.seed, trial);
        for &kind in &cfg.kinds {
            let outcome = run_trial(&input, kind, cfg);
            let entry = report.kinds.get_mut(kind.name()).expect("kind registered");
            entry.trials += 1;
            entry.checked_firings += outcome.checked_firings;
            if let Err(reason) = outcome.result {
                entry.failures += 1;
                report.failures.push(Failure {
                    seed: cfg.seed,
                    trial,
                    kind,
                    vtree: input.vtree.to_sexpr(input.vtree.root()),
                    reason,
                    trace: outcome.trace,
                });
            }
        }
    }
    report
}

pub struct TrialOutcome {
    pub result: Result<(), String>,
    pub checked_firings: u64,
    pub trace: Vec<String>,
}

/// Runs every check of one trial against a single kind.
pub fn run_trial(input: &TrialInput, kind: DiagramKind, cfg: &FuzzConfig) -> TrialOutcome {
    let mut m = Manager::new(kind, input.vtree.clone());
    for &r in &cfg.disabled {
        m.set_rule_enabled(r, false);
    }
    m.set_check_rewrites(cfg.check_rewrites);
    let result = checks(&mut m, input);
    let checked_firings = m.checked_firings();
    let trace = if result.is_err() {
        replay_trace(input, kind, cfg)
    } else {
        Vec::new()
    };
    TrialOutcome {
        result,
        checked_firings,
        trace,
    }
}

fn checks(m: &mut Manager, input: &TrialInput) -> Result<(), String> {
    let q = &input.set;
    let a = m.from_set(q);
    let b = union_of_minterms(m, &input.insertion_order);
    if a != b {
        return Err(format!("construction orders disagree: {a} vs {b}"));
    }
    if m.to_set(a) != *q {
        return Err("denotation differs from input set".into());
    }
    let errs = validate(m.vtree(), m.kind(), &m.export(a));
    if let Some(e) = errs.first() {
        return Err(format!("invalid diagram: {e}"));
    }
    if m.count_models(a) != q.len().into() {
        return Err("model count differs from set size".into());
    }
    let mut reference = Manager::new(m.kind(), input.vtree.clone());
    let r = reference.from_set(q);
    if reference.export(r) != m.export(a) {
        return Err("structure differs from the fully trimmed reference".into());
    }
    if !trim_idempotent(m, a) {
        return Err("re-trimming a produced node changes it".into());
    }
    let g = m.from_set(&input.other);
    let got = m.apply(a, g, input.op);
    let want = q.apply(&input.other, input.op).expect("same universe");
    if m.to_set(got) != want {
        return Err(format!("apply {:?} disagrees with oracle", input.op));
    }
    if let Some(v) = m.rewrite_violations().first() {
        return Err(format!("rewrite violation: {v}"));
    }
    Ok(())
}

fn union_of_minterms(m: &mut Manager, order: &[u64]) -> Dd {
    let n = m.vtree().var_count();
    let root = m.vtree().root();
    let mut acc = m.empty();
    for &member in order {
        let mut cube = m.universe(root);
        for i in 0..n {
            let lit = m
                .literal(root, Var(i as u32), member >> i & 1 == 1)
                .expect("variable in vtree");
            cube = m.intersection(cube, lit);
        }
        acc = m.union(acc, cube);
    }
    acc
}

/// Rebuilding each reachable decomposition from its own elements must give
/// the same node back.
pub fn trim_idempotent(m: &mut Manager, root: Dd) -> bool {
    let mut stack = vec![root];
    let mut seen = std::collections::HashSet::new();
    while let Some(d) = stack.pop() {
        if !seen.insert(d) || m.terminal(d).is_some() {
            continue;
        }
        let elems = m.elements(d).to_vec();
        let sv = m.secondary(d);
        match m.make_decomposition(d.primary(), sv, elems.clone()) {
            Ok(again) if again == d => {}
            _ => return false,
        }
        for (p, s) in elems {
            stack.push(p);
            stack.push(s);
        }
    }
    true
}

fn replay_trace(input: &TrialInput, kind: DiagramKind, cfg: &FuzzConfig) -> Vec<String> {
    let mut m = Manager::new(kind, input.vtree.clone());
    for &r in &cfg.disabled {
        m.set_rule_enabled(r, false);
    }
    m.set_trace(true);
    let _ = checks(&mut m, input);
    let mut t = m.take_trace();
    t.truncate(TRACE_LINES);
    t
}
