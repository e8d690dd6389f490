mod common;

use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tsdd::fuzz::{random_vtree, run, trim_idempotent, FuzzConfig};
use tsdd::oracle::effective;
use tsdd::{DiagramKind, Manager, Normalized, Rule, VtreeId};

fn ancestors(vt: &tsdd::Vtree, v: VtreeId) -> Vec<VtreeId> {
    let mut out = vec![v];
    let mut cur = v;
    while let Some(p) = vt.parent(cur) {
        out.push(p);
        cur = p;
    }
    out
}

#[test]
fn normalize1_preserves_meaning_and_trims_back() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for kind in DiagramKind::ALL {
        for _ in 0..150 {
            let n = rng.gen_range(2..=4);
            let vt = random_vtree(&mut rng, n);
            let mut m = Manager::new(kind, vt.clone());
            let nodes: Vec<_> = vt.nodes().collect();
            let t = nodes[rng.gen_range(0..nodes.len())];
            let q = random_set(&mut rng, vt.var_mask(t));
            let f = m.from_set_at(t, &q);
            if m.is_empty(f) || f.primary().is_zero() {
                continue;
            }
            for t3 in ancestors(&vt, f.primary()) {
                let norm = m.normalize1(f, t3).unwrap();
                let want = m.effective_set(f, vt.root());
                let got = effective(&vt, kind, vt.root(), &m.export_normalized(&norm)).unwrap();
                assert_eq!(got, want, "{kind} normalize1 to {t3}");
                if let Normalized::Node {
                    primary,
                    secondary,
                    ref elements,
                } = norm
                {
                    assert_eq!((primary, secondary), (t3, t3));
                    assert!(elements.len() <= 2);
                }
                assert_eq!(m.trim(&norm), f, "{kind}: trimming undoes normalize1");
            }
        }
    }
}

#[test]
fn normalize2_preserves_meaning_and_trims_back() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for kind in DiagramKind::ALL.into_iter().filter(|k| k.is_tagged()) {
        let mut fired = 0;
        for _ in 0..300 {
            let n = rng.gen_range(2..=4);
            let vt = random_vtree(&mut rng, n);
            let mut m = Manager::new(kind, vt.clone());
            let q = random_set(&mut rng, vt.var_mask(vt.root()));
            let f = m.from_set(&q);
            if m.is_empty(f) || f.primary().is_zero() {
                continue;
            }
            let sv = m.secondary(f);
            for t4 in ancestors(&vt, sv)
                .into_iter()
                .take_while(|&a| vt.is_subtree(a, f.primary()))
            {
                let norm = m.normalize2(f, t4).unwrap();
                let want = m.effective_set(f, vt.root());
                let got = effective(&vt, kind, vt.root(), &m.export_normalized(&norm)).unwrap();
                assert_eq!(got, want, "{kind} normalize2 to {t4}");
                if let Normalized::Node {
                    primary, secondary, ..
                } = norm
                {
                    assert_eq!((primary, secondary), (f.primary(), t4));
                    fired += 1;
                }
                assert_eq!(m.trim(&norm), f);
            }
        }
        assert!(fired > 0, "{kind}: normalize2 never changed a diagram");
    }
}

#[test]
fn normalize_rejects_targets_outside_the_vtree_path() {
    let vt = example_vtree();
    let mut m = Manager::new(DiagramKind::Nstsdd, vt.clone());
    let x1 = m
        .literal(vt.leaf(m.var("x1").unwrap()), m.var("x1").unwrap(), true)
        .unwrap();
    let right = vt.right(vt.root());
    assert!(m.normalize1(x1, right).is_err());
    let q = example_set();
    let f = m.from_set(&q);
    assert!(m.normalize2(f, right).is_err() || m.secondary(f) == right);
}

#[test]
fn trimming_is_idempotent_on_compiled_diagrams() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for kind in DiagramKind::ALL {
        for _ in 0..100 {
            let n = rng.gen_range(1..=5);
            let vt = random_vtree(&mut rng, n);
            let mut m = Manager::new(kind, vt.clone());
            let q = random_set(&mut rng, (1 << n) - 1);
            let d = m.from_set(&q);
            assert!(trim_idempotent(&mut m, d), "{kind}");
        }
    }
}

#[test]
fn compression_merges_equal_subs() {
    let vt = example_vtree();
    let mut m = Manager::new(DiagramKind::Sdd, vt.clone());
    let l = vt.left(vt.root());
    let r = vt.right(vt.root());
    let x1 = m.var("x1").unwrap();
    let a = m.literal(l, x1, true).unwrap();
    let b = m.literal(l, x1, false).unwrap();
    let s = m.universe(r);
    let merged = m.compress(vt.root(), vt.root(), vec![(a, s), (b, s)]);
    assert_eq!(merged.len(), 1);
    assert_eq!(merged[0].0, m.universe(l));
}

#[test]
fn disabling_a_trimming_rule_is_detected() {
    for (kinds, rule) in [
        (vec![DiagramKind::Nstsdd, DiagramKind::Estsdd], Rule::A1),
        (vec![DiagramKind::Sdd], Rule::A2),
        (vec![DiagramKind::Nztsdd], Rule::A1),
    ] {
        let cfg = FuzzConfig {
            vars: 3,
            trials: 40,
            kinds,
            disabled: vec![rule],
            ..FuzzConfig::default()
        };
        let report = run(&cfg);
        assert!(!report.ok(), "{rule} disabled went unnoticed");
        let f = &report.failures[0];
        assert!(!f.trace.is_empty());
        assert!(f.trace.iter().all(|l| l.starts_with("rule=")));
    }
}

#[test]
fn every_rewrite_is_oracle_checked_and_traced() {
    let vt = example_vtree();
    for kind in DiagramKind::ALL {
        let mut m = Manager::new(kind, vt.clone());
        m.set_check_rewrites(true);
        m.set_trace(true);
        let d = m.from_set(&example_set());
        let cnf = cnf_of_set(&vt, &example_set());
        let e = tsdd::compile::compile_cnf(&mut m, &cnf).unwrap();
        assert_eq!(d, e);
        assert!(
            m.rewrite_violations().is_empty(),
            "{:?}",
            m.rewrite_violations()
        );
        let trace = m.take_trace();
        assert_eq!(trace.len() as u64, m.checked_firings());
        let prefix = format!("rule={}:", kind.rules());
        assert!(trace
            .iter()
            .all(|l| l.starts_with(&prefix) && l.contains(" before=") && l.contains(" after=")));
    }
}
