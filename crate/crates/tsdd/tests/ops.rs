mod common;

use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tsdd::fuzz::random_vtree;
use tsdd::{DiagramKind, Manager, SetOp, Var};

#[test]
fn apply_agrees_with_set_algebra() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for kind in DiagramKind::ALL {
        for _ in 0..200 {
            let n = rng.gen_range(1..=4);
            let vt = random_vtree(&mut rng, n);
            let mut m = Manager::new(kind, vt);
            let all = (1 << n) - 1;
            let (a, b) = (random_set(&mut rng, all), random_set(&mut rng, all));
            let (fa, fb) = (m.from_set(&a), m.from_set(&b));
            for op in SetOp::ALL {
                let r = m.apply(fa, fb, op);
                assert_eq!(m.to_set(r), a.apply(&b, op).unwrap(), "{kind} {op:?}");
                assert_eq!(
                    r,
                    m.from_set(&a.apply(&b, op).unwrap()),
                    "{kind} {op:?} not canonical"
                );
            }
        }
    }
}

#[test]
fn operands_below_the_root_are_padded_per_kind() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for kind in DiagramKind::ALL {
        for _ in 0..200 {
            let vt = random_vtree(&mut rng, 4);
            let mut m = Manager::new(kind, vt.clone());
            let nodes: Vec<_> = vt.nodes().collect();
            let (t1, t2) = (
                nodes[rng.gen_range(0..nodes.len())],
                nodes[rng.gen_range(0..nodes.len())],
            );
            let a = random_set(&mut rng, vt.var_mask(t1));
            let b = random_set(&mut rng, vt.var_mask(t2));
            let (fa, fb) = (m.from_set_at(t1, &a), m.from_set_at(t2, &b));
            let root = vt.root();
            let (ea, eb) = (m.effective_set(fa, root), m.effective_set(fb, root));
            for op in SetOp::ALL {
                let r = m.apply(fa, fb, op);
                assert_eq!(
                    m.effective_set(r, root),
                    ea.apply(&eb, op).unwrap(),
                    "{kind} {op:?}"
                );
            }
        }
    }
}

#[test]
fn complement_and_identities() {
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    for kind in DiagramKind::ALL {
        let vt = random_vtree(&mut rng, 4);
        let mut m = Manager::new(kind, vt.clone());
        let root = vt.root();
        let q = random_set(&mut rng, 0b1111);
        let f = m.from_set(&q);
        let c = m.complement(f, root);
        let u = m.universe(root);
        assert_eq!(m.union(f, c), u);
        assert_eq!(m.intersection(f, c), m.empty());
        assert_eq!(m.complement(c, root), f);
        assert_eq!(m.count_models(u), 16u32.into());
        let unit = m.unit(root);
        assert_eq!(m.count_models(unit), 1u32.into());
    }
}

#[test]
fn change_is_an_involution() {
    let mut rng = ChaCha8Rng::seed_from_u64(44);
    for kind in DiagramKind::ALL {
        for _ in 0..50 {
            let vt = random_vtree(&mut rng, 4);
            let mut m = Manager::new(kind, vt);
            let q = random_set(&mut rng, 0b1111);
            let f = m.from_set(&q);
            let x = Var(rng.gen_range(0..4));
            let g = m.change(f, x);
            assert_eq!(m.to_set(g), q.change(x).unwrap());
            assert_eq!(m.change(g, x), f);
        }
    }
}

#[test]
fn orthogonal_join_requires_disjoint_vtrees() {
    let vt = example_vtree();
    let mut m = Manager::new(DiagramKind::Nstsdd, vt.clone());
    let x1 = m.var("x1").unwrap();
    let l = vt.left(vt.root());
    let f = m.literal(l, x1, true).unwrap();
    assert!(m.orthogonal_join(f, f).is_err());
    let e = m.empty();
    assert_eq!(m.orthogonal_join(f, e).unwrap(), e);
}

#[test]
fn literal_errors() {
    let vt = example_vtree();
    let mut m = Manager::new(DiagramKind::Estsdd, vt.clone());
    assert!(m.literal_var("x9", true).is_err());
    let r = vt.right(vt.root());
    let x1 = m.var("x1").unwrap();
    assert!(m.literal(r, x1, true).is_err());
    let pos = m.literal_var("x3", true).unwrap();
    let neg = m.literal_var("x3", false).unwrap();
    assert_eq!(m.count_models(pos), 8u32.into());
    assert_eq!(m.union(pos, neg), m.universe(vt.root()));
}
