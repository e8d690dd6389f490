//! Vtree construction, serialization and the effect of variable order on size.

use tsdd::compile::{compile_cnf, Cnf};
use tsdd::{DiagramKind, Manager, Vtree};

fn main() {
    // (x1 ∧ x2) ∨ (x3 ∧ x4) ∨ (x5 ∧ x6) in CNF
    let mut clauses = Vec::new();
    for a in [1, 2] {
        for b in [3, 4] {
            for c in [5, 6] {
                clauses.push(vec![a, b, c]);
            }
        }
    }
    let cnf = Cnf::new(6, clauses);
    let good = Vtree::from_sexpr("((x1 x2) ((x3 x4) (x5 x6)))").unwrap();
    let bad = Vtree::from_sexpr("((x1 x3) ((x5 x2) (x4 x6)))").unwrap();
    let text = good.serialize();
    println!("{text}");
    let reread = Vtree::parse(&text).unwrap();
    assert_eq!(reread.serialize(), text);
    for (name, vt) in [("paired", reread), ("interleaved", bad)] {
        for kind in [DiagramKind::Sdd, DiagramKind::Nstsdd] {
            let mut m = Manager::new(kind, vt.clone());
            let d = compile_cnf(&mut m, &cnf).unwrap();
            println!(
                "{name:12} {:7} size={} models={}",
                kind.name(),
                m.size(d),
                m.count_models(d)
            );
        }
    }
}
