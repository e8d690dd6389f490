//! The four-variable running example compiled into all six kinds.

use tsdd::oracle::CombinationSet;
use tsdd::{DiagramKind, Manager, Vtree};

fn main() {
    let vt = Vtree::balanced(&["x1", "x2", "x3", "x4"]).unwrap();
    // bit i = x(i+1): {x1x2x3x4, x2x3x4, x1x3x4, x1x4}
    let q = CombinationSet::new(0b1111, [0b1111, 0b1110, 0b1101, 0b1001]).unwrap();
    println!(
        "{:8} {:>5} {:>6} {:>6} {:>7}",
        "kind", "size", "nodes", "bytes", "models"
    );
    for kind in DiagramKind::ALL {
        let mut m = Manager::new(kind, vt.clone());
        let d = m.from_set(&q);
        assert_eq!(m.to_set(d), q);
        println!(
            "{:8} {:>5} {:>6} {:>6} {:>7}",
            kind.name(),
            m.size(d),
            m.node_count(d),
            m.memory_bytes(d),
            m.count_models(d)
        );
    }
}
