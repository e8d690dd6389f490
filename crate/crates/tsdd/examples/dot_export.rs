//! Writes node-based and edge-based renderings of the running example.
//! Render with `dot -Tsvg nstsdd.dot -o nstsdd.svg`.

use tsdd::oracle::CombinationSet;
use tsdd::{DiagramKind, Manager, Vtree};

fn main() -> std::io::Result<()> {
    let vt = Vtree::balanced(&["x1", "x2", "x3", "x4"]).unwrap();
    let q = CombinationSet::new(0b1111, [0b1111, 0b1110, 0b1101, 0b1001]).unwrap();
    let dir = std::env::temp_dir();
    for kind in [DiagramKind::Sdd, DiagramKind::Nstsdd, DiagramKind::Estsdd] {
        let mut m = Manager::new(kind, vt.clone());
        let d = m.from_set(&q);
        let path = dir.join(format!("{}.dot", kind.name()));
        std::fs::write(&path, m.to_dot(d))?;
        println!("wrote {}", path.display());
    }
    Ok(())
}
