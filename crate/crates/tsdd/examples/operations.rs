//! Set algebra: apply, complement, change and orthogonal join.

use tsdd::{DiagramKind, Manager, SetOp, Vtree};

fn main() {
    let vt = Vtree::balanced(&["a", "b", "c", "d"]).unwrap();
    let mut m = Manager::new(DiagramKind::Nstsdd, vt);
    let a = m.literal_var("a", true).unwrap();
    let b = m.literal_var("b", true).unwrap();
    let not_c = m.literal_var("c", false).unwrap();

    let ab = m.apply(a, b, SetOp::Union);
    let f = m.intersection(ab, not_c);
    println!(
        "(a ∪ b) ∩ ¬c : {} combinations, size {}",
        m.count_models(f),
        m.size(f)
    );

    let root = m.vtree().root();
    let g = m.complement(f, root);
    println!("complement   : {} combinations", m.count_models(g));

    let h = m.change_var(f, "d").unwrap();
    println!("change d     : {:?}", m.to_set(h));

    // join a set over {a, b} with one over {c, d}
    let vt = m.vtree().clone();
    let (l, r) = (vt.left(vt.root()), vt.right(vt.root()));
    let xa = m.literal(l, vt.var("a").unwrap(), true).unwrap();
    let xd = m.literal(r, vt.var("d").unwrap(), false).unwrap();
    let j = m.orthogonal_join(xa, xd).unwrap();
    println!("{{a..}} ⊔ {{¬d..}} : {:?}", m.to_set(j));
}
