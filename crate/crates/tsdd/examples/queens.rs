//! n-queens in both encodings. Usage: `cargo run --release --example queens [n]`.

use std::time::Instant;

use tsdd::compile::{compile_cnf, gen_queens, Encoding};
use tsdd::{DiagramKind, Manager, Vtree};

fn main() {
    let n: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(6);
    for enc in [Encoding::OneHot, Encoding::Binary] {
        let cnf = gen_queens(n, enc).unwrap();
        for kind in DiagramKind::ALL {
            let mut m = Manager::new(kind, Vtree::balanced(&cnf.labels()).unwrap());
            let t = Instant::now();
            let d = compile_cnf(&mut m, &cnf).unwrap();
            println!(
                "{n}-queens {enc:?} {:7} solutions={} size={} in {:?}",
                kind.name(),
                m.count_models(d),
                m.size(d),
                t.elapsed()
            );
        }
    }
}
