//! A small word list encoded per character position, then queried.

use tsdd::compile::{Alphabet, Dictionary, Encoding};
use tsdd::{DiagramKind, Manager, Vtree};

fn main() {
    let words = ["cat", "car", "cart", "dog", "do", "dot"];
    for enc in [Encoding::Binary, Encoding::OneHot] {
        let dict = Dictionary::new(&words, enc, Alphabet::Compact).unwrap();
        let labels = tsdd::vtree::numbered_labels(dict.num_vars());
        for kind in [DiagramKind::Zsdd, DiagramKind::Nztsdd, DiagramKind::Eztsdd] {
            let mut m = Manager::new(kind, Vtree::right_linear(&labels).unwrap());
            let d = dict.build(&mut m).unwrap();
            let hits: Vec<&str> = ["cat", "ca", "dot", "cog"]
                .into_iter()
                .filter(|w| dict.contains(&mut m, d, w).unwrap())
                .collect();
            println!(
                "{enc:?} {:7} vars={} size={} words={} members={hits:?}",
                kind.name(),
                dict.num_vars(),
                m.size(d),
                m.count_models(d)
            );
        }
    }
}
