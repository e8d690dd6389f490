mod common;

use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tsdd::compile::{
    compile_cnf, gen_queens, parse_dimacs, Alphabet, Cnf, CnfError, Dictionary, Encoding,
};
use tsdd::{DiagramKind, Manager, Vtree};

fn random_cnf(rng: &mut ChaCha8Rng, n: usize) -> Cnf {
    let m = rng.gen_range(0..=3 * n);
    let clauses = (0..m)
        .map(|_| {
            let width = rng.gen_range(1..=3.min(n));
            (0..width)
                .map(|_| {
                    let v = rng.gen_range(1..=n as i32);
                    if rng.gen_bool(0.5) {
                        v
                    } else {
                        -v
                    }
                })
                .collect()
        })
        .collect();
    Cnf::new(n, clauses)
}

#[test]
fn random_cnfs_match_their_truth_tables() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for kind in DiagramKind::ALL {
        for _ in 0..60 {
            let n = rng.gen_range(1..=6);
            let cnf = random_cnf(&mut rng, n);
            let vt = if rng.gen_bool(0.5) {
                Vtree::balanced(&cnf.labels())
            } else {
                Vtree::right_linear(&cnf.labels())
            }
            .unwrap();
            let mut m = Manager::new(kind, vt);
            let d = compile_cnf(&mut m, &cnf).unwrap();
            let set = m.to_set(d);
            // vtree labels x1..xn are declared in order, so bit i is x(i+1)
            for a in 0..1u64 << n {
                assert_eq!(
                    set.contains(a),
                    cnf.satisfied_by(a),
                    "{kind} {cnf:?} at {a:b}"
                );
            }
        }
    }
}

#[test]
fn dimacs_round_trip_and_errors() {
    let text = "c comment\np cnf 3 2\n1 -2 0\n3 0\n";
    let cnf = parse_dimacs(text).unwrap();
    assert_eq!(cnf.clauses, vec![vec![1, -2], vec![3]]);
    assert_eq!(parse_dimacs(&cnf.to_dimacs()).unwrap(), cnf);
    assert_eq!(parse_dimacs("1 2 0\n"), Err(CnfError::MissingHeader));
    assert!(matches!(
        parse_dimacs("p cnf 2 1\n1 4 0\n"),
        Err(CnfError::LiteralOutOfRange { .. })
    ));
    assert!(matches!(
        parse_dimacs("p cnf 2 1\n1 x 0\n"),
        Err(CnfError::BadToken { .. })
    ));
    assert!(matches!(
        parse_dimacs("p cnf 2 2\n1 0\n"),
        Err(CnfError::ClauseCount { .. })
    ));
    assert!(parse_dimacs("p cnf 2 1\n1 2\n").is_err());
}

#[test]
fn dictionary_membership_is_exact() {
    let words = ["tree", "trie", "tie", "see", "seed", "a", "tee"];
    let probes = [
        "tree", "tre", "trees", "tie", "ti", "seed", "sed", "a", "", "eat", "tea",
    ];
    for enc in [Encoding::Binary, Encoding::OneHot] {
        let dict = Dictionary::new(&words, enc, Alphabet::Compact).unwrap();
        let labels = tsdd::vtree::numbered_labels(dict.num_vars());
        for kind in DiagramKind::ALL {
            let mut m = Manager::new(kind, Vtree::balanced(&labels).unwrap());
            let d = dict.build(&mut m).unwrap();
            assert_eq!(m.count_models(d), words.len().into(), "{kind} {enc:?}");
            for p in probes {
                assert_eq!(
                    dict.contains(&mut m, d, p).unwrap(),
                    words.contains(&p),
                    "{kind} {enc:?} {p:?}"
                );
            }
        }
    }
    assert!(Dictionary::new(&[], Encoding::Binary, Alphabet::Compact).is_err());
    assert!(Dictionary::new(&["é"], Encoding::Binary, Alphabet::Ascii).is_err());
}

#[test]
fn queens_counts_match_backtracking() {
    for n in 4..=6 {
        let want = queens_solutions(n);
        for enc in [Encoding::OneHot, Encoding::Binary] {
            let cnf = gen_queens(n, enc).unwrap();
            for kind in DiagramKind::ALL {
                let mut m = Manager::new(kind, Vtree::balanced(&cnf.labels()).unwrap());
                let d = compile_cnf(&mut m, &cnf).unwrap();
                assert_eq!(m.count_models(d), want.into(), "{n} {enc:?} {kind}");
            }
        }
    }
}

#[test]
fn queens_encodings_have_the_documented_shape() {
    let onehot = gen_queens(5, Encoding::OneHot).unwrap();
    assert_eq!(onehot.num_vars, 25);
    let binary = gen_queens(5, Encoding::Binary).unwrap();
    assert_eq!(binary.num_vars, 5 * 3);
    // small boards: brute force over every assignment
    for n in 1..=4 {
        let want = queens_solutions(n);
        for enc in [Encoding::OneHot, Encoding::Binary] {
            let cnf = gen_queens(n, enc).unwrap();
            let got = (0..1u64 << cnf.num_vars)
                .filter(|&a| cnf.satisfied_by(a))
                .count() as u64;
            assert_eq!(got, want, "{n} {enc:?}");
        }
    }
}

#[test]
fn compiling_against_a_smaller_vtree_fails() {
    let cnf = Cnf::new(3, vec![vec![1, 3]]);
    let mut m = Manager::new(DiagramKind::Nstsdd, Vtree::balanced_numbered(2).unwrap());
    assert!(compile_cnf(&mut m, &cnf).is_err());
}
