//! Helpers shared by the integration tests. The reference computations here
//! work on explicit sets and assignments and do not touch diagram code.

#![allow(dead_code)]

use rand::Rng;
use tsdd::compile::Cnf;
use tsdd::oracle::CombinationSet;
use tsdd::{Var, Vtree};

pub fn example_vtree() -> Vtree {
    Vtree::balanced(&["x1", "x2", "x3", "x4"]).unwrap()
}

/// {x1x2x3x4, x2x3x4, x1x3x4, x1x4} with bit i standing for x(i+1).
pub fn example_set() -> CombinationSet {
    CombinationSet::new(0b1111, [0b1111, 0b1110, 0b1101, 0b1001]).unwrap()
}

/// Every vtree over `x1..xn` (all shapes, all leaf orders).
pub fn all_vtrees(n: usize) -> Vec<Vtree> {
    fn shapes(labels: &[String]) -> Vec<String> {
        if labels.len() == 1 {
            return vec![labels[0].clone()];
        }
        let mut out = Vec::new();
        for k in 1..labels.len() {
            for l in shapes(&labels[..k]) {
                for r in shapes(&labels[k..]) {
                    out.push(format!("({l} {r})"));
                }
            }
        }
        out
    }
    fn perms(items: Vec<String>) -> Vec<Vec<String>> {
        if items.len() <= 1 {
            return vec![items];
        }
        let mut out = Vec::new();
        for i in 0..items.len() {
            let mut rest = items.clone();
            let head = rest.remove(i);
            for mut p in perms(rest) {
                p.insert(0, head.clone());
                out.push(p);
            }
        }
        out
    }
    let labels: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    perms(labels)
        .iter()
        .flat_map(|p| shapes(p))
        .map(|s| Vtree::from_sexpr(&s).unwrap())
        .collect()
}

/// DIMACS number of each vtree variable, indexed by `Var`.
pub fn cnf_numbers(vt: &Vtree) -> Vec<i32> {
    (0..vt.var_count())
        .map(|i| {
            vt.label(Var(i as u32))[1..]
                .parse()
                .expect("labels are x<k>")
        })
        .collect()
}

/// One blocking clause per non-member, so the CNF's models are exactly `q`.
pub fn cnf_of_set(vt: &Vtree, q: &CombinationSet) -> Cnf {
    let nums = cnf_numbers(vt);
    let n = nums.len();
    let mut clauses = Vec::new();
    for a in 0..1u64 << n {
        if !q.contains(a) {
            clauses.push(
                (0..n)
                    .map(|i| if a >> i & 1 == 1 { -nums[i] } else { nums[i] })
                    .collect(),
            );
        }
    }
    Cnf::new(n, clauses)
}

pub fn random_set<R: Rng>(rng: &mut R, universe: u64) -> CombinationSet {
    let n = universe.count_ones();
    let p: f64 = rng.gen();
    let mut members = Vec::new();
    for bits in 0..1u64 << n {
        if rng.gen_bool(p) {
            // scatter the packed bits over the universe positions
            let mut m = 0;
            let mut k = 0;
            for b in 0..64 {
                if universe >> b & 1 == 1 {
                    m |= (bits >> k & 1) << b;
                    k += 1;
                }
            }
            members.push(m);
        }
    }
    CombinationSet::new(universe, members).unwrap()
}

/// Solutions of n-queens by backtracking.
pub fn queens_solutions(n: usize) -> u64 {
    fn place(n: usize, row: usize, cols: &mut Vec<usize>) -> u64 {
        if row == n {
            return 1;
        }
        let mut total = 0;
        for c in 0..n {
            let ok = cols
                .iter()
                .enumerate()
                .all(|(r, &cc)| cc != c && row - r != c.abs_diff(cc));
            if ok {
                cols.push(c);
                total += place(n, row + 1, cols);
                cols.pop();
            }
        }
        total
    }
    place(n, 0, &mut Vec::new())
}

/// Runs the command line in-process and returns (exit code, stdout, stderr).
pub fn run_cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("tsdd").chain(args.iter().copied());
    let code = tsdd::cli::main_with_args(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}
