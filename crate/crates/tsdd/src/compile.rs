//! Workload front-ends: DIMACS CNF, bottom-up compilation, dictionary
//! encodings and n-queens.
//!
//! CNF variable `i` is the vtree variable labelled `x{i}`.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::manager::{Dd, DdError, Manager};
use crate::vtree::{numbered_labels, Var};

#[derive(Error, Debug, PartialEq, Eq)]
pub enum CnfError {
    #[error("missing `p cnf <vars> <clauses>` header")]
    MissingHeader,
    #[error("line {0}: malformed header")]
    BadHeader(usize),
    #[error("line {line}: unexpected token `{token}`")]
    BadToken { line: usize, token: String },
    #[error("line {line}: literal {lit} outside 1..={vars}")]
    LiteralOutOfRange { line: usize, lit: i64, vars: usize },
    #[error("header declares {expected} clauses, found {found}")]
    ClauseCount { expected: usize, found: usize },
    #[error("unterminated final clause")]
    Unterminated,
}

#[derive(Error, Debug)]
pub enum CompileError {
    #[error("variable x{0} does not occur in the vtree")]
    VarNotInVtree(usize),
    #[error("symbol {0:?} is not in the alphabet")]
    SymbolOutsideAlphabet(char),
    #[error("empty word list")]
    NoWords,
    #[error("n-queens needs n >= 1")]
    BoardTooSmall,
    #[error(transparent)]
    Diagram(#[from] DdError),
}

/// A CNF formula with DIMACS literal conventions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cnf {
    pub num_vars: usize,
    pub clauses: Vec<Vec<i32>>,
}

impl Cnf {
    pub fn new(num_vars: usize, clauses: Vec<Vec<i32>>) -> Cnf {
        Cnf { num_vars, clauses }
    }

    /// Labels `x1..xn` matching the variable numbering.
    pub fn labels(&self) -> Vec<String> {
        numbered_labels(self.num_vars)
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.num_vars, self.clauses.len());
        for c in &self.clauses {
            for l in c {
                let _ = write!(out, "{l} ");
            }
            out.push_str("0\n");
        }
        out
    }

    /// Whether the assignment (bit `i-1` = variable `i`) satisfies every clause.
    pub fn satisfied_by(&self, assignment: u64) -> bool {
        self.clauses.iter().all(|c| {
            c.iter().any(|&l| {
                let bit = assignment >> (l.unsigned_abs() - 1) & 1 == 1;
                bit == (l > 0)
            })
        })
    }
}

pub fn parse_dimacs(text: &str) -> Result<Cnf, CnfError> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
            continue;
        }
        if line.starts_with('p') {
            let parts: Vec<&str> = line.split_whitespace().collect();
            if header.is_some() || parts.len() != 4 || parts[1] != "cnf" {
                return Err(CnfError::BadHeader(lineno));
            }
            let vars = parts[2].parse().map_err(|_| CnfError::BadHeader(lineno))?;
            let n = parts[3].parse().map_err(|_| CnfError::BadHeader(lineno))?;
            header = Some((vars, n));
            continue;
        }
        let (vars, _) = header.ok_or(CnfError::MissingHeader)?;
        for tok in line.split_whitespace() {
            let lit: i64 = tok.parse().map_err(|_| CnfError::BadToken {
                line: lineno,
                token: tok.to_owned(),
            })?;
            if lit == 0 {
                clauses.push(std::mem::take(&mut current));
            } else if lit.unsigned_abs() as usize > vars {
                return Err(CnfError::LiteralOutOfRange {
                    line: lineno,
                    lit,
                    vars,
                });
            } else {
                current.push(lit as i32);
            }
        }
    }
    let (num_vars, expected) = header.ok_or(CnfError::MissingHeader)?;
    if !current.is_empty() {
        return Err(CnfError::Unterminated);
    }
    if clauses.len() != expected {
        return Err(CnfError::ClauseCount {
            expected,
            found: clauses.len(),
        });
    }
    Ok(Cnf { num_vars, clauses })
}

fn cnf_var(m: &Manager, i: usize) -> Result<Var, CompileError> {
    m.vtree()
        .var(&format!("x{i}"))
        .ok_or(CompileError::VarNotInVtree(i))
}

/// Live-node count above which compilation collects garbage between clauses.
const GC_THRESHOLD: usize = 1 << 18;

/// Conjunction of the clauses in input order; each clause is the union of
/// its literals.
pub fn compile_cnf(m: &mut Manager, cnf: &Cnf) -> Result<Dd, CompileError> {
    let root = m.vtree().root();
    for i in 1..=cnf.num_vars {
        cnf_var(m, i)?;
    }
    let mut acc = m.universe(root);
    m.retain(acc);
    let mut next_gc = GC_THRESHOLD;
    for clause in &cnf.clauses {
        let mut c = m.empty();
        for &l in clause {
            let x = cnf_var(m, l.unsigned_abs() as usize)?;
            let lit = m.literal(root, x, l > 0)?;
            c = m.union(c, lit);
        }
        let next = m.intersection(acc, c);
        m.retain(next);
        m.release(acc)?;
        acc = next;
        if m.live_nodes() > next_gc {
            m.gc();
            next_gc = (m.live_nodes() * 2).max(GC_THRESHOLD);
        }
    }
    m.release(acc)?;
    Ok(acc)
}

/// The conjunction of unit literals `cube`.
pub fn compile_cube(m: &mut Manager, cube: &[i32]) -> Result<Dd, CompileError> {
    let root = m.vtree().root();
    let mut acc = m.universe(root);
    for &l in cube {
        let x = cnf_var(m, l.unsigned_abs() as usize)?;
        let lit = m.literal(root, x, l > 0)?;
        acc = m.intersection(acc, lit);
    }
    Ok(acc)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Encoding {
    Binary,
    OneHot,
}

impl std::str::FromStr for Encoding {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "binary" => Ok(Encoding::Binary),
            "onehot" | "one-hot" => Ok(Encoding::OneHot),
            _ => Err(format!(
                "unknown encoding `{s}` (expected binary or onehot)"
            )),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Alphabet {
    /// Only the symbols that occur in the word list.
    Compact,
    /// All 128 ASCII symbols.
    Ascii,
}

impl std::str::FromStr for Alphabet {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "compact" => Ok(Alphabet::Compact),
            "ascii" => Ok(Alphabet::Ascii),
            _ => Err(format!(
                "unknown alphabet `{s}` (expected compact or ascii)"
            )),
        }
    }
}

fn bits_for(n: usize) -> usize {
    (usize::BITS - (n.max(1) - 1).leading_zeros()) as usize
}

/// Symbol used to pad words to a common length.
pub const TERMINATOR: char = '\u{22a3}';

/// A fixed-width encoding of a word list.
#[derive(Clone, Debug)]
pub struct Dictionary {
    /// Symbol table; the last entry is [`TERMINATOR`].
    pub symbols: Vec<char>,
    pub encoding: Encoding,
    pub width: usize,
    pub words: Vec<String>,
}

impl Dictionary {
    pub fn new(
        words: &[&str],
        encoding: Encoding,
        alphabet: Alphabet,
    ) -> Result<Dictionary, CompileError> {
        if words.is_empty() {
            return Err(CompileError::NoWords);
        }
        let mut symbols: Vec<char> = match alphabet {
            Alphabet::Compact => words
                .iter()
                .flat_map(|w| w.chars())
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect(),
            Alphabet::Ascii => (0u8..128).map(char::from).collect(),
        };
        if let Some(c) = words
            .iter()
            .flat_map(|w| w.chars())
            .find(|c| !symbols.contains(c) || *c == TERMINATOR)
        {
            return Err(CompileError::SymbolOutsideAlphabet(c));
        }
        symbols.push(TERMINATOR);
        let width = words
            .iter()
            .map(|w| w.chars().count())
            .max()
            .unwrap_or(0)
            .max(1);
        let words = words
            .iter()
            .map(|w| w.to_string())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        Ok(Dictionary {
            symbols,
            encoding,
            width,
            words,
        })
    }

    /// Variables per word position.
    pub fn vars_per_position(&self) -> usize {
        match self.encoding {
            Encoding::Binary => bits_for(self.symbols.len()),
            Encoding::OneHot => self.symbols.len(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.width * self.vars_per_position()
    }

    /// The full assignment of `word` as DIMACS literals.
    pub fn cube(&self, word: &str) -> Result<Vec<i32>, CompileError> {
        let k = self.vars_per_position();
        let mut chars: Vec<char> = word.chars().collect();
        if chars.len() > self.width {
            // longer words cannot be members; encode the prefix
            chars.truncate(self.width);
        }
        chars.resize(self.width, TERMINATOR);
        let mut cube = Vec::with_capacity(self.num_vars());
        for (pos, c) in chars.into_iter().enumerate() {
            let code = self
                .symbols
                .iter()
                .position(|&s| s == c)
                .ok_or(CompileError::SymbolOutsideAlphabet(c))?;
            for b in 0..k {
                let var = (pos * k + b + 1) as i32;
                let on = match self.encoding {
                    Encoding::Binary => code >> b & 1 == 1,
                    Encoding::OneHot => code == b,
                };
                cube.push(if on { var } else { -var });
            }
        }
        Ok(cube)
    }

    /// Union over all words of their full assignments.
    pub fn build(&self, m: &mut Manager) -> Result<Dd, CompileError> {
        let mut acc = m.empty();
        for w in &self.words {
            let cube = self.cube(w)?;
            let d = compile_cube(m, &cube)?;
            acc = m.union(acc, d);
        }
        Ok(acc)
    }

    /// Whether `word` is in the diagram `dict` built by [`Dictionary::build`].
    pub fn contains(&self, m: &mut Manager, dict: Dd, word: &str) -> Result<bool, CompileError> {
        if word.chars().count() > self.width {
            return Ok(false);
        }
        let cube = match self.cube(word) {
            Ok(c) => c,
            Err(CompileError::SymbolOutsideAlphabet(_)) => return Ok(false),
            Err(e) => return Err(e),
        };
        let d = compile_cube(m, &cube)?;
        let hit = m.intersection(dict, d);
        Ok(!m.is_empty(hit))
    }
}

/// N-queens as CNF: one variable per square (`OneHot`, row-major) or
/// `⌈log₂ n⌉` column-index bits per row (`Binary`, least significant first).
pub fn gen_queens(n: usize, encoding: Encoding) -> Result<Cnf, CompileError> {
    if n < 1 {
        return Err(CompileError::BoardTooSmall);
    }
    let attacks =
        |r1: usize, c1: usize, r2: usize, c2: usize| c1 == c2 || r1.abs_diff(r2) == c1.abs_diff(c2);
    let mut clauses = Vec::new();
    let cnf = match encoding {
        Encoding::OneHot => {
            let var = |r: usize, c: usize| (r * n + c + 1) as i32;
            for r in 0..n {
                clauses.push((0..n).map(|c| var(r, c)).collect());
            }
            let cells: Vec<(usize, usize)> =
                (0..n).flat_map(|r| (0..n).map(move |c| (r, c))).collect();
            for (i, &(r1, c1)) in cells.iter().enumerate() {
                for &(r2, c2) in &cells[i + 1..] {
                    if r1 == r2 || attacks(r1, c1, r2, c2) {
                        clauses.push(vec![-var(r1, c1), -var(r2, c2)]);
                    }
                }
            }
            Cnf::new(n * n, clauses)
        }
        Encoding::Binary => {
            let k = bits_for(n);
            // literals of "row r is not at column c"
            let not_at = |r: usize, c: usize| -> Vec<i32> {
                (0..k)
                    .map(|b| {
                        let v = (r * k + b + 1) as i32;
                        if c >> b & 1 == 1 {
                            -v
                        } else {
                            v
                        }
                    })
                    .collect()
            };
            for r in 0..n {
                for c in n..(1 << k) {
                    clauses.push(not_at(r, c));
                }
            }
            for r1 in 0..n {
                for r2 in r1 + 1..n {
                    for c1 in 0..n {
                        for c2 in 0..n {
                            if attacks(r1, c1, r2, c2) {
                                let mut cl = not_at(r1, c1);
                                cl.extend(not_at(r2, c2));
                                clauses.push(cl);
                            }
                        }
                    }
                }
            }
            Cnf::new(n * k, clauses)
        }
    };
    Ok(cnf)
}
