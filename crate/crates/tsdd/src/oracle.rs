//! Explicit combination-set algebra and reference evaluators.
//!
//! Everything here works on fully enumerated sets and is exponential in the
//! number of variables; it exists to check the diagram engine on small
//! universes (at most 64 variables, realistically ten or fewer).

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::kind::DiagramKind;
use crate::node::{Body, Esdd, Terminal};
use crate::ops::SetOp;
use crate::vtree::{Var, Vtree, VtreeId};

/// A set of variables as a bitmask over variable indices.
pub type VarMask = u64;

#[derive(Error, Debug, PartialEq, Eq)]
pub enum SetError {
    #[error("universes differ: {0:#x} vs {1:#x}")]
    UniverseMismatch(VarMask, VarMask),
    #[error("universes overlap: {0:#x} and {1:#x}")]
    Overlap(VarMask, VarMask),
    #[error("variable {0} is outside the universe")]
    VarOutside(u32),
    #[error("member {0:#x} is not a subset of universe {1:#x}")]
    NotSubset(u64, VarMask),
}

/// A combination set: a collection of subsets of `universe`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CombinationSet {
    universe: VarMask,
    members: BTreeSet<u64>,
}

impl fmt::Debug for CombinationSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}:", self.universe)?;
        f.debug_set()
            .entries(self.members.iter().map(|m| format!("{m:#b}")))
            .finish()
    }
}

impl CombinationSet {
    pub fn empty(universe: VarMask) -> Self {
        CombinationSet {
            universe,
            members: BTreeSet::new(),
        }
    }

    /// `{∅}` over `universe`.
    pub fn unit(universe: VarMask) -> Self {
        Self::new(universe, [0]).unwrap()
    }

    pub fn new(
        universe: VarMask,
        members: impl IntoIterator<Item = u64>,
    ) -> Result<Self, SetError> {
        let members: BTreeSet<u64> = members.into_iter().collect();
        if let Some(&m) = members.iter().find(|&&m| m & !universe != 0) {
            return Err(SetError::NotSubset(m, universe));
        }
        Ok(CombinationSet { universe, members })
    }

    /// `U_X`: every subset of `universe`.
    pub fn universe_set(universe: VarMask) -> Self {
        let mut members = BTreeSet::new();
        // enumerate submasks
        let mut sub = universe;
        loop {
            members.insert(sub);
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & universe;
        }
        CombinationSet { universe, members }
    }

    pub fn universe(&self) -> VarMask {
        self.universe
    }

    pub fn members(&self) -> impl Iterator<Item = u64> + '_ {
        self.members.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, m: u64) -> bool {
        self.members.contains(&m)
    }

    /// Same members, declared over a larger universe.
    pub fn embed(&self, universe: VarMask) -> Self {
        assert_eq!(
            self.universe & !universe,
            0,
            "embedding must enlarge the universe"
        );
        CombinationSet {
            universe,
            members: self.members.clone(),
        }
    }

    pub fn apply(&self, other: &Self, op: SetOp) -> Result<Self, SetError> {
        if self.universe != other.universe {
            return Err(SetError::UniverseMismatch(self.universe, other.universe));
        }
        let members = match op {
            SetOp::Intersection => self.members.intersection(&other.members).copied().collect(),
            SetOp::Union => self.members.union(&other.members).copied().collect(),
            SetOp::Difference => self.members.difference(&other.members).copied().collect(),
        };
        Ok(CombinationSet {
            universe: self.universe,
            members,
        })
    }

    pub fn intersection(&self, other: &Self) -> Result<Self, SetError> {
        self.apply(other, SetOp::Intersection)
    }

    pub fn union(&self, other: &Self) -> Result<Self, SetError> {
        self.apply(other, SetOp::Union)
    }

    pub fn difference(&self, other: &Self) -> Result<Self, SetError> {
        self.apply(other, SetOp::Difference)
    }

    /// `Q ⊔ Q′` over disjoint universes.
    pub fn join(&self, other: &Self) -> Result<Self, SetError> {
        if self.universe & other.universe != 0 {
            return Err(SetError::Overlap(self.universe, other.universe));
        }
        let members = self
            .members
            .iter()
            .flat_map(|a| other.members.iter().map(move |b| a | b))
            .collect();
        Ok(CombinationSet {
            universe: self.universe | other.universe,
            members,
        })
    }

    /// Flips membership of `x` in every combination.
    pub fn change(&self, x: Var) -> Result<Self, SetError> {
        let bit = 1u64 << x.0;
        if self.universe & bit == 0 {
            return Err(SetError::VarOutside(x.0));
        }
        let members = self.members.iter().map(|m| m ^ bit).collect();
        Ok(CombinationSet {
            universe: self.universe,
            members,
        })
    }

    /// `self ∪ other` where the universes may differ; the result lives on
    /// the union of both universes with members unchanged.
    fn union_embedded(&self, other: &Self) -> Self {
        let u = self.universe | other.universe;
        self.embed(u).union(&other.embed(u)).unwrap()
    }
}

fn mask(vt: &Vtree, v: VtreeId) -> VarMask {
    vt.var_mask(v)
}

fn uni(m: VarMask) -> CombinationSet {
    CombinationSet::universe_set(m)
}

fn nonempty_uni(m: VarMask) -> CombinationSet {
    let mut u = uni(m);
    u.members.remove(&0);
    u
}

fn join(a: &CombinationSet, b: &CombinationSet) -> CombinationSet {
    a.join(b).expect("evaluator joins are over disjoint vtrees")
}

fn vtree_children(vt: &Vtree, v: VtreeId) -> Result<(VtreeId, VtreeId), EvalError> {
    if vt.is_internal(v) {
        Ok((vt.left(v), vt.right(v)))
    } else {
        Err(EvalError(format!(
            "decomposition on non-internal vtree {v}"
        )))
    }
}

#[derive(Error, Debug, PartialEq, Eq)]
#[error("malformed diagram: {0}")]
pub struct EvalError(pub String);

/// Standard semantics of a structured decomposable diagram `(T², α)`
/// relative to `t1`; the diagram's vtree is its `secondary` field.
pub fn std_sem(vt: &Vtree, t1: VtreeId, d: &Esdd) -> Result<CombinationSet, EvalError> {
    let t2 = d.secondary;
    if !vt.is_subtree(t2, t1) {
        return Err(EvalError(format!("vtree {t2} is not below {t1}")));
    }
    let (m1, m2) = (mask(vt, t1), mask(vt, t2));
    let aux = uni(m1 & !m2);
    Ok(match &d.body {
        Body::Terminal(Terminal::One) => uni(m1),
        Body::Terminal(Terminal::Zero) => CombinationSet::empty(m1),
        Body::Terminal(Terminal::Eps) => aux.embed(m1),
        Body::Terminal(Terminal::NegEps) => join(&aux, &nonempty_uni(m2)),
        Body::Decomposition(es) => {
            let (l, r) = vtree_children(vt, t2)?;
            let mut main = CombinationSet::empty(m2);
            for (p, s) in es {
                main = main
                    .union(&join(&std_sem(vt, l, p)?, &std_sem(vt, r, s)?))
                    .unwrap();
            }
            join(&aux, &main)
        }
    })
}

/// Zero-suppressed semantics of a structured decomposable diagram: the
/// main combination set only. The result is declared over `vars(t1)`.
pub fn zero_sem(vt: &Vtree, t1: VtreeId, d: &Esdd) -> Result<CombinationSet, EvalError> {
    let t2 = d.secondary;
    if !vt.is_subtree(t2, t1) {
        return Err(EvalError(format!("vtree {t2} is not below {t1}")));
    }
    let (m1, m2) = (mask(vt, t1), mask(vt, t2));
    let main = match &d.body {
        Body::Terminal(Terminal::One) => uni(m2),
        Body::Terminal(Terminal::Zero) => CombinationSet::empty(m2),
        Body::Terminal(Terminal::Eps) => CombinationSet::unit(m2),
        Body::Terminal(Terminal::NegEps) => nonempty_uni(m2),
        Body::Decomposition(es) => {
            let (l, r) = vtree_children(vt, t2)?;
            let mut main = CombinationSet::empty(m2);
            for (p, s) in es {
                main = main
                    .union(&join(&zero_sem(vt, l, p)?, &zero_sem(vt, r, s)?))
                    .unwrap();
            }
            main
        }
    };
    Ok(main.embed(m1))
}

fn check_ext(vt: &Vtree, d: &Esdd) -> Result<(), EvalError> {
    if !vt.is_subtree(d.secondary, d.primary) {
        return Err(EvalError(format!(
            "secondary {} is not below primary {}",
            d.secondary, d.primary
        )));
    }
    if let Body::Decomposition(es) = &d.body {
        let (l, r) = vtree_children(vt, d.secondary)?;
        for (p, s) in es {
            if !vt.is_subtree(p.primary, l) || !vt.is_subtree(s.primary, r) {
                return Err(EvalError(format!(
                    "element vtrees escape the children of {}",
                    d.secondary
                )));
            }
        }
    }
    Ok(())
}

/// Standard semantics of an extended diagram, over `vars(primary)`.
pub fn std_ext_sem(vt: &Vtree, d: &Esdd) -> Result<CombinationSet, EvalError> {
    check_ext(vt, d)?;
    let (m1, m2) = (mask(vt, d.primary), mask(vt, d.secondary));
    let aux = uni(m1 & !m2);
    Ok(match &d.body {
        Body::Terminal(Terminal::One) => uni(m1),
        Body::Terminal(Terminal::Zero) => CombinationSet::empty(m1),
        Body::Terminal(Terminal::Eps) => aux.embed(m1),
        Body::Terminal(Terminal::NegEps) => join(&aux, &nonempty_uni(m2)),
        Body::Decomposition(es) => {
            let mut main = CombinationSet::empty(m2);
            for (p, s) in es {
                let term = join(&std_ext_sem(vt, p)?, &std_ext_sem(vt, s)?);
                main = main.union_embedded(&term);
            }
            join(&aux, &main)
        }
    })
}

/// Zero-suppressed semantics of an extended diagram, declared over
/// `vars(primary)`. Inside decompositions each element is padded with the
/// universe over the secondary vtree's variables not covered by the
/// element's primary vtrees.
pub fn zero_ext_sem(vt: &Vtree, d: &Esdd) -> Result<CombinationSet, EvalError> {
    check_ext(vt, d)?;
    let (m1, m2) = (mask(vt, d.primary), mask(vt, d.secondary));
    let main = match &d.body {
        Body::Terminal(Terminal::One) => uni(m2),
        Body::Terminal(Terminal::Zero) => CombinationSet::empty(m2),
        Body::Terminal(Terminal::Eps) => CombinationSet::unit(m2),
        Body::Terminal(Terminal::NegEps) => nonempty_uni(m2),
        Body::Decomposition(es) => {
            let mut main = CombinationSet::empty(m2);
            for (p, s) in es {
                let (pp, ps) = (mask(vt, p.primary), mask(vt, s.primary));
                let pad = uni(m2 & !(pp | ps));
                let term = join(&pad, &join(&zero_ext_sem(vt, p)?, &zero_ext_sem(vt, s)?));
                main = main.union(&term).unwrap();
            }
            main
        }
    };
    Ok(main.embed(m1))
}

/// The set a diagram of `kind` denotes over the whole vtree universe.
///
/// Standard-padded kinds are read with the zero-suppressed convention at the
/// root (variables outside the diagram are absent); kinds whose outer padding
/// is free treat the root as an element inside the full vtree, so variables
/// outside the primary vtree are unconstrained.
pub fn denotation(vt: &Vtree, kind: DiagramKind, d: &Esdd) -> Result<CombinationSet, EvalError> {
    let all = mask(vt, vt.root());
    match kind {
        DiagramKind::Sdd => std_sem(vt, vt.root(), d),
        DiagramKind::Zsdd => zero_sem(vt, vt.root(), d),
        DiagramKind::Nstsdd | DiagramKind::Estsdd => Ok(std_ext_sem(vt, d)?.embed(all)),
        DiagramKind::Nztsdd | DiagramKind::Eztsdd => {
            let pv = mask(vt, d.primary);
            Ok(join(&uni(all & !pv), &zero_ext_sem(vt, d)?))
        }
    }
}

/// The set a child denotes inside the region `region` of its parent.
pub fn effective(
    vt: &Vtree,
    kind: DiagramKind,
    region: VtreeId,
    d: &Esdd,
) -> Result<CombinationSet, EvalError> {
    let rm = mask(vt, region);
    match kind {
        DiagramKind::Sdd => std_sem(vt, region, d),
        DiagramKind::Zsdd => zero_sem(vt, region, d),
        DiagramKind::Nstsdd | DiagramKind::Estsdd => Ok(std_ext_sem(vt, d)?.embed(rm)),
        DiagramKind::Nztsdd | DiagramKind::Eztsdd => {
            let pv = mask(vt, d.primary);
            Ok(join(&uni(rm & !pv), &zero_ext_sem(vt, d)?))
        }
    }
}

/// A single reason a diagram fails its kind's definition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation(pub String);

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Checks terminal/vtree constraints and the partition conditions of every
/// decomposition, using the semantic evaluators for the latter.
pub fn validate(vt: &Vtree, kind: DiagramKind, d: &Esdd) -> Vec<Violation> {
    let mut out = Vec::new();
    validate_into(vt, kind, d, &mut out);
    out
}

fn validate_into(vt: &Vtree, kind: DiagramKind, d: &Esdd, out: &mut Vec<Violation>) {
    let mut bad = |m: String| out.push(Violation(m));
    let (t1, t2) = (d.primary, d.secondary);
    if !vt.is_subtree(t2, t1) {
        bad(format!("secondary {t2} not below primary {t1}"));
        return;
    }
    if !kind.is_tagged() && t1 != t2 {
        bad(format!("untagged node with distinct vtrees {t1}/{t2}"));
    }
    match &d.body {
        Body::Terminal(t) => {
            let ok = match (kind, t) {
                (_, Terminal::Zero) => t1.is_zero() && t2.is_zero(),
                (DiagramKind::Sdd, Terminal::One) => t2.is_zero(),
                (DiagramKind::Sdd, Terminal::Eps | Terminal::NegEps) => vt.is_leaf(t2),
                (DiagramKind::Zsdd, Terminal::Eps) => t2.is_zero(),
                (DiagramKind::Zsdd, Terminal::One | Terminal::NegEps) => vt.is_leaf(t2),
                (DiagramKind::Nstsdd | DiagramKind::Estsdd, Terminal::One) => false,
                (DiagramKind::Nstsdd | DiagramKind::Estsdd, Terminal::Eps) => t2.is_zero(),
                (DiagramKind::Nztsdd | DiagramKind::Eztsdd, Terminal::Eps) => false,
                (DiagramKind::Nztsdd | DiagramKind::Eztsdd, Terminal::One) => t2.is_zero(),
                (_, Terminal::NegEps) => vt.is_leaf(t2),
            };
            if !ok {
                bad(format!(
                    "terminal {t} not allowed at ({t1}, {t2}) in {kind}"
                ));
            }
        }
        Body::Decomposition(es) => {
            if !vt.is_internal(t2) {
                bad(format!("decomposition on non-internal vtree {t2}"));
                return;
            }
            if es.is_empty() {
                bad("decomposition without elements".into());
                return;
            }
            let (l, r) = (vt.left(t2), vt.right(t2));
            let lm = mask(vt, l);
            let mut primes = Vec::new();
            for (p, s) in es {
                if !vt.is_subtree(p.primary, l) || !vt.is_subtree(s.primary, r) {
                    bad(format!("element escapes the children of {t2}"));
                    continue;
                }
                match effective(vt, kind, l, p) {
                    Ok(q) => primes.push(q),
                    Err(e) => bad(e.0),
                }
            }
            if primes.len() == es.len() {
                for (i, p) in primes.iter().enumerate() {
                    if p.is_empty() {
                        bad(format!("prime {i} of node at {t2} is empty"));
                    }
                    for q in &primes[i + 1..] {
                        if !p.intersection(q).unwrap().is_empty() {
                            bad(format!("primes of node at {t2} overlap"));
                        }
                    }
                }
                let cover = primes
                    .iter()
                    .fold(CombinationSet::empty(lm), |a, p| a.union(p).unwrap());
                if cover != uni(lm) {
                    bad(format!("primes of node at {t2} are not exhaustive"));
                }
            }
            for (p, s) in es {
                validate_into(vt, kind, p, out);
                validate_into(vt, kind, s, out);
            }
        }
    }
}

/// Characteristic function view: the set of satisfying assignments of `f`
/// over `universe`.
pub fn from_predicate(universe: VarMask, f: impl Fn(u64) -> bool) -> CombinationSet {
    let all = CombinationSet::universe_set(universe);
    CombinationSet {
        universe,
        members: all.members.into_iter().filter(|&m| f(m)).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(u: VarMask, ms: &[u64]) -> CombinationSet {
        CombinationSet::new(u, ms.iter().copied()).unwrap()
    }

    #[test]
    fn table_operations() {
        // {{x1}} ⊔ {{x3,x4}} with x1..x4 at bits 0..3
        let a = set(0b0001, &[0b0001]);
        let b = set(0b1100, &[0b1100]);
        assert_eq!(a.join(&b).unwrap(), set(0b1101, &[0b1101]));
        let q = set(0b1, &[0b1, 0]);
        assert_eq!(q.change(Var(0)).unwrap(), set(0b1, &[0, 0b1]));
        let u0 = CombinationSet::universe_set(0);
        assert_eq!(u0, set(0, &[0]));
        assert_eq!(b.join(&u0).unwrap(), b);
    }

    #[test]
    fn universe_sets() {
        assert_eq!(
            CombinationSet::universe_set(0b11),
            set(0b11, &[0b11, 0b01, 0b10, 0])
        );
        for n in 0..=10 {
            assert_eq!(CombinationSet::universe_set((1u64 << n) - 1).len(), 1 << n);
        }
    }

    #[test]
    fn errors() {
        let a = set(0b01, &[0b01]);
        let b = set(0b11, &[0b01]);
        assert_eq!(
            a.union(&b).unwrap_err(),
            SetError::UniverseMismatch(0b01, 0b11)
        );
        assert!(matches!(a.join(&b).unwrap_err(), SetError::Overlap(..)));
        assert_eq!(a.change(Var(3)).unwrap_err(), SetError::VarOutside(3));
        assert!(CombinationSet::new(0b1, [0b10]).is_err());
    }

    fn all_sets(n: u32) -> Vec<CombinationSet> {
        let u = (1u64 << n) - 1;
        let k = 1u64 << n;
        (0..(1u64 << k))
            .map(|bits| from_predicate(u, |m| bits >> m & 1 == 1))
            .collect()
    }

    #[test]
    fn algebra_matches_boolean_functions() {
        // over 2 variables every pair; characteristic functions combine with ∧, ∨, ∧¬
        for n in 0..=2 {
            let sets = all_sets(n);
            for a in &sets {
                for b in &sets {
                    let u = a.universe();
                    let and = from_predicate(u, |m| a.contains(m) && b.contains(m));
                    let or = from_predicate(u, |m| a.contains(m) || b.contains(m));
                    let diff = from_predicate(u, |m| a.contains(m) && !b.contains(m));
                    assert_eq!(a.intersection(b).unwrap(), and);
                    assert_eq!(a.union(b).unwrap(), or);
                    assert_eq!(a.difference(b).unwrap(), diff);
                }
                for x in 0..n {
                    assert_eq!(a.change(Var(x)).unwrap().change(Var(x)).unwrap(), *a);
                }
            }
        }
    }

    #[test]
    fn join_cardinality() {
        let a = set(0b0011, &[0, 0b01, 0b11]);
        let b = set(0b1100, &[0b0100, 0b1000]);
        assert_eq!(a.join(&b).unwrap().len(), a.len() * b.len());
    }

    #[test]
    fn json_fixture_shape() {
        let a = set(0b11, &[0b01, 0b10]);
        let json = serde_json::to_string(&a).unwrap();
        assert_eq!(json, r#"{"universe":3,"members":[1,2]}"#);
        let back: CombinationSet = serde_json::from_str(&json).unwrap();
        assert_eq!(back, a);
    }

    fn example_vtree() -> Vtree {
        Vtree::balanced(&["x1", "x2", "x3", "x4"]).unwrap()
    }

    // Q = {{x1,x2,x3,x4},{x2,x3,x4},{x1,x3,x4},{x1,x4}}
    fn q() -> CombinationSet {
        set(0b1111, &[0b1111, 0b1110, 0b1101, 0b1001])
    }

    fn leaf(t: &Vtree, i: u32) -> VtreeId {
        t.leaf(Var(i))
    }

    #[test]
    fn std_sem_terminals() {
        let t = example_vtree();
        let r = t.root();
        let l = t.left(r);
        let one = Esdd::terminal(l, l, Terminal::One);
        assert_eq!(std_sem(&t, r, &one).unwrap(), uni(0b1111));
        let eps = Esdd::terminal(l, l, Terminal::Eps);
        assert_eq!(std_sem(&t, r, &eps).unwrap(), uni(0b1100).embed(0b1111));
    }

    #[test]
    fn sdd_of_fig1_denotes_q() {
        let t = example_vtree();
        let (r, l, rt) = (t.root(), t.left(t.root()), t.right(t.root()));
        let lit = |i, pos: bool| {
            let x = leaf(&t, i);
            Esdd::terminal(x, x, if pos { Terminal::NegEps } else { Terminal::Eps })
        };
        let bot = Esdd::terminal(VtreeId::ZERO, VtreeId::ZERO, Terminal::Zero);
        let dec = |v, es| Esdd::decomposition(v, v, es);
        // primes over (x1 x2), subs over (x3 x4)
        let p1 = lit(1, true);
        let p2 = dec(
            l,
            vec![(lit(0, true), lit(1, false)), (lit(0, false), bot.clone())],
        );
        let p3 = dec(
            l,
            vec![(lit(0, true), bot.clone()), (lit(0, false), lit(1, false))],
        );
        let s1 = dec(
            rt,
            vec![(lit(2, true), lit(3, true)), (lit(2, false), bot.clone())],
        );
        let s2 = lit(3, true);
        let root = dec(r, vec![(p1, s1), (p2, s2), (p3, bot)]);
        assert_eq!(root.size(), 9);
        assert_eq!(std_sem(&t, r, &root).unwrap(), q());
        assert!(validate(&t, DiagramKind::Sdd, &root).is_empty());
    }

    #[test]
    fn ext_sem_terminals() {
        let t = example_vtree();
        let r = t.root();
        let z = VtreeId::ZERO;
        assert!(std_ext_sem(&t, &Esdd::terminal(r, z, Terminal::Zero))
            .unwrap()
            .is_empty());
        assert_eq!(
            zero_ext_sem(&t, &Esdd::terminal(r, z, Terminal::Eps)).unwrap(),
            CombinationSet::unit(0b1111)
        );
    }

    fn fig1_stsdd(t: &Vtree) -> Esdd {
        let (r, l, rt) = (t.root(), t.left(t.root()), t.right(t.root()));
        let z = VtreeId::ZERO;
        let ne = |pv, i| Esdd::terminal(pv, leaf(t, i), Terminal::NegEps);
        let eps = Esdd::terminal(z, z, Terminal::Eps);
        let bot = Esdd::terminal(z, z, Terminal::Zero);
        let s1 = Esdd::decomposition(
            rt,
            rt,
            vec![
                (ne(leaf(t, 2), 2), ne(leaf(t, 3), 3)),
                (eps.clone(), bot.clone()),
            ],
        );
        Esdd::decomposition(
            r,
            r,
            vec![(ne(l, 1), s1), (ne(leaf(t, 0), 0), ne(rt, 3)), (eps, bot)],
        )
    }

    #[test]
    fn stsdd_of_fig1_denotes_q() {
        let t = example_vtree();
        let d = fig1_stsdd(&t);
        assert_eq!(d.size(), 5);
        assert_eq!(std_ext_sem(&t, &d).unwrap(), q());
        assert!(validate(&t, DiagramKind::Nstsdd, &d).is_empty());
    }

    #[test]
    fn validate_terminal_rules() {
        let t = example_vtree();
        let z = VtreeId::ZERO;
        let r = t.root();
        assert!(validate(
            &t,
            DiagramKind::Nstsdd,
            &Esdd::terminal(z, z, Terminal::Zero)
        )
        .is_empty());
        assert_eq!(
            validate(
                &t,
                DiagramKind::Nstsdd,
                &Esdd::terminal(r, r, Terminal::One)
            )
            .len(),
            1
        );
        assert_eq!(
            validate(
                &t,
                DiagramKind::Nztsdd,
                &Esdd::terminal(r, z, Terminal::Eps)
            )
            .len(),
            1
        );
        assert!(validate(
            &t,
            DiagramKind::Nztsdd,
            &Esdd::terminal(r, z, Terminal::One)
        )
        .is_empty());
    }

    #[test]
    fn validate_catches_overlapping_primes() {
        let t = example_vtree();
        let (r, l, rt) = (t.root(), t.left(t.root()), t.right(t.root()));
        let z = VtreeId::ZERO;
        // universe over the left half used twice: overlapping and non-partitioning
        let u = Esdd::terminal(l, z, Terminal::Eps);
        let s = Esdd::terminal(rt, leaf(&t, 3), Terminal::NegEps);
        let bot = Esdd::terminal(z, z, Terminal::Zero);
        let d = Esdd::decomposition(r, r, vec![(u.clone(), s), (u, bot)]);
        let v = validate(&t, DiagramKind::Nstsdd, &d);
        assert!(v.iter().any(|v| v.0.contains("overlap")), "{v:?}");
    }
}
