//! Compression, trimming and the two normalizations.
//!
//! All four rule systems share one rule table. Each kind supplies two
//! padding diagrams per vtree: `outer(r)` fills variables outside a primary
//! vtree and `inner(r)` fills variables between primary and secondary
//! vtrees. Trimming rules recognise elements whose prime or sub is such a
//! padding diagram and move the node's vtrees inward. The untagged kinds
//! only use the rules that keep the primary and secondary vtrees equal.
//!
//! Rules fire innermost-first: children are canonical before a parent is
//! matched, and every replacement is itself built canonically, so a single
//! firing per call reaches the fixpoint.

use std::fmt;

use crate::manager::{Dd, Manager, NodeBody};
use crate::node::{Body, Esdd};
use crate::oracle;
use crate::vtree::VtreeId;

/// Rule identifiers. Trimming rules are named after the patterns they
/// remove; `Compress`, `Normalize1` and `Normalize2` label the other
/// rewrites in traces.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Rule {
    Compress,
    /// Every sub is empty.
    C,
    /// Primary equals secondary and the only live sub is outer padding.
    A1,
    /// Primary equals secondary and the only live prime is outer padding.
    A2,
    /// Secondary is a child of primary and the main set is pure padding.
    B,
    /// Subs are inner padding and the prime's primary is the left child.
    D1,
    /// Primes are inner padding and the sub's primary is the right child.
    D2,
    /// As `D2`, sub lives in the left part of the right child.
    E,
    /// As `D2`, sub lives in the right part of the right child.
    F,
    /// As `D1`, prime lives in the left part of the left child.
    G,
    /// As `D1`, prime lives in the right part of the left child.
    H,
    Normalize1,
    Normalize2,
}

impl Rule {
    pub const TRIM: [Rule; 10] = [
        Rule::C,
        Rule::A1,
        Rule::A2,
        Rule::B,
        Rule::D1,
        Rule::D2,
        Rule::E,
        Rule::F,
        Rule::G,
        Rule::H,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Rule::Compress => "compress",
            Rule::C => "c",
            Rule::A1 => "a1",
            Rule::A2 => "a2",
            Rule::B => "b",
            Rule::D1 => "d1",
            Rule::D2 => "d2",
            Rule::E => "e",
            Rule::F => "f",
            Rule::G => "g",
            Rule::H => "h",
            Rule::Normalize1 => "normalize1",
            Rule::Normalize2 => "normalize2",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Rule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Rule::TRIM
            .into_iter()
            .chain([Rule::Compress, Rule::Normalize1, Rule::Normalize2])
            .find(|r| r.name() == s)
            .ok_or_else(|| format!("unknown rule `{s}`"))
    }
}

/// Result of a normalization: either the input itself, or an uninterned
/// decomposition over the requested vtrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Normalized {
    Same(Dd),
    Node {
        primary: VtreeId,
        secondary: VtreeId,
        elements: Vec<(Dd, Dd)>,
    },
}

impl Manager {
    /// Compresses and trims `(pv, sv, elems)` into a canonical diagram. The
    /// elements must be canonical and their primes must partition the left
    /// universe of `sv`.
    pub(crate) fn mk_decomp(&mut self, pv: VtreeId, sv: VtreeId, elems: Vec<(Dd, Dd)>) -> Dd {
        if self.check.is_some() {
            self.check_partition(pv, sv, &elems);
        }
        let elems = self.compress(pv, sv, elems);
        if elems.is_empty() {
            return self.empty();
        }
        match self.match_trim(pv, sv, &elems) {
            Some((rule, out)) => {
                self.record(rule, pv, sv, &elems, out);
                out
            }
            None => self.intern(pv, sv, NodeBody::Decomposition(elems.into_boxed_slice())),
        }
    }

    /// `(pv, sv, body)` with a body taken from an existing node.
    pub(crate) fn mk_any(&mut self, pv: VtreeId, sv: VtreeId, body: NodeBody) -> Dd {
        match body {
            NodeBody::Terminal(t) => self.term(pv, sv, t),
            NodeBody::Decomposition(es) => self.mk_decomp(pv, sv, es.into_vec()),
        }
    }

    /// Drops empty primes and merges elements with equal subs.
    pub fn compress(&mut self, pv: VtreeId, sv: VtreeId, elems: Vec<(Dd, Dd)>) -> Vec<(Dd, Dd)> {
        let bot = self.empty();
        let mut live: Vec<(Dd, Dd)> = elems.iter().copied().filter(|&(p, _)| p != bot).collect();
        live.sort_by_key(|&(p, s)| (s, p));
        let mut out: Vec<(Dd, Dd)> = Vec::with_capacity(live.len());
        let mut merged = false;
        for (p, s) in live {
            match out.last_mut() {
                Some(last) if last.1 == s => {
                    let q = last.0;
                    last.0 = self.apply(q, p, crate::ops::SetOp::Union);
                    merged = true;
                }
                _ => out.push((p, s)),
            }
        }
        out.sort_unstable();
        if merged {
            self.firings += 1;
            if self.check.is_some() || self.trace.is_some() {
                let before = Normalized::Node {
                    primary: pv,
                    secondary: sv,
                    elements: elems,
                };
                let after = Normalized::Node {
                    primary: pv,
                    secondary: sv,
                    elements: out.clone(),
                };
                self.verify(Rule::Compress, pv, &before, &after);
            }
        }
        out
    }

    fn match_trim(&mut self, pv: VtreeId, sv: VtreeId, elems: &[(Dd, Dd)]) -> Option<(Rule, Dd)> {
        let bot = self.empty();
        let mut live = elems.iter().filter(|&&(_, s)| s != bot);
        let first = live.next().copied();
        let single = if live.next().is_none() { first } else { None };
        let on = |m: &Manager, r: Rule| !m.disabled.contains(&r);

        let Some((p, s)) = single else {
            if first.is_none() && on(self, Rule::C) {
                return Some((Rule::C, bot));
            }
            return None;
        };
        let vt = self.vtree();
        let (x, y) = (vt.left(sv), vt.right(sv));
        if pv == sv {
            if on(self, Rule::A1) && s == self.outer(y) {
                return Some((Rule::A1, p));
            }
            if on(self, Rule::A2) && p == self.outer(x) {
                return Some((Rule::A2, s));
            }
        }
        if !self.kind().is_tagged() {
            return None;
        }
        let vt = self.vtree();
        if on(self, Rule::B)
            && vt.parent(sv) == Some(pv)
            && p == self.outer(x)
            && s == self.outer(y)
        {
            let sib = self.vtree().sibling(sv).unwrap();
            return Some((Rule::B, self.inner(sib)));
        }
        if p == self.inner(x) {
            let t3 = s.primary();
            if t3 == y {
                if on(self, Rule::D2) {
                    let (ssv, body) = (self.secondary(s), self.body(s).clone());
                    return Some((Rule::D2, self.mk_any(pv, ssv, body)));
                }
            } else if self.vtree().is_internal(y) {
                let (yl, yr) = (self.vtree().left(y), self.vtree().right(y));
                if self.vtree().is_subtree(t3, yl) {
                    if on(self, Rule::E) {
                        let pad = self.outer(yr);
                        let rest = self.complement(s, yl);
                        return Some((Rule::E, self.mk_decomp(pv, y, vec![(s, pad), (rest, bot)])));
                    }
                } else if on(self, Rule::F) {
                    let pad = self.outer(yl);
                    let rest = self.complement(pad, yl);
                    return Some((Rule::F, self.mk_decomp(pv, y, vec![(pad, s), (rest, bot)])));
                }
            }
        }
        if s == self.inner(y) {
            let t3 = p.primary();
            if t3 == x {
                if on(self, Rule::D1) {
                    let (psv, body) = (self.secondary(p), self.body(p).clone());
                    return Some((Rule::D1, self.mk_any(pv, psv, body)));
                }
            } else if self.vtree().is_internal(x) {
                let (xl, xr) = (self.vtree().left(x), self.vtree().right(x));
                if self.vtree().is_subtree(t3, xl) {
                    if on(self, Rule::G) {
                        let pad = self.outer(xr);
                        let rest = self.complement(p, xl);
                        return Some((Rule::G, self.mk_decomp(pv, x, vec![(p, pad), (rest, bot)])));
                    }
                } else if on(self, Rule::H) {
                    let pad = self.outer(xl);
                    let rest = self.complement(pad, xl);
                    return Some((Rule::H, self.mk_decomp(pv, x, vec![(pad, p), (rest, bot)])));
                }
            }
        }
        None
    }

    fn record(&mut self, rule: Rule, pv: VtreeId, sv: VtreeId, elems: &[(Dd, Dd)], out: Dd) {
        self.firings += 1;
        if self.check.is_none() && self.trace.is_none() {
            return;
        }
        let before = Normalized::Node {
            primary: pv,
            secondary: sv,
            elements: elems.to_vec(),
        };
        self.verify(rule, pv, &before, &Normalized::Same(out));
        if let Some(c) = self.check.as_mut() {
            // each trimming step moves the vtree pair strictly inward
            let vt = &self.vtree;
            let measure = |a: VtreeId, b: VtreeId| (vt.subtree_size(a), vt.subtree_size(b));
            let osv = self.nodes[out.node.index()].as_ref().unwrap().sv;
            if measure(out.pv, osv) >= measure(pv, sv) {
                c.violations.push(format!(
                    "{}:{rule} did not shrink ({pv},{sv}) -> ({},{osv})",
                    self.kind.rules(),
                    out.pv
                ));
            }
        }
    }

    /// Oracle check and trace line for one firing.
    fn verify(&mut self, rule: Rule, region: VtreeId, before: &Normalized, after: &Normalized) {
        let system = self.kind.rules();
        if let Some(trace) = self.trace.as_mut() {
            let b = describe(before);
            let a = describe(after);
            trace.push(format!("rule={system}:{rule} before={b} after={a}"));
        }
        if self.check.is_none() {
            return;
        }
        let sb = self.normalized_set(before, region);
        let sa = self.normalized_set(after, region);
        let c = self.check.as_mut().unwrap();
        c.firings += 1;
        if sb != sa {
            c.violations.push(format!(
                "{system}:{rule} changed the set over {region}: {} -> {}",
                describe(before),
                describe(after)
            ));
        }
    }

    fn check_partition(&mut self, pv: VtreeId, sv: VtreeId, elems: &[(Dd, Dd)]) {
        let elements = drop_empty_primes(elems.to_vec(), self.empty());
        let raw = self.export_normalized(&Normalized::Node {
            primary: pv,
            secondary: sv,
            elements,
        });
        let Esdd {
            body: Body::Decomposition(es),
            ..
        } = &raw
        else {
            return;
        };
        let shallow = Esdd::decomposition(
            pv,
            sv,
            es.iter()
                .map(|(p, _)| {
                    (
                        p.clone(),
                        Esdd::terminal(VtreeId::ZERO, VtreeId::ZERO, crate::Terminal::Zero),
                    )
                })
                .collect(),
        );
        let problems: Vec<String> = oracle::validate(&self.vtree, self.kind, &shallow)
            .into_iter()
            .filter(|v| v.0.contains("prime"))
            .map(|v| v.0)
            .collect();
        if let Some(c) = self.check.as_mut() {
            c.violations.extend(
                problems
                    .into_iter()
                    .map(|p| format!("input to ({pv},{sv}): {p}")),
            );
        }
    }

    /// Explicit tree of a possibly uninterned decomposition.
    pub fn export_normalized(&self, n: &Normalized) -> Esdd {
        match n {
            Normalized::Same(d) => self.export(*d),
            Normalized::Node {
                primary,
                secondary,
                elements,
            } => Esdd::decomposition(
                *primary,
                *secondary,
                elements
                    .iter()
                    .map(|&(p, s)| (self.export(p), self.export(s)))
                    .collect(),
            ),
        }
    }

    fn normalized_set(&self, n: &Normalized, region: VtreeId) -> oracle::CombinationSet {
        oracle::effective(&self.vtree, self.kind, region, &self.export_normalized(n))
            .expect("well-formed rewrite operand")
    }

    /// Re-expresses `f` with primary vtree `t3 ⊇ pv(f)`. The result is a
    /// two-element decomposition over `(t3, t3)` unless nothing changes.
    pub fn normalize1(&mut self, f: Dd, t3: VtreeId) -> Result<Normalized, crate::DdError> {
        if !self.vtree().is_subtree(f.primary(), t3) {
            return Err(crate::DdError::Vtree(format!(
                "{} is not below {t3}",
                f.primary()
            )));
        }
        if f.primary() == t3 || self.is_empty(f) {
            return Ok(Normalized::Same(f));
        }
        let (l, r) = (self.vtree().left(t3), self.vtree().right(t3));
        let bot = self.empty();
        let elements = if self.vtree().is_subtree(f.primary(), l) {
            let pad = self.outer(r);
            let rest = self.complement(f, l);
            vec![(f, pad), (rest, bot)]
        } else {
            let pad = self.outer(l);
            let rest = self.complement(pad, l);
            vec![(pad, f), (rest, bot)]
        };
        let out = Normalized::Node {
            primary: t3,
            secondary: t3,
            elements: drop_empty_primes(elements, bot),
        };
        self.note_normalization(Rule::Normalize1, f, t3, &out);
        Ok(out)
    }

    /// Re-expresses `f` with secondary vtree `t4`, where
    /// `sv(f) ≼ t4 ≼ pv(f)`; the primary vtree is kept.
    pub fn normalize2(&mut self, f: Dd, t4: VtreeId) -> Result<Normalized, crate::DdError> {
        let sv = self.secondary(f);
        let vt = self.vtree();
        if !vt.is_subtree(sv, t4) || !vt.is_subtree(t4, f.primary()) {
            return Err(crate::DdError::Vtree(format!(
                "{t4} is not between {sv} and {}",
                f.primary()
            )));
        }
        if t4 == sv || self.is_empty(f) {
            return Ok(Normalized::Same(f));
        }
        let (l, r) = (vt.left(t4), vt.right(t4));
        let body = self.body(f).clone();
        let bot = self.empty();
        let elements = if vt.is_subtree(sv, l) {
            let g = self.mk_any(l, sv, body);
            let pad = self.inner(r);
            let rest = self.complement(g, l);
            vec![(g, pad), (rest, bot)]
        } else {
            let g = self.mk_any(r, sv, body);
            let pad = self.inner(l);
            let rest = self.complement(pad, l);
            vec![(pad, g), (rest, bot)]
        };
        let out = Normalized::Node {
            primary: f.primary(),
            secondary: t4,
            elements: drop_empty_primes(elements, bot),
        };
        self.note_normalization(Rule::Normalize2, f, f.primary(), &out);
        Ok(out)
    }

    fn note_normalization(&mut self, rule: Rule, f: Dd, region: VtreeId, out: &Normalized) {
        self.firings += 1;
        if self.check.is_some() || self.trace.is_some() {
            self.verify(rule, region, &Normalized::Same(f), out);
        }
    }

    /// Elements of `f` viewed as a decomposition over `w`, with `f` lifted
    /// to primary vtree `v` first. Requires `pv(f) = v` or `w = v`.
    pub(crate) fn expand(&mut self, f: Dd, v: VtreeId, w: VtreeId) -> Vec<(Dd, Dd)> {
        let n = if f.primary() == v {
            self.normalize2(f, w)
        } else {
            self.normalize1(f, v)
        };
        match n.expect("expansion targets enclose the operand") {
            Normalized::Same(d) => self.elements(d).to_vec(),
            Normalized::Node { elements, .. } => elements,
        }
    }

    /// Canonical form of an uninterned decomposition, as by compressing and
    /// trimming.
    pub fn trim(&mut self, n: &Normalized) -> Dd {
        match n {
            Normalized::Same(d) => *d,
            Normalized::Node {
                primary,
                secondary,
                elements,
            } => self.mk_decomp(*primary, *secondary, elements.clone()),
        }
    }
}

fn drop_empty_primes(elems: Vec<(Dd, Dd)>, bot: Dd) -> Vec<(Dd, Dd)> {
    elems.into_iter().filter(|&(p, _)| p != bot).collect()
}

fn describe(n: &Normalized) -> String {
    match n {
        Normalized::Same(d) => d.to_string(),
        Normalized::Node {
            primary,
            secondary,
            elements,
        } => {
            let es: Vec<String> = elements.iter().map(|(p, s)| format!("({p},{s})")).collect();
            format!("[{primary}|{secondary}:{}]", es.join(""))
        }
    }
}
