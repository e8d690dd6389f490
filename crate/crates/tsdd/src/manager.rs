//! The node store: hash-consing, reference counts, garbage collection and
//! the per-diagram metrics (size, byte accounting, model count).

use std::collections::{HashMap, HashSet};
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::kind::{DiagramKind, Padding};
use crate::node::{Body, Esdd, Terminal};
use crate::oracle::{self, CombinationSet};
use crate::rules::Rule;
use crate::vtree::{Var, Vtree, VtreeId};

/// Index of a node in a [`Manager`]'s store.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct NodeId(u32);

impl NodeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n{}", self.0)
    }
}

/// A reference to a canonical diagram: a node plus the primary vtree of the
/// edge that points at it.
///
/// In node-based kinds the primary vtree is part of the node's identity, so
/// `pv` is redundant; in edge-based kinds one node may be reached through
/// edges carrying different primary vtrees. Two `Dd`s of one manager denote
/// the same set exactly when they are equal.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Dd {
    pub(crate) node: NodeId,
    pub(crate) pv: VtreeId,
}

impl Dd {
    pub fn node(self) -> NodeId {
        self.node
    }

    /// Primary vtree.
    pub fn primary(self) -> VtreeId {
        self.pv
    }
}

impl fmt::Display for Dd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.node, self.pv)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub(crate) enum NodeBody {
    Terminal(Terminal),
    Decomposition(Box<[(Dd, Dd)]>),
}

#[derive(Clone, Debug)]
pub(crate) struct NodeData {
    /// `VtreeId::ZERO` for every node of an edge-based manager.
    pub(crate) pv: VtreeId,
    pub(crate) sv: VtreeId,
    pub(crate) body: NodeBody,
    pub(crate) refs: u32,
}

type Key = (VtreeId, VtreeId, NodeBody);

#[derive(Error, Debug, PartialEq, Eq)]
pub enum DdError {
    #[error("terminal {t} not allowed at ({pv}, {sv}) in {kind}")]
    TerminalConstraint {
        kind: DiagramKind,
        t: Terminal,
        pv: VtreeId,
        sv: VtreeId,
    },
    #[error("vtree constraint violated: {0}")]
    Vtree(String),
    #[error("overlapping variable sets: {0} and {1}")]
    OverlappingVars(VtreeId, VtreeId),
    #[error("unknown variable `{0}`")]
    UnknownVar(String),
    #[error("variable {var} is outside vtree {vtree}")]
    VarOutside { var: String, vtree: VtreeId },
    #[error("reference count of {0} would drop below zero")]
    DerefUnderflow(NodeId),
}

/// Small-set encoding over a single leaf `x`: bit 0 is `∅`, bit 1 is `{x}`.
pub(crate) type LeafSet = u8;
pub(crate) const LEAF_EMPTY: LeafSet = 0b01;
pub(crate) const LEAF_X: LeafSet = 0b10;
pub(crate) const LEAF_ALL: LeafSet = 0b11;

#[derive(Default, Debug, Clone)]
pub(crate) struct CheckState {
    pub(crate) firings: u64,
    pub(crate) violations: Vec<String>,
}

/// Owner of all diagrams of one kind over one vtree.
pub struct Manager {
    pub(crate) kind: DiagramKind,
    pub(crate) vtree: Vtree,
    pub(crate) nodes: Vec<Option<NodeData>>,
    free: Vec<u32>,
    unique: HashMap<Key, NodeId>,
    pub(crate) apply_cache: HashMap<(u8, Dd, Dd), Dd>,
    pub(crate) change_cache: HashMap<(Dd, Var), Dd>,
    units: Vec<Option<Dd>>,
    universes: Vec<Option<Dd>>,
    pub(crate) literals: HashMap<(VtreeId, Var), Dd>,
    bot: Dd,
    base: Dd,
    pub(crate) check: Option<CheckState>,
    pub(crate) trace: Option<Vec<String>>,
    pub(crate) disabled: HashSet<Rule>,
    pub(crate) firings: u64,
}

impl fmt::Debug for Manager {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Manager")
            .field("kind", &self.kind)
            .field("vars", &self.vtree.var_count())
            .field("live_nodes", &self.live_nodes())
            .finish()
    }
}

impl Manager {
    pub fn new(kind: DiagramKind, vtree: Vtree) -> Manager {
        let n = vtree.node_count();
        let z = VtreeId::ZERO;
        let mut m = Manager {
            kind,
            vtree,
            nodes: Vec::new(),
            free: Vec::new(),
            unique: HashMap::new(),
            apply_cache: HashMap::new(),
            change_cache: HashMap::new(),
            units: vec![None; n],
            universes: vec![None; n],
            literals: HashMap::new(),
            bot: Dd {
                node: NodeId(0),
                pv: z,
            },
            base: Dd {
                node: NodeId(0),
                pv: z,
            },
            check: None,
            trace: None,
            disabled: HashSet::new(),
            firings: 0,
        };
        m.bot = m.intern(z, z, NodeBody::Terminal(Terminal::Zero));
        let t = match kind.outer_padding() {
            Padding::Zero => Terminal::Eps,
            Padding::Free => Terminal::One,
        };
        m.base = m.intern(z, z, NodeBody::Terminal(t));
        m
    }

    pub fn kind(&self) -> DiagramKind {
        self.kind
    }

    pub fn vtree(&self) -> &Vtree {
        &self.vtree
    }

    // ---- store -------------------------------------------------------------

    pub(crate) fn data(&self, n: NodeId) -> &NodeData {
        self.nodes[n.index()].as_ref().expect("dangling node id")
    }

    pub fn secondary(&self, d: Dd) -> VtreeId {
        self.data(d.node).sv
    }

    pub(crate) fn body(&self, d: Dd) -> &NodeBody {
        &self.data(d.node).body
    }

    pub fn terminal(&self, d: Dd) -> Option<Terminal> {
        match self.body(d) {
            NodeBody::Terminal(t) => Some(*t),
            NodeBody::Decomposition(_) => None,
        }
    }

    pub fn elements(&self, d: Dd) -> &[(Dd, Dd)] {
        match self.body(d) {
            NodeBody::Terminal(_) => &[],
            NodeBody::Decomposition(es) => es,
        }
    }

    /// Interns `(pv, sv, body)` as is; callers guarantee canonicity.
    pub(crate) fn intern(&mut self, pv: VtreeId, sv: VtreeId, body: NodeBody) -> Dd {
        let key_pv = if self.kind.is_edge_based() {
            VtreeId::ZERO
        } else {
            pv
        };
        let key = (key_pv, sv, body);
        if let Some(&n) = self.unique.get(&key) {
            return Dd { node: n, pv };
        }
        if let NodeBody::Decomposition(es) = &key.2 {
            for &(p, s) in es.iter() {
                self.bump(p.node);
                self.bump(s.node);
            }
        }
        let data = NodeData {
            pv: key_pv,
            sv,
            body: key.2.clone(),
            refs: 0,
        };
        let n = match self.free.pop() {
            Some(i) => {
                self.nodes[i as usize] = Some(data);
                NodeId(i)
            }
            None => {
                self.nodes.push(Some(data));
                NodeId(self.nodes.len() as u32 - 1)
            }
        };
        self.unique.insert(key, n);
        Dd { node: n, pv }
    }

    fn bump(&mut self, n: NodeId) {
        self.nodes[n.index()].as_mut().unwrap().refs += 1;
    }

    pub(crate) fn term(&mut self, pv: VtreeId, sv: VtreeId, t: Terminal) -> Dd {
        self.intern(pv, sv, NodeBody::Terminal(t))
    }

    /// Interns a terminal after checking the kind's terminal constraints.
    pub fn make_terminal(&mut self, t: Terminal, pv: VtreeId, sv: VtreeId) -> Result<Dd, DdError> {
        let probe = Esdd::terminal(pv, sv, t);
        let kind = self.kind;
        if !oracle::validate(&self.vtree, kind, &probe).is_empty() {
            return Err(DdError::TerminalConstraint { kind, t, pv, sv });
        }
        Ok(self.term(pv, sv, t))
    }

    // ---- distinguished diagrams --------------------------------------------

    /// The empty set.
    pub fn empty(&self) -> Dd {
        self.bot
    }

    pub fn is_empty(&self, d: Dd) -> bool {
        d == self.bot
    }

    /// The non-empty diagram with an empty primary vtree: `{∅}` over no variables.
    pub(crate) fn base(&self) -> Dd {
        self.base
    }

    /// `{∅}` over `vars(r)`.
    pub fn unit(&mut self, r: VtreeId) -> Dd {
        let Some(i) = r.index() else { return self.base };
        if let Some(d) = self.units[i] {
            return d;
        }
        let d = match self.kind {
            DiagramKind::Nstsdd | DiagramKind::Estsdd | DiagramKind::Zsdd => self.base,
            DiagramKind::Nztsdd | DiagramKind::Eztsdd => self.term(r, VtreeId::ZERO, Terminal::One),
            DiagramKind::Sdd => {
                if self.vtree.is_leaf(r) {
                    self.term(r, r, Terminal::Eps)
                } else {
                    let (l, rr) = (self.vtree.left(r), self.vtree.right(r));
                    let (ul, ur) = (self.unit(l), self.unit(rr));
                    let rest = self.complement(ul, l);
                    let bot = self.bot;
                    self.mk_decomp(r, r, vec![(ul, ur), (rest, bot)])
                }
            }
        };
        self.retain(d);
        self.units[i] = Some(d);
        d
    }

    /// `U_{vars(r)}`.
    pub fn universe(&mut self, r: VtreeId) -> Dd {
        let Some(i) = r.index() else { return self.base };
        if let Some(d) = self.universes[i] {
            return d;
        }
        let d = match self.kind {
            DiagramKind::Sdd | DiagramKind::Nztsdd | DiagramKind::Eztsdd => self.base,
            DiagramKind::Nstsdd | DiagramKind::Estsdd => self.term(r, VtreeId::ZERO, Terminal::Eps),
            DiagramKind::Zsdd => {
                if self.vtree.is_leaf(r) {
                    self.term(r, r, Terminal::One)
                } else {
                    let (l, rr) = (self.vtree.left(r), self.vtree.right(r));
                    let (ul, ur) = (self.universe(l), self.universe(rr));
                    self.mk_decomp(r, r, vec![(ul, ur)])
                }
            }
        };
        self.retain(d);
        self.universes[i] = Some(d);
        d
    }

    /// The diagram filling `r` with the padding of variables outside a
    /// primary vtree.
    pub(crate) fn outer(&mut self, r: VtreeId) -> Dd {
        match self.kind.outer_padding() {
            Padding::Zero => self.unit(r),
            Padding::Free => self.universe(r),
        }
    }

    /// The diagram filling `r` with the padding between primary and
    /// secondary vtrees.
    pub(crate) fn inner(&mut self, r: VtreeId) -> Dd {
        match self.kind.inner_padding() {
            Padding::Zero => self.unit(r),
            Padding::Free => self.universe(r),
        }
    }

    /// Canonical diagram whose inner set over `v` is
    /// `Pin(vars(v) \ {x}) ⊔ set` for the leaf `x ≼ v`.
    pub(crate) fn mk_leaf(&mut self, v: VtreeId, x: VtreeId, set: LeafSet) -> Dd {
        debug_assert!(self.vtree.is_leaf(x) && self.vtree.is_subtree(x, v));
        let z = VtreeId::ZERO;
        if set == 0 {
            return self.bot;
        }
        match self.kind {
            DiagramKind::Sdd => match set {
                LEAF_X => self.term(x, x, Terminal::NegEps),
                LEAF_EMPTY => self.term(x, x, Terminal::Eps),
                _ => self.base,
            },
            DiagramKind::Zsdd => match set {
                LEAF_X => self.term(x, x, Terminal::NegEps),
                LEAF_EMPTY => self.base,
                _ => self.term(x, x, Terminal::One),
            },
            DiagramKind::Nstsdd | DiagramKind::Estsdd => match set {
                LEAF_X => self.term(v, x, Terminal::NegEps),
                LEAF_ALL => self.term(v, z, Terminal::Eps),
                _ if v == x => self.base,
                _ => {
                    // {∅} on x, everything else in v free
                    let p = self.vtree.parent(x).unwrap();
                    let sib = self.vtree.sibling(x).unwrap();
                    let (ux, usib) = (self.base, self.universe(sib));
                    if self.vtree.left(p) == x {
                        let nx = self.term(x, x, Terminal::NegEps);
                        let bot = self.bot;
                        self.mk_decomp(v, p, vec![(ux, usib), (nx, bot)])
                    } else {
                        self.mk_decomp(v, p, vec![(usib, ux)])
                    }
                }
            },
            DiagramKind::Nztsdd | DiagramKind::Eztsdd => match set {
                LEAF_X => self.term(v, x, Terminal::NegEps),
                LEAF_EMPTY => self.term(v, z, Terminal::One),
                _ if v == x => self.base,
                _ => {
                    // x free, everything else in v absent
                    let p = self.vtree.parent(x).unwrap();
                    let sib = self.vtree.sibling(x).unwrap();
                    let usib = self.unit(sib);
                    let top = self.base;
                    if self.vtree.left(p) == x {
                        self.mk_decomp(v, p, vec![(top, usib)])
                    } else {
                        let rest = self.complement(usib, sib);
                        let bot = self.bot;
                        self.mk_decomp(v, p, vec![(usib, top), (rest, bot)])
                    }
                }
            },
        }
    }

    /// The main set of `d` restricted to a leaf or empty `w ⊇ sv(d)`, padded
    /// from `sv` to `w` with the inner padding. Only valid when `sv(d) ≼ w`
    /// and `w` has no internal structure.
    pub(crate) fn leaf_inner(&self, d: Dd, w: VtreeId) -> LeafSet {
        let sv = self.secondary(d);
        let t = self.terminal(d).expect("leaf-level node is a terminal");
        if sv.is_zero() {
            let present = !matches!(t, Terminal::Zero);
            if !present {
                return 0;
            }
            if w.is_zero() {
                return LEAF_EMPTY;
            }
            return match self.kind.inner_padding() {
                Padding::Free => LEAF_ALL,
                Padding::Zero => LEAF_EMPTY,
            };
        }
        match t {
            Terminal::One => LEAF_ALL,
            Terminal::Eps => LEAF_EMPTY,
            Terminal::NegEps => LEAF_X,
            Terminal::Zero => 0,
        }
    }

    /// Effective set of `d` inside a leaf (or empty) region `w ⊇ pv(d)`.
    pub(crate) fn leaf_effective(&self, d: Dd, w: VtreeId) -> LeafSet {
        if d.pv == w || d.pv.is_zero() && w.is_zero() {
            return self.leaf_inner(d, w);
        }
        // pv(d) is the empty vtree inside a real leaf
        let s = self.leaf_inner(d, VtreeId::ZERO);
        if s == 0 {
            return 0;
        }
        match self.kind.outer_padding() {
            Padding::Free => LEAF_ALL,
            Padding::Zero => LEAF_EMPTY,
        }
    }

    // ---- reference counting ------------------------------------------------

    /// Registers an external handle on `d`.
    pub fn retain(&mut self, d: Dd) {
        self.bump(d.node);
    }

    /// Drops an external handle on `d`.
    pub fn release(&mut self, d: Dd) -> Result<(), DdError> {
        let data = self.nodes[d.node.index()]
            .as_mut()
            .expect("dangling node id");
        if data.refs == 0 {
            return Err(DdError::DerefUnderflow(d.node));
        }
        data.refs -= 1;
        Ok(())
    }

    pub fn refcount(&self, d: Dd) -> u32 {
        self.data(d.node).refs
    }

    /// Reclaims every decomposition node with no parents and no external
    /// handles, transitively. Clears the operation caches.
    pub fn gc(&mut self) -> usize {
        self.apply_cache.clear();
        self.change_cache.clear();
        let mut work: Vec<NodeId> = (0..self.nodes.len() as u32)
            .map(NodeId)
            .filter(|&n| matches!(&self.nodes[n.index()], Some(d) if d.refs == 0))
            .collect();
        let mut reclaimed = 0;
        while let Some(n) = work.pop() {
            let Some(data) = self.nodes[n.index()].as_ref() else {
                continue;
            };
            if data.refs != 0 {
                continue;
            }
            let NodeBody::Decomposition(es) = &data.body else {
                continue;
            };
            let children: Vec<NodeId> = es.iter().flat_map(|&(p, s)| [p.node, s.node]).collect();
            let data = self.nodes[n.index()].take().unwrap();
            self.unique.remove(&(data.pv, data.sv, data.body));
            self.free.push(n.0);
            reclaimed += 1;
            for c in children {
                let cd = self.nodes[c.index()].as_mut().unwrap();
                cd.refs -= 1;
                if cd.refs == 0 {
                    work.push(c);
                }
            }
        }
        reclaimed
    }

    pub fn clear_cache(&mut self) {
        self.apply_cache.clear();
        self.change_cache.clear();
    }

    pub fn live_nodes(&self) -> usize {
        self.nodes.iter().filter(|n| n.is_some()).count()
    }

    // ---- metrics -----------------------------------------------------------

    fn reachable(&self, roots: &[Dd]) -> Vec<NodeId> {
        let mut seen = HashSet::new();
        let mut order = Vec::new();
        let mut stack: Vec<NodeId> = roots.iter().map(|d| d.node).collect();
        while let Some(n) = stack.pop() {
            if !seen.insert(n) {
                continue;
            }
            order.push(n);
            if let NodeBody::Decomposition(es) = &self.data(n).body {
                for &(p, s) in es.iter() {
                    stack.push(p.node);
                    stack.push(s.node);
                }
            }
        }
        order
    }

    fn arity(&self, n: NodeId) -> usize {
        match &self.data(n).body {
            NodeBody::Terminal(_) => 0,
            NodeBody::Decomposition(es) => es.len(),
        }
    }

    /// Total number of elements over the distinct decompositions reachable from `d`.
    pub fn size(&self, d: Dd) -> usize {
        self.reachable(&[d])
            .into_iter()
            .map(|n| self.arity(n))
            .sum()
    }

    /// Distinct nodes reachable from `d`, terminals included.
    pub fn node_count(&self, d: Dd) -> usize {
        self.reachable(&[d]).len()
    }

    /// Byte accounting: `41 + 16n` per node for node-based layouts and
    /// `33 + 32n` per node plus an 8-byte root edge for edge-based ones.
    pub fn memory_bytes(&self, d: Dd) -> usize {
        let nodes = self.reachable(&[d]);
        if self.kind.is_edge_based() {
            8 + nodes
                .iter()
                .map(|&n| 33 + 32 * self.arity(n))
                .sum::<usize>()
        } else {
            nodes.iter().map(|&n| 41 + 16 * self.arity(n)).sum()
        }
    }

    /// `|⟦d⟧|` over all variables of the vtree.
    pub fn count_models(&self, d: Dd) -> BigUint {
        let mut memo = HashMap::new();
        self.effective_count(d, self.vtree.root(), &mut memo)
    }

    fn effective_count(
        &self,
        d: Dd,
        region: VtreeId,
        memo: &mut HashMap<NodeId, BigUint>,
    ) -> BigUint {
        let vt = &self.vtree;
        let sv = self.secondary(d);
        let main = self.main_count(d.node, memo);
        if main.is_zero() {
            return main;
        }
        let mut exp = 0;
        if self.kind.is_tagged() && self.kind.inner_padding() == Padding::Free {
            exp += vt.leaf_count(d.pv) - vt.leaf_count(sv);
        }
        if self.kind.outer_padding() == Padding::Free {
            exp += vt.leaf_count(region) - vt.leaf_count(d.pv);
        }
        main << exp as usize
    }

    fn main_count(&self, n: NodeId, memo: &mut HashMap<NodeId, BigUint>) -> BigUint {
        if let Some(c) = memo.get(&n) {
            return c.clone();
        }
        let data = self.data(n);
        let sv = data.sv;
        let k = self.vtree.leaf_count(sv) as usize;
        let c = match &data.body {
            NodeBody::Terminal(Terminal::One) => BigUint::one() << k,
            NodeBody::Terminal(Terminal::Zero) => BigUint::zero(),
            NodeBody::Terminal(Terminal::Eps) => BigUint::one(),
            NodeBody::Terminal(Terminal::NegEps) => (BigUint::one() << k) - 1u32,
            NodeBody::Decomposition(es) => {
                let (l, r) = (self.vtree.left(sv), self.vtree.right(sv));
                let es = es.clone();
                es.iter()
                    .map(|&(p, s)| {
                        self.effective_count(p, l, memo) * self.effective_count(s, r, memo)
                    })
                    .sum()
            }
        };
        memo.insert(n, c.clone());
        c
    }

    // ---- exchange with the oracle ------------------------------------------

    /// Unfolds `d` into an explicit tree. Exponential in sharing; meant for
    /// small diagrams.
    pub fn export(&self, d: Dd) -> Esdd {
        let sv = self.secondary(d);
        match self.body(d) {
            NodeBody::Terminal(t) => Esdd::terminal(d.pv, sv, *t),
            NodeBody::Decomposition(es) => Esdd::decomposition(
                d.pv,
                sv,
                es.iter()
                    .map(|&(p, s)| (self.export(p), self.export(s)))
                    .collect(),
            ),
        }
    }

    /// Builds the canonical form of an explicit diagram. Terminals must meet
    /// the kind's constraints; decompositions are compressed and trimmed.
    pub fn import(&mut self, e: &Esdd) -> Result<Dd, DdError> {
        match &e.body {
            Body::Terminal(t) => self.make_terminal(*t, e.primary, e.secondary),
            Body::Decomposition(es) => {
                let mut elems = Vec::with_capacity(es.len());
                for (p, s) in es {
                    elems.push((self.import(p)?, self.import(s)?));
                }
                self.make_decomposition(e.primary, e.secondary, elems)
            }
        }
    }

    /// Checked entry point for building a decomposition from canonical
    /// children.
    pub fn make_decomposition(
        &mut self,
        pv: VtreeId,
        sv: VtreeId,
        elems: Vec<(Dd, Dd)>,
    ) -> Result<Dd, DdError> {
        let vt = &self.vtree;
        if !vt.is_internal(sv) {
            return Err(DdError::Vtree(format!(
                "decomposition needs an internal secondary vtree, got {sv}"
            )));
        }
        if !vt.is_subtree(sv, pv) || (!self.kind.is_tagged() && pv != sv) {
            return Err(DdError::Vtree(format!(
                "secondary {sv} does not fit primary {pv}"
            )));
        }
        if elems.is_empty() {
            return Err(DdError::Vtree("decomposition without elements".into()));
        }
        let (l, r) = (vt.left(sv), vt.right(sv));
        for &(p, s) in &elems {
            if !vt.is_subtree(p.pv, l) || !vt.is_subtree(s.pv, r) {
                return Err(DdError::Vtree(format!(
                    "element ({p}, {s}) escapes the children of {sv}"
                )));
            }
        }
        Ok(self.mk_decomp(pv, sv, elems))
    }

    /// The set `d` denotes as a child inside `region`, via the oracle.
    pub fn effective_set(&self, d: Dd, region: VtreeId) -> CombinationSet {
        oracle::effective(&self.vtree, self.kind, region, &self.export(d))
            .expect("manager diagrams are well formed")
    }

    /// The set `d` denotes over all variables, via the oracle.
    pub fn to_set(&self, d: Dd) -> CombinationSet {
        oracle::denotation(&self.vtree, self.kind, &self.export(d))
            .expect("manager diagrams are well formed")
    }

    /// Canonical diagram of an explicit set over all variables.
    pub fn from_set(&mut self, q: &CombinationSet) -> Dd {
        let root = self.vtree.root();
        self.from_set_at(root, q)
    }

    /// Canonical diagram with primary vtree at most `t` of a set over `vars(t)`.
    pub fn from_set_at(&mut self, t: VtreeId, q: &CombinationSet) -> Dd {
        assert_eq!(
            q.universe(),
            self.vtree.var_mask(t),
            "set must range over the variables of the region"
        );
        let members: Vec<u64> = q.members().collect();
        self.build_region(t, &members)
    }

    fn build_region(&mut self, r: VtreeId, members: &[u64]) -> Dd {
        if members.is_empty() {
            return self.bot;
        }
        if let Some(x) = self.vtree.leaf_var(r) {
            let bit = 1u64 << x.0;
            let set = members.iter().fold(0, |s, &m| {
                s | if m & bit != 0 { LEAF_X } else { LEAF_EMPTY }
            });
            return self.mk_leaf(r, r, set);
        }
        let (l, rr) = (self.vtree.left(r), self.vtree.right(r));
        let lm = self.vtree.var_mask(l);
        // left part -> right parts
        let mut by_left: std::collections::BTreeMap<u64, Vec<u64>> = Default::default();
        for &m in members {
            by_left.entry(m & lm).or_default().push(m & !lm);
        }
        // right-part set -> left parts
        let mut by_sub: std::collections::BTreeMap<Vec<u64>, Vec<u64>> = Default::default();
        for (left, mut rights) in by_left {
            rights.sort_unstable();
            by_sub.entry(rights).or_default().push(left);
        }
        let mut elems = Vec::new();
        let mut covered = Vec::new();
        for (rights, lefts) in by_sub {
            covered.extend_from_slice(&lefts);
            let p = self.build_region(l, &lefts);
            let s = self.build_region(rr, &rights);
            elems.push((p, s));
        }
        let missing: Vec<u64> = CombinationSet::universe_set(lm)
            .members()
            .filter(|m| !covered.contains(m))
            .collect();
        if !missing.is_empty() {
            let p = self.build_region(l, &missing);
            elems.push((p, self.bot));
        }
        self.mk_decomp(r, r, elems)
    }

    // ---- rewrite diagnostics -----------------------------------------------

    /// Verifies every rewrite against the oracle while enabled.
    pub fn set_check_rewrites(&mut self, on: bool) {
        self.check = on.then(CheckState::default);
    }

    pub fn rewrite_violations(&self) -> &[String] {
        self.check.as_ref().map_or(&[], |c| &c.violations)
    }

    /// Number of oracle-checked firings since checking was enabled.
    pub fn checked_firings(&self) -> u64 {
        self.check.as_ref().map_or(0, |c| c.firings)
    }

    /// Total rule firings (compression merges, trimming, normalization).
    pub fn firings(&self) -> u64 {
        self.firings
    }

    /// Collects one line per rule firing while enabled.
    pub fn set_trace(&mut self, on: bool) {
        self.trace = on.then(Vec::new);
    }

    pub fn take_trace(&mut self) -> Vec<String> {
        self.trace.as_mut().map(std::mem::take).unwrap_or_default()
    }

    /// Test hook: turns a trimming rule off (the result stops being canonical).
    pub fn set_rule_enabled(&mut self, rule: Rule, on: bool) {
        if on {
            self.disabled.remove(&rule);
        } else {
            self.disabled.insert(rule);
        }
        self.clear_cache();
    }

    pub fn var(&self, label: &str) -> Result<Var, DdError> {
        self.vtree
            .var(label)
            .ok_or_else(|| DdError::UnknownVar(label.to_owned()))
    }
}
