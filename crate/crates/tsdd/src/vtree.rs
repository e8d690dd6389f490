//! Variable trees.
//!
//! A [`Vtree`] is a full binary tree whose leaves carry distinct variables.
//! Every universe also owns a virtual empty leaf, [`VtreeId::ZERO`], which
//! holds no variables and counts as a subtree of every node.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

/// A variable, identified by its index in the owning [`Vtree`]'s label table.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Var(pub u32);

impl Var {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Handle to a vtree node. [`VtreeId::ZERO`] is the empty leaf.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct VtreeId(u32);

impl VtreeId {
    pub const ZERO: VtreeId = VtreeId(u32::MAX);

    pub fn is_zero(self) -> bool {
        self == Self::ZERO
    }

    /// Dense index of a real node; `None` for the empty leaf.
    pub fn index(self) -> Option<usize> {
        (!self.is_zero()).then_some(self.0 as usize)
    }

    pub(crate) fn from_index(i: usize) -> Self {
        VtreeId(i as u32)
    }
}

impl fmt::Display for VtreeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.index() {
            Some(i) => write!(f, "{i}"),
            None => write!(f, "0"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VtreeNode {
    Leaf(Var),
    Internal(VtreeId, VtreeId),
}

#[derive(Error, Debug, PartialEq, Eq)]
pub enum VtreeError {
    #[error("empty variable list")]
    Empty,
    #[error("duplicate variable `{0}`")]
    Duplicate(String),
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("line {line}: dangling child id {id}")]
    Dangling { line: usize, id: usize },
    #[error("line {line}: non-full vtree")]
    NonFull { line: usize },
    #[error("node {0} is not reachable from the root")]
    Unreachable(usize),
}

#[derive(Clone, Debug)]
struct Slot {
    node: VtreeNode,
    parent: Option<VtreeId>,
    // in-order interval [lo, hi] covered by the subtree; pos is the node's own rank
    pos: u32,
    lo: u32,
    hi: u32,
    depth: u32,
    leaves: u32,
}

/// An immutable vtree universe.
#[derive(Clone, Debug)]
pub struct Vtree {
    slots: Vec<Slot>,
    root: VtreeId,
    labels: Vec<String>,
    leaf_of: Vec<VtreeId>,
    by_label: HashMap<String, Var>,
}

impl PartialEq for Vtree {
    fn eq(&self, other: &Self) -> bool {
        self.shape(self.root) == other.shape(other.root)
    }
}

enum Shape {
    Leaf(String),
    Node(Box<Shape>, Box<Shape>),
}

impl Vtree {
    /// Minimal-height vtree whose in-order leaf sequence is `vars`; the left
    /// half gets the extra variable when the count is odd.
    pub fn balanced<S: AsRef<str>>(vars: &[S]) -> Result<Vtree, VtreeError> {
        Self::build(vars, |b, lo, hi| b.balanced(lo, hi))
    }

    /// Right-linear vtree `(x1 (x2 (x3 ...)))`.
    pub fn right_linear<S: AsRef<str>>(vars: &[S]) -> Result<Vtree, VtreeError> {
        Self::build(vars, |b, lo, hi| b.right_linear(lo, hi))
    }

    /// Balanced vtree over `x1..xn`.
    pub fn balanced_numbered(n: usize) -> Result<Vtree, VtreeError> {
        Self::balanced(&numbered_labels(n))
    }

    /// Right-linear vtree over `x1..xn`.
    pub fn right_linear_numbered(n: usize) -> Result<Vtree, VtreeError> {
        Self::right_linear(&numbered_labels(n))
    }

    /// Builds a vtree from a nested shape description, e.g. `((x1 x2) (x3 x4))`.
    pub fn from_sexpr(text: &str) -> Result<Vtree, VtreeError> {
        let tokens: Vec<String> = text
            .replace('(', " ( ")
            .replace(')', " ) ")
            .split_whitespace()
            .map(str::to_owned)
            .collect();
        let mut b = Builder::default();
        let mut at = 0;
        let root = b.sexpr(&tokens, &mut at)?;
        if at != tokens.len() {
            return Err(VtreeError::Malformed {
                line: 1,
                msg: "trailing tokens".into(),
            });
        }
        Ok(b.finish(root))
    }

    fn build<S: AsRef<str>>(
        vars: &[S],
        shape: impl FnOnce(&mut Builder, usize, usize) -> VtreeId,
    ) -> Result<Vtree, VtreeError> {
        if vars.is_empty() {
            return Err(VtreeError::Empty);
        }
        let mut b = Builder::default();
        for v in vars {
            b.add_label(v.as_ref())?;
        }
        let root = shape(&mut b, 0, vars.len());
        Ok(b.finish(root))
    }

    pub fn root(&self) -> VtreeId {
        self.root
    }

    pub fn node_count(&self) -> usize {
        self.slots.len()
    }

    pub fn var_count(&self) -> usize {
        self.labels.len()
    }

    /// All real nodes, in id order.
    pub fn nodes(&self) -> impl Iterator<Item = VtreeId> + '_ {
        (0..self.slots.len()).map(VtreeId::from_index)
    }

    pub fn node(&self, v: VtreeId) -> Option<VtreeNode> {
        v.index().map(|i| self.slots[i].node)
    }

    pub fn is_leaf(&self, v: VtreeId) -> bool {
        matches!(self.node(v), Some(VtreeNode::Leaf(_)))
    }

    pub fn is_internal(&self, v: VtreeId) -> bool {
        matches!(self.node(v), Some(VtreeNode::Internal(..)))
    }

    pub fn leaf_var(&self, v: VtreeId) -> Option<Var> {
        match self.node(v) {
            Some(VtreeNode::Leaf(x)) => Some(x),
            _ => None,
        }
    }

    /// Left child; panics on leaves and the empty leaf.
    pub fn left(&self, v: VtreeId) -> VtreeId {
        match self.node(v) {
            Some(VtreeNode::Internal(l, _)) => l,
            _ => panic!("vtree node {v} has no children"),
        }
    }

    /// Right child; panics on leaves and the empty leaf.
    pub fn right(&self, v: VtreeId) -> VtreeId {
        match self.node(v) {
            Some(VtreeNode::Internal(_, r)) => r,
            _ => panic!("vtree node {v} has no children"),
        }
    }

    pub fn parent(&self, v: VtreeId) -> Option<VtreeId> {
        v.index().and_then(|i| self.slots[i].parent)
    }

    /// The other child of `v`'s parent.
    pub fn sibling(&self, v: VtreeId) -> Option<VtreeId> {
        let p = self.parent(v)?;
        let (l, r) = (self.left(p), self.right(p));
        Some(if l == v { r } else { l })
    }

    pub fn depth(&self, v: VtreeId) -> u32 {
        v.index().map_or(0, |i| self.slots[i].depth)
    }

    /// Number of nodes in the subtree rooted at `v` (0 for the empty leaf).
    pub fn subtree_size(&self, v: VtreeId) -> u32 {
        v.index().map_or(0, |i| {
            let s = &self.slots[i];
            s.hi - s.lo + 1
        })
    }

    pub fn leaf_count(&self, v: VtreeId) -> u32 {
        v.index().map_or(0, |i| self.slots[i].leaves)
    }

    /// In-order rank of `v`.
    pub fn position(&self, v: VtreeId) -> Option<u32> {
        v.index().map(|i| self.slots[i].pos)
    }

    pub fn label(&self, x: Var) -> &str {
        &self.labels[x.index()]
    }

    pub fn var(&self, label: &str) -> Option<Var> {
        self.by_label.get(label).copied()
    }

    pub fn leaf(&self, x: Var) -> VtreeId {
        self.leaf_of[x.index()]
    }

    /// `a ≼ b`: `a` occurs within `b`. The empty leaf is below everything.
    pub fn is_subtree(&self, a: VtreeId, b: VtreeId) -> bool {
        match (a.index(), b.index()) {
            (None, _) => true,
            (Some(_), None) => false,
            (Some(i), Some(j)) => {
                let (sa, sb) = (&self.slots[i], &self.slots[j]);
                sb.lo <= sa.lo && sa.hi <= sb.hi
            }
        }
    }

    /// `a ≺ b`.
    pub fn is_proper_subtree(&self, a: VtreeId, b: VtreeId) -> bool {
        a != b && self.is_subtree(a, b)
    }

    /// Neither node is a subtree of the other.
    pub fn incomparable(&self, a: VtreeId, b: VtreeId) -> bool {
        !self.is_subtree(a, b) && !self.is_subtree(b, a)
    }

    /// Least common ancestor; the empty leaf is neutral.
    pub fn lca(&self, a: VtreeId, b: VtreeId) -> VtreeId {
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        let mut a = a;
        while !self.is_subtree(b, a) {
            a = self.parent(a).expect("nodes of one vtree share a root");
        }
        a
    }

    /// Variables at the leaves under `v`, in in-order sequence.
    pub fn vars(&self, v: VtreeId) -> Vec<Var> {
        let mut out = Vec::new();
        self.collect_vars(v, &mut out);
        out
    }

    fn collect_vars(&self, v: VtreeId, out: &mut Vec<Var>) {
        match self.node(v) {
            None => {}
            Some(VtreeNode::Leaf(x)) => out.push(x),
            Some(VtreeNode::Internal(l, r)) => {
                self.collect_vars(l, out);
                self.collect_vars(r, out);
            }
        }
    }

    /// Variables under `v` as a bitmask over variable indices. Only valid for
    /// universes of at most 64 variables.
    pub fn var_mask(&self, v: VtreeId) -> u64 {
        self.vars(v).into_iter().fold(0, |m, x| m | (1u64 << x.0))
    }

    /// Whether `x` occurs under `v`.
    pub fn contains_var(&self, v: VtreeId, x: Var) -> bool {
        self.is_subtree(self.leaf(x), v)
    }

    /// Parses the line format written by [`Vtree::serialize`].
    pub fn parse(text: &str) -> Result<Vtree, VtreeError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('c') && !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or(VtreeError::Malformed {
            line: 1,
            msg: "missing header".into(),
        })?;
        let count: usize = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
            ["vtree", n] => n.parse().map_err(|_| VtreeError::Malformed {
                line: hline,
                msg: format!("bad node count `{n}`"),
            })?,
            _ => {
                return Err(VtreeError::Malformed {
                    line: hline,
                    msg: "expected `vtree <node-count>`".into(),
                })
            }
        };
        if count == 0 {
            return Err(VtreeError::Empty);
        }
        let mut raw: Vec<Option<RawNode>> = vec![None; count];
        let mut last = None;
        let mut seen_lines = 0;
        for (line, l) in lines {
            seen_lines += 1;
            let parts: Vec<&str> = l.split_whitespace().collect();
            let id_of = |s: &str| -> Result<usize, VtreeError> {
                s.parse::<usize>().map_err(|_| VtreeError::Malformed {
                    line,
                    msg: format!("bad id `{s}`"),
                })
            };
            let (id, node) = match parts.as_slice() {
                ["L", id, var] => (id_of(id)?, RawNode::Leaf(var.to_string())),
                ["I", id, l, r] => (id_of(id)?, RawNode::Internal(id_of(l)?, id_of(r)?)),
                ["I", _] | ["I", _, _] => return Err(VtreeError::NonFull { line }),
                _ => {
                    return Err(VtreeError::Malformed {
                        line,
                        msg: format!("unrecognized line `{l}`"),
                    })
                }
            };
            if id >= count {
                return Err(VtreeError::Malformed {
                    line,
                    msg: format!("id {id} out of range"),
                });
            }
            if raw[id].is_some() {
                return Err(VtreeError::Malformed {
                    line,
                    msg: format!("id {id} defined twice"),
                });
            }
            if let RawNode::Internal(a, b) = node {
                for c in [a, b] {
                    if c >= count || raw[c].is_none() {
                        return Err(VtreeError::Dangling { line, id: c });
                    }
                }
                if a == b {
                    return Err(VtreeError::NonFull { line });
                }
            }
            raw[id] = Some(node);
            last = Some(id);
        }
        if seen_lines != count {
            return Err(VtreeError::Malformed {
                line: hline,
                msg: format!("header declares {count} nodes, found {seen_lines}"),
            });
        }
        let root = last.expect("count > 0");
        let mut b = Builder::default();
        let mut map: Vec<Option<VtreeId>> = vec![None; count];
        let root_id = b.insert_raw(&raw, root, &mut map)?;
        if let Some(i) = map.iter().position(Option::is_none) {
            return Err(VtreeError::Unreachable(i));
        }
        Ok(b.finish(root_id))
    }

    /// One node per line, children before parents, root last.
    pub fn serialize(&self) -> String {
        let mut out = format!("vtree {}\n", self.slots.len());
        for v in self.nodes() {
            match self.node(v).unwrap() {
                VtreeNode::Leaf(x) => out.push_str(&format!("L {v} {}\n", self.label(x))),
                VtreeNode::Internal(l, r) => out.push_str(&format!("I {v} {l} {r}\n")),
            }
        }
        out
    }

    /// Parenthesized rendering, e.g. `((x1 x2) (x3 x4))`.
    pub fn to_sexpr(&self, v: VtreeId) -> String {
        match self.node(v) {
            None => "0".into(),
            Some(VtreeNode::Leaf(x)) => self.label(x).to_owned(),
            Some(VtreeNode::Internal(l, r)) => {
                format!("({} {})", self.to_sexpr(l), self.to_sexpr(r))
            }
        }
    }

    fn shape(&self, v: VtreeId) -> Shape {
        match self.node(v) {
            Some(VtreeNode::Internal(l, r)) => {
                Shape::Node(Box::new(self.shape(l)), Box::new(self.shape(r)))
            }
            Some(VtreeNode::Leaf(x)) => Shape::Leaf(self.label(x).to_owned()),
            None => Shape::Leaf(String::new()),
        }
    }
}

impl PartialEq for Shape {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Shape::Leaf(a), Shape::Leaf(b)) => a == b,
            (Shape::Node(a, b), Shape::Node(c, d)) => a == c && b == d,
            _ => false,
        }
    }
}

/// `x1, x2, ..., xn`.
pub fn numbered_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

#[derive(Clone, Debug)]
enum RawNode {
    Leaf(String),
    Internal(usize, usize),
}

#[derive(Default)]
struct Builder {
    nodes: Vec<(VtreeNode, Option<VtreeId>)>,
    labels: Vec<String>,
    by_label: HashMap<String, Var>,
}

impl Builder {
    fn add_label(&mut self, label: &str) -> Result<Var, VtreeError> {
        if self.by_label.contains_key(label) {
            return Err(VtreeError::Duplicate(label.to_owned()));
        }
        let x = Var(self.labels.len() as u32);
        self.labels.push(label.to_owned());
        self.by_label.insert(label.to_owned(), x);
        Ok(x)
    }

    fn push(&mut self, node: VtreeNode) -> VtreeId {
        let id = VtreeId::from_index(self.nodes.len());
        if let VtreeNode::Internal(l, r) = node {
            self.nodes[l.0 as usize].1 = Some(id);
            self.nodes[r.0 as usize].1 = Some(id);
        }
        self.nodes.push((node, None));
        id
    }

    fn balanced(&mut self, lo: usize, hi: usize) -> VtreeId {
        if hi - lo == 1 {
            return self.push(VtreeNode::Leaf(Var(lo as u32)));
        }
        let mid = lo + (hi - lo).div_ceil(2);
        let l = self.balanced(lo, mid);
        let r = self.balanced(mid, hi);
        self.push(VtreeNode::Internal(l, r))
    }

    fn right_linear(&mut self, lo: usize, hi: usize) -> VtreeId {
        if hi - lo == 1 {
            return self.push(VtreeNode::Leaf(Var(lo as u32)));
        }
        let l = self.push(VtreeNode::Leaf(Var(lo as u32)));
        let r = self.right_linear(lo + 1, hi);
        self.push(VtreeNode::Internal(l, r))
    }

    fn sexpr(&mut self, toks: &[String], at: &mut usize) -> Result<VtreeId, VtreeError> {
        let bad = |msg: &str| VtreeError::Malformed {
            line: 1,
            msg: msg.to_owned(),
        };
        let t = toks.get(*at).ok_or_else(|| bad("unexpected end"))?;
        *at += 1;
        match t.as_str() {
            "(" => {
                let l = self.sexpr(toks, at)?;
                let r = self.sexpr(toks, at)?;
                match toks.get(*at).map(String::as_str) {
                    Some(")") => {
                        *at += 1;
                        Ok(self.push(VtreeNode::Internal(l, r)))
                    }
                    _ => Err(VtreeError::NonFull { line: 1 }),
                }
            }
            ")" => Err(VtreeError::NonFull { line: 1 }),
            label => {
                let x = self.add_label(label)?;
                Ok(self.push(VtreeNode::Leaf(x)))
            }
        }
    }

    fn insert_raw(
        &mut self,
        raw: &[Option<RawNode>],
        id: usize,
        map: &mut Vec<Option<VtreeId>>,
    ) -> Result<VtreeId, VtreeError> {
        if map[id].is_some() {
            // a node reachable twice cannot belong to a tree
            return Err(VtreeError::Malformed {
                line: 0,
                msg: format!("node {id} has two parents"),
            });
        }
        let out = match raw[id].as_ref().expect("checked during parse") {
            RawNode::Leaf(label) => {
                let x = self.add_label(label)?;
                self.push(VtreeNode::Leaf(x))
            }
            RawNode::Internal(l, r) => {
                let l = self.insert_raw(raw, *l, map)?;
                let r = self.insert_raw(raw, *r, map)?;
                self.push(VtreeNode::Internal(l, r))
            }
        };
        map[id] = Some(out);
        Ok(out)
    }

    fn finish(self, root: VtreeId) -> Vtree {
        let n = self.nodes.len();
        let mut slots: Vec<Slot> = self
            .nodes
            .iter()
            .map(|(node, parent)| Slot {
                node: *node,
                parent: *parent,
                pos: 0,
                lo: 0,
                hi: 0,
                depth: 0,
                leaves: 0,
            })
            .collect();
        let mut counter = 0u32;
        number(&mut slots, root, 0, &mut counter);
        debug_assert_eq!(counter as usize, n);
        let mut leaf_of = vec![VtreeId::ZERO; self.labels.len()];
        for (i, s) in slots.iter().enumerate() {
            if let VtreeNode::Leaf(x) = s.node {
                leaf_of[x.index()] = VtreeId::from_index(i);
            }
        }
        Vtree {
            slots,
            root,
            labels: self.labels,
            leaf_of,
            by_label: self.by_label,
        }
    }
}

fn number(slots: &mut [Slot], v: VtreeId, depth: u32, counter: &mut u32) {
    let i = v.0 as usize;
    slots[i].depth = depth;
    match slots[i].node {
        VtreeNode::Leaf(_) => {
            slots[i].pos = *counter;
            slots[i].lo = *counter;
            slots[i].hi = *counter;
            slots[i].leaves = 1;
            *counter += 1;
        }
        VtreeNode::Internal(l, r) => {
            number(slots, l, depth + 1, counter);
            slots[i].pos = *counter;
            *counter += 1;
            number(slots, r, depth + 1, counter);
            let (li, ri) = (l.0 as usize, r.0 as usize);
            slots[i].lo = slots[li].lo;
            slots[i].hi = slots[ri].hi;
            slots[i].leaves = slots[li].leaves + slots[ri].leaves;
        }
    }
}
