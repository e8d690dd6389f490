//! Set operations on canonical diagrams.

use crate::kind::Padding;
use crate::manager::{Dd, DdError, LeafSet, Manager, LEAF_EMPTY, LEAF_X};
use crate::vtree::{Var, VtreeId};

/// Binary set operations accepted by [`Manager::apply`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum SetOp {
    Intersection,
    Union,
    Difference,
}

impl SetOp {
    pub const ALL: [SetOp; 3] = [SetOp::Intersection, SetOp::Union, SetOp::Difference];

    fn tag(self) -> u8 {
        self as u8
    }

    fn commutative(self) -> bool {
        self != SetOp::Difference
    }

    fn on_leaf(self, a: LeafSet, b: LeafSet) -> LeafSet {
        match self {
            SetOp::Intersection => a & b,
            SetOp::Union => a | b,
            SetOp::Difference => a & !b & 0b11,
        }
    }
}

impl Manager {
    /// `f ∘ g` for `∘ ∈ {∩, ∪, \}`.
    pub fn apply(&mut self, f: Dd, g: Dd, op: SetOp) -> Dd {
        if let Some(d) = self.apply_base(f, g, op) {
            return d;
        }
        let (f, g) = if op.commutative() && g < f {
            (g, f)
        } else {
            (f, g)
        };
        let key = (op.tag(), f, g);
        if let Some(&d) = self.apply_cache.get(&key) {
            return d;
        }
        let vt = self.vtree();
        let v = vt.lca(f.primary(), g.primary());
        let w = if self.kind().is_tagged() && f.primary() == v && g.primary() == v {
            vt.lca(self.secondary(f), self.secondary(g))
        } else {
            v
        };
        let out = if vt.is_internal(w) {
            let ef = self.expand(f, v, w);
            let eg = self.expand(g, v, w);
            let bot = self.empty();
            let mut gamma = Vec::with_capacity(ef.len() * eg.len());
            for &(p, s) in &ef {
                for &(q, r) in &eg {
                    let pq = self.apply(p, q, SetOp::Intersection);
                    if pq == bot {
                        continue;
                    }
                    gamma.push((pq, self.apply(s, r, op)));
                }
            }
            self.mk_decomp(v, w, gamma)
        } else {
            let sf = self.operand_leaf_set(f, v, w);
            let sg = self.operand_leaf_set(g, v, w);
            let set = op.on_leaf(sf, sg);
            if set == 0 {
                self.empty()
            } else if w.is_zero() {
                // both operands are terminals over an empty secondary vtree
                self.inner(v)
            } else {
                self.mk_leaf(v, w, set)
            }
        };
        self.apply_cache.insert(key, out);
        out
    }

    fn operand_leaf_set(&self, d: Dd, v: VtreeId, w: VtreeId) -> LeafSet {
        if d.primary() == v {
            self.leaf_inner(d, w)
        } else {
            self.leaf_effective(d, w)
        }
    }

    fn apply_base(&self, f: Dd, g: Dd, op: SetOp) -> Option<Dd> {
        let bot = self.empty();
        if f == g {
            return Some(if op == SetOp::Difference { bot } else { f });
        }
        if f == bot {
            return Some(if op == SetOp::Union { g } else { bot });
        }
        if g == bot {
            return Some(if op == SetOp::Intersection { bot } else { f });
        }
        if self.kind().outer_padding() == Padding::Free {
            // the empty-primary node is the universe in every region
            let top = self.base();
            match op {
                SetOp::Intersection if f == top => return Some(g),
                SetOp::Intersection if g == top => return Some(f),
                SetOp::Union if f == top || g == top => return Some(top),
                SetOp::Difference if g == top => return Some(bot),
                _ => {}
            }
        }
        None
    }

    pub fn intersection(&mut self, f: Dd, g: Dd) -> Dd {
        self.apply(f, g, SetOp::Intersection)
    }

    pub fn union(&mut self, f: Dd, g: Dd) -> Dd {
        self.apply(f, g, SetOp::Union)
    }

    pub fn difference(&mut self, f: Dd, g: Dd) -> Dd {
        self.apply(f, g, SetOp::Difference)
    }

    /// `U_{vars(t)} \ f`, for `pv(f) ≼ t`.
    pub fn complement(&mut self, f: Dd, t: VtreeId) -> Dd {
        debug_assert!(self.vtree().is_subtree(f.primary(), t));
        let u = self.universe(t);
        self.apply(u, f, SetOp::Difference)
    }

    /// `f ⊔ g` for diagrams over disjoint parts of the vtree. A diagram with
    /// an empty primary vtree counts as `{∅}` over no variables.
    pub fn orthogonal_join(&mut self, f: Dd, g: Dd) -> Result<Dd, DdError> {
        let bot = self.empty();
        if f == bot || g == bot {
            return Ok(bot);
        }
        if f.primary().is_zero() {
            return Ok(g);
        }
        if g.primary().is_zero() {
            return Ok(f);
        }
        let vt = self.vtree();
        if !vt.incomparable(f.primary(), g.primary()) {
            return Err(DdError::OverlappingVars(f.primary(), g.primary()));
        }
        let t = vt.lca(f.primary(), g.primary());
        let l = vt.left(t);
        let (a, b) = if vt.is_subtree(f.primary(), l) {
            (f, g)
        } else {
            (g, f)
        };
        let rest = self.complement(a, l);
        Ok(self.mk_decomp(t, t, vec![(a, b), (rest, bot)]))
    }

    /// Flips membership of `x` in every combination.
    pub fn change(&mut self, f: Dd, x: Var) -> Dd {
        let bot = self.empty();
        if f == bot {
            return bot;
        }
        if let Some(&d) = self.change_cache.get(&(f, x)) {
            return d;
        }
        let vt = self.vtree();
        let leaf = vt.leaf(x);
        let out = if !vt.is_subtree(leaf, f.primary()) {
            match self.kind().outer_padding() {
                Padding::Free => f,
                Padding::Zero => {
                    let lit = self.mk_leaf(leaf, leaf, LEAF_X);
                    self.orthogonal_join(f, lit)
                        .expect("x lies outside f's vtree")
                }
            }
        } else if self.kind().is_tagged()
            && self.kind().inner_padding() == Padding::Free
            && !vt.is_subtree(leaf, self.secondary(f))
        {
            f
        } else {
            let v = f.primary();
            if vt.is_leaf(v) {
                let s = self.leaf_inner(f, v);
                let flipped = (s & LEAF_EMPTY) << 1 | (s & LEAF_X) >> 1;
                self.mk_leaf(v, v, flipped)
            } else {
                let left = vt.left(v);
                let on_left = vt.is_subtree(leaf, left);
                let elems = self.expand(f, v, v);
                let gamma = elems
                    .into_iter()
                    .map(|(p, s)| {
                        if on_left {
                            (self.change(p, x), s)
                        } else {
                            (p, self.change(s, x))
                        }
                    })
                    .collect();
                self.mk_decomp(v, v, gamma)
            }
        };
        self.change_cache.insert((f, x), out);
        out
    }

    /// [`Manager::change`] by variable label.
    pub fn change_var(&mut self, f: Dd, label: &str) -> Result<Dd, DdError> {
        let x = self.var(label)?;
        Ok(self.change(f, x))
    }

    /// Combinations over `vars(t)` that contain `x` (`positive`) or do not.
    pub fn literal(&mut self, t: VtreeId, x: Var, positive: bool) -> Result<Dd, DdError> {
        if x.index() >= self.vtree().var_count() {
            return Err(DdError::UnknownVar(format!("#{}", x.0)));
        }
        if !self.vtree().contains_var(t, x) {
            return Err(DdError::VarOutside {
                var: self.vtree().label(x).to_owned(),
                vtree: t,
            });
        }
        let pos = self.positive_literal(t, x);
        Ok(if positive {
            pos
        } else {
            self.complement(pos, t)
        })
    }

    /// Literal over the whole vtree, by label.
    pub fn literal_var(&mut self, label: &str, positive: bool) -> Result<Dd, DdError> {
        let x = self.var(label)?;
        let root = self.vtree().root();
        self.literal(root, x, positive)
    }

    fn positive_literal(&mut self, t: VtreeId, x: Var) -> Dd {
        if let Some(&d) = self.literals.get(&(t, x)) {
            return d;
        }
        let vt = self.vtree();
        let d = if vt.is_leaf(t) {
            self.mk_leaf(t, t, LEAF_X)
        } else {
            let (l, r) = (vt.left(t), vt.right(t));
            if vt.contains_var(l, x) {
                let p = self.positive_literal(l, x);
                let u = self.universe(r);
                let rest = self.complement(p, l);
                let bot = self.empty();
                self.mk_decomp(t, t, vec![(p, u), (rest, bot)])
            } else {
                let u = self.universe(l);
                let s = self.positive_literal(r, x);
                self.mk_decomp(t, t, vec![(u, s)])
            }
        };
        self.retain(d);
        self.literals.insert((t, x), d);
        d
    }
}
