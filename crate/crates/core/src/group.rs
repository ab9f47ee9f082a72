//! Materialized finite groups.
//!
//! Elements are indices `0..order` under a fixed mixed-radix encoding derived
//! from the expression: cyclic groups use residues, direct products
//! concatenate digits (earlier factors are lower digits), and a wreath
//! product `A wr B` encodes the base-group table as `|B|` digits in radix
//! `|A|` (digit `x` is the `A`-coordinate attached to the top element of
//! index `x`) followed by a top digit in radix `|B|`. Index 0 is always the
//! identity, and the indexing is deterministic for a given expression.

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;

use crate::arith::{self, SplitMix64};
use crate::expr::{ExprError, GroupExpr};

/// Default materialization cap (in elements).
pub const DEFAULT_CAP: u64 = 20_000;

/// Nodes of this size or smaller get a full multiplication table.
const TABLE_LIMIT: u64 = 256;

/// Composition budget for the sampled associativity check in
/// [`ConcreteGroup::materialize`].
const ASSOC_SAMPLES: u64 = 2_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error("group of order {predicted} exceeds the materialization cap {cap}")]
    Oversize { predicted: u64, cap: u64 },
    #[error("group is not nilpotent")]
    NotNilpotent,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("bad parameters: {0}")]
    BadParameters(&'static str),
    #[error("internal consistency check failed: {0}")]
    Internal(&'static str),
}

/// Minimal group interface shared by [`ConcreteGroup`], subgroup views, and
/// explicit-table groups; everything the law-checking oracle needs.
pub trait GroupOps {
    fn order(&self) -> u64;
    fn identity(&self) -> usize;
    fn compose(&self, a: usize, b: usize) -> usize;
    fn invert(&self, a: usize) -> usize;

    fn element_order(&self, a: usize) -> u64 {
        let mut acc = a;
        let mut n = 1;
        while acc != self.identity() {
            acc = self.compose(acc, a);
            n += 1;
        }
        n
    }

    /// `a^k` by binary exponentiation; negative exponents go through the
    /// inverse.
    fn power(&self, a: usize, k: i64) -> usize {
        let (mut base, mut exp) = if k < 0 {
            (self.invert(a), k.unsigned_abs())
        } else {
            (a, k as u64)
        };
        let mut acc = self.identity();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.compose(acc, base);
            }
            base = self.compose(base, base);
            exp >>= 1;
        }
        acc
    }

    /// `[a, b] = a⁻¹ b⁻¹ a b`.
    fn commutator(&self, a: usize, b: usize) -> usize {
        let c = self.compose(self.invert(a), self.invert(b));
        self.compose(self.compose(c, a), b)
    }

    /// `b⁻¹ a b`.
    fn conjugate(&self, a: usize, b: usize) -> usize {
        self.compose(self.compose(self.invert(b), a), b)
    }
}

/// Decoded view of a group element, mirroring the expression shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Element {
    /// Residue modulo the cyclic order.
    Cyclic(u64),
    /// One entry per factor of a direct product or power.
    Tuple(Vec<Element>),
    /// Wreath element: `table[x]` is the bottom-group coordinate attached to
    /// the top element of index `x`, paired with the top component.
    Wreath {
        table: Vec<Element>,
        top: Box<Element>,
    },
}

/// Internal realization tree; one node per expression node. All codes are
/// u64 and strictly below the node's order.
enum Node {
    Cyclic {
        n: u64,
    },
    Product {
        parts: Vec<Node>,
        weights: Vec<u64>,
        order: u64,
    },
    Wreath {
        bottom: Box<Node>,
        top: Box<Node>,
        copies: u64,
        /// `bottom_pows[x] = |bottom|^x`, for digit extraction.
        bottom_pows: Vec<u64>,
        /// `|bottom|^copies`; top digit weight.
        base_span: u64,
        order: u64,
    },
    /// Small node accelerated by a full multiplication table; `shape` keeps
    /// the structural node for decode/encode.
    Table {
        order: u64,
        mul: Vec<u32>,
        inv: Vec<u32>,
        shape: Box<Node>,
    },
}

impl Node {
    fn order(&self) -> u64 {
        match self {
            Node::Cyclic { n } => *n,
            Node::Product { order, .. } => *order,
            Node::Wreath { order, .. } => *order,
            Node::Table { order, .. } => *order,
        }
    }

    fn compose(&self, a: u64, b: u64) -> u64 {
        match self {
            Node::Cyclic { n } => {
                let s = a + b;
                if s >= *n {
                    s - n
                } else {
                    s
                }
            }
            Node::Product { parts, weights, .. } => {
                let mut out = 0;
                for (part, &w) in parts.iter().zip(weights) {
                    let o = part.order();
                    out += part.compose(a / w % o, b / w % o) * w;
                }
                out
            }
            Node::Wreath {
                bottom,
                top,
                copies,
                bottom_pows,
                base_span,
                ..
            } => {
                let (fa, ta) = (a % base_span, a / base_span);
                let (fb, tb) = (b % base_span, b / base_span);
                let bo = bottom.order();
                let mut out = 0;
                for x in 0..*copies {
                    let da = fa / bottom_pows[x as usize] % bo;
                    let shifted = top.compose(x, ta);
                    let db = fb / bottom_pows[shifted as usize] % bo;
                    out += bottom.compose(da, db) * bottom_pows[x as usize];
                }
                out + top.compose(ta, tb) * base_span
            }
            Node::Table { order, mul, .. } => mul[(a * order + b) as usize] as u64,
        }
    }

    fn invert(&self, a: u64) -> u64 {
        match self {
            Node::Cyclic { n } => {
                if a == 0 {
                    0
                } else {
                    n - a
                }
            }
            Node::Product { parts, weights, .. } => {
                let mut out = 0;
                for (part, &w) in parts.iter().zip(weights) {
                    let o = part.order();
                    out += part.invert(a / w % o) * w;
                }
                out
            }
            Node::Wreath {
                bottom,
                top,
                copies,
                bottom_pows,
                base_span,
                ..
            } => {
                // (f, t)⁻¹ = (x ↦ f(x·t⁻¹)⁻¹, t⁻¹)
                let (fa, ta) = (a % base_span, a / base_span);
                let bo = bottom.order();
                let ti = top.invert(ta);
                let mut out = 0;
                for x in 0..*copies {
                    let src = top.compose(x, ti);
                    let d = fa / bottom_pows[src as usize] % bo;
                    out += bottom.invert(d) * bottom_pows[x as usize];
                }
                out + ti * base_span
            }
            Node::Table { inv, .. } => inv[a as usize] as u64,
        }
    }

    fn element_order(&self, a: u64) -> u64 {
        match self {
            Node::Cyclic { n } => n / arith::gcd(*n, a),
            Node::Product { parts, weights, .. } => {
                let mut ord = 1u64;
                for (part, &w) in parts.iter().zip(weights) {
                    let o = part.order();
                    // Orders divide the group order, so the lcm cannot overflow.
                    ord = arith::checked_lcm(ord, part.element_order(a / w % o)).unwrap();
                }
                ord
            }
            _ => {
                let mut acc = a;
                let mut n = 1;
                while acc != 0 {
                    acc = self.compose(acc, a);
                    n += 1;
                }
                n
            }
        }
    }

    fn decode(&self, a: u64) -> Element {
        match self {
            Node::Cyclic { .. } => Element::Cyclic(a),
            Node::Product { parts, weights, .. } => Element::Tuple(
                parts
                    .iter()
                    .zip(weights)
                    .map(|(part, &w)| part.decode(a / w % part.order()))
                    .collect(),
            ),
            Node::Wreath {
                bottom,
                top,
                copies,
                bottom_pows,
                base_span,
                ..
            } => {
                let (fa, ta) = (a % base_span, a / base_span);
                let bo = bottom.order();
                Element::Wreath {
                    table: (0..*copies)
                        .map(|x| bottom.decode(fa / bottom_pows[x as usize] % bo))
                        .collect(),
                    top: Box::new(top.decode(ta)),
                }
            }
            Node::Table { shape, .. } => shape.decode(a),
        }
    }

    fn encode(&self, e: &Element) -> Option<u64> {
        match (self, e) {
            (Node::Cyclic { n }, Element::Cyclic(r)) => (r < n).then_some(*r),
            (Node::Product { parts, weights, .. }, Element::Tuple(items)) => {
                if items.len() != parts.len() {
                    return None;
                }
                let mut out = 0;
                for ((part, &w), item) in parts.iter().zip(weights).zip(items) {
                    out += part.encode(item)? * w;
                }
                Some(out)
            }
            (
                Node::Wreath {
                    bottom,
                    top,
                    copies,
                    bottom_pows,
                    base_span,
                    ..
                },
                Element::Wreath { table, top: te },
            ) => {
                if table.len() as u64 != *copies {
                    return None;
                }
                let mut out = 0;
                for (x, item) in table.iter().enumerate() {
                    out += bottom.encode(item)? * bottom_pows[x];
                }
                Some(out + top.encode(te)? * base_span)
            }
            (Node::Table { shape, .. }, e) => shape.encode(e),
            _ => None,
        }
    }

    /// A small generating set: one generator per nontrivial cyclic leaf,
    /// embedded with all other coordinates trivial. A wreath product is
    /// generated by its top generators together with the bottom generators
    /// planted at the coordinate of the top identity.
    fn generators(&self, out: &mut Vec<u64>, weight: u64) {
        match self {
            Node::Cyclic { n } => {
                if *n > 1 {
                    out.push(weight);
                }
            }
            Node::Product { parts, weights, .. } => {
                for (part, &w) in parts.iter().zip(weights) {
                    part.generators(out, weight * w);
                }
            }
            Node::Wreath {
                bottom,
                top,
                base_span,
                ..
            } => {
                bottom.generators(out, weight);
                top.generators(out, weight * base_span);
            }
            Node::Table { shape, .. } => shape.generators(out, weight),
        }
    }
}

fn build_node(expr: &GroupExpr) -> Result<Node, ExprError> {
    let node = match expr {
        GroupExpr::Cyclic(n) => {
            if *n == 0 {
                return Err(ExprError::Invalid("cyclic order must be at least 1"));
            }
            Node::Cyclic { n: *n }
        }
        GroupExpr::DirectProduct(parts) => {
            if parts.is_empty() {
                return Err(ExprError::Invalid(
                    "direct product needs at least one factor",
                ));
            }
            build_product(parts.iter().map(build_node).collect::<Result<_, _>>()?)?
        }
        GroupExpr::DirectPower { base, k } => {
            let parts: Vec<Node> = (0..*k)
                .map(|_| build_node(base))
                .collect::<Result<_, _>>()?;
            build_product(parts)?
        }
        GroupExpr::Wreath { bottom, top } => {
            let bottom = build_node(bottom)?;
            let top = build_node(top)?;
            let copies = top.order();
            let bo = bottom.order();
            let mut bottom_pows = Vec::with_capacity(copies as usize + 1);
            let mut w = 1u64;
            for _ in 0..=copies {
                bottom_pows.push(w);
                w = w.checked_mul(bo).ok_or(ExprError::Overflow)?;
            }
            let base_span = bottom_pows[copies as usize];
            let order = base_span.checked_mul(copies).ok_or(ExprError::Overflow)?;
            Node::Wreath {
                bottom: Box::new(with_table(bottom)),
                top: Box::new(with_table(top)),
                copies,
                bottom_pows,
                base_span,
                order,
            }
        }
    };
    Ok(node)
}

fn build_product(parts: Vec<Node>) -> Result<Node, ExprError> {
    let mut weights = Vec::with_capacity(parts.len());
    let mut order = 1u64;
    for part in &parts {
        weights.push(order);
        order = order.checked_mul(part.order()).ok_or(ExprError::Overflow)?;
    }
    let parts = parts.into_iter().map(with_table).collect();
    Ok(Node::Product {
        parts,
        weights,
        order,
    })
}

/// Wrap composite nodes small enough to table. Cyclic composition is already
/// a single modular add, so cyclic leaves stay as they are.
fn with_table(node: Node) -> Node {
    let order = node.order();
    if order > TABLE_LIMIT || matches!(node, Node::Cyclic { .. } | Node::Table { .. }) {
        return node;
    }
    let n = order as usize;
    let mut mul = vec![0u32; n * n];
    let mut inv = vec![0u32; n];
    for a in 0..order {
        for b in 0..order {
            let c = node.compose(a, b);
            mul[(a * order + b) as usize] = c as u32;
            if c == 0 {
                inv[a as usize] = b as u32;
            }
        }
    }
    Node::Table {
        order,
        mul,
        inv,
        shape: Box::new(node),
    }
}

/// A materialized finite group with cached order, exponent, and per-element
/// orders. Immutable after construction.
pub struct ConcreteGroup {
    expr: GroupExpr,
    node: Node,
    order: u64,
    exponent: u64,
    element_orders: Vec<u32>,
    generators: Vec<usize>,
}

impl ConcreteGroup {
    /// Materialize `expr`, refusing groups larger than `cap` elements.
    ///
    /// Construction verifies the identity and inverse laws on every element,
    /// samples associativity triples, and checks that the derived generating
    /// set really generates the group.
    pub fn materialize(expr: GroupExpr, cap: u64) -> Result<Self, GroupError> {
        let order = expr.order()?;
        if order > cap || order > u32::MAX as u64 {
            return Err(GroupError::Oversize {
                predicted: order,
                cap,
            });
        }
        let node = build_node(&expr)?;
        let node = with_table(node);
        if node.order() != order {
            return Err(GroupError::Internal(
                "realized order disagrees with prediction",
            ));
        }

        let mut element_orders = Vec::with_capacity(order as usize);
        let mut exponent = 1u64;
        for a in 0..order {
            let o = node.element_order(a);
            element_orders.push(o as u32);
            exponent =
                arith::checked_lcm(exponent, o).ok_or(GroupError::Internal("exponent overflow"))?;
        }

        let mut generators = Vec::new();
        node.generators(&mut generators, 1);
        let generators: Vec<usize> = generators.into_iter().map(|g| g as usize).collect();

        let group = ConcreteGroup {
            expr,
            node,
            order,
            exponent,
            element_orders,
            generators,
        };
        group.verify()?;
        Ok(group)
    }

    fn verify(&self) -> Result<(), GroupError> {
        let n = self.order;
        for a in 0..n as usize {
            if self.compose(0, a) != a || self.compose(a, 0) != a {
                return Err(GroupError::Internal("identity law violated"));
            }
            let inv = self.invert(a);
            if self.compose(a, inv) != 0 || self.compose(inv, a) != 0 {
                return Err(GroupError::Internal("inverse law violated"));
            }
        }
        // Associativity: exhaustive when cheap, deterministic sample otherwise.
        let check = |a: usize, b: usize, c: usize| {
            self.compose(self.compose(a, b), c) == self.compose(a, self.compose(b, c))
        };
        if n * n * n <= ASSOC_SAMPLES * 32 {
            for a in 0..n as usize {
                for b in 0..n as usize {
                    for c in 0..n as usize {
                        if !check(a, b, c) {
                            return Err(GroupError::Internal("associativity violated"));
                        }
                    }
                }
            }
        } else {
            let mut rng = SplitMix64(n ^ 0xA55A_5AA5);
            for _ in 0..ASSOC_SAMPLES {
                let (a, b, c) = (rng.below(n), rng.below(n), rng.below(n));
                if !check(a as usize, b as usize, c as usize) {
                    return Err(GroupError::Internal("associativity violated"));
                }
            }
        }
        // The structural generating set must close onto the whole group;
        // the series computations rely on it.
        if self.closure_size(&self.generators) != self.order {
            return Err(GroupError::Internal("generating set does not generate"));
        }
        Ok(())
    }

    fn closure_size(&self, gens: &[usize]) -> u64 {
        let mut seen = vec![false; self.order as usize];
        seen[0] = true;
        let mut frontier = vec![0usize];
        let mut count = 1u64;
        while let Some(e) = frontier.pop() {
            for &g in gens {
                let f = self.compose(e, g);
                if !seen[f] {
                    seen[f] = true;
                    count += 1;
                    frontier.push(f);
                }
            }
        }
        count
    }

    pub fn expr(&self) -> &GroupExpr {
        &self.expr
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Least `e ≥ 1` with `g^e = 1` for every element.
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    /// Structural generating set (one entry per nontrivial cyclic leaf).
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> {
        0..self.order as usize
    }

    /// Decoded view of element `a`.
    pub fn element(&self, a: usize) -> Element {
        debug_assert!((a as u64) < self.order);
        self.node.decode(a as u64)
    }

    /// Index of a decoded element, if its shape matches this group.
    pub fn index_of(&self, e: &Element) -> Option<usize> {
        self.node.encode(e).map(|i| i as usize)
    }
}

impl GroupOps for ConcreteGroup {
    fn order(&self) -> u64 {
        self.order
    }

    fn identity(&self) -> usize {
        0
    }

    fn compose(&self, a: usize, b: usize) -> usize {
        self.node.compose(a as u64, b as u64) as usize
    }

    fn invert(&self, a: usize) -> usize {
        self.node.invert(a as u64) as usize
    }

    fn element_order(&self, a: usize) -> u64 {
        self.element_orders[a] as u64
    }
}
