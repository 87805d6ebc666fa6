use std::fmt;
use std::sync::Arc;

use super::interval::affine_point;
use super::jet::Jet;
use super::zero::flat_value_on;
use super::{Interval, SmoothError};

/// An immutable C∞ function of one real variable, stored as an expression tree.
///
/// Cloning is cheap (the tree is reference counted) and values are `Send + Sync`.
#[derive(Clone, PartialEq)]
pub struct SmoothExpr(Arc<Node>);

#[derive(Debug, Clone, PartialEq)]
pub enum Node {
    Constant(f64),
    Identity,
    Sum(Vec<SmoothExpr>),
    Product(Vec<SmoothExpr>),
    Scale(f64, SmoothExpr),
    /// `outer(inner(x))`
    Compose { outer: SmoothExpr, inner: SmoothExpr },
    /// `arg(slope * x + offset)`, `slope != 0`
    AffineArg { slope: f64, offset: f64, arg: SmoothExpr },
    /// Derivative of the given order of the smooth step `s`.
    Step { order: u32 },
    Glued(Gluing),
}

/// Piecewise definition `left` for `x < breakpoint`, `right` for `x >= breakpoint`.
///
/// Only constructed through [`SmoothExpr::glued`], which checks that both
/// pieces vanish identically on the open deadzone around the breakpoint (or
/// are the same expression).
#[derive(Debug, Clone, PartialEq)]
pub struct Gluing {
    breakpoint: f64,
    left: SmoothExpr,
    right: SmoothExpr,
    deadzone: (f64, f64),
}

impl Gluing {
    pub fn breakpoint(&self) -> f64 {
        self.breakpoint
    }

    pub fn left(&self) -> &SmoothExpr {
        &self.left
    }

    pub fn right(&self) -> &SmoothExpr {
        &self.right
    }

    /// Open interval `(lo, hi)` on which both pieces agree.
    pub fn deadzone(&self) -> (f64, f64) {
        self.deadzone
    }

    /// Closed float interval covering every float strictly inside the deadzone.
    pub(crate) fn deadzone_floats(&self) -> Interval {
        let (lo, hi) = self.deadzone;
        Interval::new(lo.next_up(), hi.next_down()).expect("breakpoint lies strictly inside the deadzone")
    }

    pub(crate) fn piece_at(&self, x: f64) -> &SmoothExpr {
        if x < self.breakpoint {
            &self.left
        } else {
            &self.right
        }
    }
}

/// Which side of a [`Gluing`] failed its certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

fn bump(t: f64) -> f64 {
    if t > 0.0 {
        (-1.0 / t).exp()
    } else {
        0.0
    }
}

/// `s(t) = f(t) / (f(t) + f(1 - t))` with `f(t) = exp(-1/t)` for `t > 0`, else 0.
pub(crate) fn step_value(t: f64) -> f64 {
    if t <= 0.0 {
        0.0
    } else if t >= 1.0 {
        1.0
    } else {
        let f = bump(t);
        let g = bump(1.0 - t);
        f / (f + g)
    }
}

fn bump_jet(u: &Jet) -> Jet {
    let order = u.order();
    if u.value() <= 0.0 || bump(u.value()) == 0.0 {
        return Jet::zero(order);
    }
    Jet::constant(-1.0, order).div(u).exp()
}

pub(crate) fn step_jet(t: f64, order: usize) -> Jet {
    if t <= 0.0 {
        return Jet::zero(order);
    }
    if t >= 1.0 {
        return Jet::constant(1.0, order);
    }
    let f = bump_jet(&Jet::variable(t, order));
    let mut one_minus = Jet::variable(1.0 - t, order);
    if order >= 1 {
        one_minus = Jet::from_coeffs({
            let mut c = one_minus.coeffs().to_vec();
            c[1] = -1.0;
            c
        });
    }
    let g = bump_jet(&one_minus);
    f.div(&f.add(&g))
}

impl SmoothExpr {
    fn wrap(node: Node) -> Self {
        SmoothExpr(Arc::new(node))
    }

    pub fn node(&self) -> &Node {
        &self.0
    }

    pub fn constant(c: f64) -> Self {
        Self::wrap(Node::Constant(c))
    }

    pub fn zero() -> Self {
        Self::constant(0.0)
    }

    pub fn one() -> Self {
        Self::constant(1.0)
    }

    pub fn identity() -> Self {
        Self::wrap(Node::Identity)
    }

    pub fn as_constant(&self) -> Option<f64> {
        match self.node() {
            Node::Constant(c) => Some(*c),
            _ => None,
        }
    }

    pub fn is_zero_constant(&self) -> bool {
        self.as_constant() == Some(0.0)
    }

    /// Sum of terms. Nested sums are flattened and exact zero constants are
    /// dropped; no other rewriting happens, so evaluation order is preserved.
    pub fn sum<I: IntoIterator<Item = SmoothExpr>>(terms: I) -> Self {
        let mut flat = Vec::new();
        for t in terms {
            match t.node() {
                Node::Sum(inner) => flat.extend(inner.iter().cloned()),
                Node::Constant(c) if *c == 0.0 => {}
                _ => flat.push(t),
            }
        }
        match flat.len() {
            0 => Self::zero(),
            1 => flat.pop().unwrap(),
            _ if flat.iter().all(|t| t.as_constant().is_some()) => {
                Self::constant(flat.iter().fold(0.0, |acc, t| acc + t.as_constant().unwrap()))
            }
            _ => Self::wrap(Node::Sum(flat)),
        }
    }

    /// Product of factors. Nested products are flattened, unit constants
    /// dropped, and a zero constant factor collapses the product to zero.
    pub fn product<I: IntoIterator<Item = SmoothExpr>>(factors: I) -> Self {
        let mut flat = Vec::new();
        for f in factors {
            match f.node() {
                Node::Product(inner) => flat.extend(inner.iter().cloned()),
                Node::Constant(c) if *c == 1.0 => {}
                Node::Constant(c) if *c == 0.0 => return Self::zero(),
                _ => flat.push(f),
            }
        }
        match flat.len() {
            0 => Self::one(),
            1 => flat.pop().unwrap(),
            _ if flat.iter().all(|t| t.as_constant().is_some()) => {
                Self::constant(flat.iter().fold(1.0, |acc, t| acc * t.as_constant().unwrap()))
            }
            _ => Self::wrap(Node::Product(flat)),
        }
    }

    pub fn scale(c: f64, e: SmoothExpr) -> Self {
        if c == 0.0 {
            return Self::zero();
        }
        if c == 1.0 {
            return e;
        }
        match e.node() {
            Node::Constant(v) => Self::constant(c * v),
            _ => Self::wrap(Node::Scale(c, e)),
        }
    }

    pub fn neg(&self) -> Self {
        Self::scale(-1.0, self.clone())
    }

    pub fn compose(outer: SmoothExpr, inner: SmoothExpr) -> Self {
        match (outer.node(), inner.node()) {
            (Node::Identity, _) => inner,
            (_, Node::Identity) | (Node::Constant(_), _) => outer,
            _ => Self::wrap(Node::Compose { outer, inner }),
        }
    }

    /// `x -> self(slope * x + offset)`.
    pub fn affine(&self, slope: f64, offset: f64) -> Result<Self, SmoothError> {
        if slope == 0.0 {
            return Err(SmoothError::ZeroSlope);
        }
        if !slope.is_finite() || !offset.is_finite() {
            return Err(SmoothError::NonFinite { what: "affine argument" });
        }
        Ok(match self.node() {
            Node::Constant(_) => self.clone(),
            _ if slope == 1.0 && offset == 0.0 => self.clone(),
            _ => Self::wrap(Node::AffineArg { slope, offset, arg: self.clone() }),
        })
    }

    pub fn step(order: u32) -> Self {
        Self::wrap(Node::Step { order })
    }

    /// Glue `left` (used for `x < breakpoint`) to `right` (used for `x >= breakpoint`).
    ///
    /// The open `deadzone` must contain the breakpoint and both pieces must
    /// be provably identically zero on it, unless the two pieces are the same
    /// expression.
    pub fn glued(
        breakpoint: f64,
        left: SmoothExpr,
        right: SmoothExpr,
        deadzone: (f64, f64),
    ) -> Result<Self, SmoothError> {
        let (lo, hi) = deadzone;
        if !(breakpoint.is_finite() && lo.is_finite() && hi.is_finite()) {
            return Err(SmoothError::NonFinite { what: "gluing data" });
        }
        if !(lo < breakpoint && breakpoint < hi) {
            return Err(SmoothError::BreakpointOutsideDeadzone { breakpoint, lo, hi });
        }
        let gluing = Gluing { breakpoint, left, right, deadzone };
        if gluing.left != gluing.right {
            let zone = gluing.deadzone_floats();
            for (side, piece) in [(Side::Left, &gluing.left), (Side::Right, &gluing.right)] {
                if flat_value_on(piece, &zone) != Some(0.0) {
                    return Err(SmoothError::GluingNotCertified { side, lo, hi });
                }
            }
        }
        Ok(Self::wrap(Node::Glued(gluing)))
    }

    /// For gluings whose certificate follows from an already certified one
    /// (derivatives of certified pieces vanish on the same open deadzone).
    pub(crate) fn glued_unchecked(breakpoint: f64, left: SmoothExpr, right: SmoothExpr, deadzone: (f64, f64)) -> Self {
        Self::wrap(Node::Glued(Gluing { breakpoint, left, right, deadzone }))
    }

    pub fn powi(&self, n: u32) -> Self {
        Self::product(std::iter::repeat_n(self.clone(), n as usize))
    }

    /// `c[0] + c[1] x + c[2] x^2 + ...`, with monomials as repeated products.
    pub fn polynomial(coeffs: &[f64]) -> Self {
        let x = Self::identity();
        Self::sum(coeffs.iter().enumerate().map(|(k, &c)| Self::scale(c, x.powi(k as u32))))
    }

    pub fn eval(&self, x: f64) -> f64 {
        match self.node() {
            Node::Constant(c) => *c,
            Node::Identity => x,
            Node::Sum(terms) => terms.iter().fold(0.0, |acc, t| acc + t.eval(x)),
            Node::Product(factors) => {
                let mut acc = 1.0;
                for f in factors {
                    let v = f.eval(x);
                    if v == 0.0 {
                        return 0.0;
                    }
                    acc *= v;
                }
                acc
            }
            Node::Scale(c, e) => c * e.eval(x),
            Node::Compose { outer, inner } => outer.eval(inner.eval(x)),
            Node::AffineArg { slope, offset, arg } => arg.eval(affine_point(x, *slope, *offset)),
            Node::Step { order: 0 } => step_value(x),
            Node::Step { order } => {
                let k = *order as usize;
                step_jet(x, k).derivative(k)
            }
            Node::Glued(g) => g.piece_at(x).eval(x),
        }
    }

    /// Taylor jet of order `order` at `x`.
    pub fn jet(&self, x: f64, order: usize) -> Jet {
        match self.node() {
            Node::Constant(c) => Jet::constant(*c, order),
            Node::Identity => Jet::variable(x, order),
            Node::Sum(terms) => terms.iter().fold(Jet::zero(order), |acc, t| acc.add(&t.jet(x, order))),
            Node::Product(factors) => {
                let mut acc = Jet::constant(1.0, order);
                for f in factors {
                    let j = f.jet(x, order);
                    if j.is_zero() {
                        return Jet::zero(order);
                    }
                    acc = acc.mul(&j);
                }
                acc
            }
            Node::Scale(c, e) => e.jet(x, order).scale(*c),
            Node::Compose { outer, inner } => {
                let ij = inner.jet(x, order);
                outer.jet(ij.value(), order).compose(&ij)
            }
            Node::AffineArg { slope, offset, arg } => {
                arg.jet(affine_point(x, *slope, *offset), order).chain_affine(*slope)
            }
            Node::Step { order: k } => {
                let k = *k as usize;
                step_jet(x, order + k).shift_derivative(k)
            }
            Node::Glued(g) => g.piece_at(x).jet(x, order),
        }
    }

    pub fn diff(&self) -> SmoothExpr {
        match self.node() {
            Node::Constant(_) => Self::zero(),
            Node::Identity => Self::one(),
            Node::Sum(terms) => Self::sum(terms.iter().map(SmoothExpr::diff)),
            Node::Product(factors) => Self::sum((0..factors.len()).map(|i| {
                Self::product(
                    factors
                        .iter()
                        .enumerate()
                        .map(|(j, f)| if i == j { f.diff() } else { f.clone() }),
                )
            })),
            Node::Scale(c, e) => Self::scale(*c, e.diff()),
            Node::Compose { outer, inner } => {
                Self::product([Self::compose(outer.diff(), inner.clone()), inner.diff()])
            }
            Node::AffineArg { slope, offset, arg } => {
                let d = arg.diff();
                match d.node() {
                    Node::Constant(_) => Self::scale(*slope, d),
                    _ => Self::scale(*slope, Self::wrap(Node::AffineArg { slope: *slope, offset: *offset, arg: d })),
                }
            }
            Node::Step { order } => Self::step(order + 1),
            Node::Glued(g) => {
                let (l, r) = (g.left.diff(), g.right.diff());
                if l == r {
                    l
                } else {
                    Self::glued_unchecked(g.breakpoint, l, r, g.deadzone)
                }
            }
        }
    }

    pub fn diff_n(&self, n: u32) -> SmoothExpr {
        (0..n).fold(self.clone(), |e, _| e.diff())
    }

    /// Number of nodes in the tree (shared subtrees counted per use).
    pub fn size(&self) -> usize {
        1 + match self.node() {
            Node::Constant(_) | Node::Identity | Node::Step { .. } => 0,
            Node::Sum(ts) | Node::Product(ts) => ts.iter().map(SmoothExpr::size).sum(),
            Node::Scale(_, e) | Node::AffineArg { arg: e, .. } => e.size(),
            Node::Compose { outer, inner } => outer.size() + inner.size(),
            Node::Glued(g) => g.left.size() + g.right.size(),
        }
    }
}

impl fmt::Debug for SmoothExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self.node(), f)
    }
}

impl fmt::Display for SmoothExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn join(f: &mut fmt::Formatter<'_>, items: &[SmoothExpr], sep: &str) -> fmt::Result {
            f.write_str("(")?;
            for (i, t) in items.iter().enumerate() {
                if i > 0 {
                    f.write_str(sep)?;
                }
                write!(f, "{t}")?;
            }
            f.write_str(")")
        }
        match self.node() {
            Node::Constant(c) => write!(f, "{c}"),
            Node::Identity => f.write_str("x"),
            Node::Sum(ts) => join(f, ts, " + "),
            Node::Product(ts) => join(f, ts, " * "),
            Node::Scale(c, e) => write!(f, "{c}*{e}"),
            Node::Compose { outer, inner } => write!(f, "[{outer}]∘[{inner}]"),
            Node::AffineArg { slope, offset, arg } => write!(f, "[{arg}]@({slope}x + {offset})"),
            Node::Step { order: 0 } => f.write_str("s"),
            Node::Step { order } => write!(f, "s^({order})"),
            Node::Glued(g) => write!(f, "glue@{}({} | {})", g.breakpoint, g.left, g.right),
        }
    }
}

impl std::ops::Add for SmoothExpr {
    type Output = SmoothExpr;
    fn add(self, rhs: SmoothExpr) -> SmoothExpr {
        SmoothExpr::sum([self, rhs])
    }
}

impl std::ops::Sub for SmoothExpr {
    type Output = SmoothExpr;
    fn sub(self, rhs: SmoothExpr) -> SmoothExpr {
        SmoothExpr::sum([self, rhs.neg()])
    }
}

impl std::ops::Mul for SmoothExpr {
    type Output = SmoothExpr;
    fn mul(self, rhs: SmoothExpr) -> SmoothExpr {
        SmoothExpr::product([self, rhs])
    }
}

impl std::ops::Neg for SmoothExpr {
    type Output = SmoothExpr;
    fn neg(self) -> SmoothExpr {
        SmoothExpr::scale(-1.0, self)
    }
}
