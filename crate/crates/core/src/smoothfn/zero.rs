//! Exact-vanishing analysis: flat zones, interval enclosures and the
//! three-valued `is_zero_on` decision.
//!
//! All claims are about the floating-point evaluation performed by
//! [`SmoothExpr::eval`]: a reported flat value is returned bit-exactly by
//! `eval` at every float of the interval.

use serde::{Deserialize, Serialize};

use super::expr::{step_value, Node, SmoothExpr};
use super::interval::affine_image;
use super::Interval;
use crate::sampling::dyadic_points;

/// A closed interval on which an expression is constant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FlatZone {
    pub interval: Interval,
    pub value: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ZeroDecision {
    Yes,
    No,
    Unknown,
}

/// Points sampled when looking for a nonzero witness in `is_zero_on`.
const REFUTATION_SAMPLES: usize = 33;

/// If `e` is provably constant on `i`, that constant.
pub fn flat_value_on(e: &SmoothExpr, i: &Interval) -> Option<f64> {
    match e.node() {
        Node::Constant(c) => Some(*c),
        Node::Identity => (i.lo() == i.hi()).then_some(i.lo()),
        Node::Sum(terms) => {
            let mut acc = 0.0;
            for t in terms {
                acc += flat_value_on(t, i)?;
            }
            Some(acc)
        }
        Node::Product(factors) => {
            // a zero factor anywhere wins, matching eval's short-circuit
            let values: Vec<Option<f64>> = factors.iter().map(|f| flat_value_on(f, i)).collect();
            if values.contains(&Some(0.0)) {
                return Some(0.0);
            }
            values.into_iter().try_fold(1.0, |acc, v| v.map(|v| acc * v))
        }
        Node::Scale(c, inner) => {
            let v = flat_value_on(inner, i)?;
            Some(c * v)
        }
        Node::Compose { outer, inner } => match flat_value_on(inner, i) {
            Some(v) => Some(outer.eval(v)),
            None => flat_value_on(outer, &enclose(inner, i)?),
        },
        Node::AffineArg { slope, offset, arg } => flat_value_on(arg, &affine_image(i, *slope, *offset)),
        Node::Step { order } => {
            if i.hi() <= 0.0 {
                Some(0.0)
            } else if i.lo() >= 1.0 {
                Some(if *order == 0 { 1.0 } else { 0.0 })
            } else {
                None
            }
        }
        Node::Glued(g) => {
            let bp = g.breakpoint();
            // eval uses `left` strictly below the breakpoint
            let left_part = i.intersect(&Interval::at_most(bp.next_down()));
            let right_part = i.intersect(&Interval::at_least(bp));
            match (left_part, right_part) {
                (Some(l), Some(r)) => {
                    let a = flat_value_on(g.left(), &l)?;
                    let b = flat_value_on(g.right(), &r)?;
                    (a == b).then_some(a)
                }
                (Some(l), None) => flat_value_on(g.left(), &l),
                (None, Some(r)) => flat_value_on(g.right(), &r),
                (None, None) => None,
            }
        }
    }
}

fn widen(lo: f64, hi: f64) -> Option<Interval> {
    if lo.is_nan() || hi.is_nan() {
        return None;
    }
    let lo = if lo.is_finite() { lo.next_down() } else { lo };
    let hi = if hi.is_finite() { hi.next_up() } else { hi };
    Interval::new(lo, hi).ok()
}

fn mul_intervals(a: &Interval, b: &Interval) -> Option<Interval> {
    let cands = [a.lo() * b.lo(), a.lo() * b.hi(), a.hi() * b.lo(), a.hi() * b.hi()];
    if cands.iter().any(|c| c.is_nan()) {
        return None;
    }
    let lo = cands.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = cands.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    widen(lo, hi)
}

/// Outward-rounded enclosure of the range of `e` over `i`, when one is available.
pub fn enclose(e: &SmoothExpr, i: &Interval) -> Option<Interval> {
    if let Some(v) = flat_value_on(e, i) {
        return Some(Interval::point(v));
    }
    match e.node() {
        Node::Constant(c) => Some(Interval::point(*c)),
        Node::Identity => Some(*i),
        Node::Sum(terms) => {
            let mut acc = Interval::point(0.0);
            for t in terms {
                let r = enclose(t, i)?;
                acc = widen(acc.lo() + r.lo(), acc.hi() + r.hi())?;
            }
            Some(acc)
        }
        Node::Product(factors) => {
            let mut acc = Interval::point(1.0);
            for f in factors {
                acc = mul_intervals(&acc, &enclose(f, i)?)?;
            }
            Some(acc)
        }
        Node::Scale(c, inner) => mul_intervals(&Interval::point(*c), &enclose(inner, i)?),
        Node::Compose { outer, inner } => enclose(outer, &enclose(inner, i)?),
        Node::AffineArg { slope, offset, arg } => enclose(arg, &affine_image(i, *slope, *offset)),
        Node::Step { order: 0 } => {
            let lo = if i.lo() <= 0.0 { 0.0 } else { step_value(i.lo()).next_down().max(0.0) };
            let hi = if i.hi() >= 1.0 { 1.0 } else { step_value(i.hi()).next_up().min(1.0) };
            Interval::new(lo, hi).ok()
        }
        Node::Step { .. } => None,
        Node::Glued(g) => {
            let bp = g.breakpoint();
            let l = i
                .intersect(&Interval::at_most(bp.next_down()))
                .map(|l| enclose(g.left(), &l));
            let r = i.intersect(&Interval::at_least(bp)).map(|r| enclose(g.right(), &r));
            match (l, r) {
                (Some(a), Some(b)) => Some(a?.hull(&b?)),
                (Some(a), None) => a,
                (None, Some(b)) => b,
                (None, None) => None,
            }
        }
    }
}

/// Candidate zone boundaries of `e`.
fn breakpoints(e: &SmoothExpr, out: &mut Vec<f64>) {
    match e.node() {
        Node::Constant(_) | Node::Identity => {}
        Node::Step { .. } => out.extend([0.0, 1.0]),
        Node::Sum(ts) | Node::Product(ts) => ts.iter().for_each(|t| breakpoints(t, out)),
        Node::Scale(_, inner) => breakpoints(inner, out),
        Node::Compose { inner, .. } => breakpoints(inner, out),
        Node::AffineArg { slope, offset, arg } => {
            let mut inner = Vec::new();
            breakpoints(arg, &mut inner);
            for p in inner {
                let q = (p - offset) / slope;
                if q.is_finite() {
                    // the float map may land an ulp off; keep neighbours as candidates
                    out.extend([q.next_down(), q, q.next_up()]);
                }
            }
        }
        Node::Glued(g) => {
            let (lo, hi) = g.deadzone();
            let bp = g.breakpoint();
            out.extend([lo, lo.next_up(), bp.next_down(), bp, hi.next_down(), hi]);
            breakpoints(g.left(), out);
            breakpoints(g.right(), out);
        }
    }
}

/// Maximal closed intervals on which `e` is provably constant, sorted by
/// left end. Zones touching at a shared point with equal values are merged.
pub fn flat_zones(e: &SmoothExpr) -> Vec<FlatZone> {
    let mut pts = Vec::new();
    breakpoints(e, &mut pts);
    pts.retain(|p| p.is_finite());
    pts.sort_by(f64::total_cmp);
    pts.dedup();

    let mut cells = Vec::with_capacity(pts.len() + 1);
    if pts.is_empty() {
        cells.push(Interval::whole());
    } else {
        cells.push(Interval::at_most(pts[0]));
        for w in pts.windows(2) {
            cells.push(Interval::new(w[0], w[1]).expect("sorted"));
        }
        cells.push(Interval::at_least(*pts.last().unwrap()));
    }

    let mut zones: Vec<FlatZone> = Vec::new();
    for cell in cells {
        let Some(value) = flat_value_on(e, &cell) else { continue };
        match zones.last_mut() {
            Some(z) if z.value == value && z.interval.hi() >= cell.lo() => {
                z.interval = z.interval.hull(&cell);
            }
            _ => zones.push(FlatZone { interval: cell, value }),
        }
    }
    zones
}

/// Three-valued test for `e ≡ 0` on the closed interval `i`.
///
/// `Yes` comes only from structural analysis, `No` only from an exact
/// nonzero evaluation at a dyadic sample point.
pub fn is_zero_on(e: &SmoothExpr, i: &Interval) -> ZeroDecision {
    if flat_value_on(e, i) == Some(0.0) {
        return ZeroDecision::Yes;
    }
    for x in dyadic_points(i, REFUTATION_SAMPLES) {
        let v = e.eval(x);
        if v != 0.0 && !v.is_nan() {
            return ZeroDecision::No;
        }
    }
    ZeroDecision::Unknown
}
