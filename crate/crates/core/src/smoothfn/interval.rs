use serde::{Deserialize, Serialize};

use super::SmoothError;

/// A closed interval `[lo, hi]` of the real line. Either end may be infinite,
/// which stands for the half-line or the whole line.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 2]", into = "[f64; 2]")]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self, SmoothError> {
        if lo.is_nan() || hi.is_nan() || lo > hi || lo == f64::INFINITY || hi == f64::NEG_INFINITY {
            return Err(SmoothError::EmptyInterval { lo, hi });
        }
        Ok(Self { lo, hi })
    }

    pub fn point(x: f64) -> Self {
        Self { lo: x, hi: x }
    }

    pub fn whole() -> Self {
        Self { lo: f64::NEG_INFINITY, hi: f64::INFINITY }
    }

    /// `(-inf, b]`
    pub fn at_most(b: f64) -> Self {
        Self { lo: f64::NEG_INFINITY, hi: b }
    }

    /// `[b, inf)`
    pub fn at_least(b: f64) -> Self {
        Self { lo: b, hi: f64::INFINITY }
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn is_bounded(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo <= hi).then_some(Interval { lo, hi })
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval { lo: self.lo.min(other.lo), hi: self.hi.max(other.hi) }
    }

    /// Distance from `x` to the nearest point of the interval (0 inside).
    pub fn distance_to(&self, x: f64) -> f64 {
        if x < self.lo {
            self.lo - x
        } else if x > self.hi {
            x - self.hi
        } else {
            0.0
        }
    }
}

impl TryFrom<[f64; 2]> for Interval {
    type Error = SmoothError;

    fn try_from([lo, hi]: [f64; 2]) -> Result<Self, Self::Error> {
        Interval::new(lo, hi)
    }
}

impl From<Interval> for [f64; 2] {
    fn from(i: Interval) -> Self {
        [i.lo, i.hi]
    }
}

impl std::fmt::Display for Interval {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let open = if self.lo.is_finite() { '[' } else { '(' };
        let close = if self.hi.is_finite() { ']' } else { ')' };
        write!(f, "{open}{}, {}{close}", self.lo, self.hi)
    }
}

/// Image of `[lo, hi]` under the floating-point map `x -> fl(fl(slope*x) + offset)`.
///
/// Round-to-nearest is monotone, so the float map is monotone in `x` and the
/// image of the interval is exactly spanned by the images of its endpoints.
pub(crate) fn affine_image(i: &Interval, slope: f64, offset: f64) -> Interval {
    let a = affine_point(i.lo, slope, offset);
    let b = affine_point(i.hi, slope, offset);
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    Interval { lo, hi }
}

#[inline]
pub(crate) fn affine_point(x: f64, slope: f64, offset: f64) -> f64 {
    if x.is_infinite() {
        // slope != 0 is guaranteed by construction
        return if (x > 0.0) == (slope > 0.0) { f64::INFINITY } else { f64::NEG_INFINITY };
    }
    slope * x + offset
}
