//! Deterministic sample grids snapped to dyadic rationals, so that
//! polynomial arithmetic with dyadic coefficients stays exact in `f64`.

use crate::smoothfn::Interval;

/// Half-width used when an unbounded interval has to be sampled.
const UNBOUNDED_REACH: f64 = 16.0;

/// Up to `count` sorted, distinct points of `i` (both ends included when
/// finite). Interior points are snapped to multiples of a power of two no
/// larger than an eighth of the grid spacing.
pub fn dyadic_points(i: &Interval, count: usize) -> Vec<f64> {
    let (lo, hi) = match (i.lo().is_finite(), i.hi().is_finite()) {
        (true, true) => (i.lo(), i.hi()),
        (true, false) => (i.lo(), i.lo() + 2.0 * UNBOUNDED_REACH),
        (false, true) => (i.hi() - 2.0 * UNBOUNDED_REACH, i.hi()),
        (false, false) => (-UNBOUNDED_REACH, UNBOUNDED_REACH),
    };
    if count == 0 {
        return Vec::new();
    }
    if count == 1 || lo == hi {
        return vec![if lo == hi { lo } else { lo + (hi - lo) / 2.0 }];
    }
    let step = (hi - lo) / (count - 1) as f64;
    let quantum = 2f64.powi((step / 8.0).log2().floor() as i32);
    let mut pts: Vec<f64> = (0..count)
        .map(|k| {
            if k == 0 {
                lo
            } else if k == count - 1 {
                hi
            } else {
                let p = lo + step * k as f64;
                ((p / quantum).round() * quantum).clamp(lo, hi)
            }
        })
        .collect();
    pts.dedup();
    pts
}

/// `count` evenly spaced points from `lo` to `hi` inclusive, computed as
/// `lo + (hi - lo) * k / (count - 1)`.
pub fn linear_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..count)
            .map(|k| if k == count - 1 { hi } else { lo + (hi - lo) * k as f64 / (count - 1) as f64 })
            .collect(),
    }
}
