//! Truncated Taylor series ("jets") used to evaluate derivatives of the
//! smooth step without finite differencing.

/// Taylor coefficients `c[k] = f^(k)(x0) / k!` for `k = 0..=order`.
#[derive(Debug, Clone, PartialEq)]
pub struct Jet(Vec<f64>);

impl Jet {
    pub fn constant(c: f64, order: usize) -> Self {
        let mut v = vec![0.0; order + 1];
        v[0] = c;
        Jet(v)
    }

    pub fn zero(order: usize) -> Self {
        Jet(vec![0.0; order + 1])
    }

    /// The identity function expanded at `x0`.
    pub fn variable(x0: f64, order: usize) -> Self {
        let mut v = vec![0.0; order + 1];
        v[0] = x0;
        if order >= 1 {
            v[1] = 1.0;
        }
        Jet(v)
    }

    pub fn from_coeffs(coeffs: Vec<f64>) -> Self {
        assert!(!coeffs.is_empty());
        Jet(coeffs)
    }

    pub fn order(&self) -> usize {
        self.0.len() - 1
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.0
    }

    pub fn value(&self) -> f64 {
        self.0[0]
    }

    /// `k`-th derivative at the expansion point.
    pub fn derivative(&self, k: usize) -> f64 {
        self.0[k] * factorial(k)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0.0)
    }

    pub fn add(&self, other: &Jet) -> Jet {
        Jet(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, c: f64) -> Jet {
        Jet(self.0.iter().map(|a| c * a).collect())
    }

    pub fn mul(&self, other: &Jet) -> Jet {
        let n = self.0.len();
        let mut out = vec![0.0; n];
        for (i, a) in self.0.iter().enumerate() {
            if *a == 0.0 {
                continue;
            }
            for (j, b) in other.0.iter().take(n - i).enumerate() {
                out[i + j] += a * b;
            }
        }
        Jet(out)
    }

    pub fn div(&self, other: &Jet) -> Jet {
        let n = self.0.len();
        let b0 = other.0[0];
        let mut q = vec![0.0; n];
        for k in 0..n {
            let mut acc = self.0[k];
            for (j, qj) in q.iter().enumerate().take(k) {
                acc -= qj * other.0[k - j];
            }
            q[k] = acc / b0;
        }
        Jet(q)
    }

    pub fn exp(&self) -> Jet {
        let n = self.0.len();
        let mut e = vec![0.0; n];
        e[0] = self.0[0].exp();
        for k in 1..n {
            let mut acc = 0.0;
            for j in 1..=k {
                acc += j as f64 * self.0[j] * e[k - j];
            }
            e[k] = acc / k as f64;
        }
        Jet(e)
    }

    /// Series of `outer(inner(x))`, where `self` is `outer` expanded at `inner.value()`.
    pub fn compose(&self, inner: &Jet) -> Jet {
        let n = self.0.len();
        let mut shifted = inner.clone();
        shifted.0[0] = 0.0;
        // Horner: o_0 + d (o_1 + d (o_2 + ...))
        let mut acc = Jet::constant(self.0[n - 1], n - 1);
        for k in (0..n - 1).rev() {
            acc = acc.mul(&shifted);
            acc.0[0] += self.0[k];
        }
        acc
    }

    /// Rescale for the substitution `x -> slope * x`.
    pub fn chain_affine(&self, slope: f64) -> Jet {
        let mut p = 1.0;
        Jet(self
            .0
            .iter()
            .map(|c| {
                let v = c * p;
                p *= slope;
                v
            })
            .collect())
    }

    /// Jet of the `k`-th derivative, given a jet of order `order + k`.
    pub fn shift_derivative(&self, k: usize) -> Jet {
        let n = self.0.len() - k;
        Jet((0..n)
            .map(|j| {
                // (j+k)! / j!
                let mut falling = 1.0;
                for m in (j + 1)..=(j + k) {
                    falling *= m as f64;
                }
                self.0[j + k] * falling
            })
            .collect())
    }

    /// Evaluate the truncated polynomial at displacement `d` from the expansion point.
    pub fn eval_at_offset(&self, d: f64) -> f64 {
        self.0.iter().rev().fold(0.0, |acc, c| acc * d + c)
    }
}

pub(crate) fn factorial(k: usize) -> f64 {
    (1..=k).fold(1.0, |acc, m| acc * m as f64)
}
