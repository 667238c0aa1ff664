//! Truncated formal power series over exact rationals.
//!
//! A series carries the number of known coefficients; every operation
//! propagates the smaller truncation of its operands and never claims
//! coefficients it cannot know.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::QPoly;
use crate::rational::{fmt_q, Q};

/// c_0 + c_1 z + ... + c_{N-1} z^{N-1} + O(z^N), N = coeffs.len().
#[derive(Clone, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<Q>,
}

impl PowerSeries {
    pub fn new(coeffs: Vec<Q>) -> Self {
        assert!(!coeffs.is_empty(), "series must carry at least one coefficient");
        PowerSeries { coeffs }
    }

    pub fn zero(n: usize) -> Self {
        Self::new(vec![Q::zero(); n])
    }

    pub fn one(n: usize) -> Self {
        Self::constant(Q::one(), n)
    }

    pub fn constant(c: Q, n: usize) -> Self {
        let mut v = vec![Q::zero(); n];
        v[0] = c;
        Self::new(v)
    }

    /// The series `z`.
    pub fn var(n: usize) -> Self {
        let mut v = vec![Q::zero(); n];
        if n > 1 {
            v[1] = Q::one();
        }
        Self::new(v)
    }

    pub fn from_fn(n: usize, f: impl Fn(usize) -> Q) -> Self {
        Self::new((0..n).map(f).collect())
    }

    pub fn from_poly(p: &QPoly, n: usize) -> Self {
        Self::from_fn(n, |i| p.coeff(i))
    }

    /// Number of known coefficients.
    pub fn truncation(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, i: usize) -> Q {
        self.coeffs.get(i).cloned().unwrap_or_else(Q::zero)
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn truncate(&self, n: usize) -> Self {
        let n = n.min(self.coeffs.len()).max(1);
        Self::new(self.coeffs[..n].to_vec())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.truncation().min(other.truncation());
        Self::from_fn(n, |i| self.coeff(i) + other.coeff(i))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Q) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.truncation().min(other.truncation());
        let mut v = vec![Q::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate().take(n) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n - i) {
                if !b.is_zero() {
                    v[i + j] += a * b;
                }
            }
        }
        Self::new(v)
    }

    /// Multiply by z^k (shifts coefficients up, keeping the truncation).
    pub fn shift_up(&self, k: usize) -> Self {
        let n = self.truncation();
        Self::from_fn(n, |i| if i < k { Q::zero() } else { self.coeff(i - k) })
    }

    /// Divide by z^k; requires the low-order coefficients to vanish.
    pub fn shift_down(&self, k: usize) -> Result<Self> {
        for i in 0..k.min(self.truncation()) {
            if !self.coeff(i).is_zero() {
                return Err(Error::SeriesPrecondition(format!(
                    "cannot divide by z^{k}: coefficient {i} is {}",
                    fmt_q(&self.coeff(i))
                )));
            }
        }
        let n = self.truncation().saturating_sub(k).max(1);
        Ok(Self::from_fn(n, |i| self.coeff(i + k)))
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.coeff(0).is_zero() {
            return Err(Error::SeriesPrecondition(
                "inverse requires a nonzero constant term (offending coefficient 0)".into(),
            ));
        }
        let n = self.truncation();
        let inv0 = Q::one() / self.coeff(0);
        let mut v = vec![Q::zero(); n];
        v[0] = inv0.clone();
        for k in 1..n {
            let mut s = Q::zero();
            for i in 1..=k {
                if !self.coeffs[i].is_zero() && !v[k - i].is_zero() {
                    s += &self.coeffs[i] * &v[k - i];
                }
            }
            v[k] = -s * &inv0;
        }
        Ok(Self::new(v))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inverse()?))
    }

    pub fn derivative(&self) -> Self {
        let n = self.truncation();
        if n == 1 {
            return Self::zero(1);
        }
        Self::from_fn(n - 1, |i| {
            self.coeff(i + 1) * Q::from_integer(BigInt::from(i + 1))
        })
    }

    /// Antiderivative with zero constant term; one more coefficient is known.
    pub fn integrate_zero_constant(&self) -> Self {
        let n = self.truncation() + 1;
        Self::from_fn(n, |i| {
            if i == 0 {
                Q::zero()
            } else {
                self.coeff(i - 1) / Q::from_integer(BigInt::from(i))
            }
        })
    }

    /// theta = z d/dz.
    pub fn theta(&self) -> Self {
        Self::from_fn(self.truncation(), |i| {
            self.coeff(i) * Q::from_integer(BigInt::from(i))
        })
    }

    pub fn exp(&self) -> Result<Self> {
        if !self.coeff(0).is_zero() {
            return Err(Error::SeriesPrecondition(format!(
                "exp requires zero constant term, got {}",
                fmt_q(&self.coeff(0))
            )));
        }
        // f = exp(u) satisfies f' = u' f
        let n = self.truncation();
        let mut v = vec![Q::zero(); n];
        v[0] = Q::one();
        for k in 1..n {
            // k f_k = sum_{i=1..k} i u_i f_{k-i}
            let mut s = Q::zero();
            for i in 1..=k {
                if !self.coeffs[i].is_zero() && !v[k - i].is_zero() {
                    s += self.coeff(i) * Q::from_integer(BigInt::from(i)) * &v[k - i];
                }
            }
            v[k] = s / Q::from_integer(BigInt::from(k));
        }
        Ok(Self::new(v))
    }

    pub fn log(&self) -> Result<Self> {
        if !self.coeff(0).is_one() {
            return Err(Error::SeriesPrecondition(format!(
                "log requires unit constant term, got {}",
                fmt_q(&self.coeff(0))
            )));
        }
        // log(f) = integral of f'/f
        let df = self.derivative();
        let q = df.div(&self.truncate(df.truncation()))?;
        Ok(q.integrate_zero_constant().truncate(self.truncation()))
    }

    /// f^(p/q) for a series with unit constant term.
    pub fn pow_ratio(&self, p: i64, q: i64) -> Result<Self> {
        let lg = self.log()?;
        lg.scale(&Q::new(BigInt::from(p), BigInt::from(q))).exp()
    }

    /// self(inner); inner must have zero constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.coeff(0).is_zero() {
            return Err(Error::SeriesPrecondition(
                "composition requires zero constant term in the inner series (coefficient 0)"
                    .into(),
            ));
        }
        let n = self.truncation().min(inner.truncation());
        let inner = inner.truncate(n);
        let mut acc = Self::zero(n);
        for c in self.coeffs.iter().take(n).rev() {
            acc = acc.mul(&inner);
            acc.coeffs[0] = &acc.coeffs[0] + c;
        }
        Ok(acc)
    }

    /// Compositional inverse g with self(g(q)) = q; requires f = z + O(z^2)
    /// up to a unit linear coefficient.
    pub fn functional_inverse(&self) -> Result<Self> {
        if !self.coeff(0).is_zero() {
            return Err(Error::SeriesPrecondition(
                "functional inverse requires zero constant term (coefficient 0)".into(),
            ));
        }
        if self.coeff(1).is_zero() {
            return Err(Error::SeriesPrecondition(
                "functional inverse requires a unit linear term (coefficient 1)".into(),
            ));
        }
        let n = self.truncation();
        let df = {
            // derivative padded back to n coefficients (known up to z^{n-2};
            // the Newton loop only ever uses it at the current precision - 1)
            let mut v = self.derivative().coeffs.to_vec();
            v.push(Q::zero());
            Self::new(v)
        };
        let mut g = Self::var(2.min(n)).scale(&(Q::one() / self.coeff(1)));
        let mut prec = 2usize;
        while prec < n {
            prec = (2 * prec).min(n);
            let gp = pad(&g, prec);
            let f_of_g = self.truncate(prec).compose(&gp)?;
            let fp_of_g = df.truncate(prec).compose(&gp)?;
            let residual = f_of_g.sub(&Self::var(prec));
            g = gp.sub(&residual.div(&fp_of_g)?);
        }
        Ok(g)
    }

    /// Coefficient-wise product with an integer stream.
    pub fn hadamard(&self, stream: &[BigInt]) -> Self {
        assert!(
            stream.len() >= self.truncation(),
            "hadamard stream shorter than the series truncation"
        );
        Self::from_fn(self.truncation(), |i| {
            self.coeff(i) * Q::from_integer(stream[i].clone())
        })
    }

    /// Exact evaluation (for tests; the numeric boundary uses real arithmetic).
    pub fn eval_exact(&self, x: &Q) -> Q {
        let mut r = Q::zero();
        for c in self.coeffs.iter().rev() {
            r = r * x + c;
        }
        r
    }

    /// `n: p/q` lines, the CLI rendering of series.
    pub fn render_lines(&self) -> String {
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            out.push_str(&format!("{i}: {}\n", fmt_q(c)));
        }
        out
    }
}

fn pad(s: &PowerSeries, n: usize) -> PowerSeries {
    PowerSeries::from_fn(n, |i| s.coeff(i))
}

impl std::fmt::Debug for PowerSeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let shown: Vec<String> = self.coeffs.iter().take(8).map(|c| fmt_q(c)).collect();
        write!(f, "[{}{}]", shown.join(", "), if self.coeffs.len() > 8 { ", ..." } else { "" })
    }
}

/// Signals whether a coefficient stream is integral; used for the
/// mirror-map integrality checks.
pub fn all_integral(s: &PowerSeries, upto: usize) -> bool {
    s.coeffs
        .iter()
        .take(upto)
        .all(|c| c.denom().is_one() || c.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{qi, qr};

    #[test]
    fn exp_log_inverse_pair() {
        let one_plus_z = PowerSeries::from_fn(30, |i| if i <= 1 { qi(1) } else { qi(0) });
        let back = one_plus_z.log().unwrap().exp().unwrap();
        assert_eq!(back, one_plus_z.truncate(back.truncation()));
    }

    #[test]
    fn theta_eigenvector() {
        let z3 = PowerSeries::var(10).shift_up(2); // z^3
        assert_eq!(z3.theta(), z3.scale(&qi(3)));
    }

    #[test]
    fn functional_inverse_catalan() {
        // inverse of q - q^2 has Catalan coefficients
        let mut f = PowerSeries::zero(10);
        f.coeffs[1] = qi(1);
        f.coeffs[2] = qi(-1);
        let g = f.functional_inverse().unwrap();
        let catalan = [0i64, 1, 1, 2, 5, 14, 42, 132, 429, 1430];
        for (i, &c) in catalan.iter().enumerate() {
            assert_eq!(g.coeff(i), qi(c), "coefficient {i}");
        }
        // round trip
        let id = f.compose(&g).unwrap();
        assert_eq!(id, PowerSeries::var(10));
    }

    #[test]
    fn pow_ratio_binomial() {
        // (1 - 4z)^(-1/2) = sum C(2n,n) z^n
        let mut base = PowerSeries::one(12);
        base.coeffs[1] = qi(-4);
        let s = base.pow_ratio(-1, 2).unwrap();
        let central = [1i64, 2, 6, 20, 70, 252, 924, 3432];
        for (i, &c) in central.iter().enumerate() {
            assert_eq!(s.coeff(i), qi(c));
        }
    }

    #[test]
    fn truncation_propagates() {
        let a = PowerSeries::one(5);
        let b = PowerSeries::one(9);
        assert_eq!(a.mul(&b).truncation(), 5);
        assert_eq!(a.add(&b).truncation(), 5);
    }

    #[test]
    fn precondition_errors_name_offender() {
        let s = PowerSeries::constant(qr(1, 2), 4);
        let e = s.log().unwrap_err().to_string();
        assert!(e.contains("1/2"), "{e}");
        assert!(PowerSeries::one(4).exp().is_err());
        assert!(PowerSeries::var(4).inverse().is_err());
    }
}
