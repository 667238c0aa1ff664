//! Series with logarithms: sum_i f_i(z) log(z)^i / i! with power-series
//! parts, exact over the rationals. The i! normalization makes the theta
//! action a plain shift on the log grading.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::cases::binomial;
use crate::error::Result;
use crate::rational::Q;
use crate::series::PowerSeries;

#[derive(Clone)]
pub struct LogSeries {
    /// parts[i] multiplies log^i z / i!.
    parts: Vec<PowerSeries>,
}

impl LogSeries {
    pub fn new(parts: Vec<PowerSeries>) -> Self {
        assert!(!parts.is_empty());
        LogSeries { parts }
    }

    pub fn from_series(s: PowerSeries) -> Self {
        LogSeries { parts: vec![s] }
    }

    pub fn zero(n: usize) -> Self {
        Self::from_series(PowerSeries::zero(n))
    }

    /// Highest log power carried (trailing zero parts ignored).
    pub fn log_degree(&self) -> usize {
        self.parts
            .iter()
            .rposition(|p| !p.is_zero())
            .unwrap_or(0)
    }

    pub fn part(&self, i: usize) -> PowerSeries {
        self.parts
            .get(i)
            .cloned()
            .unwrap_or_else(|| PowerSeries::zero(self.truncation()))
    }

    pub fn parts(&self) -> &[PowerSeries] {
        &self.parts
    }

    pub fn truncation(&self) -> usize {
        self.parts.iter().map(PowerSeries::truncation).min().unwrap()
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(PowerSeries::is_zero)
    }

    pub fn neg(&self) -> Self {
        LogSeries {
            parts: self.parts.iter().map(PowerSeries::neg).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let d = self.parts.len().max(other.parts.len());
        let n = self.truncation().min(other.truncation());
        let parts = (0..d)
            .map(|i| {
                self.part(i)
                    .truncate(n)
                    .add(&other.part(i).truncate(n))
            })
            .collect();
        LogSeries { parts }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Q) -> Self {
        LogSeries {
            parts: self.parts.iter().map(|p| p.scale(c)).collect(),
        }
    }

    /// Product; the i!-normalized parts convolve with binomial weights.
    pub fn mul(&self, other: &Self) -> Self {
        let d = self.parts.len() + other.parts.len() - 1;
        let n = self.truncation().min(other.truncation());
        let mut parts = vec![PowerSeries::zero(n); d];
        for (i, a) in self.parts.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.parts.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let c = Q::from_integer(binomial(i + j, i));
                parts[i + j] = parts[i + j].add(&a.mul(b).scale(&c));
            }
        }
        LogSeries { parts }
    }

    pub fn mul_series(&self, s: &PowerSeries) -> Self {
        LogSeries {
            parts: self.parts.iter().map(|p| p.mul(s)).collect(),
        }
    }

    pub fn div_series(&self, s: &PowerSeries) -> Result<Self> {
        let inv = s.inverse()?;
        Ok(self.mul_series(&inv))
    }

    /// theta = z d/dz, acting as theta on parts plus a down-shift of the
    /// log grading: theta(f L^i/i!) = (theta f) L^i/i! + f L^{i-1}/(i-1)!.
    pub fn theta(&self) -> Self {
        let d = self.parts.len();
        let parts = (0..d)
            .map(|i| {
                let mut p = self.parts[i].theta();
                if i + 1 < d {
                    p = p.add(&self.parts[i + 1]);
                }
                p
            })
            .collect();
        LogSeries { parts }
    }

    /// Substitute z = m(q) where m = q * u, u(0) = 1: parts compose with m
    /// and log z becomes log q + log u(q).
    pub fn substitute(&self, m: &PowerSeries) -> Result<Self> {
        let n = self.truncation().min(m.truncation());
        let u = m.shift_down(1)?;
        let lam = u.log()?.truncate(n); // log u
        let d = self.parts.len();
        // new_k = sum_{i>=k} (f_i o m) * lam^{i-k} / (i-k)!
        let composed: Vec<PowerSeries> = self
            .parts
            .iter()
            .map(|f| f.truncate(n).compose(&m.truncate(n)))
            .collect::<Result<_>>()?;
        let mut lam_pow = vec![PowerSeries::one(n)];
        for _ in 1..d {
            lam_pow.push(lam_pow.last().unwrap().mul(&lam));
        }
        let parts = (0..d)
            .map(|k| {
                let mut acc = PowerSeries::zero(n);
                for i in k..d {
                    if composed[i].is_zero() {
                        continue;
                    }
                    let c = Q::new(BigInt::from(1), crate::cases::factorial(i - k));
                    acc = acc.add(&composed[i].mul(&lam_pow[i - k]).scale(&c));
                }
                acc
            })
            .collect();
        Ok(LogSeries { parts })
    }

    /// The pure-series part, with an assertion that no log term survives.
    pub fn expect_log_free(&self) -> Result<PowerSeries> {
        for (i, p) in self.parts.iter().enumerate().skip(1) {
            if !p.is_zero() {
                return Err(crate::error::Error::Domain(format!(
                    "unexpected log^{i} term in a log-free quantity"
                )));
            }
        }
        Ok(self.parts[0].clone())
    }
}

impl PartialEq for LogSeries {
    fn eq(&self, other: &Self) -> bool {
        let d = self.parts.len().max(other.parts.len());
        let n = self.truncation().min(other.truncation());
        (0..d).all(|i| self.part(i).truncate(n) == other.part(i).truncate(n))
    }
}

impl std::fmt::Debug for LogSeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (i, p) in self.parts.iter().enumerate() {
            if !p.is_zero() || i == 0 {
                writeln!(f, "L^{i}/{i}!: {:?}", p)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qi;

    fn lser(parts: Vec<PowerSeries>) -> LogSeries {
        LogSeries::new(parts)
    }

    #[test]
    fn theta_shifts_log_grading() {
        // theta(log z) = 1
        let l = lser(vec![PowerSeries::zero(6), PowerSeries::one(6)]);
        let t = l.theta();
        assert_eq!(t.part(0), PowerSeries::one(6));
        assert!(t.part(1).is_zero());
        // theta(log^2 z / 2) = log z
        let l2 = lser(vec![
            PowerSeries::zero(6),
            PowerSeries::zero(6),
            PowerSeries::one(6),
        ]);
        assert_eq!(l2.theta(), l);
    }

    #[test]
    fn product_binomial_weights() {
        // (log z)(log z) = 2 * log^2 z / 2
        let l = lser(vec![PowerSeries::zero(8), PowerSeries::one(8)]);
        let sq = l.mul(&l);
        assert!(sq.part(0).is_zero());
        assert!(sq.part(1).is_zero());
        assert_eq!(sq.part(2), PowerSeries::one(8).scale(&qi(2)));
    }

    #[test]
    fn substitute_into_identity() {
        // substituting m = q leaves everything in place
        let l = lser(vec![PowerSeries::var(8), PowerSeries::one(8)]);
        let s = l.substitute(&PowerSeries::var(8)).unwrap();
        assert_eq!(s, l);
    }

    #[test]
    fn substitute_tracks_log_of_unit() {
        // f = log z, m = q/(1-q): log z -> log q + log(1/(1-q))
        let l = lser(vec![PowerSeries::zero(8), PowerSeries::one(8)]);
        let mut geom = PowerSeries::from_fn(8, |_| qi(1)); // 1/(1-q)
        geom = geom.shift_up(1); // q/(1-q)
        let s = l.substitute(&geom).unwrap();
        assert_eq!(s.part(1).coeff(0), Q::one());
        // part 0 = -log(1-q) = sum q^k/k; the unit part of m carries one
        // fewer known coefficient than m itself
        assert_eq!(s.truncation(), 7);
        for k in 1..7 {
            assert_eq!(s.part(0).coeff(k), Q::new(1.into(), k.into()));
        }
    }
}
