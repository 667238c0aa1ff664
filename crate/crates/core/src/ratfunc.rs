//! Rational functions in one variable, kept in lowest terms.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::QPoly;
use crate::rational::Q;

/// num/den with gcd(num, den) = 1 and monic den.
#[derive(Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: QPoly,
    den: QPoly,
}

impl RatFunc {
    pub fn new(num: QPoly, den: QPoly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RatFunc {
                num: QPoly::zero(),
                den: QPoly::one(),
            };
        }
        let g = num.gcd(&den);
        let mut num = num.div_exact(&g);
        let mut den = den.div_exact(&g);
        let lead = den.leading();
        if !lead.is_one() {
            let inv = Q::one() / lead;
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RatFunc { num, den }
    }

    pub fn from_poly(p: QPoly) -> Self {
        RatFunc {
            num: p,
            den: QPoly::one(),
        }
    }

    pub fn constant(c: Q) -> Self {
        Self::from_poly(QPoly::constant(c))
    }

    pub fn zero() -> Self {
        Self::from_poly(QPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(QPoly::one())
    }

    pub fn var() -> Self {
        Self::from_poly(QPoly::var())
    }

    pub fn num(&self) -> &QPoly {
        &self.num
    }

    pub fn den(&self) -> &QPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    pub fn as_polynomial(&self) -> Option<QPoly> {
        self.is_polynomial().then(|| self.num.clone())
    }

    pub fn neg(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn div(&self, other: &Self) -> Self {
        assert!(!other.is_zero(), "division by zero rational function");
        Self::new(self.num.mul(&other.den), self.den.mul(&other.num))
    }

    pub fn inv(&self) -> Self {
        Self::one().div(self)
    }

    pub fn derivative(&self) -> Self {
        // (u/v)' = (u'v - uv')/v^2
        let u = &self.num;
        let v = &self.den;
        Self::new(
            u.derivative().mul(v).sub(&u.mul(&v.derivative())),
            v.mul(v),
        )
    }

    pub fn nth_derivative(&self, n: usize) -> Self {
        let mut f = self.clone();
        for _ in 0..n {
            f = f.derivative();
        }
        f
    }

    pub fn eval(&self, x: &Q) -> Result<Q> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::Domain(format!(
                "pole at {} while evaluating rational function",
                x
            )));
        }
        Ok(self.num.eval(x) / d)
    }

    /// Order of vanishing at s: multiplicity in num minus multiplicity in den
    /// (negative = pole order).
    pub fn order_at(&self, s: &Q) -> i64 {
        if self.is_zero() {
            return i64::MAX;
        }
        let lin = QPoly::new(vec![-s.clone(), Q::one()]);
        let mult = |p: &QPoly| {
            let mut m = 0i64;
            let mut p = p.clone();
            while !p.is_zero() && p.eval(s).is_zero() {
                p = p.div_exact(&lin);
                m += 1;
            }
            m
        };
        mult(&self.num) - mult(&self.den)
    }

    /// lim_{z->s} (z-s)^k f(z), i.e. the coefficient of (z-s)^{-k} in the
    /// Laurent expansion. Errors if the pole order exceeds k.
    pub fn laurent_limit(&self, s: &Q, k: usize) -> Result<Q> {
        if self.is_zero() {
            return Ok(Q::zero());
        }
        let lin = QPoly::new(vec![-s.clone(), Q::one()]);
        let mut pow = QPoly::one();
        for _ in 0..k {
            pow = pow.mul(&lin);
        }
        let shifted = Self::new(self.num.mul(&pow), self.den.clone());
        let d = shifted.den.eval(s);
        if d.is_zero() {
            return Err(Error::Domain(format!(
                "pole of order > {k} at {s}: irregular singular point"
            )));
        }
        Ok(shifted.num.eval(s) / d)
    }

    /// Substitute z -> (a z + b)/(c z + d); the result is again rational.
    pub fn moebius_substitute(&self, a: &Q, b: &Q, c: &Q, d_: &Q) -> Self {
        let up = QPoly::new(vec![b.clone(), a.clone()]);
        let dn = QPoly::new(vec![d_.clone(), c.clone()]);
        let deg = self
            .num
            .degree()
            .unwrap_or(0)
            .max(self.den.degree().unwrap_or(0));
        let subst = |p: &QPoly| {
            // p((az+b)/(cz+d)) * (cz+d)^deg
            let mut acc = QPoly::zero();
            let mut up_pow = QPoly::one();
            // precompute dn powers downward
            let mut dn_pows = vec![QPoly::one()];
            for _ in 0..deg {
                dn_pows.push(dn_pows.last().unwrap().mul(&dn));
            }
            for (i, coef) in p.coeffs().iter().enumerate() {
                if !coef.is_zero() {
                    acc = acc.add(&up_pow.mul(&dn_pows[deg - i]).scale(coef));
                }
                up_pow = up_pow.mul(&up);
            }
            acc
        };
        Self::new(subst(&self.num), subst(&self.den))
    }
}

impl std::fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num.display("z"))
        } else {
            write!(f, "({})/({})", self.num.display("z"), self.den.display("z"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qi;

    fn p(v: &[i64]) -> QPoly {
        QPoly::new(v.iter().map(|&x| qi(x)).collect())
    }

    #[test]
    fn normalization() {
        // (x^2-1)/(2x-2) = (x+1)/2
        let f = RatFunc::new(p(&[-1, 0, 1]), p(&[-2, 2]));
        assert_eq!(f.num(), &p(&[1, 1]).scale(&crate::rational::qr(1, 2)));
        assert_eq!(f.den(), &QPoly::one());
    }

    #[test]
    fn derivative_quotient_rule() {
        // d/dz (1/z) = -1/z^2
        let f = RatFunc::new(p(&[1]), p(&[0, 1]));
        let df = f.derivative();
        assert_eq!(df, RatFunc::new(p(&[-1]), p(&[0, 0, 1])));
    }

    #[test]
    fn laurent_limits() {
        // f = (3/2)/z : lim z^1 f = 3/2, order -1
        let f = RatFunc::new(p(&[3]), p(&[0, 2]));
        assert_eq!(f.order_at(&qi(0)), -1);
        assert_eq!(f.laurent_limit(&qi(0), 1).unwrap(), crate::rational::qr(3, 2));
        assert_eq!(f.laurent_limit(&qi(0), 2).unwrap(), qi(0));
        assert!(f.laurent_limit(&qi(1), 0).is_ok());
        let g = RatFunc::new(p(&[1]), p(&[0, 0, 1]));
        assert!(g.laurent_limit(&qi(0), 1).is_err());
    }

    #[test]
    fn moebius() {
        // z -> z/(z+1) applied to f(z) = z gives z/(z+1)
        let f = RatFunc::var();
        let g = f.moebius_substitute(&qi(1), &qi(0), &qi(1), &qi(1));
        assert_eq!(g, RatFunc::new(p(&[0, 1]), p(&[1, 1])));
    }
}
