//! Dense univariate polynomials over the exact rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::{fmt_q, Q};

/// Polynomial with exact rational coefficients, lowest degree first.
/// The zero polynomial is the empty coefficient vector.
#[derive(Clone, PartialEq, Eq)]
pub struct QPoly {
    coeffs: Vec<Q>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn zero() -> Self {
        QPoly { coeffs: vec![] }
    }

    pub fn constant(c: Q) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    /// The monomial c*x^k.
    pub fn monomial(c: Q, k: usize) -> Self {
        let mut v = vec![Q::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn var() -> Self {
        Self::monomial(Q::one(), 1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Q {
        self.coeffs.get(i).cloned().unwrap_or_else(Q::zero)
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn leading(&self) -> Q {
        self.coeffs.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn neg(&self) -> Self {
        QPoly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            v.push(self.coeff(i) + other.coeff(i));
        }
        Self::new(v)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        QPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut v = vec![Q::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    v[i + j] += a * b;
                }
            }
        }
        Self::new(v)
    }

    /// Multiply by x^k.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![Q::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        QPoly { coeffs: v }
    }

    /// Euclidean division: (quotient, remainder).
    pub fn divrem(&self, den: &Self) -> (Self, Self) {
        assert!(!den.is_zero(), "division by the zero polynomial");
        let dd = den.degree().unwrap();
        let n = self.coeffs.len();
        if n < dd + 1 {
            return (Self::zero(), self.clone());
        }
        let lead_inv = Q::one() / den.leading();
        let mut rem = self.coeffs.clone();
        let mut quo = vec![Q::zero(); n - dd];
        for k in (0..n - dd).rev() {
            let factor = &rem[k + dd] * &lead_inv;
            if factor.is_zero() {
                continue;
            }
            for i in 0..=dd {
                let t = &den.coeffs[i] * &factor;
                rem[k + i] -= t;
            }
            quo[k] = factor;
        }
        rem.truncate(dd);
        (Self::new(quo), Self::new(rem))
    }

    pub fn rem(&self, den: &Self) -> Self {
        self.divrem(den).1
    }

    /// Exact division; panics if the remainder is nonzero.
    pub fn div_exact(&self, den: &Self) -> Self {
        let (q, r) = self.divrem(den);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let inv = Q::one() / self.leading();
        self.scale(&inv)
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Q::from_integer(BigInt::from(i)))
            .collect();
        Self::new(v)
    }

    pub fn eval(&self, x: &Q) -> Q {
        let mut r = Q::zero();
        for c in self.coeffs.iter().rev() {
            r = r * x + c;
        }
        r
    }

    /// P(a*x + b) by Horner on the affine substitution.
    pub fn compose_affine(&self, a: &Q, b: &Q) -> Self {
        let mut r = Self::zero();
        let affine = Self::new(vec![b.clone(), a.clone()]);
        for c in self.coeffs.iter().rev() {
            r = r.mul(&affine).add(&Self::constant(c.clone()));
        }
        r
    }

    /// P(x + b).
    pub fn taylor_shift(&self, b: &Q) -> Self {
        self.compose_affine(&Q::one(), b)
    }

    /// Common denominator and integer numerators: self = (1/d) * sum n_i x^i.
    pub fn clear_denominators(&self) -> (Vec<BigInt>, BigInt) {
        let mut den = BigInt::one();
        for c in &self.coeffs {
            den = den.lcm(c.denom());
        }
        let nums = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        (nums, den)
    }

    /// Squarefree part (product of distinct irreducible factors), monic.
    pub fn squarefree_part(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return Self::one();
        }
        let g = self.gcd(&self.derivative());
        self.div_exact(&g).monic()
    }

    /// All rational roots with multiplicities, plus the root-free cofactor.
    pub fn rational_roots(&self) -> (Vec<(Q, usize)>, QPoly) {
        let mut roots = Vec::new();
        let mut rest = self.clone();
        if rest.is_zero() {
            return (roots, rest);
        }
        // strip powers of x
        let mut zero_mult = 0;
        while rest.coeff(0).is_zero() && !rest.is_zero() {
            rest = rest.div_exact(&QPoly::var());
            zero_mult += 1;
        }
        if zero_mult > 0 {
            roots.push((Q::zero(), zero_mult));
        }
        let (nums, _) = rest.clear_denominators();
        if nums.is_empty() {
            return (roots, rest);
        }
        let a0 = nums[0].clone();
        let an = nums.last().unwrap().clone();
        for p in divisors(&a0.abs()) {
            for q in divisors(&an.abs()) {
                for sign in [1, -1] {
                    let cand = Q::new(p.clone() * sign, q.clone());
                    let mut mult = 0;
                    while !rest.is_zero() && rest.eval(&cand).is_zero() {
                        let lin = QPoly::new(vec![-cand.clone(), Q::one()]);
                        rest = rest.div_exact(&lin);
                        mult += 1;
                    }
                    if mult > 0 {
                        roots.push((cand, mult));
                    }
                }
            }
        }
        roots.sort_by(|a, b| a.0.cmp(&b.0));
        (roots, rest)
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    if n.is_zero() {
        return vec![BigInt::one()];
    }
    let mut divs = Vec::new();
    let mut d = BigInt::one();
    loop {
        let dd = &d * &d;
        if dd > *n {
            break;
        }
        if n.is_multiple_of(&d) {
            divs.push(d.clone());
            let q = n / &d;
            if q != d {
                divs.push(q);
            }
        }
        d += 1;
    }
    divs.sort();
    divs
}

impl std::fmt::Debug for QPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.display("x"))
    }
}

impl QPoly {
    pub fn display(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = fmt_q(&c.abs());
            let term = match i {
                0 => mag,
                1 if mag == "1" => var.to_string(),
                1 => format!("{mag}*{var}"),
                _ if mag == "1" => format!("{var}^{i}"),
                _ => format!("{mag}*{var}^{i}"),
            };
            if parts.is_empty() {
                parts.push(if c.is_negative() {
                    format!("-{term}")
                } else {
                    term
                });
            } else {
                parts.push(format!("{} {term}", if c.is_negative() { "-" } else { "+" }));
            }
        }
        parts.join(" ")
    }
}
