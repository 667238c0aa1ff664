//! Arbitrary-precision binary floating point over BigInt mantissas, with
//! the handful of transcendental functions the numeric pipeline needs
//! (sqrt, exp, ln, pi, sin/cos). All rounding is round-to-nearest,
//! ties away from zero, at the context precision; results are
//! deterministic functions of the context.

use std::cell::OnceCell;
use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, Zero};

use crate::rational::Q;

/// value = mantissa * 2^exp; mantissa trimmed to the context precision.
#[derive(Clone, Debug, PartialEq)]
pub struct Real {
    mantissa: BigInt,
    exp: i64,
}

impl Real {
    pub fn zero() -> Self {
        Real {
            mantissa: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.is_negative()
    }

    pub fn neg(&self) -> Self {
        Real {
            mantissa: -self.mantissa.clone(),
            exp: self.exp,
        }
    }

    pub fn abs(&self) -> Self {
        Real {
            mantissa: self.mantissa.abs(),
            exp: self.exp,
        }
    }

    /// floor(log2 |x|) + 1; i64::MIN for zero.
    pub fn magnitude(&self) -> i64 {
        if self.is_zero() {
            return i64::MIN;
        }
        self.mantissa.bits() as i64 + self.exp
    }

    /// Exact rational value.
    pub fn to_q(&self) -> Q {
        if self.exp >= 0 {
            Q::from_integer(&self.mantissa << (self.exp as usize))
        } else {
            Q::new(self.mantissa.clone(), BigInt::one() << ((-self.exp) as usize))
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mantissa.bits() as i64;
        let shift = bits - 53;
        let (m, e) = if shift > 0 {
            ((&self.mantissa >> (shift as usize)).to_string(), self.exp + shift)
        } else {
            (self.mantissa.to_string(), self.exp)
        };
        let m: f64 = m.parse().unwrap_or(0.0);
        m * 2f64.powi(e as i32)
    }

    /// Decimal rendering with the given number of significant-ish digits
    /// after the point.
    pub fn to_decimal_string(&self, digits: usize) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let scale = BigInt::from(10).pow(digits as u32);
        let scaled = if self.exp >= 0 {
            (&self.mantissa << (self.exp as usize)) * &scale
        } else {
            let num = &self.mantissa * &scale;
            let den = BigInt::one() << ((-self.exp) as usize);
            // round to nearest
            let two = BigInt::from(2);
            (num * &two + den.clone() * self.mantissa.sign_int()) / (den * two)
        };
        let neg = scaled.is_negative();
        let s = scaled.abs().to_string();
        let (int_part, frac_part) = if s.len() > digits {
            (s[..s.len() - digits].to_string(), s[s.len() - digits..].to_string())
        } else {
            ("0".to_string(), format!("{:0>width$}", s, width = digits))
        };
        let frac = frac_part.trim_end_matches('0');
        let mut out = String::new();
        if neg {
            out.push('-');
        }
        out.push_str(&int_part);
        if !frac.is_empty() {
            out.push('.');
            out.push_str(frac);
        }
        out
    }
}

trait SignInt {
    fn sign_int(&self) -> BigInt;
}

impl SignInt for BigInt {
    fn sign_int(&self) -> BigInt {
        if self.is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        }
    }
}

/// Working-precision context; all operations round to `bits`.
pub struct RealCtx {
    pub bits: u32,
    pi_cache: OnceCell<Real>,
    ln2_cache: OnceCell<Real>,
}

impl RealCtx {
    pub fn new(bits: u32) -> Self {
        RealCtx {
            bits,
            pi_cache: OnceCell::new(),
            ln2_cache: OnceCell::new(),
        }
    }

    fn norm(&self, mantissa: BigInt, exp: i64) -> Real {
        if mantissa.is_zero() {
            return Real::zero();
        }
        let bits = mantissa.bits() as i64;
        let excess = bits - self.bits as i64;
        if excess <= 0 {
            return Real { mantissa, exp };
        }
        let shift = excess as usize;
        let half = BigInt::one() << (shift - 1);
        let adjusted = if mantissa.is_negative() {
            -((-&mantissa + half) >> shift)
        } else {
            (&mantissa + half) >> shift
        };
        Real {
            mantissa: adjusted,
            exp: exp + excess,
        }
    }

    pub fn from_i64(&self, v: i64) -> Real {
        self.norm(BigInt::from(v), 0)
    }

    pub fn from_bigint(&self, v: &BigInt) -> Real {
        self.norm(v.clone(), 0)
    }

    pub fn from_q(&self, v: &Q) -> Real {
        if v.is_zero() {
            return Real::zero();
        }
        let shift = self.bits as i64 + 2 + v.denom().bits() as i64;
        let num = v.numer() << (shift as usize);
        let (q, r) = num.div_rem(v.denom());
        // round to nearest
        let q = if (&r.abs() << 1) >= v.denom().abs() {
            q + r.sign_int()
        } else {
            q
        };
        self.norm(q, -shift)
    }

    pub fn add(&self, a: &Real, b: &Real) -> Real {
        if a.is_zero() {
            return b.clone();
        }
        if b.is_zero() {
            return a.clone();
        }
        let (hi, lo) = if a.exp >= b.exp { (a, b) } else { (b, a) };
        let d = hi.exp - lo.exp;
        let cap = self.bits as i64 + 4;
        if d > cap + lo.mantissa.bits() as i64 + hi.mantissa.bits() as i64 {
            return hi.clone();
        }
        let m = (&hi.mantissa << (d as usize)) + &lo.mantissa;
        self.norm(m, lo.exp)
    }

    pub fn sub(&self, a: &Real, b: &Real) -> Real {
        self.add(a, &b.neg())
    }

    pub fn mul(&self, a: &Real, b: &Real) -> Real {
        if a.is_zero() || b.is_zero() {
            return Real::zero();
        }
        self.norm(&a.mantissa * &b.mantissa, a.exp + b.exp)
    }

    pub fn div(&self, a: &Real, b: &Real) -> Real {
        assert!(!b.is_zero(), "division by zero");
        if a.is_zero() {
            return Real::zero();
        }
        let shift = self.bits as i64 + 3 + (b.mantissa.bits() as i64 - a.mantissa.bits() as i64).max(0);
        let num = &a.mantissa << (shift as usize);
        let (q, r) = num.div_rem(&b.mantissa);
        let q = if (&r.abs() << 1) >= b.mantissa.abs() {
            q + r.sign_int() * b.mantissa.sign_int()
        } else {
            q
        };
        self.norm(q, a.exp - b.exp - shift)
    }

    pub fn cmp(&self, a: &Real, b: &Real) -> Ordering {
        let d = self.sub(a, b);
        if d.is_zero() {
            Ordering::Equal
        } else if d.is_negative() {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }

    pub fn pow_i(&self, a: &Real, n: u32) -> Real {
        let mut acc = self.from_i64(1);
        let mut base = a.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            n >>= 1;
        }
        acc
    }

    pub fn sqrt(&self, a: &Real) -> Real {
        assert!(!a.is_negative(), "sqrt of a negative value");
        if a.is_zero() {
            return Real::zero();
        }
        let mut k = 2 * self.bits as i64 + 4 - a.mantissa.bits() as i64;
        if k < 0 {
            k = 0;
        }
        if (a.exp - k).rem_euclid(2) != 0 {
            k += 1;
        }
        let m = &a.mantissa << (k as usize);
        let root = m.sqrt();
        self.norm(root, (a.exp - k) / 2)
    }

    /// pi by the Machin formula 16 atan(1/5) - 4 atan(1/239).
    pub fn pi(&self) -> Real {
        self.pi_cache
            .get_or_init(|| {
                let w = self.bits as usize + 16;
                let a5 = atan_inv_scaled(5, w);
                let a239 = atan_inv_scaled(239, w);
                let v = a5 * 16 - a239 * 4;
                self.norm(v, -(w as i64))
            })
            .clone()
    }

    pub fn ln2(&self) -> Real {
        self.ln2_cache
            .get_or_init(|| {
                // 2 atanh(1/3)
                let w = self.bits as usize + 16;
                let v = atanh_inv_scaled(3, w);
                self.norm(v * 2, -(w as i64))
            })
            .clone()
    }

    pub fn exp(&self, x: &Real) -> Real {
        if x.is_zero() {
            return self.from_i64(1);
        }
        let mag = x.magnitude();
        let k = (mag + 5).max(0) as usize;
        let y = Real {
            mantissa: x.mantissa.clone(),
            exp: x.exp - k as i64,
        };
        let mut sum = self.from_i64(1);
        let mut term = self.from_i64(1);
        let mut n = 1i64;
        let floor = -(self.bits as i64) - 16;
        loop {
            term = self.div(&self.mul(&term, &y), &self.from_i64(n));
            if term.is_zero() || term.magnitude() < floor {
                break;
            }
            sum = self.add(&sum, &term);
            n += 1;
        }
        let mut acc = sum;
        for _ in 0..k {
            acc = self.mul(&acc, &acc);
        }
        acc
    }

    pub fn ln(&self, x: &Real) -> Real {
        assert!(x.mantissa.is_positive(), "ln of a non-positive value");
        // x = m 2^e with m in [1,2)
        let bits = x.mantissa.bits() as i64;
        let e = x.exp + bits - 1;
        let mut m = Real {
            mantissa: x.mantissa.clone(),
            exp: -(bits - 1),
        };
        // reduce m toward 1 by repeated square roots
        let mut doublings = 0u32;
        let threshold = self.from_q(&Q::new(BigInt::from(17), BigInt::from(16)));
        for _ in 0..8 {
            if self.cmp(&m, &threshold) == Ordering::Less {
                break;
            }
            m = self.sqrt(&m);
            doublings += 1;
        }
        // atanh series: ln m = 2 sum u^{2i+1}/(2i+1), u = (m-1)/(m+1)
        let one = self.from_i64(1);
        let u = self.div(&self.sub(&m, &one), &self.add(&m, &one));
        let u2 = self.mul(&u, &u);
        let mut term = u.clone();
        let mut sum = u;
        let mut i = 1i64;
        let floor = -(self.bits as i64) - 16;
        loop {
            term = self.mul(&term, &u2);
            let add = self.div(&term, &self.from_i64(2 * i + 1));
            if add.is_zero() || add.magnitude() < floor {
                break;
            }
            sum = self.add(&sum, &add);
            i += 1;
        }
        let mut ln_m = self.mul(&sum, &self.from_i64(2));
        ln_m = self.mul(&ln_m, &self.from_i64(1 << doublings));
        self.add(&ln_m, &self.mul(&self.from_i64(e), &self.ln2()))
    }

    /// sin and cos by Taylor series after folding |x| below 2 with the
    /// double-angle formulas.
    pub fn sin_cos(&self, x: &Real) -> (Real, Real) {
        let mut folds = 0u32;
        let mut y = x.clone();
        while y.magnitude() > 1 {
            y = Real {
                mantissa: y.mantissa.clone(),
                exp: y.exp - 1,
            };
            folds += 1;
        }
        let y2 = self.mul(&y, &y).neg();
        let floor = -(self.bits as i64) - 16;
        let mut sin = y.clone();
        let mut term = y.clone();
        let mut n = 1i64;
        loop {
            term = self.div(&self.mul(&term, &y2), &self.from_i64((2 * n) * (2 * n + 1)));
            if term.is_zero() || term.magnitude() < floor {
                break;
            }
            sin = self.add(&sin, &term);
            n += 1;
        }
        let mut cos = self.from_i64(1);
        term = self.from_i64(1);
        n = 1;
        loop {
            term = self.div(&self.mul(&term, &y2), &self.from_i64((2 * n - 1) * (2 * n)));
            if term.is_zero() || term.magnitude() < floor {
                break;
            }
            cos = self.add(&cos, &term);
            n += 1;
        }
        for _ in 0..folds {
            let s2 = self.mul(&self.from_i64(2), &self.mul(&sin, &cos));
            let c2 = self.sub(&self.mul(&cos, &cos), &self.mul(&sin, &sin));
            sin = s2;
            cos = c2;
        }
        (sin, cos)
    }

    /// Horner evaluation of an exact-rational coefficient slice at x.
    pub fn eval_coeffs(&self, coeffs: &[Q], x: &Real) -> Real {
        let mut acc = Real::zero();
        for c in coeffs.iter().rev() {
            acc = self.mul(&acc, x);
            if !c.is_zero() {
                acc = self.add(&acc, &self.from_q(c));
            }
        }
        acc
    }
}

/// floor(atan(1/m) * 2^w) by the alternating Taylor series, exact integer
/// arithmetic.
fn atan_inv_scaled(m: i64, w: usize) -> BigInt {
    let m2 = BigInt::from(m) * BigInt::from(m);
    let mut num = (BigInt::one() << w) / BigInt::from(m);
    let mut sum = num.clone();
    let mut k = 1i64;
    while !num.is_zero() {
        num /= &m2;
        if num.is_zero() {
            break;
        }
        let term = &num / BigInt::from(2 * k + 1);
        if k % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        k += 1;
    }
    sum
}

/// floor(atanh(1/m) * 2^w).
fn atanh_inv_scaled(m: i64, w: usize) -> BigInt {
    let m2 = BigInt::from(m) * BigInt::from(m);
    let mut num = (BigInt::one() << w) / BigInt::from(m);
    let mut sum = num.clone();
    let mut k = 1i64;
    while !num.is_zero() {
        num /= &m2;
        if num.is_zero() {
            break;
        }
        sum += &num / BigInt::from(2 * k + 1);
        k += 1;
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{parse_q, qr};

    fn ctx() -> RealCtx {
        RealCtx::new(200)
    }

    fn close_to(c: &RealCtx, x: &Real, decimal: &str, tol_exp: i64) {
        let want = c.from_q(&parse_q_dec(decimal));
        let diff = c.sub(x, &want).abs();
        assert!(
            diff.is_zero() || diff.magnitude() < tol_exp,
            "{} vs {} (diff magnitude {})",
            x.to_f64(),
            want.to_f64(),
            diff.magnitude()
        );
    }

    fn parse_q_dec(s: &str) -> Q {
        // tiny decimal parser for test literals
        if let Some((int, frac)) = s.split_once('.') {
            let scale = BigInt::from(10).pow(frac.len() as u32);
            let neg = int.starts_with('-');
            let i: BigInt = int.parse().unwrap();
            let f: BigInt = frac.parse().unwrap();
            let num = i.abs() * &scale + f;
            let num = if neg { -num } else { num };
            Q::new(num, scale)
        } else {
            parse_q(s).unwrap()
        }
    }

    #[test]
    fn pi_value() {
        let c = ctx();
        close_to(
            &c,
            &c.pi(),
            "3.14159265358979323846264338327950288419716939937510582097",
            -180,
        );
    }

    #[test]
    fn exp_ln_round_trip() {
        let c = ctx();
        let x = c.from_q(&qr(7, 3));
        let y = c.exp(&x);
        let back = c.ln(&y);
        let diff = c.sub(&back, &x).abs();
        assert!(diff.is_zero() || diff.magnitude() < -190, "{}", diff.magnitude());
        close_to(&c, &c.ln(&c.from_i64(2)), "0.693147180559945309417232121458", -95);
    }

    #[test]
    fn sqrt_value() {
        let c = ctx();
        let r = c.sqrt(&c.from_i64(2));
        close_to(&c, &r, "1.41421356237309504880168872420969808", -115);
    }

    #[test]
    fn sin_cos_at_pi_thirds() {
        let c = ctx();
        let third = c.div(&c.pi(), &c.from_i64(3));
        let (s, co) = c.sin_cos(&third);
        close_to(&c, &co, "0.5", -190);
        let s2 = c.mul(&s, &s);
        close_to(&c, &s2, "0.75", -190);
    }

    #[test]
    fn decimal_rendering() {
        let c = RealCtx::new(120);
        let x = c.from_q(&qr(-1, 8));
        assert_eq!(x.to_decimal_string(6), "-0.125");
        assert_eq!(c.from_i64(42).to_decimal_string(4), "42");
    }

    #[test]
    fn series_eval() {
        let c = ctx();
        let coeffs = vec![qr(1, 1), qr(-1, 2), qr(1, 3)];
        let v = c.eval_coeffs(&coeffs, &c.from_q(&qr(1, 10)));
        // 1 - 1/20 + 1/300
        let want = c.from_q(&qr(286, 300));
        assert_eq!(c.cmp(&v, &want), Ordering::Equal);
    }
}
