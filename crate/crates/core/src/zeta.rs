//! Hurwitz zeta at integer s >= 2 by Euler-Maclaurin summation carried out
//! in exact rational arithmetic, rounded once at the end.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::cases::binomial;
use crate::rational::Q;
use crate::real::{Real, RealCtx};

/// B_0..B_n (inclusive), exact.
pub fn bernoulli_numbers(n: usize) -> Vec<Q> {
    let mut b: Vec<Q> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        if m == 0 {
            b.push(Q::one());
            continue;
        }
        // sum_{k=0}^{m} C(m+1,k) B_k = 0
        let mut s = Q::zero();
        for (k, bk) in b.iter().enumerate() {
            if !bk.is_zero() {
                s += Q::from_integer(binomial(m + 1, k)) * bk;
            }
        }
        b.push(-s / Q::from_integer(BigInt::from(m as i64 + 1)));
    }
    b
}

/// zeta(s, a) for integer s >= 2 and rational a > 0, to context precision.
pub fn hurwitz_zeta(ctx: &RealCtx, s: u32, a: &Q) -> Real {
    assert!(s >= 2, "need s >= 2");
    assert!(a.is_positive(), "need a > 0");
    let target = Q::new(BigInt::one(), BigInt::one() << (ctx.bits as usize + 12));
    let m = (ctx.bits as usize / 2).max(24);
    let mut acc = Q::zero();
    for k in 0..m {
        let base = a + Q::from_integer(BigInt::from(k));
        acc += pow_q(&base, s as i64).recip();
    }
    let edge = a + Q::from_integer(BigInt::from(m));
    // (a+M)^{1-s}/(s-1) + (a+M)^{-s}/2
    acc += pow_q(&edge, s as i64 - 1).recip() / Q::from_integer(BigInt::from(s as i64 - 1));
    acc += pow_q(&edge, s as i64).recip() / Q::from_integer(BigInt::from(2));
    // correction sum: B_{2j}/(2j)! (s)_{2j-1} (a+M)^{-s-2j+1}
    let bern = bernoulli_numbers(2 * (ctx.bits as usize / 4 + 24));
    let mut rising = Q::from_integer(BigInt::from(s as i64)); // (s)_1
    let mut fact = Q::from_integer(BigInt::from(2)); // (2j)! at j=1
    let mut edge_pow = pow_q(&edge, s as i64 + 1).recip(); // (a+M)^{-s-1}
    let edge2_inv = (&edge * &edge).recip();
    let mut j = 1usize;
    loop {
        let term = &bern[2 * j] / &fact * &rising * &edge_pow;
        acc += term.clone();
        if term.abs() < target {
            break;
        }
        j += 1;
        assert!(
            2 * j < bern.len(),
            "Euler-Maclaurin correction did not converge"
        );
        // update (s)_{2j-1}: multiply by (s+2j-3)(s+2j-2)
        rising = rising
            * Q::from_integer(BigInt::from(s as i64 + 2 * j as i64 - 3))
            * Q::from_integer(BigInt::from(s as i64 + 2 * j as i64 - 2));
        fact = fact
            * Q::from_integer(BigInt::from(2 * j as i64 - 1))
            * Q::from_integer(BigInt::from(2 * j as i64));
        edge_pow = edge_pow * &edge2_inv;
    }
    ctx.from_q(&acc)
}

/// zeta(3) = zeta(3, 1).
pub fn zeta3(ctx: &RealCtx) -> Real {
    hurwitz_zeta(ctx, 3, &Q::one())
}

fn pow_q(x: &Q, n: i64) -> Q {
    assert!(n >= 0);
    let mut acc = Q::one();
    let mut base = x.clone();
    let mut n = n as u64;
    while n > 0 {
        if n & 1 == 1 {
            acc *= base.clone();
        }
        base = &base * &base;
        n >>= 1;
    }
    acc
}

trait Recip {
    fn recip(self) -> Q;
}

impl Recip for Q {
    fn recip(self) -> Q {
        Q::one() / self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qr;

    #[test]
    fn bernoulli_table() {
        let b = bernoulli_numbers(8);
        assert_eq!(b[0], Q::one());
        assert_eq!(b[1], qr(-1, 2));
        assert_eq!(b[2], qr(1, 6));
        assert_eq!(b[4], qr(-1, 30));
        assert_eq!(b[8], qr(-1, 30));
        assert!(b[3].is_zero() && b[5].is_zero() && b[7].is_zero());
    }

    #[test]
    fn zeta2_is_pi_squared_over_six() {
        let ctx = RealCtx::new(200);
        let z2 = hurwitz_zeta(&ctx, 2, &Q::one());
        let pi2_6 = ctx.div(&ctx.mul(&ctx.pi(), &ctx.pi()), &ctx.from_i64(6));
        let diff = ctx.sub(&z2, &pi2_6).abs();
        assert!(diff.is_zero() || diff.magnitude() < -190, "{}", diff.magnitude());
    }

    #[test]
    fn zeta3_half_is_seven_zeta3() {
        // zeta(3, 1/2) = 7 zeta(3)
        let ctx = RealCtx::new(200);
        let lhs = hurwitz_zeta(&ctx, 3, &qr(1, 2));
        let rhs = ctx.mul(&ctx.from_i64(7), &zeta3(&ctx));
        let diff = ctx.sub(&lhs, &rhs).abs();
        assert!(diff.is_zero() || diff.magnitude() < -190, "{}", diff.magnitude());
    }

    #[test]
    fn hurwitz_shift_identity() {
        // zeta(s, a) = zeta(s, a+1) + a^{-s}
        let ctx = RealCtx::new(160);
        let a = qr(1, 3);
        let lhs = hurwitz_zeta(&ctx, 3, &a);
        let rhs = ctx.add(
            &hurwitz_zeta(&ctx, 3, &qr(4, 3)),
            &ctx.from_q(&(Q::one() / pow_q(&a, 3))),
        );
        let diff = ctx.sub(&lhs, &rhs).abs();
        assert!(diff.is_zero() || diff.magnitude() < -150, "{}", diff.magnitude());
    }
}
