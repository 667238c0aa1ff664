//! Real-root isolation for rational polynomials: Descartes bisection on
//! dyadic intervals. The transforms run over integer coefficient vectors
//! (sign variations are invariant under positive scaling, so every step is
//! a shift-and-add), exact throughout, followed by integer-sign bisection
//! refinement to the requested precision.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::poly::QPoly;
use crate::rational::{Q, qi};
use crate::real::{Real, RealCtx};

/// An isolated simple real root: either exact (rational) or an open dyadic
/// interval (lo, hi) containing exactly one root of the squarefree part.
#[derive(Clone, Debug)]
pub enum IsolatedRoot {
    Exact(Q),
    Interval(Q, Q),
}

impl IsolatedRoot {
    pub fn midpoint(&self) -> Q {
        match self {
            IsolatedRoot::Exact(q) => q.clone(),
            IsolatedRoot::Interval(a, b) => (a + b) / Q::from_integer(BigInt::from(2)),
        }
    }
}

/// Integer polynomial ops used by the isolator; coefficient vectors are not
/// trimmed (degree is positional).
fn shift_arg_pow2(c: &[BigInt], e: u32) -> Vec<BigInt> {
    // p(2^e x), coefficient i scaled by 2^{e i}
    c.iter()
        .enumerate()
        .map(|(i, v)| v << (e as usize * i))
        .collect()
}

fn halve_arg(c: &[BigInt]) -> Vec<BigInt> {
    // 2^n p(x/2): coefficient i scaled by 2^{n-i}
    let n = c.len() - 1;
    c.iter().enumerate().map(|(i, v)| v << (n - i)).collect()
}

fn negate_arg(c: &[BigInt]) -> Vec<BigInt> {
    c.iter()
        .enumerate()
        .map(|(i, v)| if i % 2 == 1 { -v } else { v.clone() })
        .collect()
}

fn taylor_shift_one(c: &[BigInt]) -> Vec<BigInt> {
    // p(x+1) by repeated prefix sums (Pascal style), O(n^2) integer adds
    let mut v = c.to_vec();
    let n = v.len();
    for i in (0..n - 1).rev() {
        for j in i..n - 1 {
            let t = &v[j] + &v[j + 1];
            v[j] = t;
        }
    }
    v
}

fn variations(c: &[BigInt]) -> usize {
    let mut count = 0;
    let mut last = 0i8;
    for v in c {
        let s = if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        };
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

/// Descartes bound for roots in (0,1): variations of (1+x)^n p(1/(1+x)).
fn variations01(c: &[BigInt]) -> usize {
    let rev: Vec<BigInt> = c.iter().rev().cloned().collect();
    variations(&taylor_shift_one(&rev))
}

/// Sign of p at a dyadic point num/2^k, integer Horner.
fn sign_at_dyadic(c: &[BigInt], num: &BigInt, k: usize) -> i8 {
    let n = c.len() - 1;
    let mut acc = c[n].clone();
    for i in (0..n).rev() {
        acc = acc * num + (&c[i] << (k * (n - i)));
    }
    if acc.is_zero() {
        0
    } else if acc.is_positive() {
        1
    } else {
        -1
    }
}

/// All real roots of p (multiplicities collapsed), sorted increasing.
pub fn isolate_real_roots(p: &QPoly) -> Vec<IsolatedRoot> {
    let mut p = p.squarefree_part();
    if p.degree().unwrap_or(0) == 0 {
        return vec![];
    }
    let mut roots = Vec::new();
    if p.eval(&Q::zero()).is_zero() {
        roots.push(IsolatedRoot::Exact(Q::zero()));
        p = p.div_exact(&QPoly::var());
    }
    if p.degree().unwrap_or(0) == 0 {
        return roots;
    }
    let (ints, _) = p.clear_denominators();
    // Cauchy bound 1 + max |c_i/c_n|, rounded up to 2^b
    let lead_bits = ints.last().unwrap().bits();
    let max_bits = ints.iter().map(|c| c.bits()).max().unwrap();
    let b = (max_bits.saturating_sub(lead_bits) + 2) as u32;

    let pos = shift_arg_pow2(&ints, b);
    isolate01(&pos, &mut roots, b, false);
    let neg = shift_arg_pow2(&negate_arg(&ints), b);
    isolate01(&neg, &mut roots, b, true);
    roots.sort_by_key(|r| r.midpoint());
    roots
}

/// Isolates roots on the open unit interval; local coordinates are dyadic:
/// the current interval is (c/2^d, (c+1)/2^d), mapped back through
/// x -> (negate ? -1 : 1) 2^bound_exp x.
fn isolate01(poly: &[BigInt], out: &mut Vec<IsolatedRoot>, bound_exp: u32, negate: bool) {
    let mut stack: Vec<(BigInt, u32, Vec<BigInt>)> = vec![(BigInt::zero(), 0, poly.to_vec())];
    while let Some((c, d, poly)) = stack.pop() {
        assert!(d < 240, "root isolation exceeded depth bound");
        match variations01(&poly) {
            0 => {}
            1 => {
                let lo = dyadic(&c, d, bound_exp);
                let hi = dyadic(&(&c + 1), d, bound_exp);
                let (lo, hi) = if negate { (-hi, -lo) } else { (lo, hi) };
                out.push(IsolatedRoot::Interval(lo, hi));
            }
            _ => {
                let mut poly = poly;
                // exact root at the midpoint: value at 1/2 in local coords
                let two_c_one = (&c << 1) + 1;
                if sign_at_dyadic(&poly, &BigInt::one(), 1) == 0 {
                    let v = dyadic(&two_c_one, d + 1, bound_exp);
                    out.push(IsolatedRoot::Exact(if negate { -v } else { v }));
                    // divide (2x - 1) out, integer exact
                    poly = divide_out_half_root(&poly);
                }
                let left = halve_arg(&poly);
                let right = taylor_shift_one(&left);
                stack.push(((&c << 1) + 1, d + 1, right));
                stack.push((&c << 1, d + 1, left));
            }
        }
    }
}

/// Exact quotient p / (2x - 1) for integer p with p(1/2) = 0; the quotient
/// is integral by the Gauss content argument.
fn divide_out_half_root(c: &[BigInt]) -> Vec<BigInt> {
    // matching p_i = 2 q_{i-1} - q_i (q_n = 0) top down: q_{i-1} = (p_i + q_i)/2
    let n = c.len() - 1;
    let mut quo = vec![BigInt::zero(); n];
    let mut q_next = BigInt::zero();
    for i in (1..=n).rev() {
        let q: BigInt = (&c[i] + &q_next) >> 1;
        quo[i - 1] = q.clone();
        q_next = q;
    }
    quo
}

fn dyadic(c: &BigInt, d: u32, bound_exp: u32) -> Q {
    // value = c / 2^d * 2^bound_exp
    let num = c << (bound_exp as usize);
    Q::new(num, BigInt::one() << (d as usize))
}

/// Refines an isolated root of p to relative width 2^-bits by dyadic
/// bisection with integer sign evaluations (squarefree part, so
/// even-multiplicity roots work too).
pub fn refine_root(p: &QPoly, root: &IsolatedRoot, bits: u32) -> Q {
    let p = p.squarefree_part();
    match root {
        IsolatedRoot::Exact(q) => q.clone(),
        IsolatedRoot::Interval(lo, hi) => {
            let (ints, _) = p.clear_denominators();
            // common dyadic grid: x = num/2^k
            let (mut lo_n, mut hi_n, mut k) = common_grid(lo, hi);
            let sign_at = |num: &BigInt, k: usize| sign_at_dyadic(&ints, num, k);
            // establish an interior sign for the low end (endpoints can be
            // roots of other factors)
            let mut s_lo = sign_at(&lo_n, k);
            if s_lo == 0 {
                lo_n = (&lo_n << 2) + 1;
                hi_n <<= 2;
                k += 2;
                s_lo = sign_at(&lo_n, k);
                if s_lo == 0 {
                    return Q::new(lo_n, BigInt::one() << k);
                }
            }
            let width_target = bits as usize + 2;
            let mut steps = 0usize;
            // shrink until the value width (hi_n - lo_n)/2^k drops below
            // 2^-width_target
            loop {
                let gap = &hi_n - &lo_n;
                if k >= width_target + gap.bits() as usize {
                    break;
                }
                lo_n <<= 1;
                hi_n <<= 1;
                k += 1;
                let mid = (&lo_n + &hi_n) >> 1;
                let s = sign_at(&mid, k);
                if s == 0 {
                    return Q::new(mid, BigInt::one() << k);
                }
                if s == s_lo {
                    lo_n = mid;
                } else {
                    hi_n = mid;
                }
                steps += 1;
                assert!(steps < 10_000, "refinement runaway");
            }
            Q::new(lo_n + hi_n, BigInt::one() << (k + 1))
        }
    }
}

fn common_grid(lo: &Q, hi: &Q) -> (BigInt, BigInt, usize) {
    let k_lo = lo.denom().bits().saturating_sub(1) as usize;
    let k_hi = hi.denom().bits().saturating_sub(1) as usize;
    let k = k_lo.max(k_hi);
    let scale = |q: &Q, k: usize| {
        let d = q.denom().bits() as usize - 1;
        q.numer() << (k - d)
    };
    (scale(lo, k), scale(hi, k), k)
}

/// Smallest positive real root to context precision; None when p has no
/// positive real root.
pub fn smallest_positive_root(p: &QPoly, ctx: &RealCtx) -> Option<Real> {
    let roots = isolate_real_roots(p);
    for r in roots {
        let mid = r.midpoint();
        if mid.is_positive() {
            let refined = refine_root(p, &r, ctx.bits + 8);
            if refined.is_positive() {
                return Some(ctx.from_q(&refined));
            }
        }
    }
    None
}
