//! Binomial coefficient streams, the order-7 harmonic-sum coefficient
//! formulas, and the mod-p^3 supercongruence checker.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::Q;

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut b = BigInt::one();
    for i in 0..k {
        b = b * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    b
}

pub fn factorial(n: usize) -> BigInt {
    let mut f = BigInt::one();
    for i in 2..=n {
        f *= BigInt::from(i);
    }
    f
}

pub fn factorial_q(n: usize) -> Q {
    Q::from_integer(factorial(n))
}

/// Harmonic number H_n = 1 + 1/2 + ... + 1/n (H_0 = 0), exact.
pub fn harmonic(n: usize) -> Q {
    let mut h = Q::zero();
    for i in 1..=n {
        h += Q::new(BigInt::one(), BigInt::from(i));
    }
    h
}

/// The integer coefficient streams used for Hadamard products.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinomialFamily {
    /// C(2n,n)
    Central,
    /// C(4n,2n)
    FourTwo,
    /// C(3n,n)
    ThreeOne,
    /// C(6n,3n) C(3n,n) / C(2n,n) (integral; asserted on construction)
    SixThreeQuotient,
    /// A(n) = C(2n,n)^2
    CaseA,
    /// B(n) = C(2n,n) C(3n,n)
    CaseB,
    /// C(n) = C(2n,n) C(4n,2n)
    CaseC,
    /// D(n) = C(3n,n) C(6n,3n)
    CaseD,
}

impl BinomialFamily {
    pub fn value(self, n: usize) -> BigInt {
        match self {
            BinomialFamily::Central => binomial(2 * n, n),
            BinomialFamily::FourTwo => binomial(4 * n, 2 * n),
            BinomialFamily::ThreeOne => binomial(3 * n, n),
            BinomialFamily::SixThreeQuotient => {
                let num = binomial(6 * n, 3 * n) * binomial(3 * n, n);
                let den = binomial(2 * n, n);
                let (q, r) = num.div_rem(&den);
                assert!(r.is_zero(), "C(6n,3n)C(3n,n)/C(2n,n) not integral at n={n}");
                q
            }
            BinomialFamily::CaseA => {
                let c = binomial(2 * n, n);
                &c * &c
            }
            BinomialFamily::CaseB => binomial(2 * n, n) * binomial(3 * n, n),
            BinomialFamily::CaseC => binomial(2 * n, n) * binomial(4 * n, 2 * n),
            BinomialFamily::CaseD => binomial(3 * n, n) * binomial(6 * n, 3 * n),
        }
    }

    pub fn stream(self, len: usize) -> Vec<BigInt> {
        (0..len).map(|n| self.value(n)).collect()
    }
}

/// The four order-7 families with closed-form coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeventhOrderCase {
    A,
    B,
    C,
    D,
}

/// Exact value of the harmonic-sum formula for the holomorphic solution
/// coefficient a_n of the order-7 case operators. The bracket for each case
/// is the {1 + k d/dk} derivative of the defining square product, written
/// out in harmonic numbers. (For case D that derivative differs from a
/// widely circulated misprint which drops the H_{2k} terms.)
pub fn case_coefficient(case: SeventhOrderCase, n: usize) -> BigInt {
    let h = harmonic;
    let qz = |b: BigInt| Q::from_integer(b);
    let mut total = Q::zero();
    for k in 0..=n {
        let (weight, bracket) = match case {
            SeventhOrderCase::A => {
                let w = binomial(2 * k, k).pow(4) * binomial(2 * n - 2 * k, n - k).pow(4);
                let br = Q::from_integer(BigInt::from(8 * k))
                    * (h(2 * k) - h(k) - h(2 * n - 2 * k) + h(n - k));
                (w, br)
            }
            SeventhOrderCase::B => {
                let w = binomial(2 * k, k).pow(2)
                    * binomial(3 * k, k).pow(2)
                    * binomial(2 * n - 2 * k, n - k).pow(2)
                    * binomial(3 * n - 3 * k, n - k).pow(2);
                let br = Q::from_integer(BigInt::from(6 * k))
                    * (h(3 * k) - h(k) - h(3 * n - 3 * k) + h(n - k));
                (w, br)
            }
            SeventhOrderCase::C => {
                let w = binomial(2 * k, k).pow(2)
                    * binomial(4 * k, 2 * k).pow(2)
                    * binomial(2 * n - 2 * k, n - k).pow(2)
                    * binomial(4 * n - 4 * k, 2 * n - 2 * k).pow(2);
                let br = Q::from_integer(BigInt::from(4 * k))
                    * (h(4 * k).scale_i(2) - h(k) - h(2 * k) + h(2 * n - 2 * k)
                        - h(4 * n - 4 * k).scale_i(2)
                        + h(n - k));
                (w, br)
            }
            SeventhOrderCase::D => {
                let w = binomial(3 * k, k).pow(2)
                    * binomial(6 * k, 3 * k).pow(2)
                    * binomial(3 * n - 3 * k, n - k).pow(2)
                    * binomial(6 * n - 6 * k, 3 * n - 3 * k).pow(2);
                let br = Q::from_integer(BigInt::from(2 * k))
                    * (h(6 * k).scale_i(6) - h(3 * k).scale_i(3) - h(2 * k).scale_i(2) - h(k)
                        - h(6 * n - 6 * k).scale_i(6)
                        + h(3 * n - 3 * k).scale_i(3)
                        + h(2 * n - 2 * k).scale_i(2)
                        + h(n - k));
                (w, br)
            }
        };
        total += qz(weight) * (Q::one() + bracket);
    }
    let front = match case {
        SeventhOrderCase::A => BinomialFamily::CaseA.value(n),
        SeventhOrderCase::B => BinomialFamily::CaseB.value(n),
        SeventhOrderCase::C => BinomialFamily::CaseC.value(n),
        SeventhOrderCase::D => BinomialFamily::CaseD.value(n),
    };
    let v = Q::from_integer(front) * total;
    assert!(v.denom().is_one(), "case coefficient not integral at n={n}");
    v.numer().clone()
}

trait ScaleI {
    fn scale_i(self, m: i64) -> Q;
}

impl ScaleI for Q {
    fn scale_i(self, m: i64) -> Q {
        self * Q::from_integer(BigInt::from(m))
    }
}

/// Checks the truncated-sum supercongruence
///   sum_{n=0}^{p-1} C(2n,n)^2 sum_k (-1)^k 3^{n-3k} C(n,3k) C(n+k,n)
///     (3k)!/k!^3 (39+172n+204n^2) / (-64)^n  ==  39 p^2   (mod p^3)
/// for a prime p > 3, in exact modular arithmetic.
pub fn supercongruence_check(p: u64) -> Result<bool> {
    if p <= 3 {
        return Err(Error::Domain(format!("prime must exceed 3, got {p}")));
    }
    if !is_prime(p) {
        return Err(Error::Domain(format!("{p} is not prime")));
    }
    let modulus = BigInt::from(p) * BigInt::from(p) * BigInt::from(p);
    let inv64 = mod_inverse(&BigInt::from(-64), &modulus)
        .expect("-64 invertible mod p^3 for p > 3");
    let mut acc = BigInt::zero();
    let mut inv64_pow = BigInt::one();
    for n in 0..p as usize {
        let mut inner = BigInt::zero();
        for k in 0..=n / 3 {
            let mut term = BigInt::from(3).pow((n - 3 * k) as u32);
            term *= binomial(n, 3 * k);
            term *= binomial(n + k, n);
            // (3k)!/k!^3 is the multinomial (k,k,k); exact integer
            let multinomial = factorial(3 * k) / (factorial(k).pow(3));
            term *= multinomial;
            if k % 2 == 1 {
                term = -term;
            }
            inner += term;
        }
        let c = binomial(2 * n, n);
        let poly = BigInt::from(39) + BigInt::from(172) * BigInt::from(n)
            + BigInt::from(204) * BigInt::from(n) * BigInt::from(n);
        acc += c.pow(2) * inner * poly * &inv64_pow;
        acc = acc.mod_floor(&modulus);
        inv64_pow = (&inv64_pow * &inv64).mod_floor(&modulus);
    }
    let expect = (BigInt::from(39) * BigInt::from(p) * BigInt::from(p)).mod_floor(&modulus);
    Ok(acc == expect)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else if (-&e.gcd).is_one() {
        Some((-e.x).mod_floor(m))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn binomial_streams() {
        assert_eq!(BinomialFamily::Central.value(3), BigInt::from(20));
        // C(6,3) C(3,1) / C(2,1) = 20*3/2 = 30
        assert_eq!(BinomialFamily::SixThreeQuotient.value(1), BigInt::from(30));
        // B(2) = C(4,2) C(6,2) = 6 * 15 = 90
        assert_eq!(BinomialFamily::CaseB.value(2), BigInt::from(90));
        let s = BinomialFamily::SixThreeQuotient.stream(25);
        assert_eq!(s.len(), 25);
    }

    #[test]
    fn case_coefficients_small() {
        assert_eq!(case_coefficient(SeventhOrderCase::A, 0), BigInt::one());
        // 4 * (16 + 16*5) = 384
        assert_eq!(case_coefficient(SeventhOrderCase::A, 1), BigInt::from(384));
        assert_eq!(case_coefficient(SeventhOrderCase::B, 1), BigInt::from(1512));
        assert_eq!(case_coefficient(SeventhOrderCase::C, 1), BigInt::from(14976));
        assert_eq!(
            case_coefficient(SeventhOrderCase::D, 1),
            BigInt::from(2678400)
        );
    }

    #[test]
    fn supercongruence_first_primes() {
        assert!(supercongruence_check(5).unwrap());
        assert!(supercongruence_check(7).unwrap());
        assert!(supercongruence_check(4).is_err());
        assert!(supercongruence_check(3).is_err());
    }

    #[test]
    fn harmonic_values() {
        assert_eq!(harmonic(0), Q::zero());
        assert_eq!(harmonic(3), crate::rational::qr(11, 6));
    }
}
