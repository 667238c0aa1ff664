//! Recurrence solving at z = 0: the holomorphic solution and, at a point of
//! maximal unipotent monodromy, the full logarithmic Frobenius basis.
//!
//! The basis is computed once over the truncated ring Q[eps]/(eps^n): solve
//! the recurrence for a(eps) with a_0 = 1 in z^{eps} sum a_j(eps) z^j, then
//! w_j is the eps^j coefficient. This yields the normalization where the
//! log^j-leading part of w_j is 1 + O(z) and all lower-log parts have zero
//! constant term.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::logseries::LogSeries;
use crate::poly::QPoly;
use crate::rational::{Q, qi};
use crate::series::PowerSeries;
use crate::theta::ThetaOperator;

/// Truncated polynomial in a nilpotent eps (eps^len = 0).
#[derive(Clone, Debug, PartialEq)]
struct Jet {
    c: Vec<Q>,
}

impl Jet {
    fn zero(n: usize) -> Self {
        Jet {
            c: vec![Q::zero(); n],
        }
    }

    fn add_assign(&mut self, other: &Jet) {
        for (a, b) in self.c.iter_mut().zip(&other.c) {
            *a = a.clone() + b;
        }
    }

    fn mul(&self, other: &Jet) -> Jet {
        let n = self.c.len();
        let mut out = Jet::zero(n);
        for i in 0..n {
            if self.c[i].is_zero() {
                continue;
            }
            for j in 0..n - i {
                if !other.c[j].is_zero() {
                    out.c[i + j] += &self.c[i] * &other.c[j];
                }
            }
        }
        out
    }

    fn inverse(&self) -> Option<Jet> {
        let n = self.c.len();
        if self.c[0].is_zero() {
            return None;
        }
        let inv0 = Q::one() / self.c[0].clone();
        let mut out = Jet::zero(n);
        out.c[0] = inv0.clone();
        for k in 1..n {
            let mut s = Q::zero();
            for i in 1..=k {
                if !self.c[i].is_zero() {
                    s += &self.c[i] * &out.c[k - i];
                }
            }
            out.c[k] = -s * &inv0;
        }
        Some(out)
    }
}

/// P evaluated at (x + eps) in the jet ring.
fn eval_jet(p: &QPoly, x: &Q, n: usize) -> Jet {
    let mut affine = Jet::zero(n);
    affine.c[0] = x.clone();
    if n > 1 {
        affine.c[1] = Q::one();
    }
    let mut acc = Jet::zero(n);
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(&affine);
        acc.c[0] = &acc.c[0] + c;
    }
    acc
}

/// The unique solution 1 + O(z) of D w = 0.
///
/// Requires P_0(0) = 0 and P_0(j) != 0 for 1 <= j < n_terms; the
/// coefficients follow the recurrence a_j = -sum_{k>=1} P_k(j-k) a_{j-k} / P_0(j).
pub fn holomorphic_solution(op: &ThetaOperator, n_terms: usize) -> Result<PowerSeries> {
    let p0 = op.theta_coeff(0);
    if !p0.eval(&Q::zero()).is_zero() {
        return Err(Error::Domain(
            "P_0(0) != 0: no holomorphic solution with unit constant term".into(),
        ));
    }
    let m = op.degree();
    let mut a = vec![Q::one()];
    for j in 1..n_terms {
        let div = p0.eval(&qi(j as i64));
        if div.is_zero() {
            return Err(Error::Resonance(j));
        }
        let mut s = Q::zero();
        for k in 1..=m.min(j) {
            let v = op.theta_coeff(k).eval(&qi((j - k) as i64));
            if !v.is_zero() {
                s += v * &a[j - k];
            }
        }
        a.push(-s / div);
    }
    Ok(PowerSeries::new(a))
}

/// The Frobenius basis at a MUM point, stored through the series
/// A_0..A_{n-1} with w_j = sum_{i<=j} A_{j-i} log^i z / i!.
#[derive(Clone)]
pub struct FrobeniusBasis {
    order: usize,
    parts: Vec<PowerSeries>,
}

impl FrobeniusBasis {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn truncation(&self) -> usize {
        self.parts[0].truncation()
    }

    /// A_k: the log^(j-k)-part series shared by every w_j with j >= k.
    pub fn part(&self, k: usize) -> &PowerSeries {
        &self.parts[k]
    }

    /// The holomorphic solution w_0 = A_0.
    pub fn holomorphic(&self) -> &PowerSeries {
        &self.parts[0]
    }

    /// w_j as a log-series of log degree j.
    pub fn solution(&self, j: usize) -> LogSeries {
        assert!(j < self.order, "basis has {} solutions", self.order);
        let parts = (0..=j).map(|i| self.parts[j - i].clone()).collect();
        LogSeries::new(parts)
    }

    /// Test hook: a basis with one A-part replaced (normalization
    /// perturbations for invariance checks).
    pub fn with_part(&self, k: usize, part: PowerSeries) -> Self {
        let mut parts = self.parts.clone();
        parts[k] = part;
        FrobeniusBasis {
            order: self.order,
            parts,
        }
    }
}

/// Solves the recurrence in the eps-ring; errors unless P_0 = c T^n.
pub fn frobenius_basis(op: &ThetaOperator, n_terms: usize) -> Result<FrobeniusBasis> {
    let n = op.order();
    if !op.is_mum_at_zero() {
        return Err(Error::NotMum);
    }
    let m = op.degree();
    let mut a: Vec<Jet> = Vec::with_capacity(n_terms);
    let mut one = Jet::zero(n);
    one.c[0] = Q::one();
    a.push(one);
    for j in 1..n_terms {
        let mut s = Jet::zero(n);
        for k in 1..=m.min(j) {
            let pk = eval_jet(&op.theta_coeff(k), &qi((j - k) as i64), n);
            s.add_assign(&pk.mul(&a[j - k]));
        }
        let p0 = eval_jet(&op.theta_coeff(0), &qi(j as i64), n);
        let inv = p0
            .inverse()
            .ok_or(Error::Resonance(j))?;
        let mut next = inv.mul(&s);
        for c in next.c.iter_mut() {
            *c = -std::mem::take(c);
        }
        a.push(next);
    }
    let parts = (0..n)
        .map(|k| PowerSeries::from_fn(n_terms, |j| a[j].c[k].clone()))
        .collect();
    Ok(FrobeniusBasis { order: n, parts })
}

/// Applies a theta-form operator to a log-series (for annihilation checks).
pub fn apply_to_log_series(op: &ThetaOperator, w: &LogSeries) -> LogSeries {
    let mut acc = LogSeries::zero(w.truncation());
    for (k, p) in op.coeffs().iter().enumerate() {
        if p.is_zero() {
            continue;
        }
        // P_k(theta) w by Horner in theta
        let mut t = LogSeries::zero(w.truncation());
        for c in p.coeffs().iter().rev() {
            t = t.theta();
            t = t.add(&w.scale(c));
        }
        // shift each part by z^k
        let shifted = LogSeries::new(t.parts().iter().map(|s| s.shift_up(k)).collect());
        acc = acc.add(&shifted);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cases::binomial;
    use crate::poly::QPoly;

    fn hyp5() -> ThetaOperator {
        let two_t_one = QPoly::new(vec![qi(1), qi(2)]);
        let mut q5 = QPoly::one();
        for _ in 0..5 {
            q5 = q5.mul(&two_t_one);
        }
        ThetaOperator::from_theta_coefficients(
            5,
            vec![QPoly::monomial(Q::one(), 5), q5.scale(&qi(-32))],
        )
        .unwrap()
    }

    #[test]
    fn hyp5_solution_is_central_binomial_fifth_power() {
        let w = holomorphic_solution(&hyp5(), 14).unwrap();
        for n in 0..14 {
            assert_eq!(
                w.coeff(n),
                Q::from_integer(binomial(2 * n, n).pow(5)),
                "n={n}"
            );
        }
    }

    #[test]
    fn euler_order2_basis_is_one_and_log() {
        let op = ThetaOperator::from_theta_coefficients(
            2,
            vec![QPoly::monomial(Q::one(), 2)],
        )
        .unwrap();
        let b = frobenius_basis(&op, 6).unwrap();
        assert_eq!(b.holomorphic(), &PowerSeries::one(6));
        let w1 = b.solution(1);
        assert_eq!(w1.part(1), PowerSeries::one(6));
        assert!(w1.part(0).is_zero());
    }

    #[test]
    fn basis_annihilated() {
        let op = hyp5();
        let b = frobenius_basis(&op, 20).unwrap();
        for j in 0..5 {
            let w = b.solution(j);
            let r = apply_to_log_series(&op, &w);
            assert!(r.is_zero(), "w_{j} not annihilated: {:?}", r);
            assert!(w.log_degree() == j);
        }
    }

    #[test]
    fn not_mum_rejected() {
        // theta^2 + theta has indicial T(T+1)
        let op = ThetaOperator::from_theta_coefficients(
            2,
            vec![QPoly::new(vec![qi(0), qi(1), qi(1)])],
        )
        .unwrap();
        assert!(matches!(frobenius_basis(&op, 5), Err(Error::NotMum)));
    }
}
