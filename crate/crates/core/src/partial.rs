//! Operators in d/dz form with rational-function coefficients: the formal
//! adjoint, operator products, the CY self-duality residuals, and the
//! transformation toolkit (Moebius pullback, conjugation, symmetric square).

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::QPoly;
use crate::rational::{Q, qi};
use crate::ratfunc::RatFunc;
use crate::series::PowerSeries;

/// sum_i a_i(z) d^i, a_n != 0.
#[derive(Clone, PartialEq)]
pub struct RationalOperator {
    coeffs: Vec<RatFunc>,
}

impl RationalOperator {
    pub fn new(mut coeffs: Vec<RatFunc>) -> Result<Self> {
        while coeffs.last().is_some_and(RatFunc::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return Err(Error::Construction("zero operator".into()));
        }
        Ok(RationalOperator { coeffs })
    }

    pub fn from_function(f: RatFunc) -> Result<Self> {
        Self::new(vec![f])
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> RatFunc {
        self.coeffs.get(i).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn coeffs(&self) -> &[RatFunc] {
        &self.coeffs
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().unwrap() == &RatFunc::one()
    }

    /// (monic operator, former leading coefficient).
    pub fn monic(&self) -> (Self, RatFunc) {
        let lead = self.coeffs.last().unwrap().clone();
        if lead == RatFunc::one() {
            return (self.clone(), lead);
        }
        let coeffs = self.coeffs.iter().map(|c| c.div(&lead)).collect();
        (RationalOperator { coeffs }, lead)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i).add(&other.coeff(i))).collect())
    }

    pub fn scale(&self, f: &RatFunc) -> Result<Self> {
        Self::new(self.coeffs.iter().map(|c| c.mul(f)).collect())
    }

    /// Operator composition: (self * other) y = self(other(y)).
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order() + other.order();
        let mut acc = vec![RatFunc::zero(); n + 1];
        // d^i b = sum_l C(i,l) b^{(l)} d^{i-l}
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let mut deriv = b.clone();
                for l in 0..=i {
                    let c = binom(i, l);
                    let term = a.mul(&deriv).scale(&c);
                    acc[i - l + j] = acc[i - l + j].add(&term);
                    if l < i {
                        deriv = deriv.derivative();
                    }
                }
            }
        }
        RationalOperator::new(acc).expect("product of nonzero operators is nonzero")
    }

    /// Formal adjoint: L^dual = sum (-1)^i d^i a_i.
    pub fn dual(&self) -> Self {
        let n = self.order();
        let mut acc = vec![RatFunc::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let sign = if i % 2 == 0 { qi(1) } else { qi(-1) };
            let mut deriv = a.clone();
            for l in 0..=i {
                let c = binom(i, l) * &sign;
                acc[i - l] = acc[i - l].add(&deriv.scale(&c));
                if l < i {
                    deriv = deriv.derivative();
                }
            }
        }
        RationalOperator::new(acc).expect("adjoint of a nonzero operator is nonzero")
    }

    /// Conjugation by a function g given through its logarithmic derivative
    /// lambda = g'/g: substitutes d -> d - lambda. Exponents at a pole of
    /// lambda with residue r shift by r.
    pub fn conjugate(&self, lambda: &RatFunc) -> Self {
        let e = RationalOperator {
            coeffs: vec![lambda.neg(), RatFunc::one()],
        };
        let mut acc = RationalOperator {
            coeffs: vec![self.coeff(0)],
        };
        let mut epow = RationalOperator {
            coeffs: vec![RatFunc::one()],
        };
        for i in 1..=self.order() {
            epow = epow.mul(&e);
            if !self.coeff(i).is_zero() {
                if let Ok(t) = epow.scale(&self.coeff(i)) {
                    acc = acc.add(&t).unwrap();
                }
            }
        }
        acc
    }

    /// Pullback along the Moebius map phi(z) = z/(cz+1): returns the operator
    /// annihilating y(phi(z)) for every solution y. Singular points move
    /// under the inverse map; exponents are preserved.
    pub fn moebius_pullback(&self, c: &Q) -> Self {
        // d/dz acting on y(phi): D = (1/phi') d with phi' = 1/(cz+1)^2
        let czp1 = QPoly::new(vec![Q::one(), c.clone()]);
        let inv_phi_prime = RatFunc::from_poly(czp1.mul(&czp1));
        let d_op = RationalOperator {
            coeffs: vec![RatFunc::zero(), inv_phi_prime],
        };
        let mut acc = RationalOperator {
            coeffs: vec![self.coeff(0).moebius_substitute(&qi(1), &qi(0), c, &qi(1))],
        };
        let mut dpow = RationalOperator {
            coeffs: vec![RatFunc::one()],
        };
        for i in 1..=self.order() {
            dpow = dpow.mul(&d_op);
            let ai = self.coeff(i).moebius_substitute(&qi(1), &qi(0), c, &qi(1));
            if !ai.is_zero() {
                acc = acc.add(&dpow.scale(&ai).unwrap()).unwrap();
            }
        }
        acc
    }

    /// Pullback under z -> 1/z (for indicial data at infinity).
    pub fn pullback_inverse_z(&self) -> Self {
        // d/dz -> -w^2 d/dw
        let m2 = RatFunc::from_poly(QPoly::monomial(qi(-1), 2));
        let d_op = RationalOperator {
            coeffs: vec![RatFunc::zero(), m2],
        };
        let sub = |f: &RatFunc| f.moebius_substitute(&qi(0), &qi(1), &qi(1), &qi(0));
        let mut acc = RationalOperator {
            coeffs: vec![sub(&self.coeff(0))],
        };
        let mut dpow = RationalOperator {
            coeffs: vec![RatFunc::one()],
        };
        for i in 1..=self.order() {
            dpow = dpow.mul(&d_op);
            let ai = sub(&self.coeff(i));
            if !ai.is_zero() {
                acc = acc.add(&dpow.scale(&ai).unwrap()).unwrap();
            }
        }
        acc
    }

    /// Applies the operator to a truncated series; coefficients must be
    /// regular at z = 0.
    pub fn apply_series(&self, w: &PowerSeries) -> Result<PowerSeries> {
        let n = w.truncation();
        let mut acc = PowerSeries::zero(n);
        let mut deriv = w.clone();
        for (i, a) in self.coeffs.iter().enumerate() {
            if i > 0 {
                deriv = pad_to(&deriv.derivative(), n);
            }
            if a.is_zero() {
                continue;
            }
            let aseries = ratfunc_series(a, n)?;
            acc = acc.add(&aseries.mul(&deriv));
        }
        Ok(acc)
    }
}

/// Series expansion of a rational function regular at z = 0.
pub fn ratfunc_series(f: &RatFunc, n: usize) -> Result<PowerSeries> {
    let num = PowerSeries::from_poly(f.num(), n);
    let den = PowerSeries::from_poly(f.den(), n);
    num.div(&den)
}

fn pad_to(s: &PowerSeries, n: usize) -> PowerSeries {
    PowerSeries::from_fn(n, |i| s.coeff(i))
}

fn binom(n: usize, k: usize) -> Q {
    let mut b = BigInt::one();
    for i in 0..k {
        b = b * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Q::from_integer(b)
}

/// Symmetric square of a monic second-order operator d^2 + a1 d + a0: the
/// monic third-order operator annihilating all products of its solutions,
///   d^3 + 3 a1 d^2 + (2 a1^2 + a1' + 4 a0) d + (4 a1 a0 + 2 a0').
pub fn symmetric_square(op: &RationalOperator) -> Result<RationalOperator> {
    if op.order() != 2 || !op.is_monic() {
        return Err(Error::Domain(
            "symmetric square requires a monic order-2 operator".into(),
        ));
    }
    let a1 = op.coeff(1);
    let a0 = op.coeff(0);
    let two = RatFunc::constant(qi(2));
    let three = RatFunc::constant(qi(3));
    let four = RatFunc::constant(qi(4));
    let c2 = a1.mul(&three);
    let c1 = two
        .mul(&a1)
        .mul(&a1)
        .add(&a1.derivative())
        .add(&four.mul(&a0));
    let c0 = four.mul(&a1).mul(&a0).add(&two.mul(&a0.derivative()));
    RationalOperator::new(vec![c0, c1, c2, RatFunc::one()])
}

/// The self-duality residuals CY(n,k) of a monic operator, built with
/// alpha'/alpha = lambda: residual_k = sum_{j>=k} C(j,k) [a_j G_{j-k}
/// - (-1)^{n-j} a_j^{(j-k)}] where G_j = (alpha^{(j)})/alpha.
pub struct SelfDualityWitness {
    /// lambda = alpha'/alpha
    pub log_derivative: RatFunc,
    /// CY(n,k) for k = n-3, n-5, ... (identically zero iff self-dual)
    pub residuals: Vec<RatFunc>,
    pub residual_orders: Vec<usize>,
}

impl SelfDualityWitness {
    pub fn is_self_dual(&self) -> bool {
        self.residuals.iter().all(RatFunc::is_zero)
    }
}

/// Residuals for all 0 <= k <= n with an explicit lambda; works for
/// non-monic operators as well (checks L alpha = (-1)^n alpha L^dual).
pub fn self_duality_residuals(op: &RationalOperator, lambda: &RatFunc) -> Vec<RatFunc> {
    let n = op.order();
    // G_j = alpha^{(j)}/alpha: G_0 = 1, G_{j+1} = G_j' + lambda G_j
    let mut g = vec![RatFunc::one()];
    for _ in 0..n {
        let last = g.last().unwrap();
        g.push(last.derivative().add(&lambda.mul(last)));
    }
    let sign_n = |m: usize| if m % 2 == 0 { qi(1) } else { qi(-1) };
    (0..=n)
        .map(|k| {
            let mut acc = RatFunc::zero();
            for j in k..=n {
                let aj = op.coeff(j);
                if aj.is_zero() {
                    continue;
                }
                let c = binom(j, k);
                let lhs = aj.mul(&g[j - k]);
                let rhs = aj.nth_derivative(j - k).scale(&sign_n(n - j));
                acc = acc.add(&lhs.sub(&rhs).scale(&c));
            }
            acc
        })
        .collect()
}

/// The floor((n-1)/2) independent relations of a monic operator with the
/// canonical lambda = -2 a_{n-1}/n.
pub fn cy_relations(op: &RationalOperator) -> Result<SelfDualityWitness> {
    if !op.is_monic() {
        return Err(Error::NotMonic);
    }
    let n = op.order();
    let lambda = op
        .coeff(n - 1)
        .scale(&Q::new(BigInt::from(-2), BigInt::from(n)));
    let all = self_duality_residuals(op, &lambda);
    let mut residuals = Vec::new();
    let mut orders = Vec::new();
    let mut k = n as i64 - 3;
    while k >= 0 {
        residuals.push(all[k as usize].clone());
        orders.push(k as usize);
        k -= 2;
    }
    Ok(SelfDualityWitness {
        log_derivative: lambda,
        residuals,
        residual_orders: orders,
    })
}

impl std::fmt::Debug for RationalOperator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("({:?})d^{i}", c))
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(v: &[i64]) -> RatFunc {
        RatFunc::from_poly(QPoly::new(v.iter().map(|&x| qi(x)).collect()))
    }

    fn d_op() -> RationalOperator {
        RationalOperator::new(vec![RatFunc::zero(), RatFunc::one()]).unwrap()
    }

    #[test]
    fn dual_of_d_is_minus_d() {
        let d = d_op();
        let dd = d.dual();
        assert_eq!(dd.coeff(1), RatFunc::constant(qi(-1)));
        assert_eq!(dd.coeff(0), RatFunc::zero());
    }

    #[test]
    fn dual_of_function_is_itself() {
        let f = RationalOperator::from_function(poly(&[3, 0, 2])).unwrap();
        assert_eq!(f.dual(), f);
    }

    #[test]
    fn dual_is_involution_and_antihomomorphism() {
        let l1 = RationalOperator::new(vec![poly(&[1, 2]), poly(&[0, 1]), RatFunc::one()])
            .unwrap();
        let l2 = RationalOperator::new(vec![poly(&[5]), poly(&[1, 1])]).unwrap();
        assert_eq!(l1.dual().dual(), l1);
        assert_eq!(l1.mul(&l2).dual(), l2.dual().mul(&l1.dual()));
    }

    #[test]
    fn conjugation_is_invertible() {
        let l = RationalOperator::new(vec![poly(&[0, 3]), poly(&[2]), RatFunc::one()]).unwrap();
        let lambda = RatFunc::new(
            QPoly::new(vec![qi(1)]),
            QPoly::new(vec![qi(0), qi(1)]),
        );
        let there = l.conjugate(&lambda);
        let back = there.conjugate(&lambda.neg());
        assert_eq!(back, l);
        assert_eq!(l.conjugate(&RatFunc::zero()), l);
    }

    #[test]
    fn moebius_group_law() {
        let l = RationalOperator::new(vec![poly(&[1, 1]), poly(&[0, 2]), RatFunc::one()])
            .unwrap();
        assert_eq!(l.moebius_pullback(&qi(0)), l);
        let once = l.moebius_pullback(&qi(1));
        let back = once.moebius_pullback(&qi(-1));
        assert_eq!(back, l);
    }

    #[test]
    fn symmetric_square_of_d2() {
        let l = RationalOperator::new(vec![RatFunc::zero(), RatFunc::zero(), RatFunc::one()])
            .unwrap();
        let s = symmetric_square(&l).unwrap();
        assert_eq!(s.order(), 3);
        assert!(s.is_monic());
        assert_eq!(s.coeff(0), RatFunc::zero());
        assert_eq!(s.coeff(1), RatFunc::zero());
        assert_eq!(s.coeff(2), RatFunc::zero());
        assert!(symmetric_square(&d_op()).is_err());
    }

    #[test]
    fn order4_autodual_relation() {
        // with a3 = 0 the single relation CY(4,1) reduces to 2(a1 - a2')
        let a2 = poly(&[0, 0, 1]);
        let a1 = a2.derivative();
        let op = RationalOperator::new(vec![
            poly(&[7]),
            a1.clone(),
            a2.clone(),
            RatFunc::zero(),
            RatFunc::one(),
        ])
        .unwrap();
        let w = cy_relations(&op).unwrap();
        assert_eq!(w.residual_orders, vec![1]);
        assert!(w.is_self_dual());
        // breaking a1 breaks it
        let op2 = RationalOperator::new(vec![
            poly(&[7]),
            a1.add(&RatFunc::one()),
            a2,
            RatFunc::zero(),
            RatFunc::one(),
        ])
        .unwrap();
        assert!(!cy_relations(&op2).unwrap().is_self_dual());
    }

    #[test]
    fn printed_order4_relation_reproduced() {
        // a1 = a2 a3 / 2 - a3^3/8 + a2' - (3/4) a3 a3' - a3''/2 makes CY(4,1) vanish
        // for arbitrary a3, a2, a0.
        let a3 = poly(&[1, 2]);
        let a2 = RatFunc::new(
            QPoly::new(vec![qi(1)]),
            QPoly::new(vec![qi(1), qi(1)]),
        );
        let half = RatFunc::constant(crate::rational::qr(1, 2));
        let a1 = half
            .mul(&a2)
            .mul(&a3)
            .sub(&a3.mul(&a3).mul(&a3).scale(&crate::rational::qr(1, 8)))
            .add(&a2.derivative())
            .sub(&a3.mul(&a3.derivative()).scale(&crate::rational::qr(3, 4)))
            .sub(&a3.nth_derivative(2).scale(&crate::rational::qr(1, 2)));
        let op = RationalOperator::new(vec![poly(&[9, 4]), a1, a2, a3, RatFunc::one()]).unwrap();
        let w = cy_relations(&op).unwrap();
        assert!(w.is_self_dual());
    }
}
