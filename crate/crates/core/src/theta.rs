//! Differential operators in theta form `D = sum_{k=0}^m z^k P_k(theta)`,
//! `theta = z d/dz`, with exact rational coefficient polynomials.
//!
//! This is the primary representation: the self-duality check is a
//! coefficient symmetry here (`P_k(T) = (-1)^n P_k(-T-k)`), the holomorphic
//! recurrence reads off directly, and the formal adjoint is the substitution
//! `P_k(T) -> P_k(-T-k-1)`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::partial::RationalOperator;
use crate::poly::QPoly;
use crate::rational::{Q, qi};
use crate::ratfunc::RatFunc;
use crate::series::PowerSeries;

#[derive(Clone, PartialEq, Eq)]
pub struct ThetaOperator {
    /// coeffs[k] = P_k(T); trailing zero polynomials are trimmed.
    coeffs: Vec<QPoly>,
}

impl ThetaOperator {
    /// Builds the operator after normalization, rejecting the zero operator
    /// and an `order` that disagrees with `max_k deg P_k`.
    pub fn from_theta_coefficients(order: usize, mut coeffs: Vec<QPoly>) -> Result<Self> {
        while coeffs.last().is_some_and(QPoly::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return Err(Error::Construction("all coefficients are zero".into()));
        }
        let op = ThetaOperator { coeffs };
        if op.order() != order {
            return Err(Error::Construction(format!(
                "declared order {order} but max deg P_k = {}",
                op.order()
            )));
        }
        Ok(op)
    }

    pub(crate) fn from_parts(mut coeffs: Vec<QPoly>) -> Self {
        while coeffs.last().is_some_and(QPoly::is_zero) {
            coeffs.pop();
        }
        assert!(!coeffs.is_empty(), "zero operator");
        ThetaOperator { coeffs }
    }

    /// The general self-dual shape: theta^n plus, for each k = 1..=m,
    /// rational multiples of (theta + k/2)^p with p running over the powers
    /// of the same parity as n (odd n: odd p <= n; even n: even p <= n).
    /// `entries` are (k, p, d_{k,p}).
    pub fn general_form(n: usize, m: usize, entries: &[(usize, usize, Q)]) -> Result<Self> {
        if n < 1 || m < 1 {
            return Err(Error::Construction("need n >= 1 and m >= 1".into()));
        }
        let mut coeffs = vec![QPoly::zero(); m + 1];
        coeffs[0] = QPoly::monomial(Q::one(), n);
        for (k, p, d) in entries {
            let (k, p) = (*k, *p);
            if k < 1 || k > m {
                return Err(Error::Construction(format!("z-index k={k} outside 1..={m}")));
            }
            if p > n || p % 2 != n % 2 {
                return Err(Error::Construction(format!(
                    "power {p} not an allowed shifted power for order {n}"
                )));
            }
            // (T + k/2)^p
            let base = QPoly::new(vec![Q::new(BigInt::from(k), BigInt::from(2)), Q::one()]);
            let mut pw = QPoly::one();
            for _ in 0..p {
                pw = pw.mul(&base);
            }
            coeffs[k] = coeffs[k].add(&pw.scale(d));
        }
        Self::from_theta_coefficients(n, coeffs)
    }

    /// Operator order: max_k deg P_k.
    pub fn order(&self) -> usize {
        self.coeffs
            .iter()
            .filter_map(QPoly::degree)
            .max()
            .unwrap_or(0)
    }

    /// Degree in z.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn theta_coeff(&self, k: usize) -> QPoly {
        self.coeffs.get(k).cloned().unwrap_or_else(QPoly::zero)
    }

    pub fn coeffs(&self) -> &[QPoly] {
        &self.coeffs
    }

    /// c_i(z): the coefficient of theta^i when the operator is rewritten as
    /// sum_i c_i(z) theta^i.
    pub fn c_poly(&self, i: usize) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|p| p.coeff(i)).collect())
    }

    /// Formal adjoint in theta form: P_k(T) -> P_k(-T-k-1).
    pub fn dual(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, p)| p.compose_affine(&qi(-1), &qi(-(k as i64) - 1)))
            .collect();
        ThetaOperator::from_parts(coeffs)
    }

    /// The self-duality symmetry with alpha = z: P_k(T) = (-1)^n P_k(-T-k)
    /// for every k, checked by exact coefficient comparison.
    pub fn check_yy(&self) -> bool {
        let n = self.order();
        let sign = if n % 2 == 0 { qi(1) } else { qi(-1) };
        self.coeffs.iter().enumerate().all(|(k, p)| {
            let rhs = p.compose_affine(&qi(-1), &qi(-(k as i64))).scale(&sign);
            *p == rhs
        })
    }

    /// True iff the indicial polynomial at z=0 is c*T^n (all exponents zero).
    pub fn is_mum_at_zero(&self) -> bool {
        let n = self.order();
        let p0 = &self.coeffs[0];
        p0.degree() == Some(n) && (0..n).all(|i| p0.coeff(i).is_zero())
    }

    /// Product of operators (composition as differential operators).
    pub fn mul(&self, other: &Self) -> Self {
        let mut acc: Vec<QPoly> =
            vec![QPoly::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (a, p) in self.coeffs.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            for (b, q) in other.coeffs.iter().enumerate() {
                if q.is_zero() {
                    continue;
                }
                // z^a P(theta) z^b Q(theta) = z^{a+b} P(theta + b) Q(theta)
                let shifted = p.taylor_shift(&qi(b as i64));
                acc[a + b] = acc[a + b].add(&shifted.mul(q));
            }
        }
        ThetaOperator::from_parts(acc)
    }

    /// Right multiplication by z: D z = sum z^{k+1} P_k(theta + 1).
    pub fn mul_z_right(&self) -> Self {
        let mut coeffs = vec![QPoly::zero()];
        coeffs.extend(self.coeffs.iter().map(|p| p.taylor_shift(&qi(1))));
        ThetaOperator::from_parts(coeffs)
    }

    /// Left multiplication by z.
    pub fn mul_z_left(&self) -> Self {
        let mut coeffs = vec![QPoly::zero()];
        coeffs.extend(self.coeffs.iter().cloned());
        ThetaOperator::from_parts(coeffs)
    }

    pub fn scale(&self, c: &Q) -> Self {
        ThetaOperator::from_parts(self.coeffs.iter().map(|p| p.scale(c)).collect())
    }

    /// Exact operator identity D z = (-1)^n z D^dual, the Lemma-4 face of
    /// the YY symmetry.
    pub fn satisfies_adjoint_identity(&self) -> bool {
        let lhs = self.mul_z_right();
        let mut rhs = self.dual().mul_z_left();
        if self.order() % 2 == 1 {
            rhs = rhs.scale(&qi(-1));
        }
        lhs == rhs
    }

    /// P(z) := c_n(z)/c_n(0), the normalized leading polynomial. The second
    /// component is false when the operator is not in the YY class (the
    /// value is then not canonical).
    pub fn leading_polynomial(&self) -> Result<(QPoly, bool)> {
        let cn = self.c_poly(self.order());
        let c0 = cn.coeff(0);
        if c0.is_zero() {
            return Err(Error::Domain(
                "leading coefficient c_n(0) = 0: operator not normalized at a MUM point".into(),
            ));
        }
        Ok((cn.scale(&(Q::one() / c0)), self.check_yy()))
    }

    /// P(z) as the series exp((2/n) integral c_{n-1}/(z c_n) dz), P(0)=1.
    /// For YY operators this terminates and equals the leading polynomial.
    pub fn p_of_z_via_integral(&self, n_terms: usize) -> Result<PowerSeries> {
        let n = self.order();
        let cn = PowerSeries::from_poly(&self.c_poly(n), n_terms + 1);
        let cn1 = PowerSeries::from_poly(&self.c_poly(n - 1), n_terms + 1);
        if cn.coeff(0).is_zero() {
            return Err(Error::Domain("c_n(0) = 0".into()));
        }
        let ratio = cn1.div(&cn)?;
        // integrand (c_{n-1}/c_n)/z must be a power series
        let shifted = ratio.shift_down(1).map_err(|_| {
            Error::Domain("c_{n-1}/c_n has a nonzero constant term: log term in P(z)".into())
        })?;
        let integral = shifted
            .integrate_zero_constant()
            .scale(&Q::new(BigInt::from(2), BigInt::from(n)));
        Ok(integral.exp()?.truncate(n_terms))
    }

    /// theta-form pulled back under z -> 1/z (theta -> -theta); the result's
    /// P_0 is the indicial polynomial at infinity.
    pub fn pullback_infinity(&self) -> Self {
        let m = self.degree();
        let coeffs = (0..=m)
            .map(|j| self.coeffs[m - j].compose_affine(&qi(-1), &qi(0)))
            .collect();
        ThetaOperator::from_parts(coeffs)
    }

    /// Partial (d/dz) form with polynomial coefficients, via
    /// theta^j = sum_i S(j,i) z^i d^i.
    pub fn to_partial(&self) -> RationalOperator {
        let n = self.order();
        let s = stirling2_table(n);
        // b_i(z) = sum_k z^{k+i} sum_{j>=i} p_{k,j} S(j,i)
        let mut b: Vec<QPoly> = vec![QPoly::zero(); n + 1];
        for (k, p) in self.coeffs.iter().enumerate() {
            for i in 0..=n {
                let mut c = Q::zero();
                for j in i..=n {
                    let pj = p.coeff(j);
                    if !pj.is_zero() && !s[j][i].is_zero() {
                        c += pj * Q::from_integer(s[j][i].clone());
                    }
                }
                if !c.is_zero() {
                    b[i] = b[i].add(&QPoly::monomial(c, k + i));
                }
            }
        }
        RationalOperator::new(b.into_iter().map(RatFunc::from_poly).collect())
            .expect("theta operator is nonzero")
    }

    /// Inverse of `to_partial` where defined: requires polynomial
    /// coefficients and no genuinely negative powers of z after rewriting
    /// d^i = z^{-i} theta(theta-1)...(theta-i+1).
    pub fn from_partial(op: &RationalOperator) -> Result<Self> {
        let n = op.order();
        // Laurent coefficients: map z-power (may start negative) -> poly in T
        let offset = n as i64;
        let mut acc: Vec<QPoly> = vec![QPoly::zero(); 0];
        let ensure = |acc: &mut Vec<QPoly>, idx: usize| {
            while acc.len() <= idx {
                acc.push(QPoly::zero());
            }
        };
        for i in 0..=n {
            let a = op.coeff(i);
            let poly = a.as_polynomial().ok_or_else(|| {
                Error::Domain("coefficient is not polynomial; no theta form".into())
            })?;
            let ff = falling_factorial(i);
            for (e, c) in poly.coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let zpow = e as i64 - i as i64 + offset;
                ensure(&mut acc, zpow as usize);
                acc[zpow as usize] = acc[zpow as usize].add(&ff.scale(c));
            }
        }
        // entries below `offset` must cancel
        for (idx, p) in acc.iter().take(offset as usize).enumerate() {
            if !p.is_zero() {
                return Err(Error::Domain(format!(
                    "pole of order {} at z=0: no theta form",
                    offset - idx as i64
                )));
            }
        }
        let coeffs: Vec<QPoly> = acc.split_off(offset as usize);
        if coeffs.iter().all(QPoly::is_zero) {
            return Err(Error::Construction("zero operator".into()));
        }
        Ok(ThetaOperator::from_parts(coeffs))
    }

    /// Applies the operator to a power series.
    pub fn apply_series(&self, w: &PowerSeries) -> PowerSeries {
        let n = w.truncation();
        PowerSeries::from_fn(n, |j| {
            let mut s = Q::zero();
            for (k, p) in self.coeffs.iter().enumerate() {
                if k > j {
                    break;
                }
                let v = p.eval(&qi((j - k) as i64));
                if !v.is_zero() {
                    s += v * w.coeff(j - k);
                }
            }
            s
        })
    }
}

/// Stirling numbers of the second kind S(j,i) for 0 <= i <= j <= n.
fn stirling2_table(n: usize) -> Vec<Vec<BigInt>> {
    let mut s = vec![vec![BigInt::zero(); n + 1]; n + 1];
    s[0][0] = BigInt::one();
    for j in 1..=n {
        for i in 1..=j {
            let t = &s[j - 1][i] * BigInt::from(i) + &s[j - 1][i - 1];
            s[j][i] = t;
        }
    }
    s
}

/// T(T-1)...(T-i+1).
pub(crate) fn falling_factorial(i: usize) -> QPoly {
    let mut p = QPoly::one();
    for j in 0..i {
        p = p.mul(&QPoly::new(vec![qi(-(j as i64)), Q::one()]));
    }
    p
}

impl std::fmt::Debug for ThetaOperator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .map(|(k, p)| format!("z^{k}*({})", p.display("T")))
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qr;

    fn theta_pow(n: usize) -> ThetaOperator {
        ThetaOperator::from_theta_coefficients(n, vec![QPoly::monomial(Q::one(), n)]).unwrap()
    }

    fn p(v: &[i64]) -> QPoly {
        QPoly::new(v.iter().map(|&x| qi(x)).collect())
    }

    #[test]
    fn construction_normalizes() {
        let op = ThetaOperator::from_theta_coefficients(
            3,
            vec![p(&[0, 0, 0, 1]), QPoly::zero(), QPoly::zero()],
        )
        .unwrap();
        assert_eq!(op.degree(), 0);
        assert_eq!(op.order(), 3);
        assert!(ThetaOperator::from_theta_coefficients(3, vec![QPoly::zero()]).is_err());
        assert!(ThetaOperator::from_theta_coefficients(2, vec![p(&[0, 0, 0, 1])]).is_err());
    }

    #[test]
    fn general_form_order3() {
        // theta^3 + z (theta + 1/2)^3
        let op = ThetaOperator::general_form(3, 1, &[(1, 3, qi(1)), (1, 1, qi(0))]).unwrap();
        assert_eq!(op.theta_coeff(0), p(&[0, 0, 0, 1]));
        let half = qr(1, 2);
        let shifted = QPoly::new(vec![half.clone(), Q::one()]);
        assert_eq!(op.theta_coeff(1), shifted.mul(&shifted).mul(&shifted));
        assert!(op.check_yy());
    }

    #[test]
    fn general_form_order4_even_powers() {
        let op =
            ThetaOperator::general_form(4, 2, &[(1, 4, qi(3)), (1, 0, qr(1, 2)), (2, 2, qi(-5))])
                .unwrap();
        assert!(op.check_yy());
        assert!(ThetaOperator::general_form(4, 1, &[(1, 3, qi(1))]).is_err());
        assert!(ThetaOperator::general_form(3, 1, &[(2, 3, qi(1))]).is_err());
    }

    #[test]
    fn dual_of_theta_power() {
        // theta^n -> (-theta-1)^n
        let op = theta_pow(3);
        let d = op.dual();
        let expect = QPoly::new(vec![qi(-1), qi(-1)]); // (-T-1)
        assert_eq!(d.theta_coeff(0), expect.mul(&expect).mul(&expect));
        // z*theta -> z*(-theta-2)
        let zt = ThetaOperator::from_theta_coefficients(1, vec![QPoly::zero(), p(&[0, 1])])
            .unwrap();
        assert_eq!(zt.dual().theta_coeff(1), p(&[-2, -1]));
    }

    #[test]
    fn yy_check_theta_cubed() {
        assert!(theta_pow(3).check_yy());
        assert!(theta_pow(5).check_yy());
        // theta^3 + z theta^2 is not YY
        let op = ThetaOperator::from_theta_coefficients(
            3,
            vec![p(&[0, 0, 0, 1]), p(&[0, 0, 1])],
        )
        .unwrap();
        assert!(!op.check_yy());
    }

    #[test]
    fn adjoint_identity_matches_yy() {
        let yy = ThetaOperator::general_form(3, 2, &[(1, 3, qi(2)), (2, 1, qi(-7))]).unwrap();
        assert!(yy.check_yy());
        assert!(yy.satisfies_adjoint_identity());
        let not_yy = ThetaOperator::from_theta_coefficients(
            3,
            vec![p(&[0, 0, 0, 1]), p(&[0, 0, 1])],
        )
        .unwrap();
        assert!(!not_yy.satisfies_adjoint_identity());
    }

    #[test]
    fn leading_polynomial_hyp5() {
        // theta^5 - 32 z (2 theta + 1)^5 -> 1 - 1024 z
        let two_t_one = p(&[1, 2]);
        let mut q5 = QPoly::one();
        for _ in 0..5 {
            q5 = q5.mul(&two_t_one);
        }
        let op = ThetaOperator::from_theta_coefficients(
            5,
            vec![QPoly::monomial(Q::one(), 5), q5.scale(&qi(-32))],
        )
        .unwrap();
        let (pz, canonical) = op.leading_polynomial().unwrap();
        assert_eq!(pz, p(&[1, -1024]));
        assert!(canonical);
    }

    #[test]
    fn integral_p_terminates_for_yy_only() {
        // theta^3: c_2 = 0 so P = 1
        let pz = theta_pow(3).p_of_z_via_integral(12).unwrap();
        assert_eq!(pz, PowerSeries::one(12));
        // theta^3 + z theta^2: integrand becomes exp(2z/3), never terminates
        let op = ThetaOperator::from_theta_coefficients(
            3,
            vec![p(&[0, 0, 0, 1]), p(&[0, 0, 1])],
        )
        .unwrap();
        let s = op.p_of_z_via_integral(14).unwrap();
        for i in 1..14 {
            assert!(!s.coeff(i).is_zero(), "coefficient {i} vanished");
            assert_eq!(s.coeff(i), qr(2, 3).pow(i as i32) / crate::cases::factorial_q(i));
        }
    }

    #[test]
    fn infinity_pullback_swaps_ends() {
        let op = ThetaOperator::general_form(3, 2, &[(1, 3, qi(2)), (2, 3, qi(5))]).unwrap();
        let inf = op.pullback_infinity();
        assert_eq!(inf.theta_coeff(0), op.theta_coeff(2).compose_affine(&qi(-1), &qi(0)));
        assert_eq!(inf.degree(), 2);
    }
}
