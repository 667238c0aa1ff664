//! The canonical-coordinate pipeline: mirror map z(q) and J(q), the Yukawa
//! coupling for orders 3, 5 and 7, instanton numbers via Lambert-series
//! inversion, the Gromov-Witten potential, wronskian bilinears, and the
//! iterated-integral potential T(q). Everything stays exact until the
//! numeric boundary.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::frobenius::FrobeniusBasis;
use crate::logseries::LogSeries;
use crate::poly::QPoly;
use crate::rational::Q;
use crate::series::PowerSeries;

/// z(q) together with the coordinate series q(z) it inverts.
pub struct MirrorMap {
    pub q_of_z: PowerSeries,
    pub z_of_q: PowerSeries,
}

/// J(q) = 1/z(q) = pole/q + tail.
pub struct JSeries {
    pub pole: Q,
    pub tail: PowerSeries,
}

impl JSeries {
    /// J * z as a series (1 when consistent).
    pub fn times(&self, z_of_q: &PowerSeries) -> Result<PowerSeries> {
        let u = z_of_q.shift_down(1)?; // z/q
        let j_shift = {
            // q*J = pole + q*tail
            let mut v = vec![self.pole.clone()];
            v.extend(self.tail.coeffs().iter().cloned());
            PowerSeries::new(v).truncate(u.truncation())
        };
        Ok(j_shift.mul(&u))
    }
}

/// q = exp(w_1/w_0) for an order-3 (or any MUM) basis: q(z) = z exp(A_1/A_0).
pub fn mirror_map_order3(basis: &FrobeniusBasis, n: usize) -> Result<(MirrorMap, JSeries)> {
    let a0 = basis.part(0).truncate(n);
    let a1 = basis.part(1).truncate(n);
    let g = a1.div(&a0)?;
    let q_of_z = g.exp()?.shift_up(1); // z * exp(g), coefficient shift
    let z_of_q = q_of_z.functional_inverse()?;
    let u = z_of_q.shift_down(1)?;
    let inv_u = u.inverse()?;
    let j = JSeries {
        pole: inv_u.coeff(0),
        tail: PowerSeries::from_fn(inv_u.truncation().saturating_sub(1).max(1), |i| {
            inv_u.coeff(i + 1)
        }),
    };
    Ok((MirrorMap { q_of_z, z_of_q }, j))
}

/// The log-free wronskian numerator w_0 theta(w_1) - w_1 theta(w_0)
/// = A_0^2 + A_0 theta(A_1) - A_1 theta(A_0).
pub fn wronskian01(basis: &FrobeniusBasis, n: usize) -> PowerSeries {
    let a0 = basis.part(0).truncate(n);
    let a1 = basis.part(1).truncate(n);
    a0.mul(&a0)
        .add(&a0.mul(&a1.theta()))
        .sub(&a1.mul(&a0.theta()))
}

/// The order-5 canonical coordinate: q = exp int w_0/((w_0 theta w_1 -
/// w_1 theta w_0) z sqrt(P)) dz, integration constant fixed by q/z -> 1.
pub fn q_coordinate_order5(
    basis: &FrobeniusBasis,
    pz: &QPoly,
    n: usize,
) -> Result<MirrorMap> {
    let a0 = basis.part(0).truncate(n);
    let w = wronskian01(basis, n);
    let sqrt_p_inv = PowerSeries::from_poly(pz, n).pow_ratio(-1, 2)?;
    // S = z * integrand = w_0/(W sqrt(P)); must be 1 + O(z)
    let s = a0.mul(&sqrt_p_inv).div(&w)?;
    if !s.coeff(0).is_one() {
        return Err(Error::SeriesPrecondition(
            "integrand lacks the simple 1/z pole structure".into(),
        ));
    }
    let h = s
        .sub(&PowerSeries::one(s.truncation()))
        .shift_down(1)?
        .integrate_zero_constant()
        .truncate(n);
    let q_of_z = h.exp()?.shift_up(1);
    let z_of_q = q_of_z.functional_inverse()?;
    Ok(MirrorMap { q_of_z, z_of_q })
}

/// (q/z dz/dq) as a q-series with unit constant term.
pub fn log_derivative_ratio(z_of_q: &PowerSeries) -> Result<PowerSeries> {
    let u = z_of_q.shift_down(1)?;
    let theta_m = z_of_q.theta().shift_down(1)?;
    theta_m.div(&u)
}

/// Order-5 Yukawa coupling K(q) = (q/z dz/dq)^2 / (w_0 sqrt(P)) at z = z(q),
/// normalized so K(0) = 1 (making it invariant under constant rescalings
/// of w_0).
pub fn yukawa_order5(
    z_of_q: &PowerSeries,
    w0: &PowerSeries,
    pz: &QPoly,
) -> Result<PowerSeries> {
    let n = z_of_q.truncation().min(w0.truncation());
    let ratio = log_derivative_ratio(z_of_q)?;
    let sqrt_p = PowerSeries::from_poly(pz, n).pow_ratio(1, 2)?;
    let denom = w0.truncate(n).mul(&sqrt_p).compose(&z_of_q.truncate(n))?;
    let k = ratio.mul(&ratio).div(&denom)?;
    let k0 = k.coeff(0);
    if k0.is_zero() {
        return Err(Error::Domain("Yukawa coupling vanishes at q=0".into()));
    }
    Ok(k.scale(&(Q::one() / k0)))
}

/// Solution ratio w_j/w_0 transported to the canonical coordinate.
pub fn ratio_in_q(
    basis: &FrobeniusBasis,
    j: usize,
    z_of_q: &PowerSeries,
) -> Result<LogSeries> {
    let n = z_of_q.truncation().min(basis.truncation());
    let wj = basis.solution(j);
    let ratio = wj.div_series(&basis.part(0).truncate(n))?;
    ratio.substitute(&z_of_q.truncate(n))
}

/// Order-7 Yukawa coupling K(q) = (q d/dq)^2 (y_2/y_0) with q = exp(y_1/y_0);
/// the log terms cancel identically, which is asserted.
pub fn yukawa_order7(basis: &FrobeniusBasis, n: usize) -> Result<PowerSeries> {
    let (map, _) = mirror_map_order3(basis, n)?;
    yukawa_order7_with_map(basis, &map.z_of_q)
}

pub fn yukawa_order7_with_map(
    basis: &FrobeniusBasis,
    z_of_q: &PowerSeries,
) -> Result<PowerSeries> {
    let r2 = ratio_in_q(basis, 2, z_of_q)?;
    r2.theta().theta().expect_log_free()
}

/// Gromov-Witten potential Phi = (1/2)((y_1/y_0)(y_2/y_0) - y_3/y_0) in the
/// canonical coordinate.
pub fn gw_potential(basis: &FrobeniusBasis, z_of_q: &PowerSeries) -> Result<LogSeries> {
    let r1 = ratio_in_q(basis, 1, z_of_q)?;
    let r2 = ratio_in_q(basis, 2, z_of_q)?;
    let r3 = ratio_in_q(basis, 3, z_of_q)?;
    Ok(r1.mul(&r2).sub(&r3).scale(&Q::new(1.into(), 2.into())))
}

/// T_{jk} = z (y_j y_k' - y_j' y_k) = y_j theta(y_k) - theta(y_j) y_k,
/// as a log-series in z.
pub fn wronskian_t(basis: &FrobeniusBasis, j: usize, k: usize) -> LogSeries {
    assert!(j < k && k < basis.order(), "need j < k <= order-1");
    let yj = basis.solution(j);
    let yk = basis.solution(k);
    yj.mul(&yk.theta()).sub(&yj.theta().mul(&yk))
}

/// Instanton numbers from the Lambert expansion
/// K = 1 + sum_d d^w n_d q^d/(1-q^d).
#[derive(Clone, Debug)]
pub struct InstantonTable {
    pub weight: u32,
    /// (d, n_d) for d = 1..=count; exact rationals, not forced integral
    pub values: Vec<(usize, Q)>,
}

pub fn instanton_numbers(k: &PowerSeries, weight: u32, count: usize) -> Result<InstantonTable> {
    if !k.coeff(0).is_one() {
        return Err(Error::SeriesPrecondition(
            "instanton extraction requires K(0) = 1".into(),
        ));
    }
    if count + 1 > k.truncation() {
        return Err(Error::SeriesPrecondition(format!(
            "need {} coefficients of K, have {}",
            count + 1,
            k.truncation()
        )));
    }
    let mut values: Vec<(usize, Q)> = Vec::with_capacity(count);
    let pow = |d: usize| Q::from_integer(BigInt::from(d).pow(weight));
    for d in 1..=count {
        let mut c = k.coeff(d);
        for (e, n_e) in &values {
            if d % e == 0 {
                c -= pow(*e) * n_e;
            }
        }
        values.push((d, c / pow(d)));
    }
    Ok(InstantonTable { weight, values })
}

/// Re-expands 1 + sum d^w n_d q^d/(1-q^d) to the given truncation.
pub fn lambert_series(table: &InstantonTable, n: usize) -> PowerSeries {
    let mut coeffs = vec![Q::zero(); n];
    coeffs[0] = Q::one();
    for (d, n_d) in &table.values {
        let w = Q::from_integer(BigInt::from(*d).pow(table.weight)) * n_d;
        let mut j = *d;
        while j < n {
            coeffs[j] += w.clone();
            j += d;
        }
    }
    PowerSeries::new(coeffs)
}

/// The iterated-integral potential T = int(int(int((1-K)/q)/q)/q, three
/// antiderivatives with zero constants; equals -sum c_d q^d / d^3 for
/// K = 1 + sum c_d q^d.
pub fn triple_integral_t(k: &PowerSeries) -> Result<PowerSeries> {
    let n = k.truncation();
    let mut t = PowerSeries::one(n).sub(k);
    for _ in 0..3 {
        t = t.shift_down(1)?.integrate_zero_constant().truncate(n);
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frobenius::frobenius_basis;
    use crate::rational::qi;
    use crate::theta::ThetaOperator;

    fn theta_op(coeffs: Vec<QPoly>) -> ThetaOperator {
        let order = coeffs
            .iter()
            .filter_map(QPoly::degree)
            .max()
            .unwrap();
        ThetaOperator::from_theta_coefficients(order, coeffs).unwrap()
    }

    #[test]
    fn instantons_of_trivial_coupling() {
        let k = PowerSeries::one(8);
        let t = instanton_numbers(&k, 4, 6).unwrap();
        assert!(t.values.iter().all(|(_, v)| v.is_zero()));
        assert_eq!(lambert_series(&t, 8), k);
    }

    #[test]
    fn triple_integral_formula() {
        assert!(triple_integral_t(&PowerSeries::one(6)).unwrap().is_zero());
        // K = 1 + q -> T = -q
        let mut k = PowerSeries::one(6);
        k = k.add(&PowerSeries::var(6));
        let t = triple_integral_t(&k).unwrap();
        assert_eq!(t.coeff(1), qi(-1));
        for i in 2..6 {
            assert!(t.coeff(i).is_zero());
        }
        // theta T = -sum c_d q^d/d^2
        let k2 = PowerSeries::from_fn(7, |i| qi(if i == 0 { 1 } else { i as i64 }));
        let t2 = triple_integral_t(&k2).unwrap();
        for d in 1..7 {
            assert_eq!(
                t2.theta().coeff(d),
                -qi(d as i64) / qi((d * d) as i64),
                "d={d}"
            );
        }
    }

    #[test]
    fn lambert_round_trip_with_weights() {
        for weight in [2u32, 3, 4] {
            let k = PowerSeries::from_fn(12, |i| match i {
                0 => qi(1),
                i => qi(3 * i as i64 - 5),
            });
            let t = instanton_numbers(&k, weight, 11).unwrap();
            assert_eq!(lambert_series(&t, 12), k);
        }
    }

    #[test]
    fn euler_mirror_map_is_identity() {
        // theta^2: w0 = 1, w1 = log z, so q = z exactly
        let op = theta_op(vec![QPoly::monomial(Q::one(), 2)]);
        let b = frobenius_basis(&op, 10).unwrap();
        let (map, j) = mirror_map_order3(&b, 10).unwrap();
        assert_eq!(map.z_of_q, PowerSeries::var(10));
        assert_eq!(j.pole, Q::one());
        assert!(j.tail.is_zero());
        assert_eq!(
            j.times(&map.z_of_q).unwrap(),
            PowerSeries::one(9)
        );
    }

    #[test]
    fn wronskian_t01_unit_constant() {
        let op = theta_op(vec![QPoly::monomial(Q::one(), 3)]);
        let b = frobenius_basis(&op, 8).unwrap();
        let t01 = wronskian_t(&b, 0, 1);
        let flat = t01.expect_log_free().unwrap();
        assert_eq!(flat.coeff(0), Q::one());
    }
}
