//! Cross-module pipeline checks on catalog operators: mirror maps, levels,
//! ell-numbers, order-7 couplings.

use cyop::catalog::{catalog, transformed_case_a};
use cyop::frobenius::frobenius_basis;
use cyop::mirror::*;
use cyop::numerics::*;
use cyop::rational::{qi, Q};
use cyop::series::all_integral;
use num_traits::{One, Zero};

#[test]
fn mirror_map_11a_integral_and_j_consistent() {
    let op = &catalog().get("11A").unwrap().operator;
    let basis = frobenius_basis(op, 34).unwrap();
    let (map, j) = mirror_map_order3(&basis, 34).unwrap();
    assert!(all_integral(&map.z_of_q, 32), "z(q) of 11A not integral");
    assert_eq!(map.z_of_q.coeff(1), Q::one());
    let prod = j.times(&map.z_of_q).unwrap();
    assert_eq!(prod.coeff(0), Q::one());
    for i in 1..prod.truncation() {
        assert!(prod.coeff(i).is_zero(), "J*z != 1");
    }
}

#[test]
fn level_of_11a_is_11() {
    let op = &catalog().get("11A").unwrap().operator;
    let pctx = PrecisionContext::default();
    let r = level_order3(op, &pctx).unwrap();
    let ctx = pctx.real_ctx();
    assert_eq!(r.nearest_integer, 11.into());
    let tol = ctx.from_q(&Q::new(1.into(), 1_000_000.into()));
    assert!(
        ctx.cmp(&r.residual, &tol) == std::cmp::Ordering::Less,
        "residual {}",
        r.residual.to_f64()
    );
}

#[test]
fn ell_numbers_hyp5() {
    let op = &catalog().get("hyp5").unwrap().operator;
    let pctx = PrecisionContext::default();
    let e = ell_numbers(op, &pctx).unwrap();
    assert!(e.good, "hyp5 should be a good case, K(q_c) = {}", e.k_at_qc.to_f64());
    let ell = e.ell.unwrap();
    assert_eq!(ell[0].value, qi(16));
    assert_eq!(ell[1].value, qi(80));
    assert_eq!(ell[2].value, qi(-160));
}

#[test]
fn ell_numbers_aesz32() {
    let op = &catalog().get("AESZ-32").unwrap().operator;
    let pctx = PrecisionContext::default();
    let e = ell_numbers(op, &pctx).unwrap();
    assert!(e.good);
    let ell = e.ell.unwrap();
    assert_eq!(ell[0].value, qi(39));
    assert_eq!(ell[1].value, qi(117));
    assert_eq!(ell[2].value, qi(0));
}

#[test]
fn case_b_coupling_and_instantons() {
    let op = &catalog().get("7-B").unwrap().operator;
    let basis = frobenius_basis(op, 12).unwrap();
    let k = yukawa_order7(&basis, 12).unwrap();
    let inst = instanton_numbers(&k, 4, 5).unwrap();
    assert_eq!(inst.values[0].1, qi(1485));
    assert_eq!(inst.values[1].1, Q::new(9853515.into(), 8.into()));
    assert_eq!(inst.values[2].1, qi(2555194005));
}

#[test]
fn transformed_a_instantons() {
    let op = &catalog().get("7-A-transformed").unwrap().operator;
    let basis = frobenius_basis(op, 12).unwrap();
    let k = yukawa_order7(&basis, 12).unwrap();
    let inst = instanton_numbers(&k, 4, 4).unwrap();
    let want = [768i64, -136800, 35597568, -5313408000];
    for (got, w) in inst.values.iter().zip(want.iter()) {
        assert_eq!(got.1, qi(*w));
    }
    // sanity: the transformed solution built from the closed form matches
    let y0 = transformed_case_a(12).unwrap();
    let had = cyop::catalog::transformed_wronskian(12)
        .unwrap()
        .hadamard(&cyop::cases::BinomialFamily::CaseA.stream(12));
    assert_eq!(basis.holomorphic().truncate(12), had);
    assert_eq!(y0.coeff(0), Q::one());
}
