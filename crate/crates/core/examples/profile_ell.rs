use cyop::catalog::catalog;
use cyop::frobenius::frobenius_basis;
use cyop::mirror::*;
use cyop::numerics::*;
use cyop::series::PowerSeries;
use std::time::Instant;

fn main() {
    let id = std::env::args().nth(1).unwrap_or_else(|| "hyp5".into());
    let n: usize = std::env::args().nth(2).map(|s| s.parse().unwrap()).unwrap_or(61);
    let op = &catalog().get(&id).unwrap().operator;
    let pctx = PrecisionContext { series_truncation: n, ..Default::default() };
    let t0 = Instant::now();
    let (pz, _) = op.leading_polynomial().unwrap();
    let z_c = smallest_positive_root(&pz, &pctx).unwrap();
    eprintln!("z_c        {:>8.2?}  {}", t0.elapsed(), z_c.to_f64());
    let t = Instant::now();
    let basis = frobenius_basis(op, n).unwrap();
    eprintln!("frobenius  {:>8.2?}", t.elapsed());
    let t = Instant::now();
    let map = q_coordinate_order5(&basis, &pz, n).unwrap();
    eprintln!("mirror     {:>8.2?}", t.elapsed());
    let t = Instant::now();
    let k = yukawa_order5(&map.z_of_q, basis.part(0), &pz).unwrap();
    eprintln!("yukawa     {:>8.2?}", t.elapsed());
    let t = Instant::now();
    let crit = critical_q(&map.z_of_q, &z_c, Some(&k), &pctx).unwrap();
    eprintln!("critical_q {:>8.2?}  q_c={} good={}", t.elapsed(), crit.q_c.to_f64(), crit.good);
    let t = Instant::now();
    let sqrt_p = PowerSeries::from_poly(&pz, n).pow_ratio(1, 2).unwrap();
    let dg = basis.part(0).theta().theta().mul(&sqrt_p);
    let _dg_q = dg.compose(&map.z_of_q).unwrap();
    eprintln!("dg compose {:>8.2?}", t.elapsed());
    let t = Instant::now();
    let e = ell_numbers(op, &pctx).unwrap();
    eprintln!("full       {:>8.2?}  good={} ell={:?}", t.elapsed(), e.good,
        e.ell.map(|l| l.map(|r| cyop::rational::fmt_q(&r.value))));
}
