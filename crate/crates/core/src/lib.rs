//! Exact-arithmetic toolkit for CY-type linear differential operators.
//!
//! An operator is kept in theta form `D = sum_k z^k P_k(theta)` with
//! `theta = z d/dz` and exact rational coefficients. On top of that
//! representation the crate provides:
//!
//! - the duality algebra (formal adjoint, self-duality residuals, the
//!   `P_k(theta) = (-1)^n P_k(-theta-k)` symmetry check) and the section of
//!   transformations used to produce such operators (Moebius pullback,
//!   conjugation, symmetric square), in [`theta`];
//! - truncated power series and log-series over exact rationals, with the
//!   Frobenius basis at a point of maximal unipotent monodromy, in
//!   [`series`], [`logseries`] and [`frobenius`];
//! - the canonical-coordinate pipeline (mirror map, `J(q)`, Yukawa coupling
//!   for orders 3/5/7, instanton numbers, wronskian identities) in
//!   [`mirror`];
//! - high-precision evaluation at the series boundary (critical points,
//!   levels, ell-numbers, rational reconstruction, hypergeometric closed
//!   forms) in [`numerics`], backed by [`real`], [`zeta`] and [`roots`];
//! - a built-in operator catalog with expected table data in [`catalog`],
//!   plus the `.cyop` text format in [`cyop_format`].

pub mod catalog;
pub mod cases;
pub mod cyop_format;
pub mod error;
pub mod frobenius;
pub mod indicial;
pub mod logseries;
pub mod mirror;
pub mod numerics;
pub mod partial;
pub mod poly;
pub mod rational;
pub mod ratfunc;
pub mod real;
pub mod roots;
pub mod series;
pub mod theta;
pub mod zeta;

pub use error::{Error, Result};
pub use rational::Q;
