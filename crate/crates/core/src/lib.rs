//! Exact computation of the Legendre symbol of the determinant
//! D_p(b, c) = det[(i^2 + b*i*j + c*j^2)^(p-2)] (1 <= i, j <= p-1) over an
//! odd prime p, together with every closed-form predictor of that symbol
//! implemented here, and the supporting machinery: prime-field arithmetic,
//! Lucas sequences, quadratic extension rings, and trinomial coefficients.
//!
//! The determinant itself ([`detcore`]) is the ground truth; everything in
//! [`predict`] and [`trinom`] is a formula that is supposed to reproduce it
//! and is tested against it.

#![forbid(unsafe_code)]

pub mod arith;
pub mod detcore;
pub mod lucas;
pub mod predict;
pub mod quadring;
pub mod trinom;

pub use arith::{LegendreSymbol, Prime, Residue};
