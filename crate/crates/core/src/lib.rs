//! Characteristic classes for transitionally commutative structures.
//!
//! The symbolic half decomposes classes of the classifying space for
//! commutativity into power-map images of ordinary classes for `U(n)`,
//! `SU(n)` and `Sp(n)`. The numeric half evaluates second Chern numbers of
//! `SU(2)` clutching functions by Chern-Weil quadrature.

pub mod chern_weil;
pub mod generators;
pub mod polyring;
pub mod quotient;
pub mod weyl;

#[cfg(test)]
mod testutil;
