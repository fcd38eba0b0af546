//! Exact certification of Salem polynomials and number-theoretic tests for
//! their realizability as dynamical degrees of K3 surface automorphisms.

pub mod arith;
pub mod classifier;
pub mod cli_report;
pub mod cyclotomic;
pub mod exact_poly;
pub mod local_conditions;
pub mod modp;
pub mod obstruction;
pub mod salem;
pub mod signatures;
