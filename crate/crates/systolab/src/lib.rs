//! Systolic geometry toolkit.
//!
//! Computes systoles, volumes, and homology exactly or to controlled
//! precision: exact chain-complex homology via Smith normal form, shortest
//! vectors of flat tori, closed-form evaluators for two explicit
//! systolically free metric families, and a discrete minimum-weight-cycle
//! solver on weighted complexes.

pub mod discsys;
pub mod exactlin;
pub mod families;
pub mod homology;
pub mod lattice;

pub use exactlin::{rank_mod2, rank_rational, smith_normal_form, IntMatrix, SnfResult};
