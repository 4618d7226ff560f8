//! Exact computations around the ideal `J_n` generated by the principal
//! 2-minors of a generic symmetric matrix: Veronese gradings, lattice
//! torsion, fibers and their classes, sign-twisted components, the link
//! polynomials `p⁺_{n,i}` and degreewise verification of the ideal
//! identities they satisfy.

pub mod cli;
pub mod error;
pub mod exactlin;
pub mod fibers;
pub mod link;
pub mod poly;
pub mod verify;
pub mod veronese;

pub use error::{Error, Result};
