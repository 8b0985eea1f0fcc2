//! Exact Koszul cohomology of polarized varieties over prime fields.
//!
//! The crate computes graded Betti numbers `dim K_{p,q}(X, L)` of section
//! rings presented by equations, runs Borel–Weil–Bott on Grassmannians with
//! exact big-integer dimensions, and carries the closed-form numerology
//! (gonality, Clifford index, Lazarsfeld–Mukai invariants) used to predict
//! where syzygies of canonical curves vanish.

pub mod acceptance;
pub mod bwb;
pub mod error;
pub mod exactlinalg;
pub mod koszul;
pub mod numerology;
pub mod polyring;
pub mod runner;
pub mod varieties;

pub use error::{Error, Result};
