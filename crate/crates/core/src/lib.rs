//! Finite Cayley-ball tests for left- and bi-orderability of finitely
//! presented groups.
//!
//! A group is left-orderable exactly when every ball `B_k` of its Cayley
//! graph admits a sign assignment closed under in-ball products. This crate
//! builds the balls over a decided word problem, searches for such
//! assignments, and emits checkable refutation certificates when none exist.

pub mod ball;
pub mod certificate;
pub mod cones;
pub mod par;
pub mod presentation;
pub mod solver;
pub mod space;
pub mod wordproblem;

pub use ball::{Ball, BallElement, BallError};
pub use certificate::{check_certificate, RefutationCertificate, Verdict};
pub use presentation::{Letter, Presentation, Word};

pub use solver::{Mode, SearchOutcome, SignAssignment};
pub use wordproblem::{Budgets, WordBackend};
