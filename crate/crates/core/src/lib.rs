//! Computational companion for the quartic `x^4 + 2n x^2y^2 + m y^4 = z^2`.
//!
//! - [`arith`]: exact integer utilities (square roots, primality, residues)
//! - [`conic`]: parametrization of `x^2 + ell*y^2 = z^2` and its oracle
//! - [`family`]: the insoluble `(n, p, m)` family and its tables
//! - [`quartic`]: form evaluation, primitive reduction, exhaustive search
//! - [`descent`]: congruence audits and the executable descent step
//! - [`local`]: prime-power solvability and the Hasse-failure fixtures

pub mod arith;
pub mod conic;
pub mod descent;
pub mod family;
pub mod local;
pub mod quartic;

pub use conic::{ConicParametrization, ConicTriple};
pub use descent::{BranchReport, DescentTrace};
pub use family::{CaseTag, FamilyCombo};
pub use local::{LocalModulus, LocalReport, QuadraticSystemSolution};
pub use quartic::{FamilyQuarticForm, GeneralQuarticForm, SolutionTriple};
