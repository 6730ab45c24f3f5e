//! Fock representations of the Lie superalgebra `sl(n+1|m)` and of its
//! quantum deformation `U_q[sl(n+1|m)]`, built as explicit sparse matrices.
//!
//! * [`qarith`]: Laurent polynomials in q with rational coefficients, q-integers.
//! * [`fockspace`]: the basis `|p; r_1, …, r_{n+m})` of `W_p`.
//! * [`matrix`]: Z₂-graded sparse matrices and (q-)brackets.
//! * [`operators`]: creation/annihilation, Cartan and Chevalley matrices.
//! * [`relations`]: exhaustive relation checks with per-instance reports.
//! * [`statistics`]: the b/f particle picture, Hamiltonian, partition sums.
//!
//! ```
//! use slfock::relations::verify_deformed_defining;
//! use slfock::{BasisConvention, ExactQ, FockBasis, FockOperators, Signature, Summary};
//!
//! let basis = FockBasis::enumerate(Signature::new(2, 1, 3)?)?;
//! let ops = FockOperators::new(basis, ExactQ, BasisConvention::Unnormalized)?;
//! let reports = verify_deformed_defining(&ops, 0.0)?;
//! assert_eq!(Summary::of(&reports).failed, 0);
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod fockspace;
pub mod matrix;
pub mod operators;
pub mod qarith;
pub mod relations;
pub mod statistics;

pub use fockspace::{FockBasis, FockError, OccupationVector, Parity, Signature};
pub use matrix::{bracket, q_bracket, GradedMatrix, MatrixError};
pub use operators::{BasisConvention, ClassicalQ, Deformation, ExactQ, FockOperators, NumericQ, OperatorError};
pub use qarith::{qfactorial, qint, LaurentPoly, QArithError, Scalar, ScalarMode};
pub use relations::{RelationId, RelationReport, Status, Summary};
