//! Exact symbolic core: noncommutative polynomials over generator words,
//! normal ordering under a central commutator table, and the consistency
//! checks built on top of it.

pub mod algebra;
pub mod checks;
pub mod mixed;
pub mod poly;
pub mod rewrite;
pub mod scalar;

pub use algebra::{Algebra, DimensionMap, PairClass, Substitution};
pub use checks::{
    dimension_check, equivalence_check, jacobi_check, DimensionReport, EquivalenceReport,
    JacobiReport, Verdict,
};
pub use mixed::{
    cyclotron_coefficients, cyclotron_dual_coefficients, mixed_commutator, DerivativeMode,
    MixedCommutatorResult,
};
pub use poly::{GenKind, Generator, NCPolynomial, Word};
pub use rewrite::{commutator, normal_order, substitute};
pub use scalar::{Coefficient, GaussianRational, Monomial, ScalarConst};
