//! Exact computations with finite-dimensional modules over
//! `k[x_1, .., x_n]`: algebra dimensions of commuting matrices, annihilators,
//! socles, extensions by `S/m` and `S/J`, and randomized suites that test
//! inequalities between them.

pub mod ext;
pub mod field;
pub mod io;
pub mod lab;
pub mod matrix;
pub mod module;
pub mod poly;

pub use ext::{
    beta_to_extension, counterexample_check, cyclic_counterexample_check, gorenstein_divisibility_solve,
    hom_m_to_M, inductive_step_check, inequality_j, BetaDomain, BetaMap, ExtError, ExtensionResult,
    HomSpace, IdealGraph, InductiveStep, InequalityReport, Term, Verdict,
};
pub use field::{FieldError, FieldSpec, Scalar};
pub use matrix::{DenseMatrix, MatrixError, Vector};
pub use module::{
    annihilator, cyclic_quotient, AnnData, FdModule, ModuleError, QuotientRing, Subspace,
    SupportComponent, SupportPoint,
};
pub use poly::{parse_poly, IdealGens, Monomial, Poly, PolyError};
