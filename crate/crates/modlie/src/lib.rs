//! modlie: exact construction and cohomology of modular Lie superalgebras.
//!
//! The crate builds finite-dimensional Lie superalgebras over GF(p) for
//! p in {2, 3, 5} — from Cartan-style matrices, from matrix realizations
//! preserving a bilinear form, and by structural surgery (derived subalgebra,
//! center, quotient, queerification) — and computes their low-degree
//! Chevalley–Eilenberg cohomology: outer derivations H¹(g; g) and central
//! extensions H²(g; K), with exact arithmetic throughout.
//!
//! Modules:
//! - [`scalar`], [`linalg`]: GF(p) / GF(p)(t) scalars and sparse elimination;
//! - [`algebra`]: structure tables, validation, surgery;
//! - [`cartan`]: the contragredient construction g(A) with radical quotient;
//! - [`families`]: matrix realizations (gl, sl, psl, Heisenberg, orthogonal
//!   and periplectic families, queerification);
//! - [`cohomology`]: differentials, H¹/H² by graded blocks, Koszul-style maps;
//! - [`parse`]: the plain-text cochain syntax;
//! - [`catalog`]: the curated corpus of algebras with frozen expected answers.

pub mod algebra;
pub mod cartan;
pub mod catalog;
pub mod cohomology;
pub mod families;
pub mod linalg;
pub mod parse;
pub mod scalar;
