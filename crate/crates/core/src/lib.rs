//! Exact graded commutative algebra over prime fields, aimed at computing
//! the equivalence between graded singularity categories of a Gorenstein
//! ring and the derived category of its projective scheme.

pub mod cli;
pub mod complex;
pub mod error;
pub mod field;
pub mod groebner;
pub mod module;
pub mod orlov;
pub mod poly;
pub mod resolution;
pub mod ring;
pub mod vector;

pub use complex::{FreeComplex, ModuleComplex};
pub use error::{Error, Result};
pub use field::{ExactMatrix, Fp, DEFAULT_PRIME};
pub use module::{FreeModule, GradedMap, PresentedModule};
pub use poly::{Monomial, Poly};
pub use ring::QuotientRing;
pub use vector::Vector;
pub use orlov::{hypercohomology, phi, psi, GorensteinRing, PhiOptions, PsiResult, SheafObject};
pub use resolution::{gorenstein_data, resolve_module, BettiTable};
