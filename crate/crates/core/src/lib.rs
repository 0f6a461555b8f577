//! Exact symbolic engine for shifted twisted Yangians of type AI, their
//! difference-operator (GKLO) images, and the Poisson algebra of τ-minors.

pub mod algebra;
pub mod diffop;
pub mod error;
pub mod gklo;

pub use algebra::{MultiPoly, Poly, RatFunc, VarId, Q};
pub use diffop::{BetaMonomial, DiffOp, Witness};
pub use error::{Error, Result};
pub use gklo::{Gklo, Mutation, Roots, Shape};
pub mod poisson;
pub mod relcheck;
