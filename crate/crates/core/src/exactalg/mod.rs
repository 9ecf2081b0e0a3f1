//! Exact linear algebra over graded rational vector spaces.

pub mod linalg;
pub mod map;
pub mod module;
pub mod rational;
pub mod sign;
pub mod tensor;

pub use linalg::Echelon;
pub use map::{GradedMap, Vector};
pub use module::{BasisElement, GradedModule};
pub use rational::{format_rational, parse_rational, q, qf, Q};
pub use sign::{koszul_sign, Permutation};
pub use tensor::{hom_differential, suspend, TensorModule};
