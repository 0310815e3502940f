//! Weight-sets of highest-weight modules over Kac-Moody algebras.
//!
//! The formula layer (`integrable`, `formulas`, `enumerate`) works for any generalized
//! Cartan matrix. The `engine` module is an exact linear-algebra model of finite-type
//! modules used as an independent oracle.

pub mod cartan;
pub mod engine;
pub mod enumerate;
pub mod error;
pub mod formulas;
pub mod integrable;
pub mod linalg;
pub mod rational;
pub mod roots;
pub mod weights;

pub use cartan::{AlgebraDescriptor, Gcm, NodeSet};
pub use error::{Error, Result};
pub use rational::Rat;
pub use roots::{positive_roots, Root, RootKind, RootSet};
pub use weights::{DepthVector, HighestWeight, TruncatedWeightSet};
