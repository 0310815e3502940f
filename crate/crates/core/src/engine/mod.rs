//! Exact model of highest-weight modules over finite-type algebras.
//!
//! Vectors of a Verma module `M(lambda)` are stored per weight space in the PBW basis
//! of `U(n^-)`; submodules are graded subspaces kept in reduced row echelon form.
//! Everything is over the rationals.

mod algebra;
mod module;
mod pbw;
mod radical;

pub use algebra::{ChevalleyBasis, Raise, MAX_ENGINE_RANK};
pub use module::{
    element_vector, submodule_closure, Generator, GradedSubspace, GradedVector, ModulePresentation,
    QuotientModule, Relation, Verma,
};
pub use pbw::{DepthBasis, Monomial, Pbw, RaisedTerm, UElement};
pub use radical::{
    construct_n_lambda_j, gram_matrix, shapovalov_rank, simple_module_dims, Radical,
};

use std::sync::Arc;

use crate::cartan::Gcm;
use crate::error::Result;
use crate::weights::DepthVector;

/// Largest truncation height the engine accepts.
pub const MAX_ENGINE_HEIGHT: u32 = 16;

/// A finite-type algebra together with its straightening caches.
///
/// Cheap to share: clones refer to the same caches.
#[derive(Clone, Debug)]
pub struct Engine {
    pbw: Arc<Pbw>,
}

impl Engine {
    pub fn new(gcm: &Gcm) -> Result<Engine> {
        Ok(Engine {
            pbw: Arc::new(Pbw::new(ChevalleyBasis::new(gcm)?)),
        })
    }

    pub fn pbw(&self) -> &Pbw {
        &self.pbw
    }

    pub fn algebra(&self) -> &ChevalleyBasis {
        self.pbw.algebra()
    }

    pub fn gcm(&self) -> &Gcm {
        self.algebra().gcm()
    }

    pub fn rank(&self) -> usize {
        self.algebra().rank()
    }

    /// Ordered PBW basis of the weight space `lambda - depth` of any Verma module.
    pub fn verma_component(&self, depth: &DepthVector) -> Arc<DepthBasis> {
        self.pbw.basis(depth)
    }

    pub fn verma_dim(&self, depth: &DepthVector) -> usize {
        self.pbw.basis(depth).dim()
    }
}
