//! Decision procedures for the equivalences of noncommutative polynomials.

mod chain;
mod decompose;
mod intertwiner;
mod isospectral;
mod norm;
mod similar;
mod stable;

pub use chain::{eigenring_basis, intertwining_chain, verify_chain};
pub use decompose::{compose_uni, decompose, Decomposition};
pub use intertwiner::{
    elementary_intertwined, elementary_step_with, intertwiner_space, minimal_intertwiner, ChainStep, IntertwinerSpace,
};
pub use isospectral::{is_isospectral, IsospectralCertificate, IsospectralVerdict, NotIsospectralReason};
pub use norm::{norm_equivalent, NormVerdict};
pub use similar::{noncommutativity_witness, pointwise_similar, NcWitness, SimilarVerdict};
pub use stable::{stable_association, AssociationCertificate, StableAssocVerdict};

use crate::eval::RefuteConfig;

/// Search budgets shared by the deciders.
#[derive(Clone, Debug)]
pub struct Budget {
    /// Largest intertwiner degree tried.
    pub max_deg: usize,
    /// Random combinations tried inside each solution space.
    pub combos: usize,
    pub seed: u64,
    pub max_chain: usize,
    /// Parametric systems with at most this many unknowns are solved exactly over `k(t)`.
    pub dense_limit: usize,
    /// Attach randomized witnesses to negative verdicts.
    pub refute_witnesses: bool,
    pub refute: RefuteConfig,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_deg: 9,
            combos: 32,
            seed: 0,
            max_chain: 64,
            dense_limit: 200,
            refute_witnesses: true,
            refute: RefuteConfig::default(),
        }
    }
}
