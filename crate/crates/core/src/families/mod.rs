//! Generators for adversarial graph families, and certifiers for the
//! properties each family is built to have.

mod certify;
mod cliques;
mod hairy;
mod necklace;
mod spec;

use thiserror::Error;

use crate::graph::GraphError;

pub use certify::{
    certify_hairy_ring, certify_necklace, certify_ring_cliques, certify_stretch, stretch_radius,
};
pub use cliques::{
    append_clique, clique, family_size, gen_clique_family, gen_ring_cliques, shift_sequence,
    RingOfCliques,
};
pub use hairy::{
    close_with_hub, cut, gamma_stretch, gen_hairy_ring, Fragment, HairyRing, HairyRingSpec,
    Stretch,
};
pub use necklace::{gen_necklace, Necklace, NecklaceSpec};
pub use spec::{FamilySpec, FAMILIES};

#[derive(Debug, Error)]
pub enum FamilyError {
    #[error("bad parameters: {0}")]
    Param(String),
    #[error("{0} does not fit in 64 bits")]
    TooLarge(&'static str),
    #[error("spec line {line}: {msg}")]
    Spec { line: usize, msg: String },
    #[error("certificate failed: {0}")]
    Certificate(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}
