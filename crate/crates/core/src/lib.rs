//! Doodle diagrams, elementary commutator identities, and the maps between them.

pub mod construct;
pub mod diagram;
pub mod freegroup;
pub mod identity;
pub mod moves;
pub mod noose;
pub mod verdict;

pub use diagram::{Diagram, DiagramError};
pub use freegroup::{Alphabet, Gen, Letter, Word, WordError};
pub use identity::{
    CommutatorTerm, ElementaryIdentity, GeneralIdentity, GeneralTerm, IdentityError, MoveDescriptor,
};
pub use verdict::SearchVerdict;
