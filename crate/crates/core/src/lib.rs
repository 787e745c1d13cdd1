//! Finite compact ordered spaces.
//!
//! At finite scale a compact ordered space is just a finite poset with the
//! discrete topology. This crate builds the categorical constructions on such
//! posets (reflection of pre-orders, coproducts, quotient objects, pushouts of
//! order-embeddings, equalisers, cokernel pairs), the theory of equivalence
//! co-relations on `X + X`, finite Priestley/Birkhoff duality, and exhaustive
//! enumerators that check the main statements on every small instance.

pub mod bits;
pub mod canon;
pub mod constructions;
pub mod corelation;
pub mod duality;
pub mod enumeration;
pub mod io;
pub mod order;
pub mod verify;

pub use bits::{BitSet, Relation};
pub use constructions::{PushoutResult, QuotientObject, Tag, TaggedCarrier};
pub use corelation::{CoRelation, EffectivenessCertificate, Tagged, TaggedPair};
pub use duality::{BoundedLattice, DistLattice, LatticeHom};
pub use enumeration::EnumerationBudget;
pub use order::{Carrier, MonotoneMap, Poset, Preorder};
pub use verify::{verify, VerificationReport, MANIFEST};
