//! Finite, computable machinery around right-angled Artin groups and the
//! groups `G_L(S)`: flag complexes and their sphere links, nlcp repair,
//! finite covers, exact integer homology, the presentations `P_L(Γ, S)`,
//! Todd–Coxeter enumeration and the `R(G, g)` set-valued invariant.
//!
//! The crate is organised by subsystem:
//!
//! * [`complex`], [`cell`], [`iso`]: simplicial and polygonal complexes,
//!   subdivision, predicates and isomorphism search.
//! * [`constructions`]: `S(L)`, `N(L)`, `M(L)`, voltage covers, the
//!   pullback square and opposite pairs.
//! * [`homology`]: integer matrices, Smith normal form, homology profiles.
//! * [`presentation`]: words, presentations and the `P_L(Γ, S)` family.
//! * [`enumeration`]: coset enumeration, homomorphism search, `R`-sets.
//! * [`cubical`]: the one-vertex cube complex `T_L` and its links.
//! * [`corpus`], [`random`]: named inputs and seeded random complexes.

pub mod cell;
pub mod complex;
pub mod constructions;
pub mod corpus;
pub mod cubical;
pub mod enumeration;
pub mod error;
pub mod homology;
pub mod iso;
pub mod presentation;
pub mod random;

pub use cell::{CellComplex, PolygonalComplex};
pub use complex::{ComplexFile, SimplicialComplex, SimplicialMap};
pub use error::{Error, Result};
pub use homology::{HomologyGroup, HomologyProfile, IntegerMatrix, Ring};
pub use presentation::{Presentation, Word};
