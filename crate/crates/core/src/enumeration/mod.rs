//! Semi-decision procedures: coset enumeration, homomorphisms into finite
//! groups, finite-quotient witnesses and the enumerator for `R(G, g)`.

pub mod groups;
pub mod homs;
pub mod rset;
pub mod todd_coxeter;

pub use groups::FiniteGroup;
pub use homs::{hom_count, witness_nontrivial, Witness, WitnessOutcome};
pub use rset::{r_set_enumerate, r_set_report, Certificate, RSetReport};
pub use todd_coxeter::{todd_coxeter, CosetTable, TcOutcome};
