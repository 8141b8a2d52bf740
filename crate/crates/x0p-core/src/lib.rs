//! Exact computation of the geometric abelian etale fundamental group of
//! the modular curve X_0(p) over Q_p.
//!
//! The group is an extension of a free profinite part by a finite cyclic
//! part, and both invariants are computed here from scratch along three
//! independent routes that must agree:
//!
//! * [`ssenum`] enumerates the supersingular points of the reduction in
//!   characteristic p by factoring the Legendre parameter polynomial over
//!   F_p^2, and audits the list with two standalone supersingularity
//!   predicates (a coefficient criterion and a literal point count).
//! * [`dualgraph`] builds the dual graph of the special fiber, takes its
//!   cycle lattice, and extracts the component group from the weighted
//!   monodromy pairing and the free part from Frobenius coinvariants,
//!   all over exact integer arithmetic ([`zlinalg`]).
//! * [`invariants`] knows the closed form answers (genus, Eisenstein
//!   number, rank formula) and assembles everything into a [`Pi1Report`]
//!   whose cross check verdicts are part of the output.
//!
//! No floating point is used anywhere: field elements are machine words
//! reduced mod p, lattice math is arbitrary precision.

pub mod dualgraph;
pub mod error;
pub mod ff;
pub mod invariants;
pub mod ssenum;
pub mod zlinalg;

pub use error::{Error, Result};
pub use invariants::{
    assemble, assemble_all, assemble_all_seq, eisenstein_number, genus_x0, primes_between,
    Checks, Pi1Report,
};
#[cfg(feature = "parallel")]
pub use invariants::assemble_all_par;
pub use ssenum::{census, SupersingularCensus};
pub use zlinalg::AbGroup;
