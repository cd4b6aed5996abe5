//! Dihedral inverse monoids as partial-permutation monoids, their
//! presentations, and congruence enumeration to verify them.
//!
//! * [`iperm`]: partial permutations of `{1, ..., n}` and the named generators.
//! * [`monoid`]: closures, the eight monoid families, Green's relations.
//! * [`presentation`]: alphabets, words, relation families, Tietze edits, forms.
//! * [`congruence`]: enumeration of `A*/ρ_R` and the verification checks.

pub mod congruence;
pub mod error;
pub mod iperm;
pub mod monoid;
pub mod presentation;

pub use congruence::{enumerate, EnumerationCaps, EnumerationResult, Verdict};
pub use error::{CongruenceError, MonoidError, PermError, PresentationError};
pub use iperm::{Generator, PartialPerm};
pub use monoid::{build_named, FiniteMonoid, MonoidFamily};
pub use presentation::{Alphabet, Assignment, Presentation, Relation, RelationFamilyId, Word};
