//! Exact constructions for totally bounded group topologies on countable
//! abelian groups.
//!
//! The crate is organised bottom-up:
//!
//! - [`circle`]: exact arithmetic in the circle group `ℚ/ℤ`.
//! - [`elements`]: the integers, finite cyclic groups, countable direct sums
//!   of cyclic `p`-groups and the Prüfer groups `ℤ(p^∞)`.
//! - [`characters`]: coordinate-sum characters on direct sums, digit
//!   characters on `ℤ(p^∞)`, rotation characters on `ℤ`, and the weak
//!   topology generated by a character family.
//! - [`sequences`]: finitely described infinite sequences together with
//!   structural validators.
//! - [`certify`]: convergence certificates `h(x_n) → 0` backed by exact
//!   values and a symbolic tail argument.
//! - [`finlab`]: Smith normal form, invariant factors, subgroup lattices and
//!   duality for finite abelian groups.

pub mod certify;
pub mod characters;
pub mod circle;
pub mod elements;
pub mod error;
pub mod finlab;
pub mod sequences;

mod numeric;

pub use certify::{ConvergenceCertificate, TheoremTag, Verdict};
pub use characters::{Character, CircleValue, IndexSet, PadicCharacter, RotationCharacter, SetRule, SumCharacter};
pub use circle::CirclePoint;
pub use elements::{CyclicElement, DirectSumElement, GroupElement, OrderSchema, PrimePower, PrueferElement};
pub use error::{Error, Result};
pub use sequences::SequenceSchema;
