//! Computational toolkit for nilpotent multipliers of groups and their free
//! products.
//!
//! The crate is organised bottom-up:
//!
//! * [`abelian`]: exact arithmetic on finitely generated abelian groups
//!   (Smith normal form, canonical invariant-factor form, `⊕`, `⊗`, `Tor`).
//! * [`hall`]: Hall basic commutators, Witt counts and the bidegree
//!   decomposition of the mixed part of a free product.
//! * [`nilpotent`]: normal forms in free nilpotent groups via collection, and
//!   the computation of `M^(c)` for finitely generated abelian groups.
//! * [`simplicial`]: truncated simplicial sets and simplicial abelian groups,
//!   Moore complexes, Kan's loop group, Künneth and direct-limit checks.
//! * [`engine`]: group data, the bar-resolution oracle, and the free-product
//!   theorems (vanishing hypotheses, the five-summand formula for `M^(2)`,
//!   and the coprimality/perfectness classifier).
//! * [`io`]: word grammar, JSON forms, Hall-basis cache and the CLI.

pub mod abelian;
pub mod engine;
pub mod error;
pub mod hall;
pub mod io;
pub mod nilpotent;
pub mod simplicial;

pub use abelian::{FgAbelianGroup, IntegerMatrix, SmithForm};
pub use error::{Error, Result};
pub use hall::{BasicCommutator, Bidegree, HallBasis};
pub use nilpotent::{FreeGroupWord, NilpotentContext, NilpotentElement};
