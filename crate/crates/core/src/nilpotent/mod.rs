//! Free nilpotent groups `F_n / γ_{c+1}(F_n)` in Hall normal form.
//!
//! Commutators follow `[a, b] = a⁻¹ b⁻¹ a b`, left-normed:
//! `[a, b, c] = [[a, b], c]`. Elements are exponent vectors over the Hall
//! basis through weight `c`; products are formed by collection to the left,
//! using conjugation relations `b_j^{∓1} b_k b_j^{±1}` derived once per
//! context from the Magnus embedding.

mod context;
mod element;
mod magnus;
mod multiplier;
mod oracle;
mod word;

pub use context::{NilpotentContext, COLLECT_STEP_CAP};
pub use element::{collect, NilpotentElement};
pub use multiplier::{bracket_expand, nilpotent_multiplier_abelian, top_weight};
pub use oracle::{matrix_oracle_agrees, matrix_oracle_check};
pub use word::FreeGroupWord;
