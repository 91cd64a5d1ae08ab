//! Group data and the free-product results built on them.
//!
//! A [`GroupDatum`] records what is known about a group (abelianization,
//! nilpotent multipliers, order) together with where each value came from.
//! Multipliers of abelian groups come from the free-nilpotent engine, Schur
//! multipliers of small tables from the normalised bar complex, and anything
//! else must be supplied.

mod datum;
mod free_product;
mod presentation;
mod table;

pub use datum::{builtin_datum, multiplier_of, DatumOrder, GroupDatum, GroupSource, Provenance, BUILTIN_NAMES};
pub use free_product::{
    corollary_classifier, formula_i, free_product_multiplier, free_product_report, vanishing_hypothesis_check, Basis,
    Comparison, ConditionStatus, CorollaryCondition, CorollaryReport, FreeProductReport, HypothesisCheck,
    HypothesisReport, InputSummary, MultiplierUse, ReportKind, Summand,
};
pub use presentation::Presentation;
pub use table::{FiniteGroupTable, DEFAULT_BAR_ORDER_CAP};

#[cfg(test)]
mod tests;
