//! Truncated simplicial objects: sets, degreewise free abelian groups and
//! free groups, with identity validation, Moore complexes, Kan's loop group,
//! Künneth checks and stabilising direct systems.
//!
//! An object truncated at `D` carries levels `0..=D`, faces `d_i: X_n → X_{n-1}`
//! for `1 ≤ n ≤ D` and degeneracies `s_j: X_n → X_{n+1}` for `n < D`.
//! Linear maps act on row vectors, so a map `Z^a → Z^b` is an `a × b`
//! matrix and composition "f then g" is the product `F·G`.
//!
//! The identities checked are
//! `d_i d_j = d_{j-1} d_i` (`i < j`), `s_i s_j = s_{j+1} s_i` (`i ≤ j`), and
//! `d_i s_j = s_{j-1} d_i` (`i < j`), `d_j s_j = d_{j+1} s_j = id`,
//! `d_i s_j = s_j d_{i-1}` (`i > j + 1`).

mod abelian;
mod chain;
mod fixtures;
mod kan;
mod limits;
mod set;

use serde::{Deserialize, Serialize};

pub use abelian::{kunneth_check, tensor_sab, KunnethDegree, KunnethReport, TruncatedSimplicialAbelianGroup};
pub use chain::ChainComplex;
pub use fixtures::{chain_system, doubling_system, mult_fixture, stabilizing_system, SimplicialFixture};
pub use kan::{abelianize, kan_loop_group, FreeSimplicialGroupTruncation};
pub use limits::{colimit_stabilized, limit_commutes, DirectedSystem, LimitReport, StabilizedColimit};
pub use set::TruncatedSimplicialSet;

/// One failed simplicial identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub identity: String,
    /// Dimension of the source of the composite.
    pub dimension: usize,
    pub i: usize,
    pub j: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn passes(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Access to the structure maps of a truncated simplicial object.
pub(crate) trait SimplicialMaps {
    type Map: PartialEq;

    fn truncation(&self) -> usize;
    fn face(&self, n: usize, i: usize) -> &Self::Map;
    fn degeneracy(&self, n: usize, j: usize) -> &Self::Map;
    /// `f` followed by `g`.
    fn then(&self, f: &Self::Map, g: &Self::Map) -> Self::Map;
    fn identity(&self, n: usize) -> Self::Map;
}

pub(crate) fn check_identities<S: SimplicialMaps>(s: &S) -> ValidationReport {
    let d = s.truncation();
    let mut violations = Vec::new();
    let mut fail = |identity: &str, dimension, i, j| {
        violations.push(Violation {
            identity: identity.to_string(),
            dimension,
            i,
            j,
        })
    };
    for n in 2..=d {
        for j in 1..=n {
            for i in 0..j {
                let lhs = s.then(s.face(n, j), s.face(n - 1, i));
                let rhs = s.then(s.face(n, i), s.face(n - 1, j - 1));
                if lhs != rhs {
                    fail("d_i d_j = d_{j-1} d_i", n, i, j);
                }
            }
        }
    }
    for n in 0..d.saturating_sub(1) {
        for j in 0..=n {
            for i in 0..=j {
                let lhs = s.then(s.degeneracy(n, j), s.degeneracy(n + 1, i));
                let rhs = s.then(s.degeneracy(n, i), s.degeneracy(n + 1, j + 1));
                if lhs != rhs {
                    fail("s_i s_j = s_{j+1} s_i", n, i, j);
                }
            }
        }
    }
    for n in 0..d {
        for j in 0..=n {
            for i in 0..=n + 1 {
                let lhs = s.then(s.degeneracy(n, j), s.face(n + 1, i));
                let (rhs, name) = if i < j {
                    (
                        s.then(s.face(n, i), s.degeneracy(n - 1, j - 1)),
                        "d_i s_j = s_{j-1} d_i",
                    )
                } else if i == j || i == j + 1 {
                    (s.identity(n), "d_j s_j = d_{j+1} s_j = id")
                } else {
                    (
                        s.then(s.face(n, i - 1), s.degeneracy(n - 1, j)),
                        "d_i s_j = s_j d_{i-1}",
                    )
                };
                if lhs != rhs {
                    fail(name, n, i, j);
                }
            }
        }
    }
    ValidationReport { violations }
}
