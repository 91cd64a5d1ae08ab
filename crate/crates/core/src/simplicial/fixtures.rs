use serde::{Deserialize, Serialize};

use crate::abelian::IntegerMatrix;
use crate::error::Result;

use super::{ChainComplex, DirectedSystem, TruncatedSimplicialAbelianGroup, TruncatedSimplicialSet};

/// On-disk fixture: one simplicial object tagged by kind.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SimplicialFixture {
    Set {
        label: String,
        object: TruncatedSimplicialSet,
    },
    Abelian {
        label: String,
        object: TruncatedSimplicialAbelianGroup,
    },
    /// Shipped as a chain complex and expanded through `Γ`.
    ChainComplex {
        label: String,
        complex: ChainComplex,
        truncation: usize,
    },
    System {
        label: String,
        system: DirectedSystem,
    },
}

impl SimplicialFixture {
    pub fn label(&self) -> &str {
        match self {
            SimplicialFixture::Set { label, .. }
            | SimplicialFixture::Abelian { label, .. }
            | SimplicialFixture::ChainComplex { label, .. }
            | SimplicialFixture::System { label, .. } => label,
        }
    }

    /// The simplicial abelian group carried by the fixture, if any.
    pub fn abelian(&self) -> Option<TruncatedSimplicialAbelianGroup> {
        match self {
            SimplicialFixture::Abelian { object, .. } => Some(object.clone()),
            SimplicialFixture::ChainComplex {
                complex, truncation, ..
            } => Some(TruncatedSimplicialAbelianGroup::from_chain_complex(
                complex,
                *truncation,
            )),
            _ => None,
        }
    }
}

fn m(cols: usize, rows: &[Vec<i64>]) -> IntegerMatrix {
    IntegerMatrix::from_rows(cols, rows).expect("fixture shape")
}

/// `Γ(Z --k--> Z)` with the map in degree 1: `N_1 = N_0 = Z`, `∂_1 = (k)`.
pub fn mult_fixture(k: i64, truncation: usize) -> TruncatedSimplicialAbelianGroup {
    let c = ChainComplex::new(vec![1, 1], vec![m(1, &[vec![k]])]).expect("two-term complex");
    TruncatedSimplicialAbelianGroup::from_chain_complex(&c, truncation)
}

/// `Z² → Z`, `(x, y) ↦ a_t x`, with transitions `diag(a_t / a_{t+1}, 1)`
/// in degree 1 and the identity in degree 0. `π_0 = Z_{a_t}`, `π_1 = Z`.
pub fn chain_system(a: &[i64], truncation: usize) -> Result<DirectedSystem> {
    let complexes: Vec<ChainComplex> = a
        .iter()
        .map(|&x| ChainComplex::new(vec![1, 2], vec![m(1, &[vec![x], vec![0]])]))
        .collect::<Result<_>>()?;
    let maps: Vec<Vec<IntegerMatrix>> = a
        .windows(2)
        .map(|w| vec![m(1, &[vec![1]]), m(2, &[vec![w[0] / w[1], 0], vec![0, 1]])])
        .collect();
    DirectedSystem::from_chain_system(&complexes, &maps, truncation)
}

/// Becomes constant after three transitions.
pub fn stabilizing_system(truncation: usize) -> DirectedSystem {
    chain_system(&[16, 8, 4, 2, 2], truncation).expect("valid system")
}

/// Constant `Z` with every transition multiplication by 2.
pub fn doubling_system(len: usize, truncation: usize) -> DirectedSystem {
    let objects = vec![TruncatedSimplicialAbelianGroup::constant(1, truncation); len];
    let transitions = vec![vec![m(1, &[vec![2]]); truncation + 1]; len.saturating_sub(1)];
    DirectedSystem::new(objects, transitions).expect("valid system")
}
