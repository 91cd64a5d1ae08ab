use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{Bidegree, HallBasis, DEFAULT_BASIS_CAP};
use crate::abelian::FgAbelianGroup;
use crate::error::{Error, Result};

/// How each basic commutator is turned into a summand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MultiplicityMode {
    /// `m`, `n` equal the numbers of cyclic summands of the inputs: each
    /// basic commutator contributes the tensor product of the cyclic factors
    /// attached to its leaves.
    PerLeaf,
    /// Counts do not match the inputs' decompositions: each basic commutator
    /// of bidegree `(i, j)` contributes `G^{⊗i} ⊗ H^{⊗j}`.
    TensorPower,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedSummand {
    pub bidegree: Bidegree,
    pub multiplicity: u128,
    /// Direct sum of all contributions at this bidegree.
    pub group: FgAbelianGroup,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedPiece {
    pub weight: usize,
    pub m: usize,
    pub n: usize,
    pub mode: MultiplicityMode,
    /// True when both inputs are free of ranks `m` and `n`, the case in which
    /// the decomposition is a theorem rather than a bookkeeping rule.
    pub exact: bool,
    pub summands: Vec<GradedSummand>,
    pub group: FgAbelianGroup,
}

/// Tensor product of cyclic groups given by orders (`0` is `Z`).
fn cyclic_tensor(orders: impl IntoIterator<Item = BigInt>) -> BigInt {
    let mut acc: Option<BigInt> = None;
    for o in orders {
        if o.is_zero() {
            continue;
        }
        acc = Some(match acc {
            None => o,
            Some(a) => a.gcd(&o),
        });
    }
    acc.unwrap_or_else(BigInt::zero)
}

/// The weight-`c` mixed piece `⊕ K^{ab}⊗…⊗K^{ab}⊗L^{ab}⊗…⊗L^{ab}`, with
/// multiplicities read off the Hall basis on `m + n` generators.
pub fn graded_piece(gab: &FgAbelianGroup, hab: &FgAbelianGroup, c: usize, m: usize, n: usize) -> Result<GradedPiece> {
    if m == 0 || n == 0 || c < 2 {
        return Err(Error::invalid("graded piece needs m, n >= 1 and c >= 2"));
    }
    let basis = HallBasis::generate_with_cap(m + n, c, DEFAULT_BASIS_CAP)?;
    let per_leaf = gab.generator_count() == m && hab.generator_count() == n;
    let mode = if per_leaf {
        MultiplicityMode::PerLeaf
    } else {
        MultiplicityMode::TensorPower
    };
    let leaf_orders: Vec<BigInt> = gab.cyclic_orders().into_iter().chain(hab.cyclic_orders()).collect();

    let mut per_bidegree: BTreeMap<Bidegree, (u128, Vec<BigInt>)> = BTreeMap::new();
    for idx in basis.weight_range(c) {
        let md = basis.multidegree(idx);
        let i: usize = md[..m].iter().sum();
        let j = c - i;
        if i == 0 || j == 0 {
            continue;
        }
        let entry = per_bidegree.entry(Bidegree::new(i, j)).or_default();
        entry.0 += 1;
        if per_leaf {
            let orders = md
                .iter()
                .enumerate()
                .filter(|(_, k)| **k > 0)
                .map(|(g, _)| leaf_orders[g].clone());
            entry.1.push(cyclic_tensor(orders));
        }
    }

    let summands: Vec<GradedSummand> = per_bidegree
        .into_iter()
        .map(|(bd, (count, orders))| {
            let group = if per_leaf {
                FgAbelianGroup::from_cyclic_factors(orders).expect("non-negative orders")
            } else {
                gab.tensor_power(bd.i)
                    .tensor(&hab.tensor_power(bd.j))
                    .repeat(count as usize)
            };
            GradedSummand {
                bidegree: bd,
                multiplicity: count,
                group,
            }
        })
        .collect();
    let group = FgAbelianGroup::direct_sum_all(summands.iter().map(|s| &s.group));
    Ok(GradedPiece {
        weight: c,
        m,
        n,
        mode,
        exact: gab == &FgAbelianGroup::free(m) && hab == &FgAbelianGroup::free(n),
        summands,
        group,
    })
}
