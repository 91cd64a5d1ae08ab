use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::abelian::sparse::SparseMatrix;
use crate::abelian::FgAbelianGroup;
use crate::error::{Error, Result};

/// Largest group order the bar complex is built for unless raised.
pub const DEFAULT_BAR_ORDER_CAP: usize = 24;

/// Finite group as a multiplication table: `table[a][b]` is the index of `ab`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawTable")]
pub struct FiniteGroupTable {
    order: usize,
    identity: usize,
    table: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTable {
    order: usize,
    identity: usize,
    table: Vec<Vec<usize>>,
}

impl TryFrom<RawTable> for FiniteGroupTable {
    type Error = Error;

    fn try_from(r: RawTable) -> Result<Self> {
        Self::new(r.order, r.identity, r.table)
    }
}

type Perm = Vec<usize>;

fn compose(p: &Perm, q: &Perm) -> Perm {
    // apply q, then p
    q.iter().map(|&x| p[x]).collect()
}

impl FiniteGroupTable {
    /// Checks closure, identity, inverses and associativity.
    pub fn new(order: usize, identity: usize, table: Vec<Vec<usize>>) -> Result<Self> {
        if order == 0 || table.len() != order || table.iter().any(|r| r.len() != order) {
            return Err(Error::invalid(format!(
                "table must be {order} × {order} with order ≥ 1"
            )));
        }
        if identity >= order {
            return Err(Error::invalid("identity index out of range"));
        }
        for (a, row) in table.iter().enumerate() {
            if row.iter().any(|&x| x >= order) {
                return Err(Error::invalid(format!("row {a} has an entry out of range")));
            }
            if row[identity] != a || table[identity][a] != a {
                return Err(Error::invalid(format!("element {identity} is not an identity for {a}")));
            }
            if !row.contains(&identity) {
                return Err(Error::invalid(format!("element {a} has no inverse")));
            }
        }
        for a in 0..order {
            for b in 0..order {
                let ab = table[a][b];
                for c in 0..order {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(Error::invalid(format!("associativity fails at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        Ok(Self { order, identity, table })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.table[a][b] == self.table[b][a]))
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("a cyclic table needs n ≥ 1"));
        }
        Self::new(n, 0, (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect())
    }

    /// `A × B` with `(a, b)` at index `a·|B| + b`.
    pub fn direct_product(a: &Self, b: &Self) -> Result<Self> {
        let n = a.order * b.order;
        let table = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| a.mul(x / b.order, y / b.order) * b.order + b.mul(x % b.order, y % b.order))
                    .collect()
            })
            .collect();
        Self::new(n, a.identity * b.order + b.identity, table)
    }

    /// `Z_{n_1} × … × Z_{n_k}`.
    pub fn abelian(orders: &[usize]) -> Result<Self> {
        orders.iter().try_fold(Self::cyclic(1)?, |acc, &n| {
            Self::direct_product(&acc, &Self::cyclic(n)?)
        })
    }

    /// Group generated by permutations of `0..degree`, elements sorted
    /// lexicographically (the identity comes first).
    pub fn from_permutations(degree: usize, gens: &[Perm]) -> Result<Self> {
        let id: Perm = (0..degree).collect();
        let mut seen: BTreeSet<Perm> = BTreeSet::from([id.clone()]);
        let mut frontier = vec![id];
        while let Some(p) = frontier.pop() {
            for g in gens {
                let q = compose(g, &p);
                if seen.insert(q.clone()) {
                    frontier.push(q);
                }
            }
        }
        let elems: Vec<Perm> = seen.into_iter().collect();
        let index = |p: &Perm| elems.binary_search(p).expect("closed under products");
        let table = elems
            .iter()
            .map(|p| elems.iter().map(|q| index(&compose(p, q))).collect())
            .collect();
        Self::new(elems.len(), 0, table)
    }

    pub fn symmetric3() -> Self {
        Self::from_permutations(3, &[vec![1, 0, 2], vec![1, 2, 0]]).expect("S3")
    }

    /// Symmetries of a square.
    pub fn dihedral4() -> Self {
        Self::from_permutations(4, &[vec![1, 2, 3, 0], vec![0, 3, 2, 1]]).expect("D4")
    }

    /// `{±1, ±i, ±j, ±k}`; index `2u + s` for unit `u ∈ (1, i, j, k)` and sign bit `s`.
    pub fn quaternion8() -> Self {
        // unit products as (sign bit, unit)
        const M: [[(usize, usize); 4]; 4] = [
            [(0, 0), (0, 1), (0, 2), (0, 3)],
            [(0, 1), (1, 0), (0, 3), (1, 2)],
            [(0, 2), (1, 3), (1, 0), (0, 1)],
            [(0, 3), (0, 2), (1, 1), (1, 0)],
        ];
        let table = (0..8)
            .map(|x| {
                (0..8)
                    .map(|y| {
                        let (s, u) = M[x / 2][y / 2];
                        2 * u + ((x % 2) ^ (y % 2) ^ s)
                    })
                    .collect()
            })
            .collect();
        Self::new(8, 0, table).expect("Q8")
    }

    /// Even permutations of five points.
    pub fn alternating5() -> Self {
        Self::from_permutations(5, &[vec![1, 2, 0, 3, 4], vec![0, 1, 3, 4, 2], vec![1, 2, 3, 4, 0]]).expect("A5")
    }

    fn check_cap(&self, cap: usize) -> Result<()> {
        if self.order > cap {
            return Err(Error::ResourceLimit {
                what: "bar complex group order",
                needed: self.order as u128,
                cap: cap as u128,
            });
        }
        Ok(())
    }

    /// Positions of the non-identity elements, used to index normalised chains.
    fn nonidentity(&self) -> Vec<Option<usize>> {
        let mut k = 0;
        (0..self.order)
            .map(|g| {
                if g == self.identity {
                    None
                } else {
                    k += 1;
                    Some(k - 1)
                }
            })
            .collect()
    }

    /// `∂_2 (g, h) = (h) − (gh) + (g)` on normalised chains.
    fn bar_d2(&self, pos: &[Option<usize>]) -> SparseMatrix {
        let m = self.order - 1;
        let mut d = SparseMatrix::new(m);
        for g in 0..self.order {
            for h in 0..self.order {
                if g == self.identity || h == self.identity {
                    continue;
                }
                let terms = [(h, 1), (self.mul(g, h), -1), (g, 1)];
                d.push_row(terms.iter().filter_map(|&(x, s)| pos[x].map(|i| (i, s))));
            }
        }
        d
    }

    /// `H_1(G; Z) = G^ab` from the normalised bar complex.
    pub fn bar_h1(&self, cap: usize) -> Result<FgAbelianGroup> {
        self.check_cap(cap)?;
        let pos = self.nonidentity();
        Ok(self.bar_d2(&pos).smith().cokernel())
    }

    /// `H_2(G; Z)`, the Schur multiplier, from the normalised bar complex
    /// `Z[G³] → Z[G²] → Z[G]`.
    pub fn bar_h2(&self, cap: usize) -> Result<FgAbelianGroup> {
        self.check_cap(cap)?;
        let pos = self.nonidentity();
        let m = self.order - 1;
        let pair = |a: usize, b: usize| match (pos[a], pos[b]) {
            (Some(i), Some(j)) => Some(i * m + j),
            _ => None,
        };
        let rank2 = self.bar_d2(&pos).smith().rank;
        let mut d3 = SparseMatrix::new(m * m);
        for g in 0..self.order {
            for h in 0..self.order {
                for k in 0..self.order {
                    if g == self.identity || h == self.identity || k == self.identity {
                        continue;
                    }
                    let terms = [
                        (pair(h, k), 1),
                        (pair(self.mul(g, h), k), -1),
                        (pair(g, self.mul(h, k)), 1),
                        (pair(g, h), -1),
                    ];
                    d3.push_row(terms.iter().filter_map(|&(x, s)| x.map(|i| (i, s))));
                }
            }
        }
        let s3 = d3.smith();
        // im ∂3 ⊆ ker ∂2, and ker ∂2 is a direct summand of C2
        Ok(FgAbelianGroup::from_chain_unchecked(
            m * m - rank2 - s3.rank,
            s3.nonunit_factors,
        ))
    }
}
