use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Finitely generated abelian group in canonical form
/// `Z^free_rank ⊕ Z_{d_1} ⊕ … ⊕ Z_{d_k}` with `d_i ≥ 2` and `d_i | d_{i+1}`.
///
/// Two values are equal exactly when the groups are isomorphic.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawGroup", into = "RawGroup")]
pub struct FgAbelianGroup {
    free_rank: usize,
    invariant_factors: Vec<BigInt>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGroup {
    free_rank: usize,
    #[serde(with = "super::json_int::vec")]
    invariant_factors: Vec<BigInt>,
}

impl TryFrom<RawGroup> for FgAbelianGroup {
    type Error = Error;

    fn try_from(r: RawGroup) -> Result<Self> {
        FgAbelianGroup::from_invariants(r.free_rank, r.invariant_factors)
    }
}

impl From<FgAbelianGroup> for RawGroup {
    fn from(g: FgAbelianGroup) -> Self {
        RawGroup {
            free_rank: g.free_rank,
            invariant_factors: g.invariant_factors,
        }
    }
}

/// Order of a group: finite, or infinite when there is a free summand.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupOrder {
    Finite(BigInt),
    Infinite,
}

impl GroupOrder {
    pub fn finite(&self) -> Option<&BigInt> {
        match self {
            GroupOrder::Finite(n) => Some(n),
            GroupOrder::Infinite => None,
        }
    }
}

impl fmt::Display for GroupOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupOrder::Finite(n) => write!(f, "{n}"),
            GroupOrder::Infinite => write!(f, "infinite"),
        }
    }
}

/// Rewrites a list of cyclic orders (all ≥ 1) into an invariant-factor chain.
fn rechain(mut orders: Vec<BigInt>) -> Vec<BigInt> {
    orders.retain(|d| !d.is_one());
    let n = orders.len();
    for i in 0..n {
        for j in i + 1..n {
            let (g, l) = {
                let (a, b) = (&orders[i], &orders[j]);
                (a.gcd(b), a.lcm(b))
            };
            orders[i] = g;
            orders[j] = l;
        }
    }
    orders.retain(|d| !d.is_one());
    orders
}

impl FgAbelianGroup {
    pub fn trivial() -> Self {
        Self {
            free_rank: 0,
            invariant_factors: Vec::new(),
        }
    }

    pub fn free(rank: usize) -> Self {
        Self {
            free_rank: rank,
            invariant_factors: Vec::new(),
        }
    }

    /// `Z_n`; `n = 0` gives `Z` and `n = 1` the trivial group.
    pub fn cyclic(n: impl Into<BigInt>) -> Self {
        Self::from_cyclic_factors([n.into()]).expect("single cyclic factor")
    }

    /// Canonical form of `⊕ Z_{n_i}` for arbitrary orders, where `n_i = 0`
    /// stands for a copy of `Z`.
    pub fn from_cyclic_factors<I, T>(orders: I) -> Result<Self>
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let mut free_rank = 0;
        let mut torsion = Vec::new();
        for d in orders {
            let d: BigInt = d.into();
            if d.is_negative() {
                return Err(Error::invalid(format!("negative cyclic order {d}")));
            }
            if d.is_zero() {
                free_rank += 1;
            } else {
                torsion.push(d);
            }
        }
        Ok(Self {
            free_rank,
            invariant_factors: rechain(torsion),
        })
    }

    /// Accepts only an already canonical chain.
    pub fn from_invariants<I, T>(free_rank: usize, factors: I) -> Result<Self>
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let factors: Vec<BigInt> = factors.into_iter().map(Into::into).collect();
        let two = BigInt::from(2);
        if let Some(d) = factors.iter().find(|d| **d < two) {
            return Err(Error::invalid(format!("invariant factor {d} must be at least 2")));
        }
        if let Some(w) = factors.windows(2).find(|w| !(&w[1] % &w[0]).is_zero()) {
            return Err(Error::invalid(format!(
                "invariant factors must form a divisibility chain: {} does not divide {}",
                w[0], w[1]
            )));
        }
        Ok(Self {
            free_rank,
            invariant_factors: factors,
        })
    }

    pub(crate) fn from_chain_unchecked(free_rank: usize, factors: Vec<BigInt>) -> Self {
        debug_assert!(Self::from_invariants(free_rank, factors.clone()).is_ok());
        Self {
            free_rank,
            invariant_factors: factors,
        }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    /// Cyclic decomposition as orders: free summands first (as `0`), then the
    /// invariant factors.
    pub fn cyclic_orders(&self) -> Vec<BigInt> {
        std::iter::repeat_n(BigInt::zero(), self.free_rank)
            .chain(self.invariant_factors.iter().cloned())
            .collect()
    }

    /// Number of cyclic summands in the canonical decomposition.
    pub fn generator_count(&self) -> usize {
        self.free_rank + self.invariant_factors.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn order(&self) -> GroupOrder {
        if self.free_rank > 0 {
            GroupOrder::Infinite
        } else {
            GroupOrder::Finite(self.invariant_factors.iter().product())
        }
    }

    /// Torsion subgroup order (product of invariant factors).
    pub fn torsion_order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut torsion = self.invariant_factors.clone();
        torsion.extend(other.invariant_factors.iter().cloned());
        Self {
            free_rank: self.free_rank + other.free_rank,
            invariant_factors: rechain(torsion),
        }
    }

    pub fn direct_sum_all<'a>(groups: impl IntoIterator<Item = &'a Self>) -> Self {
        groups.into_iter().fold(Self::trivial(), |acc, g| acc.direct_sum(g))
    }

    /// `k`-fold direct sum of `self`.
    pub fn repeat(&self, k: usize) -> Self {
        let mut torsion = Vec::with_capacity(k * self.invariant_factors.len());
        for _ in 0..k {
            torsion.extend(self.invariant_factors.iter().cloned());
        }
        Self {
            free_rank: self.free_rank * k,
            invariant_factors: rechain(torsion),
        }
    }

    /// `Z⊗Z = Z`, `Z⊗Z_n = Z_n`, `Z_m⊗Z_n = Z_gcd(m,n)`, extended bilinearly.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut torsion = Vec::new();
        for _ in 0..self.free_rank {
            torsion.extend(other.invariant_factors.iter().cloned());
        }
        for _ in 0..other.free_rank {
            torsion.extend(self.invariant_factors.iter().cloned());
        }
        for a in &self.invariant_factors {
            for b in &other.invariant_factors {
                torsion.push(a.gcd(b));
            }
        }
        Self {
            free_rank: self.free_rank * other.free_rank,
            invariant_factors: rechain(torsion),
        }
    }

    /// `Tor(Z_m, Z_n) = Z_gcd(m,n)`; free summands contribute nothing.
    pub fn tor(&self, other: &Self) -> Self {
        let mut torsion = Vec::new();
        for a in &self.invariant_factors {
            for b in &other.invariant_factors {
                torsion.push(a.gcd(b));
            }
        }
        Self {
            free_rank: 0,
            invariant_factors: rechain(torsion),
        }
    }

    /// `i`-fold tensor power; the empty power is `Z`.
    pub fn tensor_power(&self, i: usize) -> Self {
        (0..i).fold(Self::free(1), |acc, _| acc.tensor(self))
    }
}

impl Default for FgAbelianGroup {
    fn default() -> Self {
        Self::trivial()
    }
}

impl fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        // group repeated factors: Z_2^3
        let mut i = 0;
        while i < self.invariant_factors.len() {
            let d = &self.invariant_factors[i];
            let run = self.invariant_factors[i..].iter().take_while(|x| *x == d).count();
            if run == 1 {
                parts.push(format!("Z_{d}"));
            } else {
                parts.push(format!("Z_{d}^{run}"));
            }
            i += run;
        }
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

impl fmt::Debug for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FgAbelianGroup({self})")
    }
}
