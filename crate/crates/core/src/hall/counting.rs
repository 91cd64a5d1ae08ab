use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{HallBasis, DEFAULT_BASIS_CAP};
use crate::error::{Error, Result};

/// Möbius function by trial division.
pub fn mobius(mut d: usize) -> i32 {
    assert!(d >= 1, "mobius of 0");
    let mut sign = 1;
    let mut p = 2;
    while p * p <= d {
        if d.is_multiple_of(p) {
            d /= p;
            if d.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if d > 1 {
        sign = -sign;
    }
    sign
}

fn divisors(n: usize) -> impl Iterator<Item = usize> {
    (1..=n).filter(move |d| n.is_multiple_of(*d))
}

fn to_count(x: BigInt) -> u128 {
    x.to_u128().unwrap_or(u128::MAX)
}

/// Witt's count of basic commutators of weight `w` on `n` generators:
/// `(1/w) Σ_{d|w} μ(d) n^{w/d}`.
pub fn witt(n: usize, w: usize) -> u128 {
    assert!(w >= 1, "weight must be positive");
    let n = BigInt::from(n);
    let mut total = BigInt::zero();
    for d in divisors(w) {
        let mu = mobius(d);
        if mu != 0 {
            total += BigInt::from(mu) * num_traits::pow(n.clone(), w / d);
        }
    }
    debug_assert!((&total % w).is_zero());
    to_count(total / w)
}

/// Rank of the mixed part at weight `c`: basic commutators on all `m + n`
/// generators minus those on the first `m` and on the last `n` alone.
pub fn mixed_rank(m: usize, n: usize, c: usize) -> u128 {
    witt(m + n, c) - witt(m, c) - witt(n, c)
}

/// Leaf counts of a basic commutator split between the first `m` generators
/// (`i`) and the remaining ones (`j`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Bidegree {
    pub i: usize,
    pub j: usize,
}

impl Bidegree {
    pub fn new(i: usize, j: usize) -> Self {
        Self { i, j }
    }

    pub fn weight(&self) -> usize {
        self.i + self.j
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

/// Counts weight-`c` basic commutators on `m + n` generators by bidegree,
/// keeping only mixed ones (`i, j ≥ 1`). Generators `1..=m` come first.
pub fn bidegree_count(m: usize, n: usize, c: usize) -> Result<BTreeMap<Bidegree, u128>> {
    bidegree_count_with_cap(m, n, c, DEFAULT_BASIS_CAP)
}

pub fn bidegree_count_with_cap(m: usize, n: usize, c: usize, cap: usize) -> Result<BTreeMap<Bidegree, u128>> {
    if m == 0 || n == 0 || c < 2 {
        return Err(Error::invalid("bidegree counts need m, n >= 1 and c >= 2"));
    }
    let basis = HallBasis::generate_with_cap(m + n, c, cap)?;
    let mut out = BTreeMap::new();
    for idx in basis.weight_range(c) {
        let md = basis.multidegree(idx);
        let i: usize = md[..m].iter().sum();
        let j = c - i;
        if i > 0 && j > 0 {
            *out.entry(Bidegree::new(i, j)).or_insert(0) += 1;
        }
    }
    Ok(out)
}

fn binomial(n: usize, k: usize) -> BigInt {
    let mut r = BigInt::one();
    for t in 0..k {
        r = r * (n - t) / (t + 1);
    }
    r
}

/// Bigraded necklace formula
/// `(1/(i+j)) Σ_{d | gcd(i,j)} μ(d) C((i+j)/d, i/d) m^{i/d} n^{j/d}`,
/// an independent count of basic commutators of bidegree `(i, j)`.
pub fn necklace_count(m: usize, n: usize, i: usize, j: usize) -> u128 {
    assert!(i >= 1 && j >= 1, "necklace count needs i, j >= 1");
    let g = i.gcd(&j);
    let mut total = BigInt::zero();
    for d in divisors(g) {
        let mu = mobius(d);
        if mu == 0 {
            continue;
        }
        let term = binomial((i + j) / d, i / d)
            * num_traits::pow(BigInt::from(m), i / d)
            * num_traits::pow(BigInt::from(n), j / d);
        total += BigInt::from(mu) * term;
    }
    debug_assert!((&total % (i + j)).is_zero());
    to_count(total / (i + j))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Lyndon words over an alphabet of size `k` of length `len`, by brute
    /// force: a word is Lyndon iff it is strictly smaller than all of its
    /// proper rotations.
    fn lyndon_words(k: usize, len: usize) -> Vec<Vec<usize>> {
        let total = k.pow(len as u32);
        let mut out = Vec::new();
        for mut code in 0..total {
            let mut w = vec![0; len];
            for x in w.iter_mut().rev() {
                *x = code % k;
                code /= k;
            }
            let lyndon = (1..len).all(|r| {
                let rot: Vec<usize> = w[r..].iter().chain(&w[..r]).copied().collect();
                w < rot
            });
            if lyndon {
                out.push(w);
            }
        }
        out
    }

    #[test]
    fn mobius_values() {
        let got: Vec<i32> = (1..=12).map(mobius).collect();
        assert_eq!(got, [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]);
    }

    #[test]
    fn witt_examples() {
        assert_eq!(witt(2, 3), 2);
        assert_eq!(witt(5, 1), 5);
        assert_eq!(witt(2, 6), 9);
        assert_eq!(witt(0, 4), 0);
        for n in 1..=3 {
            for w in 1..=6 {
                assert_eq!(witt(n, w), lyndon_words(n, w).len() as u128);
            }
        }
    }

    #[test]
    fn mixed_rank_examples() {
        assert_eq!(mixed_rank(1, 1, 2), 1);
        assert_eq!(mixed_rank(2, 1, 4), 15);
        assert_eq!(mixed_rank(1, 1, 3), 2);
    }

    #[test]
    fn bidegree_examples() {
        let b = |i, j| Bidegree::new(i, j);
        assert_eq!(
            bidegree_count(1, 1, 3).unwrap(),
            BTreeMap::from([(b(2, 1), 1), (b(1, 2), 1)])
        );
        assert_eq!(
            bidegree_count(2, 1, 4).unwrap(),
            BTreeMap::from([(b(3, 1), 8), (b(2, 2), 5), (b(1, 3), 2)])
        );
        assert_eq!(bidegree_count(2, 1, 2).unwrap(), BTreeMap::from([(b(1, 1), 2)]));
        assert!(bidegree_count(1, 1, 1).is_err());
    }

    #[test]
    fn necklace_examples() {
        assert_eq!(necklace_count(2, 1, 3, 1), 8);
        assert_eq!(necklace_count(2, 1, 2, 2), 5);
        assert_eq!(necklace_count(1, 1, 1, 1), 1);
    }

    #[test]
    fn bidegree_matches_lyndon_enumeration() {
        for (m, n, c) in [(1, 1, 5), (2, 1, 4), (2, 2, 4), (1, 2, 5)] {
            let mut oracle: BTreeMap<Bidegree, u128> = BTreeMap::new();
            for w in lyndon_words(m + n, c) {
                let i = w.iter().filter(|&&x| x < m).count();
                if i > 0 && i < c {
                    *oracle.entry(Bidegree::new(i, c - i)).or_insert(0) += 1;
                }
            }
            assert_eq!(bidegree_count(m, n, c).unwrap(), oracle, "m={m} n={n} c={c}");
        }
    }

    #[test]
    fn partition_and_necklace_agreement_small_grid() {
        for m in 1..=3 {
            for n in 1..=3 {
                for c in 2..=6 {
                    let counts = bidegree_count(m, n, c).unwrap();
                    assert_eq!(counts.values().sum::<u128>(), mixed_rank(m, n, c));
                    for i in 1..c {
                        let got = counts.get(&Bidegree::new(i, c - i)).copied().unwrap_or(0);
                        assert_eq!(got, necklace_count(m, n, i, c - i));
                    }
                }
            }
        }
    }
}
