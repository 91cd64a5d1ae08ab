//! Sparse elimination for tall, very sparse relation matrices.
//!
//! Unit pivots are eliminated greedily (lowest fill first); whatever remains
//! is handed to the dense Smith normal form. Removing a `±1` pivot together
//! with its row and column leaves the remaining invariant factors unchanged,
//! so the result is exact.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{invariant_factors, FgAbelianGroup, IntegerMatrix};

/// Sparse matrix with rows as sorted `(column, value)` lists.
#[derive(Clone, Debug, Default)]
pub struct SparseMatrix {
    cols: usize,
    rows: Vec<Vec<(usize, i64)>>,
}

/// Invariant factors of a matrix, stored compactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseSmith {
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
    /// Nonzero diagonal entries larger than one, in divisibility order.
    pub nonunit_factors: Vec<BigInt>,
}

impl SparseSmith {
    /// `Z^cols / rowspace`.
    pub fn cokernel(&self) -> FgAbelianGroup {
        FgAbelianGroup::from_chain_unchecked(self.cols - self.rank, self.nonunit_factors.clone())
    }
}

impl SparseMatrix {
    pub fn new(cols: usize) -> Self {
        Self { cols, rows: Vec::new() }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    /// Adds a row given as unsorted `(column, value)` pairs; duplicates are
    /// summed and zeros dropped.
    pub fn push_row(&mut self, entries: impl IntoIterator<Item = (usize, i64)>) {
        let mut row: Vec<(usize, i64)> = entries.into_iter().collect();
        row.sort_unstable_by_key(|e| e.0);
        let mut merged: Vec<(usize, i64)> = Vec::with_capacity(row.len());
        for (c, v) in row {
            assert!(c < self.cols, "column {c} out of range");
            match merged.last_mut() {
                Some(last) if last.0 == c => last.1 += v,
                _ => merged.push((c, v)),
            }
        }
        merged.retain(|e| e.1 != 0);
        self.rows.push(merged);
    }

    pub fn to_dense(&self) -> IntegerMatrix {
        let mut m = IntegerMatrix::zeros(self.rows.len(), self.cols);
        for (i, row) in self.rows.iter().enumerate() {
            for &(c, v) in row {
                m.set(i, c, BigInt::from(v));
            }
        }
        m
    }

    pub fn smith(&self) -> SparseSmith {
        reduce::<i128>(self)
            .or_else(|| reduce::<BigInt>(self))
            .expect("arbitrary-precision elimination cannot overflow")
    }
}

type Row<T> = Vec<(usize, T)>;

/// `target - q * pivot` on sorted sparse rows.
fn axpy<T: super::scalar::Scalar>(target: &Row<T>, q: &T, pivot: &Row<T>) -> Option<Row<T>> {
    let mut out = Vec::with_capacity(target.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() || j < pivot.len() {
        let ci = target.get(i).map(|e| e.0).unwrap_or(usize::MAX);
        let cj = pivot.get(j).map(|e| e.0).unwrap_or(usize::MAX);
        if ci < cj {
            out.push(target[i].clone());
            i += 1;
        } else if cj < ci {
            out.push((cj, T::zero().sub_mul(q, &pivot[j].1)?));
            j += 1;
        } else {
            let v = target[i].1.sub_mul(q, &pivot[j].1)?;
            if !v.is_zero() {
                out.push((ci, v));
            }
            i += 1;
            j += 1;
        }
    }
    Some(out)
}

fn reduce<T: super::scalar::Scalar>(m: &SparseMatrix) -> Option<SparseSmith> {
    let mut rows: Vec<Option<Row<T>>> = m
        .rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|&(c, v)| T::from_big(&BigInt::from(v)).map(|x| (c, x)))
                .collect::<Option<Row<T>>>()
                .map(Some)
        })
        .collect::<Option<_>>()?;
    // rows that may contain each column; stale entries are skipped on use
    let mut col_rows: Vec<Vec<usize>> = vec![Vec::new(); m.cols];
    for (i, r) in rows.iter().enumerate() {
        for (c, _) in r.as_ref().expect("fresh") {
            col_rows[*c].push(i);
        }
    }
    let mut col_alive = vec![true; m.cols];
    let mut stamp = vec![usize::MAX; rows.len()];
    let mut unit_pivots = 0usize;

    // rows ordered by current length so sparse rows pivot first
    let mut queue: BTreeSet<(usize, usize)> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| (r.as_ref().expect("fresh").len(), i))
        .collect();

    while let Some((len, i)) = queue.pop_first() {
        let Some(row) = rows[i].as_ref() else { continue };
        if row.len() != len {
            queue.insert((row.len(), i));
            continue;
        }
        if row.is_empty() {
            rows[i] = None;
            continue;
        }
        let pivot = row
            .iter()
            .filter(|(_, v)| v.is_unit())
            .min_by_key(|(c, _)| col_rows[*c].len())
            .map(|(c, v)| (*c, v.clone()));
        let Some((pc, pv)) = pivot else { continue };
        let prow = rows[i].take().expect("checked above");
        for k in std::mem::take(&mut col_rows[pc]) {
            if stamp[k] == pc {
                continue;
            }
            stamp[k] = pc;
            let Some(target) = rows[k].as_ref() else { continue };
            let Ok(at) = target.binary_search_by_key(&pc, |e| e.0) else {
                continue;
            };
            // pivot is ±1, so the multiplier is a * pivot
            let q = target[at].1.mul(&pv)?;
            let new = axpy(target, &q, &prow)?;
            for (c, _) in &new {
                if target.binary_search_by_key(c, |e| e.0).is_err() {
                    col_rows[*c].push(k);
                }
            }
            queue.insert((new.len(), k));
            rows[k] = Some(new);
        }
        col_alive[pc] = false;
        unit_pivots += 1;
    }

    let live_cols: Vec<usize> = (0..m.cols).filter(|&c| col_alive[c]).collect();
    let mut col_pos = vec![usize::MAX; m.cols];
    for (p, &c) in live_cols.iter().enumerate() {
        col_pos[c] = p;
    }
    let rest: Vec<&Row<T>> = rows.iter().flatten().filter(|r| !r.is_empty()).collect();
    let mut dense = IntegerMatrix::zeros(rest.len(), live_cols.len());
    for (i, r) in rest.iter().enumerate() {
        for (c, v) in r.iter() {
            dense.set(i, col_pos[*c], v.to_big());
        }
    }
    let diag = invariant_factors(&dense);
    let rank = unit_pivots + diag.iter().filter(|d| !d.is_zero()).count();
    let nonunit_factors = diag.into_iter().filter(|d| !d.is_zero() && !d.is_one()).collect();
    Some(SparseSmith {
        rows: m.rows.len(),
        cols: m.cols,
        rank,
        nonunit_factors,
    })
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;
    use crate::abelian::{cokernel, rank};

    proptest! {
        #[test]
        fn agrees_with_dense_smith(
            cols in 1usize..=6,
            raw in prop::collection::vec(prop::collection::vec((0usize..6, -3i64..=3), 0..=4), 0..=10)
        ) {
            let mut s = SparseMatrix::new(cols);
            for r in raw {
                s.push_row(r.into_iter().map(|(c, v)| (c % cols, v)));
            }
            let dense = s.to_dense();
            let red = s.smith();
            prop_assert_eq!(red.rank, rank(&dense));
            prop_assert_eq!(red.cokernel(), cokernel(&dense));
        }
    }

    #[test]
    fn duplicate_entries_are_merged() {
        let mut s = SparseMatrix::new(2);
        s.push_row([(0, 2), (0, 2), (1, 3), (1, -3)]);
        assert_eq!(s.to_dense(), IntegerMatrix::from_rows(2, &[vec![4, 0]]).unwrap());
        assert_eq!(
            s.smith().cokernel(),
            FgAbelianGroup::from_cyclic_factors([4u32, 0]).unwrap()
        );
    }
}
