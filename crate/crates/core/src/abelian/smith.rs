use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{FgAbelianGroup, IntegerMatrix};

/// Smith normal form `U·A·V = S` of an integer matrix `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntegerMatrix,
    pub s: IntegerMatrix,
    pub v: IntegerMatrix,
    /// `min(rows, cols)` diagonal entries: non-negative, each dividing the
    /// next, zeros trailing.
    pub diagonal: Vec<BigInt>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diagonal.iter().filter(|d| !d.is_zero()).count()
    }
}

struct Dense<T> {
    rows: usize,
    cols: usize,
    a: Vec<T>,
}

impl<T: super::scalar::Scalar> Dense<T> {
    fn from_matrix(m: &IntegerMatrix) -> Option<Self> {
        let a = m.entries().iter().map(T::from_big).collect::<Option<Vec<_>>>()?;
        Some(Self {
            rows: m.rows(),
            cols: m.cols(),
            a,
        })
    }

    fn identity(n: usize) -> Self {
        let mut a = vec![T::zero(); n * n];
        for i in 0..n {
            a[i * n + i] = T::one();
        }
        Self { rows: n, cols: n, a }
    }

    fn at(&self, i: usize, j: usize) -> &T {
        &self.a[i * self.cols + j]
    }

    fn swap_rows(&mut self, i: usize, k: usize) {
        if i == k {
            return;
        }
        for j in 0..self.cols {
            self.a.swap(i * self.cols + j, k * self.cols + j);
        }
    }

    fn swap_cols(&mut self, j: usize, l: usize) {
        if j == l {
            return;
        }
        for i in 0..self.rows {
            self.a.swap(i * self.cols + j, i * self.cols + l);
        }
    }

    /// row_i -= q * row_k
    fn row_sub(&mut self, i: usize, k: usize, q: &T) -> Option<()> {
        for j in 0..self.cols {
            let rk = &self.a[k * self.cols + j];
            if rk.is_zero() {
                continue;
            }
            let v = self.a[i * self.cols + j].sub_mul(q, rk)?;
            self.a[i * self.cols + j] = v;
        }
        Some(())
    }

    /// col_j -= q * col_l
    fn col_sub(&mut self, j: usize, l: usize, q: &T) -> Option<()> {
        for i in 0..self.rows {
            let cl = &self.a[i * self.cols + l];
            if cl.is_zero() {
                continue;
            }
            let v = self.a[i * self.cols + j].sub_mul(q, cl)?;
            self.a[i * self.cols + j] = v;
        }
        Some(())
    }

    fn negate_row(&mut self, i: usize) -> Option<()> {
        for j in 0..self.cols {
            let v = self.a[i * self.cols + j].neg()?;
            self.a[i * self.cols + j] = v;
        }
        Some(())
    }

    fn to_matrix(&self) -> IntegerMatrix {
        IntegerMatrix::new(self.rows, self.cols, self.a.iter().map(T::to_big).collect()).expect("shape preserved")
    }
}

struct Elimination<T> {
    a: Dense<T>,
    u: Option<Dense<T>>,
    v: Option<Dense<T>>,
}

impl<T: super::scalar::Scalar> Elimination<T> {
    fn swap_rows(&mut self, i: usize, k: usize) {
        self.a.swap_rows(i, k);
        if let Some(u) = &mut self.u {
            u.swap_rows(i, k);
        }
    }

    fn swap_cols(&mut self, j: usize, l: usize) {
        self.a.swap_cols(j, l);
        if let Some(v) = &mut self.v {
            v.swap_cols(j, l);
        }
    }

    fn row_sub(&mut self, i: usize, k: usize, q: &T) -> Option<()> {
        self.a.row_sub(i, k, q)?;
        if let Some(u) = &mut self.u {
            u.row_sub(i, k, q)?;
        }
        Some(())
    }

    fn col_sub(&mut self, j: usize, l: usize, q: &T) -> Option<()> {
        self.a.col_sub(j, l, q)?;
        if let Some(v) = &mut self.v {
            v.col_sub(j, l, q)?;
        }
        Some(())
    }

    /// Smallest nonzero entry (by absolute value) in the trailing block.
    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.a.rows {
            for j in t..self.a.cols {
                let x = self.a.at(i, j);
                if x.is_zero() {
                    continue;
                }
                if x.is_unit() {
                    return Some((i, j));
                }
                if best.is_none_or(|(bi, bj)| x.cmp_abs(self.a.at(bi, bj)).is_lt()) {
                    best = Some((i, j));
                }
            }
        }
        best
    }

    fn run(&mut self) -> Option<()> {
        let (rows, cols) = (self.a.rows, self.a.cols);
        let mut t = 0;
        while t < rows.min(cols) {
            let Some((pi, pj)) = self.min_pivot(t) else {
                break;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let mut clean = true;
                for i in t + 1..rows {
                    if self.a.at(i, t).is_zero() {
                        continue;
                    }
                    let q = self.a.at(i, t).div_floor(self.a.at(t, t))?;
                    self.row_sub(i, t, &q)?;
                    if !self.a.at(i, t).is_zero() {
                        clean = false;
                    }
                }
                for j in t + 1..cols {
                    if self.a.at(t, j).is_zero() {
                        continue;
                    }
                    let q = self.a.at(t, j).div_floor(self.a.at(t, t))?;
                    self.col_sub(j, t, &q)?;
                    if !self.a.at(t, j).is_zero() {
                        clean = false;
                    }
                }
                if !clean {
                    // a remainder smaller than the pivot survived: move it in
                    let mut best = (t, t);
                    for i in t + 1..rows {
                        let x = self.a.at(i, t);
                        if !x.is_zero() && x.cmp_abs(self.a.at(best.0, best.1)).is_lt() {
                            best = (i, t);
                        }
                    }
                    for j in t + 1..cols {
                        let x = self.a.at(t, j);
                        if !x.is_zero() && x.cmp_abs(self.a.at(best.0, best.1)).is_lt() {
                            best = (t, j);
                        }
                    }
                    self.swap_rows(t, best.0);
                    self.swap_cols(t, best.1);
                    continue;
                }
                let p = self.a.at(t, t).clone();
                if p.is_unit() {
                    break;
                }
                let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !self.a.at(i, j).is_multiple_of(&p)));
                match bad {
                    Some(i) => {
                        // row_t += row_i puts a non-multiple into row t
                        let minus_one = T::one().neg()?;
                        self.row_sub(t, i, &minus_one)?;
                    }
                    None => break,
                }
            }
            if self.a.at(t, t).is_negative() {
                self.a.negate_row(t)?;
                if let Some(u) = &mut self.u {
                    u.negate_row(t)?;
                }
            }
            t += 1;
        }
        Some(())
    }
}

struct RawSmith {
    s: IntegerMatrix,
    u: Option<IntegerMatrix>,
    v: Option<IntegerMatrix>,
}

fn smith_with<T: super::scalar::Scalar>(m: &IntegerMatrix, want_u: bool, want_v: bool) -> Option<RawSmith> {
    let mut e = Elimination {
        a: Dense::<T>::from_matrix(m)?,
        u: want_u.then(|| Dense::identity(m.rows())),
        v: want_v.then(|| Dense::identity(m.cols())),
    };
    e.run()?;
    Some(RawSmith {
        s: e.a.to_matrix(),
        u: e.u.map(|u| u.to_matrix()),
        v: e.v.map(|v| v.to_matrix()),
    })
}

fn smith_raw(m: &IntegerMatrix, want_u: bool, want_v: bool) -> RawSmith {
    smith_with::<i128>(m, want_u, want_v)
        .or_else(|| smith_with::<BigInt>(m, want_u, want_v))
        .expect("arbitrary-precision elimination cannot overflow")
}

fn diagonal_of(s: &IntegerMatrix) -> Vec<BigInt> {
    (0..s.rows().min(s.cols())).map(|i| s.get(i, i).clone()).collect()
}

/// Smith normal form with both transforms.
pub fn smith_normal_form(a: &IntegerMatrix) -> SmithForm {
    let raw = smith_raw(a, true, true);
    SmithForm {
        diagonal: diagonal_of(&raw.s),
        u: raw.u.expect("requested"),
        v: raw.v.expect("requested"),
        s: raw.s,
    }
}

/// Diagonal of the Smith form without computing transforms.
pub fn invariant_factors(a: &IntegerMatrix) -> Vec<BigInt> {
    diagonal_of(&smith_raw(a, false, false).s)
}

pub fn rank(a: &IntegerMatrix) -> usize {
    invariant_factors(a).iter().filter(|d| !d.is_zero()).count()
}

/// `Z^cols / rowspace(a)`.
pub fn cokernel(a: &IntegerMatrix) -> FgAbelianGroup {
    let diag = invariant_factors(a);
    let rank = diag.iter().filter(|d| !d.is_zero()).count();
    let torsion: Vec<BigInt> = diag.into_iter().filter(|d| !d.is_zero() && !d.is_one()).collect();
    FgAbelianGroup::from_chain_unchecked(a.cols() - rank, torsion)
}

/// Basis (as rows) of the left kernel `{x : x·a = 0}`. The basis is
/// saturated: it spans a direct summand of `Z^rows`.
pub fn left_kernel(a: &IntegerMatrix) -> IntegerMatrix {
    let raw = smith_raw(a, true, false);
    let r = diagonal_of(&raw.s).iter().filter(|d| !d.is_zero()).count();
    let idx: Vec<usize> = (r..a.rows()).collect();
    raw.u.expect("requested").select_rows(&idx)
}

/// Solves `y·b = v` over the integers, if a solution exists.
pub fn solve_left(b: &IntegerMatrix, v: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(v.len(), b.cols(), "right-hand side length must match column count");
    let rhs = IntegerMatrix::new(1, v.len(), v.to_vec()).expect("shape");
    solve_left_rows(b, &rhs).map(|y| y.row(0).to_vec())
}

/// Solves `Y·b = V` row by row with one factorisation of `b`.
pub fn solve_left_rows(b: &IntegerMatrix, v: &IntegerMatrix) -> Option<IntegerMatrix> {
    assert_eq!(v.cols(), b.cols(), "right-hand side width must match column count");
    let raw = smith_raw(b, true, true);
    let (u, vv) = (raw.u.expect("requested"), raw.v.expect("requested"));
    let diag = diagonal_of(&raw.s);
    let mut out = Vec::with_capacity(v.rows() * b.rows());
    // y U^{-1} S = v V
    for r in 0..v.rows() {
        let rhs = vv.apply_row(v.row(r));
        let mut z = vec![BigInt::zero(); b.rows()];
        for (j, x) in rhs.iter().enumerate() {
            let d = diag.get(j).cloned().unwrap_or_else(BigInt::zero);
            if d.is_zero() {
                if !x.is_zero() {
                    return None;
                }
            } else {
                if !(x % &d).is_zero() {
                    return None;
                }
                z[j] = x / &d;
            }
        }
        out.extend(u.apply_row(&z));
    }
    Some(IntegerMatrix::new(v.rows(), b.rows(), out).expect("shape"))
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;

    fn m(cols: usize, rows: &[Vec<i64>]) -> IntegerMatrix {
        IntegerMatrix::from_rows(cols, rows).unwrap()
    }

    fn check_form(a: &IntegerMatrix, f: &SmithForm) {
        assert_eq!(&f.u.mul(a).unwrap().mul(&f.v).unwrap(), &f.s);
        assert!(f.u.is_unimodular(), "U not unimodular");
        assert!(f.v.is_unimodular(), "V not unimodular");
        for i in 0..f.s.rows() {
            for j in 0..f.s.cols() {
                if i != j {
                    assert!(f.s.get(i, j).is_zero());
                }
            }
        }
        for w in f.diagonal.windows(2) {
            if w[1].is_zero() {
                continue;
            }
            assert!(!w[0].is_zero(), "zeros must trail");
            assert!((&w[1] % &w[0]).is_zero(), "{} does not divide {}", w[0], w[1]);
        }
        assert!(f.diagonal.iter().all(|d| d >= &BigInt::zero()));
    }

    #[test]
    fn identity_has_unit_diagonal() {
        let a = IntegerMatrix::identity(3);
        let f = smith_normal_form(&a);
        check_form(&a, &f);
        assert_eq!(f.diagonal, vec![BigInt::one(); 3]);
    }

    #[test]
    fn two_by_two_example() {
        let a = m(2, &[vec![2, 4], vec![6, 8]]);
        let f = smith_normal_form(&a);
        check_form(&a, &f);
        assert_eq!(f.diagonal, vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn zero_matrix_and_empty_shapes() {
        let a = IntegerMatrix::zeros(2, 3);
        let f = smith_normal_form(&a);
        check_form(&a, &f);
        assert_eq!(f.diagonal, vec![BigInt::zero(), BigInt::zero()]);

        let e = IntegerMatrix::zeros(0, 3);
        let f = smith_normal_form(&e);
        assert!(f.diagonal.is_empty());
        assert_eq!(f.v, IntegerMatrix::identity(3));
        assert_eq!(cokernel(&e).free_rank(), 3);

        let e = IntegerMatrix::zeros(4, 0);
        assert!(cokernel(&e).is_trivial());
        assert_eq!(left_kernel(&e).rows(), 4);
    }

    #[test]
    fn cokernel_examples() {
        assert_eq!(cokernel(&m(1, &[vec![2]])), FgAbelianGroup::cyclic(2u32));
        assert_eq!(
            cokernel(&m(2, &[vec![2, 4], vec![6, 8]])),
            FgAbelianGroup::from_invariants(0, [2u32, 4]).unwrap()
        );
    }

    #[test]
    fn overflowing_entries_fall_back_to_bigint() {
        let big: BigInt = BigInt::from(1u8) << 120usize;
        let a = IntegerMatrix::new(
            2,
            2,
            vec![big.clone(), big.clone() + 1, big.clone() * 3, BigInt::from(5)],
        )
        .unwrap();
        let f = smith_normal_form(&a);
        check_form(&a, &f);
    }

    #[test]
    fn solve_left_finds_integer_solutions_only() {
        let b = m(2, &[vec![2, 0], vec![0, 3]]);
        let y = solve_left(&b, &[BigInt::from(4), BigInt::from(9)]).unwrap();
        assert_eq!(y, vec![BigInt::from(2), BigInt::from(3)]);
        assert!(solve_left(&b, &[BigInt::from(1), BigInt::from(0)]).is_none());
    }

    fn small_matrix() -> impl Strategy<Value = IntegerMatrix> {
        (0usize..=6, 0usize..=6).prop_flat_map(|(r, c)| {
            prop::collection::vec(-9i64..=9, r * c)
                .prop_map(move |v| IntegerMatrix::new(r, c, v.into_iter().map(BigInt::from).collect()).unwrap())
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn smith_form_multiplies_back(a in small_matrix()) {
            let f = smith_normal_form(&a);
            check_form(&a, &f);
        }

        #[test]
        fn left_kernel_annihilates(a in small_matrix()) {
            let k = left_kernel(&a);
            prop_assert!(k.mul(&a).unwrap().is_zero());
            prop_assert_eq!(k.rows(), a.rows() - rank(&a));
        }
    }
}
