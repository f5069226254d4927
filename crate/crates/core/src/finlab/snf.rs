use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::IntMatrix;

/// `U·M·V = D` with `U`, `V` unimodular; `v_inv` is `V⁻¹`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub v_inv: Option<IntMatrix>,
}

impl SmithForm {
    /// Diagonal entries of `D`, `min(rows, cols)` of them.
    pub fn diagonal(&self) -> Vec<BigInt> {
        self.d.diag()
    }
}

struct Work {
    a: IntMatrix,
    u: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.a.add_row(dst, src, q);
        self.u.add_row(dst, src, q);
    }

    /// `col[dst] += q·col[src]`; on `V⁻¹` the inverse elementary matrix acts
    /// from the left: `row[src] -= q·row[dst]`.
    fn add_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.a.add_col(dst, src, q);
        self.v.add_col(dst, src, q);
        self.v_inv.add_row(src, dst, &-q);
    }

    fn smallest_in(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let x = &self.a[(i, j)];
                if !x.is_zero() && best.is_none_or(|b| x.abs() < self.a[b].abs()) {
                    best = Some((i, j));
                }
            }
        }
        best
    }

    /// Clears row and column `t` against the pivot by division with remainder.
    /// Returns whether every off-pivot entry became zero.
    fn sweep(&mut self, t: usize) -> bool {
        let p = self.a[(t, t)].clone();
        let mut clean = true;
        for i in t + 1..self.a.rows() {
            let q = self.a[(i, t)].div_floor(&p);
            if !q.is_zero() {
                self.add_row(i, t, &-q);
            }
            clean &= self.a[(i, t)].is_zero();
        }
        for j in t + 1..self.a.cols() {
            let q = self.a[(t, j)].div_floor(&p);
            if !q.is_zero() {
                self.add_col(j, t, &-q);
            }
            clean &= self.a[(t, j)].is_zero();
        }
        clean
    }

    fn non_multiple(&self, t: usize) -> Option<usize> {
        let p = &self.a[(t, t)];
        (t + 1..self.a.rows()).find(|&i| (t + 1..self.a.cols()).any(|j| !self.a[(i, j)].is_multiple_of(p)))
    }
}

/// Smith normal form by smallest-magnitude pivoting.
///
/// Each round moves the nonzero entry of least magnitude in the trailing
/// block to the pivot and sweeps its row and column; remainders are strictly
/// smaller, so the pivot magnitude decreases until the sweep is clean. A
/// trailing entry not divisible by the pivot is folded into the pivot row.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (r, c) = (m.rows(), m.cols());
    let mut w = Work { a: m.clone(), u: IntMatrix::identity(r), v: IntMatrix::identity(c), v_inv: IntMatrix::identity(c) };
    for t in 0..r.min(c) {
        loop {
            let Some((i, j)) = w.smallest_in(t) else {
                return finish(w);
            };
            w.swap_rows(t, i);
            w.swap_cols(t, j);
            if !w.sweep(t) {
                continue;
            }
            match w.non_multiple(t) {
                Some(i) => w.add_row(t, i, &BigInt::from(1)),
                None => break,
            }
        }
        if w.a[(t, t)].is_negative() {
            w.a.negate_row(t);
            w.u.negate_row(t);
        }
    }
    finish(w)
}

fn finish(w: Work) -> SmithForm {
    SmithForm { u: w.u, d: w.a, v: w.v, v_inv: Some(w.v_inv) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use proptest::prelude::*;

    fn m(rows: Vec<Vec<i64>>) -> IntMatrix {
        IntMatrix::from_rows(rows, None).unwrap()
    }

    fn check(mat: &IntMatrix) -> SmithForm {
        let s = smith_normal_form(mat);
        assert_eq!(&(&s.u * mat) * &s.v, s.d);
        assert!(s.d.is_diagonal());
        assert_eq!(s.u.determinant().unwrap().abs(), BigInt::one());
        assert_eq!(s.v.determinant().unwrap().abs(), BigInt::one());
        assert_eq!(&s.v * s.v_inv.as_ref().unwrap(), IntMatrix::identity(mat.cols()));
        let d = s.diagonal();
        assert!(d.iter().all(|x| !x.is_negative()));
        for w in d.windows(2) {
            let ok = if w[0].is_zero() { w[1].is_zero() } else { w[1].is_multiple_of(&w[0]) };
            assert!(ok, "{d:?}");
        }
        s
    }

    fn diag(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn examples() {
        assert_eq!(check(&m(vec![vec![2, 0], vec![0, 3]])).diagonal(), diag(&[1, 6]));
        assert_eq!(check(&m(vec![vec![0]])).diagonal(), diag(&[0]));
        assert_eq!(check(&m(vec![vec![2, 4], vec![6, 8]])).diagonal(), diag(&[2, 4]));
        assert_eq!(check(&m(vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]])).diagonal(), diag(&[2, 6, 12]));
        assert_eq!(check(&m(vec![vec![6, 4], vec![0, 0], vec![3, 9]])).diagonal(), diag(&[1, 42]));
        assert_eq!(check(&IntMatrix::zeros(2, 3)).diagonal(), diag(&[0, 0]));
        check(&IntMatrix::zeros(0, 2));
    }

    fn arb_matrix() -> impl Strategy<Value = IntMatrix> {
        (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(-20i64..=20, c), r).prop_map(m)
        })
    }

    proptest! {
        #[test]
        fn snf_contract(a in arb_matrix()) {
            check(&a);
        }

        #[test]
        fn permutation_invariant(a in arb_matrix(), seed in any::<u64>()) {
            let mut b = a.clone();
            let (r, c) = (b.rows(), b.cols());
            b.swap_rows(0, (seed % r as u64) as usize);
            b.swap_cols(0, ((seed >> 8) % c as u64) as usize);
            prop_assert_eq!(smith_normal_form(&a).diagonal(), smith_normal_form(&b).diagonal());
        }
    }
}
