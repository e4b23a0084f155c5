use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// Smith normal form `u · m · v = d` with unimodular `u`, `v`.
///
/// `v_inv` is the inverse of `v`, maintained alongside it so callers can map
/// canonical coordinates back to the original generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

impl SmithForm {
    /// Diagonal entries `d_ii` for `i < min(rows, cols)`, zeros included.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d.get(i, i).clone())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

/// Diagonalizes `m` by unimodular row and column operations.
///
/// Pivot choice: the nonzero entry of least absolute value in the active
/// block, ties broken by lowest `(row, col)`. The output is deterministic and
/// the diagonal is a nonnegative divisibility chain with zeros last.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let mut v_inv = IntMatrix::identity(cols);

    'outer: for k in 0..rows.min(cols) {
        loop {
            let Some((pi, pj)) = find_pivot(&a, k) else {
                break 'outer;
            };
            a.swap_rows(k, pi);
            u.swap_rows(k, pi);
            a.swap_cols(k, pj);
            v.swap_cols(k, pj);
            v_inv.swap_rows(k, pj);

            let pivot = a.get(k, k).clone();
            let mut dirty = false;
            for i in k + 1..rows {
                let q = a.get(i, k) / &pivot;
                if !q.is_zero() {
                    let neg = -&q;
                    a.add_row_multiple(i, k, &neg);
                    u.add_row_multiple(i, k, &neg);
                }
                dirty |= !a.get(i, k).is_zero();
            }
            for j in k + 1..cols {
                let q = a.get(k, j) / &pivot;
                if !q.is_zero() {
                    let neg = -&q;
                    a.add_col_multiple(j, k, &neg);
                    v.add_col_multiple(j, k, &neg);
                    v_inv.add_row_multiple(k, j, &q);
                }
                dirty |= !a.get(k, j).is_zero();
            }
            if dirty {
                continue;
            }

            // Row and column are clear; the pivot must divide the rest of the block.
            let offender =
                (k + 1..rows).find(|&i| (k + 1..cols).any(|j| !(a.get(i, j) % &pivot).is_zero()));
            match offender {
                Some(i) => {
                    let one = BigInt::from(1);
                    a.add_row_multiple(k, i, &one);
                    u.add_row_multiple(k, i, &one);
                }
                None => break,
            }
        }
        if a.get(k, k).is_negative() {
            a.negate_row(k);
            u.negate_row(k);
        }
    }

    SmithForm { u, d: a, v, v_inv }
}

fn find_pivot(a: &IntMatrix, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in k..a.rows() {
        for j in k..a.cols() {
            let x = a.get(i, j);
            if x.is_zero() {
                continue;
            }
            let mag = x.abs();
            if best.as_ref().is_none_or(|(_, _, b)| mag < *b) {
                best = Some((i, j, mag));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;
    use proptest::prelude::*;

    fn m(cols: usize, rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(cols, rows).unwrap()
    }

    fn check(m: &IntMatrix) -> SmithForm {
        let s = smith_normal_form(m);
        assert_eq!(s.u.mul(m).unwrap().mul(&s.v).unwrap(), s.d);
        assert!(s.d.is_diagonal());
        assert!(s.u.is_unimodular() && s.v.is_unimodular());
        assert_eq!(s.v.mul(&s.v_inv).unwrap(), IntMatrix::identity(m.cols()));
        let diag = s.diagonal();
        for w in diag.windows(2) {
            assert!(!w[0].is_negative());
            if w[0].is_zero() {
                assert!(w[1].is_zero());
            } else {
                assert!(w[1].is_multiple_of(&w[0]));
            }
        }
        s
    }

    /// Invariant factors from determinantal divisors: `d_k = D_k / D_{k-1}`
    /// with `D_k` the gcd of all `k×k` minors.
    fn determinantal_oracle(m: &IntMatrix) -> Vec<BigInt> {
        fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
            if k == 0 {
                return vec![vec![]];
            }
            (0..n)
                .flat_map(|last| {
                    subsets(last, k - 1).into_iter().map(move |mut s| {
                        s.push(last);
                        s
                    })
                })
                .collect()
        }
        let mut out = Vec::new();
        let mut prev = BigInt::from(1);
        for k in 1..=m.rows().min(m.cols()) {
            let mut g = BigInt::zero();
            for rs in subsets(m.rows(), k) {
                for cs in subsets(m.cols(), k) {
                    let rows: Vec<Vec<BigInt>> = rs
                        .iter()
                        .map(|&i| cs.iter().map(|&j| m.get(i, j).clone()).collect())
                        .collect();
                    g = g.gcd(
                        &IntMatrix::from_rows(k, &rows)
                            .unwrap()
                            .determinant()
                            .unwrap(),
                    );
                }
            }
            if g.is_zero() {
                out.push(BigInt::zero());
            } else {
                out.push(&g / &prev);
                prev = g;
            }
        }
        out
    }

    #[test]
    fn identity_is_fixed() {
        let s = check(&IntMatrix::identity(2));
        assert_eq!(s.u, IntMatrix::identity(2));
        assert_eq!(s.v, IntMatrix::identity(2));
        assert_eq!(s.d, IntMatrix::identity(2));
    }

    #[test]
    fn two_by_two_example() {
        let a = m(2, &[vec![2, 4], vec![6, 8]]);
        let expected = determinantal_oracle(&a);
        assert_eq!(expected, vec![BigInt::from(2), BigInt::from(4)]);
        assert_eq!(check(&a).diagonal(), expected);
    }

    #[test]
    fn zero_and_empty() {
        assert_eq!(check(&m(1, &[vec![0]])).d, m(1, &[vec![0]]));
        check(&IntMatrix::zeros(0, 0));
        check(&IntMatrix::zeros(0, 3));
        check(&IntMatrix::zeros(2, 0));
    }

    #[test]
    fn negative_entries_and_rectangles() {
        let a = m(3, &[vec![-6, 4, 0], vec![0, 0, -10]]);
        assert_eq!(check(&a).diagonal(), determinantal_oracle(&a));
        let b = m(2, &[vec![3, 0], vec![0, 5], vec![1, 1]]);
        assert_eq!(check(&b).diagonal(), vec![BigInt::from(1), BigInt::from(1)]);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn random_matrices_satisfy_contract(
            (r, c, entries) in (0usize..6, 0usize..6)
                .prop_flat_map(|(r, c)| (Just(r), Just(c), prop::collection::vec(-50i64..=50, r * c)))
        ) {
            let a = IntMatrix::new(r, c, entries.into_iter().map(BigInt::from).collect()).unwrap();
            let s = check(&a);
            if r.max(c) <= 4 {
                prop_assert_eq!(s.diagonal(), determinantal_oracle(&a));
            }
        }
    }
}
