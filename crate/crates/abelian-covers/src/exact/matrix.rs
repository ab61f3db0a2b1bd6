//! Exact rank and kernel of rational matrices. The elimination core is
//! fraction-free (Bareiss) over big integers after clearing row
//! denominators; kernel vectors are back-substituted over the rationals and
//! returned as a reduced-echelon basis.

use num::{BigInt, BigRational, One, Zero};

#[derive(Debug, Clone)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![BigRational::zero(); rows * cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.data[i * self.cols + j] = v;
    }

    /// Row echelon form over the integers by fraction-free elimination.
    /// Returns the integer matrix (rows scaled), the pivot columns and the
    /// row permutation implied by pivot search.
    fn bareiss_echelon(&self) -> (Vec<Vec<BigInt>>, Vec<usize>) {
        // clear denominators row by row; row scaling preserves rank and kernel
        let mut m: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|i| {
                let lcm = (0..self.cols).fold(BigInt::one(), |acc, j| {
                    num::integer::lcm(acc, self.get(i, j).denom().clone())
                });
                (0..self.cols)
                    .map(|j| {
                        let v = self.get(i, j);
                        v.numer() * (&lcm / v.denom())
                    })
                    .collect()
            })
            .collect();

        let mut pivot_cols = Vec::new();
        let mut prev_pivot = BigInt::one();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(pivot_row) = (row..self.rows).find(|&i| !m[i][col].is_zero()) else {
                continue;
            };
            m.swap(row, pivot_row);
            for i in row + 1..self.rows {
                for j in col + 1..self.cols {
                    let numer = &m[row][col] * &m[i][j] - &m[i][col] * &m[row][j];
                    debug_assert!((&numer % &prev_pivot).is_zero());
                    m[i][j] = numer / &prev_pivot;
                }
                m[i][col] = BigInt::zero();
            }
            prev_pivot = m[row][col].clone();
            pivot_cols.push(col);
            row += 1;
        }
        (m, pivot_cols)
    }

    pub fn rank(&self) -> usize {
        self.bareiss_echelon().1.len()
    }

    /// Basis of the right kernel in reduced echelon form (each vector has a
    /// leading 1 in its own free column and zeros in the other free
    /// columns, and the basis rows are reduced against each other).
    pub fn kernel_basis(&self) -> Vec<Vec<BigRational>> {
        let (echelon, pivot_cols) = self.bareiss_echelon();
        let rank = pivot_cols.len();
        let is_pivot: Vec<bool> = {
            let mut v = vec![false; self.cols];
            for &c in &pivot_cols {
                v[c] = true;
            }
            v
        };
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut x = vec![BigRational::zero(); self.cols];
            x[free] = BigRational::one();
            // back-substitute pivot variables bottom-up
            for k in (0..rank).rev() {
                let pc = pivot_cols[k];
                let mut acc = BigRational::zero();
                for j in pc + 1..self.cols {
                    if !echelon[k][j].is_zero() && !x[j].is_zero() {
                        acc += BigRational::from(echelon[k][j].clone()) * &x[j];
                    }
                }
                if !acc.is_zero() {
                    x[pc] = -acc / BigRational::from(echelon[k][pc].clone());
                }
            }
            basis.push(x);
        }
        reduced_echelon(basis)
    }

    pub fn rank_and_kernel(&self) -> (usize, Vec<Vec<BigRational>>) {
        let rank = self.rank();
        (rank, self.kernel_basis())
    }
}

/// Gauss-Jordan on a small list of rational row vectors; rows come back
/// sorted by leading column with leading coefficient 1.
pub fn reduced_echelon(mut rows: Vec<Vec<BigRational>>) -> Vec<Vec<BigRational>> {
    if rows.is_empty() {
        return rows;
    }
    let cols = rows[0].len();
    let mut out: Vec<Vec<BigRational>> = Vec::new();
    for col in 0..cols {
        let Some(idx) = rows.iter().position(|r| !r[col].is_zero()) else {
            continue;
        };
        let mut pivot = rows.swap_remove(idx);
        let lead = pivot[col].clone();
        for v in pivot.iter_mut() {
            *v /= &lead;
        }
        for r in rows.iter_mut().chain(out.iter_mut()) {
            if !r[col].is_zero() {
                let factor = r[col].clone();
                for (rv, pv) in r.iter_mut().zip(&pivot) {
                    *rv -= &factor * pv;
                }
            }
        }
        out.push(pivot);
        if rows.is_empty() {
            break;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::BigInt;
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn from_rows(rows: &[&[i64]]) -> RationalMatrix {
        let mut m = RationalMatrix::zero(rows.len(), rows[0].len());
        for (i, r) in rows.iter().enumerate() {
            for (j, &v) in r.iter().enumerate() {
                m.set(i, j, rat(v, 1));
            }
        }
        m
    }

    #[test]
    fn rank_of_known_matrices() {
        assert_eq!(from_rows(&[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(from_rows(&[&[1, 0, 1], &[0, 1, 1], &[1, 1, 2]]).rank(), 2);
        assert_eq!(RationalMatrix::zero(3, 4).rank(), 0);
    }

    #[test]
    fn kernel_of_a_rank_one_matrix() {
        let m = from_rows(&[&[1, 2, 3]]);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 2);
        for v in &k {
            let dot: BigRational =
                v.iter().enumerate().map(|(j, x)| m.get(0, j) * x).sum();
            assert!(dot.is_zero());
        }
        // canonical form: the kernel rows are themselves in reduced echelon
        assert_eq!(k[0], vec![rat(1, 1), rat(0, 1), rat(-1, 3)]);
        assert_eq!(k[1], vec![rat(0, 1), rat(1, 1), rat(-2, 3)]);
    }

    #[test]
    fn kernel_vectors_annihilate_with_rational_entries() {
        let mut m = RationalMatrix::zero(2, 4);
        m.set(0, 0, rat(1, 2));
        m.set(0, 2, rat(3, 5));
        m.set(1, 1, rat(-2, 7));
        m.set(1, 3, rat(1, 3));
        let (rank, kernel) = m.rank_and_kernel();
        assert_eq!(rank, 2);
        assert_eq!(kernel.len(), 2);
        for v in &kernel {
            for i in 0..2 {
                let dot: BigRational =
                    v.iter().enumerate().map(|(j, x)| m.get(i, j) * x).sum();
                assert!(dot.is_zero());
            }
        }
    }

    proptest! {
        #[test]
        fn rank_plus_kernel_is_cols(entries in proptest::collection::vec(-5i64..6, 12)) {
            let mut m = RationalMatrix::zero(3, 4);
            for (idx, &v) in entries.iter().enumerate() {
                m.set(idx / 4, idx % 4, rat(v, 1));
            }
            let (rank, kernel) = m.rank_and_kernel();
            prop_assert_eq!(rank + kernel.len(), 4);
            for v in &kernel {
                for i in 0..3 {
                    let dot: BigRational =
                        v.iter().enumerate().map(|(j, x)| m.get(i, j) * x).sum();
                    prop_assert!(dot.is_zero());
                }
            }
        }
    }
}
