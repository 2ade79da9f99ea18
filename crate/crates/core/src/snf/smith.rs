use std::collections::{BTreeMap, BTreeSet};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

/// Smith normal form of a matrix.
#[derive(Clone, Debug)]
pub struct SnfResult {
    /// Nonzero diagonal entries `d_1 | d_2 | … | d_r`, all positive, 1s kept.
    pub invariant_factors: Vec<BigInt>,
    pub rank: usize,
    /// `(U, V)` unimodular with `U · M · V` diagonal.
    pub transforms: Option<(IntMatrix, IntMatrix)>,
}

impl SnfResult {
    /// The diagonal matrix `U · M · V` should equal, with the shape of `M`.
    pub fn diagonal_matrix(&self, rows: usize, cols: usize) -> IntMatrix {
        let mut d = IntMatrix::zeros(rows, cols);
        for (i, f) in self.invariant_factors.iter().enumerate() {
            d[(i, i)] = f.clone();
        }
        d
    }
}

struct Elimination {
    a: IntMatrix,
    u: Option<IntMatrix>,
    v: Option<IntMatrix>,
}

impl Elimination {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        if let Some(u) = &mut self.u {
            u.swap_rows(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        if let Some(v) = &mut self.v {
            v.swap_cols(i, j);
        }
    }

    fn add_row(&mut self, dst: usize, src: usize, f: &BigInt) {
        self.a.add_row_multiple(dst, src, f);
        if let Some(u) = &mut self.u {
            u.add_row_multiple(dst, src, f);
        }
    }

    fn add_col(&mut self, dst: usize, src: usize, f: &BigInt) {
        self.a.add_col_multiple(dst, src, f);
        if let Some(v) = &mut self.v {
            v.add_col_multiple(dst, src, f);
        }
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        if let Some(u) = &mut self.u {
            u.negate_row(i);
        }
    }

    /// Position of the nonzero entry of least absolute value in `rows × cols`.
    fn min_entry(
        &self,
        cells: impl Iterator<Item = (usize, usize)>,
    ) -> Option<(usize, usize)> {
        let mut best: Option<((usize, usize), BigInt)> = None;
        for (i, j) in cells {
            let x = &self.a[(i, j)];
            if x.is_zero() {
                continue;
            }
            let abs = x.abs();
            if best.as_ref().map_or(true, |(_, b)| &abs < b) {
                let one = abs.is_one();
                best = Some(((i, j), abs));
                if one {
                    break;
                }
            }
        }
        best.map(|(pos, _)| pos)
    }

    fn run(&mut self) -> Vec<BigInt> {
        let (rows, cols) = (self.a.rows(), self.a.cols());
        let mut diag = Vec::new();
        let mut t = 0;
        while t < rows.min(cols) {
            let cells = (t..rows).flat_map(|i| (t..cols).map(move |j| (i, j)));
            let Some((pi, pj)) = self.min_entry(cells) else {
                break;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let mut clean = true;
                for i in t + 1..rows {
                    if self.a[(i, t)].is_zero() {
                        continue;
                    }
                    let q = self.a[(i, t)].div_floor(&self.a[(t, t)]);
                    self.add_row(i, t, &-q);
                    clean &= self.a[(i, t)].is_zero();
                }
                for j in t + 1..cols {
                    if self.a[(t, j)].is_zero() {
                        continue;
                    }
                    let q = self.a[(t, j)].div_floor(&self.a[(t, t)]);
                    self.add_col(j, t, &-q);
                    clean &= self.a[(t, j)].is_zero();
                }
                if !clean {
                    let cells = std::iter::once((t, t))
                        .chain((t + 1..rows).map(|i| (i, t)))
                        .chain((t + 1..cols).map(|j| (t, j)));
                    let (pi, pj) = self.min_entry(cells).expect("pivot row/column is nonzero");
                    self.swap_rows(t, pi);
                    self.swap_cols(t, pj);
                    continue;
                }
                let pivot = self.a[(t, t)].clone();
                let bad = (t + 1..rows).find(|&i| {
                    (t + 1..cols).any(|j| !self.a[(i, j)].is_multiple_of(&pivot))
                });
                match bad {
                    Some(i) => self.add_row(t, i, &BigInt::one()),
                    None => break,
                }
            }
            if self.a[(t, t)].sign() == Sign::Minus {
                self.negate_row(t);
            }
            diag.push(self.a[(t, t)].clone());
            t += 1;
        }
        diag
    }
}

/// Smith normal form by pivoting on the entry of least absolute value.
/// With `with_transforms`, also returns unimodular `U`, `V` with `U·M·V = D`.
pub fn smith_normal_form(m: &IntMatrix, with_transforms: bool) -> SnfResult {
    let mut e = Elimination {
        a: m.clone(),
        u: with_transforms.then(|| IntMatrix::identity(m.rows())),
        v: with_transforms.then(|| IntMatrix::identity(m.cols())),
    };
    let diag = e.run();
    SnfResult {
        rank: diag.len(),
        invariant_factors: diag,
        transforms: match (e.u, e.v) {
            (Some(u), Some(v)) => Some((u, v)),
            _ => None,
        },
    }
}

/// Invariant factors of a (typically large, sparse) relation matrix.
///
/// Entries equal to ±1 are eliminated first on a sparse representation: a
/// unit pivot contributes an invariant factor 1 and removes its row and
/// column. The small remainder goes through the dense algorithm.
pub fn invariant_factors_sparse(m: &IntMatrix) -> Vec<BigInt> {
    let mut rows: Vec<BTreeMap<usize, BigInt>> = (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(j, x)| (j, x.clone()))
                .collect()
        })
        .collect();
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m.cols()];
    for (i, r) in rows.iter().enumerate() {
        for &j in r.keys() {
            col_rows[j].insert(i);
        }
    }
    let mut row_alive = vec![true; m.rows()];
    let mut units = 0usize;

    loop {
        // Markowitz-style choice among unit entries
        let mut best: Option<(usize, usize, usize)> = None;
        for (i, r) in rows.iter().enumerate() {
            if !row_alive[i] {
                continue;
            }
            for (&j, x) in r {
                if x.abs().is_one() {
                    let cost = (r.len() - 1) * (col_rows[j].len() - 1);
                    if best.map_or(true, |(_, _, c)| cost < c) {
                        best = Some((i, j, cost));
                    }
                }
            }
            if matches!(best, Some((_, _, 0))) {
                break;
            }
        }
        let Some((pr, pc, _)) = best else { break };
        let pivot_row = rows[pr].clone();
        let pivot_sign = pivot_row[&pc].clone();
        let others: Vec<usize> = col_rows[pc].iter().copied().filter(|&i| i != pr).collect();
        for i in others {
            let f = &rows[i][&pc] * &pivot_sign;
            for (&j, x) in &pivot_row {
                let entry = rows[i].entry(j).or_insert_with(BigInt::zero);
                *entry -= &f * x;
                if entry.is_zero() {
                    rows[i].remove(&j);
                    col_rows[j].remove(&i);
                } else {
                    col_rows[j].insert(i);
                }
            }
            if rows[i].is_empty() {
                row_alive[i] = false;
            }
        }
        for &j in pivot_row.keys() {
            col_rows[j].remove(&pr);
        }
        rows[pr].clear();
        row_alive[pr] = false;
        units += 1;
    }

    let live_cols: Vec<usize> = (0..m.cols()).filter(|&j| !col_rows[j].is_empty()).collect();
    let live_rows: Vec<usize> = (0..m.rows()).filter(|&i| row_alive[i] && !rows[i].is_empty()).collect();
    let mut rest = IntMatrix::zeros(live_rows.len(), live_cols.len());
    for (ri, &i) in live_rows.iter().enumerate() {
        for (ci, &j) in live_cols.iter().enumerate() {
            if let Some(x) = rows[i].get(&j) {
                rest[(ri, ci)] = x.clone();
            }
        }
    }
    let mut factors = vec![BigInt::one(); units];
    factors.extend(smith_normal_form(&rest, false).invariant_factors);
    factors
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factors(rows: &[Vec<i64>], cols: usize) -> Vec<i64> {
        let m = IntMatrix::from_rows(cols, rows);
        smith_normal_form(&m, false)
            .invariant_factors
            .iter()
            .map(|x| x.to_string().parse().unwrap())
            .collect()
    }

    #[test]
    fn one_by_one() {
        assert_eq!(factors(&[vec![4]], 1), vec![4]);
        assert_eq!(factors(&[vec![-4]], 1), vec![4]);
    }

    #[test]
    fn coprime_diagonal_merges() {
        assert_eq!(factors(&[vec![2, 0], vec![0, 3]], 2), vec![1, 6]);
    }

    #[test]
    fn empty_matrices() {
        assert!(factors(&[], 2).is_empty());
        let m = IntMatrix::zeros(3, 0);
        assert_eq!(smith_normal_form(&m, true).rank, 0);
    }

    #[test]
    fn transforms_reconstruct() {
        let m = IntMatrix::from_rows(3, &[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let r = smith_normal_form(&m, true);
        let (u, v) = r.transforms.clone().unwrap();
        assert_eq!(u.mul(&m).mul(&v), r.diagonal_matrix(3, 3));
        assert!(u.determinant().abs().is_one());
        assert!(v.determinant().abs().is_one());
        let f: Vec<String> = r.invariant_factors.iter().map(|x| x.to_string()).collect();
        assert_eq!(f, vec!["2", "6", "12"]);
    }

    #[test]
    fn sparse_path_agrees_with_dense() {
        let m = IntMatrix::from_rows(
            3,
            &[vec![2, 0, 0], vec![0, 2, 0], vec![0, 0, 4], vec![0, 0, 0], vec![1, -1, 0], vec![-1, 1, 0]],
        );
        assert_eq!(invariant_factors_sparse(&m), smith_normal_form(&m, false).invariant_factors);
    }
}
