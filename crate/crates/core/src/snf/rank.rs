use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::matrix::IntMatrix;

/// Rank over ℚ by fraction-free (Bareiss) elimination.
pub fn rank_rational(m: &IntMatrix) -> usize {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut prev = BigInt::from(1);
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        a.swap_rows(p, rank);
        for i in rank + 1..rows {
            for j in c + 1..cols {
                let v = (&a[(i, j)] * &a[(rank, c)] - &a[(i, c)] * &a[(rank, j)]) / &prev;
                a[(i, j)] = v;
            }
            a[(i, c)] = BigInt::zero();
        }
        prev = a[(rank, c)].clone();
        rank += 1;
    }
    rank
}

/// Rank over 𝔽₂ of the reduction mod 2, by elimination on packed bit rows.
pub fn rank_f2(m: &IntMatrix) -> usize {
    let words = m.cols().div_ceil(64);
    let mut rows: Vec<Vec<u64>> = (0..m.rows())
        .map(|i| {
            let mut bits = vec![0u64; words];
            for (j, x) in m.row(i).iter().enumerate() {
                if x.is_odd() {
                    bits[j / 64] |= 1 << (j % 64);
                }
            }
            bits
        })
        .collect();
    let mut rank = 0;
    for c in 0..m.cols() {
        let (w, b) = (c / 64, 1u64 << (c % 64));
        let Some(p) = (rank..rows.len()).find(|&i| rows[i][w] & b != 0) else {
            continue;
        };
        rows.swap(p, rank);
        let pivot = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && row[w] & b != 0 {
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `(rank over ℚ, rank over 𝔽₂)`, computed by two independent eliminations.
pub fn ranks(m: &IntMatrix) -> (usize, usize) {
    (rank_rational(m), rank_f2(m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert_eq!(ranks(&IntMatrix::from_rows(1, &[vec![4]])), (1, 0));
        assert_eq!(ranks(&IntMatrix::from_rows(1, &[vec![3]])), (1, 1));
        assert_eq!(ranks(&IntMatrix::zeros(0, 2)), (0, 0));
    }

    #[test]
    fn relation_matrix_of_order_16_group() {
        let m = IntMatrix::from_rows(
            3,
            &[vec![2, 0, 0], vec![0, 2, 0], vec![0, 0, 4], vec![0, 0, 0], vec![1, -1, 0], vec![-1, 1, 0]],
        );
        assert_eq!(ranks(&m), (3, 1));
    }

    #[test]
    fn rank_deficient() {
        let m = IntMatrix::from_rows(3, &[vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]]);
        assert_eq!(rank_rational(&m), 2);
        assert_eq!(rank_f2(&m), 1);
    }
}
