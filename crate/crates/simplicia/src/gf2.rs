//! Dense GF(2) matrices with rank via Gaussian elimination.
//!
//! Rows are packed into `u64` words; addition is XOR. Exact and deterministic,
//! which is all the Betti computation needs.

/// A rows x cols matrix over GF(2).
#[derive(Debug, Clone)]
pub struct Matrix {
    rows: Vec<Vec<u64>>,
    cols: usize,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Matrix {
        let words = cols.div_ceil(64);
        Matrix {
            rows: vec![vec![0; words]; rows],
            cols,
        }
    }

    pub fn set(&mut self, row: usize, col: usize) {
        debug_assert!(col < self.cols);
        self.rows[row][col / 64] |= 1 << (col % 64);
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        (self.rows[row][col / 64] >> (col % 64)) & 1 == 1
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn col_count(&self) -> usize {
        self.cols
    }
}

/// Rank over GF(2) by row elimination.
pub fn rank(matrix: &Matrix) -> usize {
    let mut rows = matrix.rows.clone();
    let mut rank = 0;
    for col in 0..matrix.cols {
        let word = col / 64;
        let bit = 1u64 << (col % 64);
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][word] & bit != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let (pivot_row, rest) = {
            let (head, tail) = rows.split_at_mut(rank + 1);
            (&head[rank], tail)
        };
        for row in rest.iter_mut() {
            if row[word] & bit != 0 {
                for (dst, src) in row.iter_mut().zip(pivot_row.iter()) {
                    *dst ^= src;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_of_identity() {
        let mut m = Matrix::zero(5, 5);
        for i in 0..5 {
            m.set(i, i);
        }
        assert_eq!(rank(&m), 5);
    }

    #[test]
    fn rank_with_dependent_rows() {
        // Row 2 = row 0 XOR row 1.
        let mut m = Matrix::zero(3, 4);
        m.set(0, 0);
        m.set(0, 1);
        m.set(1, 1);
        m.set(1, 2);
        m.set(2, 0);
        m.set(2, 2);
        assert_eq!(rank(&m), 2);
    }

    #[test]
    fn rank_of_zero_and_wide_matrices() {
        assert_eq!(rank(&Matrix::zero(3, 7)), 0);
        // A 2 x 130 matrix exercising multi-word rows.
        let mut m = Matrix::zero(2, 130);
        m.set(0, 129);
        m.set(1, 129);
        m.set(1, 64);
        assert_eq!(rank(&m), 2);
        assert!(m.get(1, 64));
        assert!(!m.get(0, 64));
    }
}
