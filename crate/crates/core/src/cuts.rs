//! Cut matrix `C(G)` of the complete graph on the boundary, one row per tree
//! edge and one column per boundary pair.

use std::fmt::Write as _;

use num_traits::{Signed, Zero};

use crate::metric::{pair_count, pair_label, pairs};
use crate::rational::Rational;
use crate::trees::BinaryTree;

/// Dense 0/1 matrix: rows are tree edges in canonical order, columns are
/// pairs `(i, j)`, `i < j`, in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutMatrix {
    n: usize,
    rows: usize,
    cols: usize,
    entries: Vec<u8>,
}

impl CutMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> u8 {
        self.entries[row * self.cols + col]
    }

    pub fn row(&self, row: usize) -> &[u8] {
        &self.entries[row * self.cols..(row + 1) * self.cols]
    }

    pub fn column(&self, col: usize) -> Vec<u8> {
        (0..self.rows).map(|r| self.get(r, col)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn to_i64_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(|&v| i64::from(v)).collect())
            .collect()
    }

    pub fn rank(&self) -> usize {
        rational_rank(&self.to_i64_rows())
    }

    /// Header of pair labels followed by space-separated 0/1 rows.
    pub fn to_text(&self) -> String {
        let mut out = (0..self.cols)
            .map(|c| pair_label(c, self.n))
            .collect::<Vec<_>>()
            .join(" ");
        out.push('\n');
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(u8::to_string).collect();
            let _ = writeln!(out, "{}", row.join(" "));
        }
        out
    }

    pub fn to_latex(&self) -> String {
        let mut out = String::from("A=\\left(\n\\begin{array}{");
        out.push_str(&"c".repeat(self.cols));
        out.push_str("}\n");
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(u8::to_string).collect();
            let _ = writeln!(out, " {} \\\\", row.join(" & "));
        }
        out.push_str("\\end{array}\n\\right)\n");
        out
    }
}

/// Builds `C(G)`: entry `(k, (i,j))` is 1 iff leaves `i` and `j` lie on
/// different sides of the cut of edge `k`.
pub fn build_cut_matrix(tree: &BinaryTree) -> CutMatrix {
    let n = tree.n();
    let rows = tree.edge_count();
    let cols = pair_count(n);
    let mut entries = Vec::with_capacity(rows * cols);
    for e in 0..rows {
        let mask = tree.cut_mask(e);
        entries.extend(pairs(n).map(|(i, j)| u8::from((mask >> i & 1) != (mask >> j & 1))));
    }
    CutMatrix {
        n,
        rows,
        cols,
        entries,
    }
}

/// Rank over the rationals by exact Gaussian elimination. The pivot in each
/// column is the candidate with the largest absolute numerator.
pub fn rational_rank(matrix: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<Rational>> = matrix
        .iter()
        .map(|row| row.iter().map(|&v| Rational::from_integer(v.into())).collect())
        .collect();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let pivot = (rank..rows)
            .filter(|&r| !a[r][col].is_zero())
            .max_by(|&x, &y| a[x][col].numer().abs().cmp(&a[y][col].numer().abs()).then(y.cmp(&x)));
        let Some(pivot) = pivot else { continue };
        a.swap(rank, pivot);
        let head = a[rank][col].clone();
        for r in rank + 1..rows {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] / &head;
            for c in col..cols {
                let delta = &factor * &a[rank][c];
                a[r][c] -= delta;
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trees::{caterpillar, enumerate_topologies, snowflake};

    #[test]
    fn four_leaf_matrix() {
        let m = build_cut_matrix(&caterpillar(4).unwrap());
        let expected = vec![
            vec![1, 1, 1, 0, 0, 0],
            vec![1, 0, 0, 1, 1, 0],
            vec![0, 1, 0, 1, 0, 1],
            vec![0, 0, 1, 0, 1, 1],
            vec![0, 1, 1, 1, 1, 0],
        ];
        assert_eq!(m.to_rows(), expected);
        assert_eq!(m.rank(), 5);
        assert!(m.to_text().starts_with("(1,2) (1,3) (1,4) (2,3) (2,4) (3,4)\n1 1 1 0 0 0\n"));
    }

    #[test]
    fn two_leaf_matrix_is_a_single_one() {
        let two = crate::trees::BinaryTree::parse_newick("(1,2);").unwrap();
        let m = build_cut_matrix(&two);
        assert_eq!(m.to_rows(), vec![vec![1]]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn rank_of_small_matrices() {
        assert_eq!(rational_rank(&[vec![1, 2], vec![2, 4]]), 1);
        assert_eq!(rational_rank(&[vec![0, 0], vec![0, 0]]), 0);
        assert_eq!(rational_rank(&[vec![1, 1, 0], vec![1, 0, 1], vec![0, 1, 1]]), 3);
        assert_eq!(rational_rank(&[vec![1, 1, 0], vec![1, 0, 1], vec![0, 1, -1]]), 2);
    }

    #[test]
    fn full_rank_for_every_six_leaf_topology() {
        for t in enumerate_topologies(6).unwrap() {
            assert_eq!(build_cut_matrix(&t).rank(), 9);
        }
    }

    #[test]
    fn columns_are_path_indicators_and_rows_count_crossings() {
        for t in enumerate_topologies(6).unwrap().iter().chain([&snowflake(6).unwrap()]) {
            let m = build_cut_matrix(t);
            for (col, (i, j)) in pairs(6).enumerate() {
                let path = t.path_edges(i, j).unwrap();
                let indicator: Vec<u8> = (0..m.rows()).map(|e| u8::from(path.contains(&e))).collect();
                assert_eq!(m.column(col), indicator);
            }
            for e in 0..m.rows() {
                let cut = t.edge_cut(e).unwrap();
                let ones: usize = m.row(e).iter().map(|&v| v as usize).sum();
                assert_eq!(ones, cut.side1.len() * cut.side2.len());
                if e < 6 {
                    assert_eq!(ones, 5);
                }
            }
        }
    }
}
