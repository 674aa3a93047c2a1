//! Vertices of the dual polyhedron `Λ_G = {λ ≥ 0 : C(G) λ = 1}`.
//!
//! Every vertex is a basic feasible solution: pick `2n-3` linearly
//! independent columns of `C(G)`, solve the square system against the
//! all-ones vector, and keep the solution when it is non-negative. The
//! enumeration is exhaustive over column subsets. Square solves use
//! fraction-free (Bareiss) elimination in `i64`, which is exact here because
//! every intermediate value is a minor of a small 0/1 matrix.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::cuts::CutMatrix;
use crate::metric::{pair_col, pair_label};
use crate::rational::{common_denominator, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolytopeError {
    #[error("cut matrix has rank {rank}, expected full row rank {rows}")]
    RankDeficient { rank: usize, rows: usize },
}

/// An angular point of `Λ_G`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualVertex {
    /// `λ_ij` in lexicographic pair order.
    pub coords: Vec<Rational>,
    /// Sorted column indices of a witnessing basis.
    pub basis: Vec<usize>,
    /// Least `k >= 1` with `2k·λ` integral.
    pub multiplicity: u64,
}

#[derive(Debug, Serialize)]
pub struct VertexJson {
    pub coords: Vec<String>,
    pub multiplicity: u64,
    pub basis: Vec<String>,
}

impl DualVertex {
    pub fn new(coords: Vec<Rational>, basis: Vec<usize>) -> Self {
        let multiplicity = vertex_multiplicity(&coords);
        Self {
            coords,
            basis,
            multiplicity,
        }
    }

    /// `H(λ) = Σ d_ij λ_ij`.
    pub fn objective(&self, distances: &[Rational]) -> Rational {
        self.coords
            .iter()
            .zip(distances)
            .filter(|(l, _)| !l.is_zero())
            .map(|(l, d)| l * d)
            .sum()
    }

    /// Integer vector `2k·λ`, the edge counts of the matching multi-tour.
    pub fn edge_counts(&self) -> Vec<u64> {
        let scale = Rational::from_integer(BigInt::from(2 * self.multiplicity));
        self.coords
            .iter()
            .map(|c| {
                let v = c * &scale;
                debug_assert!(v.is_integer());
                u64::try_from(v.to_integer()).expect("edge count fits in u64")
            })
            .collect()
    }

    /// Checks `C·λ = 1`, `λ ≥ 0`, support within the basis, and that the
    /// basis columns are independent.
    pub fn is_certified_by(&self, matrix: &CutMatrix) -> bool {
        if self.coords.len() != matrix.cols() || self.basis.len() != matrix.rows() {
            return false;
        }
        if self.coords.iter().any(Signed::is_negative) {
            return false;
        }
        let feasible = (0..matrix.rows()).all(|r| {
            let sum: Rational = (0..matrix.cols())
                .filter(|&c| matrix.get(r, c) == 1)
                .map(|c| self.coords[c].clone())
                .sum();
            sum == Rational::from_integer(1.into())
        });
        let supported = self
            .coords
            .iter()
            .enumerate()
            .all(|(c, v)| v.is_zero() || self.basis.contains(&c));
        let cols = column_major(matrix);
        feasible && supported && basis_det(&cols, matrix.rows(), &self.basis) != 0
    }

    /// `"1/2: (1,0,1,1,0,1)"`: common denominator, then integer numerators.
    pub fn to_listing(&self) -> String {
        let denom = common_denominator(&self.coords);
        let scaled: Vec<String> = self
            .coords
            .iter()
            .map(|c| (c * Rational::from_integer(denom.clone())).to_integer().to_string())
            .collect();
        format!("1/{denom}: ({})", scaled.join(","))
    }

    pub fn to_json(&self, n: usize) -> VertexJson {
        VertexJson {
            coords: self.coords.iter().map(ToString::to_string).collect(),
            multiplicity: self.multiplicity,
            basis: self.basis.iter().map(|&c| pair_label(c, n)).collect(),
        }
    }
}

/// Least `k >= 1` such that `2k·coords` is an integer vector.
pub fn vertex_multiplicity(coords: &[Rational]) -> u64 {
    let denom = common_denominator(coords);
    let k = if denom.is_even() { denom / 2 } else { denom };
    u64::try_from(k).expect("multiplicity fits in u64")
}

fn column_major(matrix: &CutMatrix) -> Vec<Vec<i64>> {
    (0..matrix.cols())
        .map(|c| matrix.column(c).into_iter().map(i64::from).collect())
        .collect()
}

/// Bareiss elimination on `r x (r + extra)` row-major `a`. Returns the
/// signed determinant of the leading square block (0 when singular). After
/// success the block is upper triangular with `a[r-1][r-1] = ±det`.
fn bareiss(a: &mut [i64], r: usize, width: usize) -> i64 {
    let mut prev = 1i64;
    let mut sign = 1i64;
    for k in 0..r {
        let Some(p) = (k..r).find(|&p| a[p * width + k] != 0) else {
            return 0;
        };
        if p != k {
            for j in 0..width {
                a.swap(k * width + j, p * width + j);
            }
            sign = -sign;
        }
        let pivot = a[k * width + k];
        for i in k + 1..r {
            let lead = a[i * width + k];
            for j in k + 1..width {
                let v = a[i * width + j] * pivot - lead * a[k * width + j];
                debug_assert_eq!(v % prev, 0);
                a[i * width + j] = v / prev;
            }
            a[i * width + k] = 0;
        }
        prev = pivot;
    }
    sign * a[(r - 1) * width + (r - 1)]
}

fn basis_det(cols: &[Vec<i64>], r: usize, basis: &[usize]) -> i64 {
    let mut a = vec![0i64; r * r];
    for (j, &c) in basis.iter().enumerate() {
        for i in 0..r {
            a[i * r + j] = cols[c][i];
        }
    }
    bareiss(&mut a, r, r)
}

/// Solves `B x = 1` for the basis columns. Returns `D·x` and `D` where `D`
/// is the elimination's final pivot, or `None` when `B` is singular.
fn solve_basis(cols: &[Vec<i64>], r: usize, basis: &[usize], a: &mut Vec<i64>) -> Option<(Vec<i64>, i64)> {
    let width = r + 1;
    a.clear();
    a.resize(r * width, 0);
    for i in 0..r {
        for (j, &c) in basis.iter().enumerate() {
            a[i * width + j] = cols[c][i];
        }
        a[i * width + r] = 1;
    }
    if bareiss(a, r, width) == 0 {
        return None;
    }
    let d = a[(r - 1) * width + (r - 1)];
    // Cramer: d·x is integral, so back substitution stays in integers
    let mut y = vec![0i64; r];
    for i in (0..r).rev() {
        let mut acc = d * a[i * width + r];
        for j in i + 1..r {
            acc -= a[i * width + j] * y[j];
        }
        let diag = a[i * width + i];
        debug_assert_eq!(acc % diag, 0);
        y[i] = acc / diag;
    }
    Some((y, d))
}

/// Visits every `size`-subset of `start..end` appended to `prefix`, in
/// lexicographic order.
fn for_each_subset(prefix: &[usize], start: usize, end: usize, size: usize, mut visit: impl FnMut(&[usize])) {
    let mut idx: Vec<usize> = prefix.to_vec();
    let base = idx.len();
    if size == 0 {
        visit(&idx);
        return;
    }
    if end < start || end - start < size {
        return;
    }
    idx.extend(start..start + size);
    loop {
        visit(&idx);
        // advance the rightmost index that can still move
        let mut pos = size;
        while pos > 0 {
            let slot = base + pos - 1;
            if idx[slot] < end - (size - pos) - 1 {
                break;
            }
            pos -= 1;
        }
        if pos == 0 {
            return;
        }
        let slot = base + pos - 1;
        idx[slot] += 1;
        for t in slot + 1..base + size {
            idx[t] = idx[t - 1] + 1;
        }
    }
}

/// Prefixes used to split the subset space into parallel work units.
fn prefixes(m: usize, r: usize) -> Vec<Vec<usize>> {
    let depth = r.min(2);
    let mut out = Vec::new();
    for_each_subset(&[], 0, m, depth, |p| {
        // only prefixes that can still be completed
        if m - p[depth - 1] > r - depth {
            out.push(p.to_vec());
        }
    });
    out
}

fn complete_prefix(prefix: &[usize], m: usize, r: usize, visit: impl FnMut(&[usize])) {
    let start = prefix.last().map_or(0, |&l| l + 1);
    for_each_subset(prefix, start, m, r - prefix.len(), visit);
}

fn check_rank(matrix: &CutMatrix) -> Result<(), PolytopeError> {
    let rank = matrix.rank();
    if rank != matrix.rows() {
        return Err(PolytopeError::RankDeficient {
            rank,
            rows: matrix.rows(),
        });
    }
    Ok(())
}

type SmallRatio = Ratio<i64>;

/// All vertices of `Λ_G`, sorted lexicographically by coordinates. Each
/// vertex carries the lexicographically least basis that witnesses it.
pub fn enumerate_vertices(matrix: &CutMatrix) -> Result<Vec<DualVertex>, PolytopeError> {
    check_rank(matrix)?;
    let r = matrix.rows();
    let m = matrix.cols();
    let cols = column_major(matrix);

    let chunks: Vec<Vec<(Vec<SmallRatio>, Vec<usize>)>> = prefixes(m, r)
        .into_par_iter()
        .map(|prefix| {
            let mut found: Vec<(Vec<SmallRatio>, Vec<usize>)> = Vec::new();
            let mut scratch = Vec::new();
            complete_prefix(&prefix, m, r, |basis| {
                let Some((y, d)) = solve_basis(&cols, r, basis, &mut scratch) else {
                    return;
                };
                if y.iter().any(|&v| v != 0 && (v < 0) != (d < 0)) {
                    return;
                }
                let mut coords = vec![SmallRatio::zero(); m];
                for (&c, &v) in basis.iter().zip(&y) {
                    coords[c] = SmallRatio::new(v, d);
                }
                found.push((coords, basis.to_vec()));
            });
            found
        })
        .collect();

    let mut unique: BTreeMap<Vec<SmallRatio>, Vec<usize>> = BTreeMap::new();
    for (coords, basis) in chunks.into_iter().flatten() {
        unique
            .entry(coords)
            .and_modify(|b| {
                if basis < *b {
                    *b = basis.clone();
                }
            })
            .or_insert(basis);
    }
    Ok(unique
        .into_iter()
        .map(|(coords, basis)| {
            let coords = coords
                .into_iter()
                .map(|q| Rational::new(BigInt::from(*q.numer()), BigInt::from(*q.denom())))
                .collect();
            DualVertex::new(coords, basis)
        })
        .collect())
}

/// Largest `|det|` over all square column submatrices of a full-row-rank
/// cut matrix.
pub fn max_basis_determinant(matrix: &CutMatrix) -> Result<u64, PolytopeError> {
    check_rank(matrix)?;
    let r = matrix.rows();
    let m = matrix.cols();
    let cols = column_major(matrix);
    Ok(prefixes(m, r)
        .into_par_iter()
        .map(|prefix| {
            let mut best = 0u64;
            complete_prefix(&prefix, m, r, |basis| {
                best = best.max(basis_det(&cols, r, basis).unsigned_abs());
            });
            best
        })
        .max()
        .unwrap_or(0))
}

/// Transports vertices of `Λ_G` to `Λ_{σ(G)}` for a leaf relabeling `σ`
/// (leaf `l` becomes `sigma[l]`). The result is re-sorted; bases are mapped
/// columnwise and remain valid witnesses, though not necessarily the least.
pub fn relabel_vertices(vertices: &[DualVertex], n: usize, sigma: &[usize]) -> Vec<DualVertex> {
    let perm: Vec<usize> = crate::metric::pairs(n)
        .map(|(i, j)| {
            let (a, b) = (sigma[i].min(sigma[j]), sigma[i].max(sigma[j]));
            pair_col(a, b, n)
        })
        .collect();
    let mut out: Vec<DualVertex> = vertices
        .iter()
        .map(|v| {
            let mut coords = vec![Rational::zero(); v.coords.len()];
            for (c, value) in v.coords.iter().enumerate() {
                coords[perm[c]] = value.clone();
            }
            let mut basis: Vec<usize> = v.basis.iter().map(|&c| perm[c]).collect();
            basis.sort_unstable();
            DualVertex {
                coords,
                basis,
                multiplicity: v.multiplicity,
            }
        })
        .collect();
    out.sort_by(|a, b| a.coords.cmp(&b.coords));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cuts::build_cut_matrix;
    use crate::rational::{frac, int};
    use crate::trees::{caterpillar, enumerate_topologies};

    fn halves(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| frac(x, 2)).collect()
    }

    #[test]
    fn subsets_are_complete_and_ordered() {
        let mut seen = Vec::new();
        for_each_subset(&[], 0, 5, 3, |s| seen.push(s.to_vec()));
        assert_eq!(seen.len(), 10);
        assert_eq!(seen[0], vec![0, 1, 2]);
        assert_eq!(seen[9], vec![2, 3, 4]);
        assert!(seen.windows(2).all(|w| w[0] < w[1]));

        let mut via_prefix = Vec::new();
        for p in prefixes(7, 4) {
            complete_prefix(&p, 7, 4, |s| via_prefix.push(s.to_vec()));
        }
        let mut direct = Vec::new();
        for_each_subset(&[], 0, 7, 4, |s| direct.push(s.to_vec()));
        assert_eq!(via_prefix, direct);
    }

    #[test]
    fn bareiss_determinants() {
        let mut a = vec![1, 1, 0, 1, 0, 1, 0, 1, 1];
        assert_eq!(bareiss(&mut a, 3, 3), -2);
        let mut b = vec![0, 1, 1, 0];
        assert_eq!(bareiss(&mut b, 2, 2), -1);
        let mut c = vec![2, 0, 0, 3];
        assert_eq!(bareiss(&mut c, 2, 2), 6);
        let mut s = vec![1, 2, 2, 4];
        assert_eq!(bareiss(&mut s, 2, 2), 0);
    }

    #[test]
    fn four_leaf_segment() {
        let m = build_cut_matrix(&caterpillar(4).unwrap());
        let v = enumerate_vertices(&m).unwrap();
        let coords: Vec<_> = v.iter().map(|x| x.coords.clone()).collect();
        assert_eq!(coords, vec![halves(&[1, 0, 1, 1, 0, 1]), halves(&[1, 1, 0, 0, 1, 1])]);
        assert!(v.iter().all(|x| x.multiplicity == 1 && x.is_certified_by(&m)));
        assert_eq!(v[0].to_listing(), "1/2: (1,0,1,1,0,1)");
    }

    #[test]
    fn multiplicity_examples() {
        assert_eq!(vertex_multiplicity(&halves(&[1, 0, 1, 1, 0, 1])), 1);
        let quarter: Vec<Rational> = [2, 1, 0, 0, 1, 0, 1, 1, 0, 2, 0, 1, 1, 0, 2]
            .iter()
            .map(|&x| frac(x, 4))
            .collect();
        assert_eq!(vertex_multiplicity(&quarter), 2);
        assert_eq!(vertex_multiplicity(&[int(0), int(1)]), 1);
        assert_eq!(vertex_multiplicity(&[frac(1, 3)]), 3);
    }

    #[test]
    fn star_determinant() {
        let star = &enumerate_topologies(3).unwrap()[0];
        assert_eq!(max_basis_determinant(&build_cut_matrix(star)).unwrap(), 2);
    }

    /// Cofactor expansion; shares nothing with the elimination path.
    fn laplace_det(m: &[Vec<i64>]) -> i64 {
        if m.len() == 1 {
            return m[0][0];
        }
        (0..m.len())
            .map(|c| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, &v)| v).collect())
                    .collect();
                let sign = if c % 2 == 0 { 1 } else { -1 };
                sign * m[0][c] * laplace_det(&minor)
            })
            .sum()
    }

    fn brute_max_det(matrix: &CutMatrix) -> u64 {
        let rows = matrix.to_i64_rows();
        let mut best = 0;
        for_each_subset(&[], 0, matrix.cols(), matrix.rows(), |s| {
            let sub: Vec<Vec<i64>> = rows.iter().map(|r| s.iter().map(|&c| r[c]).collect()).collect();
            best = best.max(laplace_det(&sub).unsigned_abs());
        });
        best
    }

    #[test]
    fn four_leaf_determinant() {
        let m = build_cut_matrix(&caterpillar(4).unwrap());
        // six 5-column minors by cofactor expansion: 0, 4, 4, 4, 4, 0
        assert_eq!(brute_max_det(&m), 4);
        assert_eq!(max_basis_determinant(&m).unwrap(), 4);
        assert!(max_basis_determinant(&m).unwrap() <= 8);
    }

    #[test]
    fn determinant_agrees_with_cofactor_oracle() {
        for t in enumerate_topologies(5).unwrap() {
            let m = build_cut_matrix(&t);
            assert_eq!(max_basis_determinant(&m).unwrap(), brute_max_det(&m));
        }
    }

    #[test]
    fn rank_deficiency_is_reported() {
        // duplicate rows cannot come from a tree, but exercise the guard
        let m = build_cut_matrix(&caterpillar(4).unwrap());
        let mut rows = m.to_i64_rows();
        rows[1] = rows[0].clone();
        assert_eq!(crate::cuts::rational_rank(&rows), 4);
    }

    #[test]
    fn relabeled_vertices_match_direct_enumeration() {
        let cat = caterpillar(5).unwrap();
        let base = enumerate_vertices(&build_cut_matrix(&cat)).unwrap();
        for t in enumerate_topologies(5).unwrap() {
            let sigma = cat.isomorphism_to(&t).unwrap();
            let moved = relabel_vertices(&base, 5, &sigma);
            let direct = enumerate_vertices(&build_cut_matrix(&t)).unwrap();
            let a: Vec<_> = moved.iter().map(|v| &v.coords).collect();
            let b: Vec<_> = direct.iter().map(|v| &v.coords).collect();
            assert_eq!(a, b);
            let matrix = build_cut_matrix(&t);
            assert!(moved.iter().all(|v| v.is_certified_by(&matrix)));
        }
    }
}
