//! Multi-tours: cyclic sequences over the boundary matched with a tree.

use std::fmt::{self, Write as _};

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::metric::{pair_col, pair_count, pairs, MetricSpace};
use crate::polytope::DualVertex;
use crate::rational::Rational;
use crate::trees::BinaryTree;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TourError {
    #[error("edge multigraph is disconnected; components {components:?}")]
    Disconnected { components: Vec<Vec<usize>> },
    #[error("point {point} has degree {degree}, expected {expected}")]
    Degree {
        point: usize,
        degree: u64,
        expected: u64,
    },
    #[error("vertex has {found} coordinates, expected {expected}")]
    Dimension { found: usize, expected: usize },
    #[error("tour of length {len} is not a multiple of n = {n}")]
    Length { len: usize, n: usize },
    #[error("label {label} occurs {count} times, expected {k}")]
    Occurrences { label: usize, count: usize, k: usize },
    #[error("label {label} is outside 1..={n}")]
    Label { label: usize, n: usize },
    #[error("consecutive repeat of label {label} at position {pos}")]
    Repeat { label: usize, pos: usize },
    #[error("not matched with the tree: edge {edge} is crossed {count} times, edge 1 {first} times")]
    Unmatched {
        edge: usize,
        count: usize,
        first: usize,
    },
    #[error("crossing count {count} is odd")]
    OddCrossing { count: usize },
    #[error("tour multiplicity m = {m} differs from cyclic-order multiplicity k = {k}")]
    MultiplicityMismatch { m: usize, k: usize },
}

/// A closed walk `π: Z_{nk} -> {0..n}` with every point visited `k` times.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiTour {
    /// Cyclic sequence of 0-based labels.
    pub sequence: Vec<usize>,
    pub k: usize,
    /// Edge counts `w^π` in lexicographic pair order.
    pub w: Vec<u64>,
}

impl MultiTour {
    /// Builds a tour from a cyclic sequence, deriving `k` and `w`.
    pub fn from_sequence(n: usize, sequence: Vec<usize>) -> Result<Self, TourError> {
        check_cyclic_order(n, &sequence)?;
        let k = sequence.len() / n;
        let w = walk_counts(n, &sequence);
        Ok(Self { sequence, k, w })
    }

    pub fn n(&self) -> usize {
        self.sequence.len() / self.k
    }

    /// The sequence traversed twice, a multi-tour of double multiplicity.
    pub fn doubled(&self) -> Self {
        let mut sequence = self.sequence.clone();
        sequence.extend_from_slice(&self.sequence);
        Self {
            sequence,
            k: 2 * self.k,
            w: self.w.iter().map(|c| 2 * c).collect(),
        }
    }

    /// `1/2 (d12 + d14 + d23 + d34)`.
    pub fn perimeter_expression(&self) -> String {
        perimeter_text(self.n(), self.k as u64, &self.w)
    }

    pub fn perimeter_latex(&self) -> String {
        perimeter_latex(self.n(), self.k as u64, &self.w)
    }
}

impl fmt::Display for MultiTour {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.sequence.iter().map(|l| (l + 1).to_string()).collect();
        write!(f, "k={}: {}", self.k, labels.join("-"))
    }
}

fn walk_counts(n: usize, sequence: &[usize]) -> Vec<u64> {
    let mut w = vec![0u64; pair_count(n)];
    let len = sequence.len();
    for pos in 0..len {
        let (a, b) = (sequence[pos], sequence[(pos + 1) % len]);
        if a != b {
            w[pair_col(a.min(b), a.max(b), n)] += 1;
        }
    }
    w
}

fn check_cyclic_order(n: usize, sequence: &[usize]) -> Result<(), TourError> {
    let len = sequence.len();
    if n == 0 || len == 0 || len % n != 0 {
        return Err(TourError::Length { len, n });
    }
    let k = len / n;
    let mut counts = vec![0usize; n];
    for (pos, &label) in sequence.iter().enumerate() {
        if label >= n {
            return Err(TourError::Label { label: label + 1, n });
        }
        counts[label] += 1;
        if label == sequence[(pos + 1) % len] {
            return Err(TourError::Repeat {
                label: label + 1,
                pos: pos + 1,
            });
        }
    }
    if let Some((label, &count)) = counts.iter().enumerate().find(|(_, &c)| c != k) {
        return Err(TourError::Occurrences {
            label: label + 1,
            count,
            k,
        });
    }
    Ok(())
}

fn term_symbol(i: usize, j: usize, n: usize) -> String {
    if n < 10 {
        format!("{}{}", i + 1, j + 1)
    } else {
        format!("{},{}", i + 1, j + 1)
    }
}

/// Multi-perimeter as text: `1/(2k) (c d_ij + ...)`.
pub fn perimeter_text(n: usize, k: u64, w: &[u64]) -> String {
    let terms: Vec<String> = pairs(n)
        .zip(w)
        .filter(|(_, &c)| c > 0)
        .map(|((i, j), &c)| {
            let sym = format!("d{}", term_symbol(i, j, n));
            if c == 1 {
                sym
            } else {
                format!("{c} {sym}")
            }
        })
        .collect();
    format!("1/{} ({})", 2 * k, terms.join(" + "))
}

/// Multi-perimeter in LaTeX: `\frac{1}{2}\big(d_{12}+d_{14}+\dots\big)`.
pub fn perimeter_latex(n: usize, k: u64, w: &[u64]) -> String {
    let mut body = String::new();
    for ((i, j), &c) in pairs(n).zip(w) {
        if c == 0 {
            continue;
        }
        if !body.is_empty() {
            body.push('+');
        }
        if c > 1 {
            let _ = write!(body, "{c}");
        }
        let _ = write!(body, "d_{{{}}}", term_symbol(i, j, n));
    }
    format!("\\frac{{1}}{{{}}}\\big({body}\\big)", 2 * k)
}

/// Reconstructs the multi-tour behind a vertex of `Λ_G`: the multigraph with
/// `w = 2k·λ` parallel edges is Eulerian, and an Euler circuit (starting at
/// point 1, always taking the smallest available neighbor) is the tour.
pub fn tour_from_vertex(vertex: &DualVertex, n: usize) -> Result<MultiTour, TourError> {
    if vertex.coords.len() != pair_count(n) {
        return Err(TourError::Dimension {
            found: vertex.coords.len(),
            expected: pair_count(n),
        });
    }
    let w = vertex.edge_counts();
    let k = vertex.multiplicity;
    tour_from_counts(n, k, &w)
}

/// Euler circuit of the multigraph with edge counts `w`; every point must
/// have degree `2k`.
pub fn tour_from_counts(n: usize, k: u64, w: &[u64]) -> Result<MultiTour, TourError> {
    let mut remaining = vec![vec![0u64; n]; n];
    let mut degree = vec![0u64; n];
    for ((i, j), &c) in pairs(n).zip(w) {
        remaining[i][j] = c;
        remaining[j][i] = c;
        degree[i] += c;
        degree[j] += c;
    }
    if let Some((point, &deg)) = degree.iter().enumerate().find(|(_, &d)| d != 2 * k) {
        return Err(TourError::Degree {
            point: point + 1,
            degree: deg,
            expected: 2 * k,
        });
    }
    let components = components(&remaining);
    if components.len() > 1 {
        return Err(TourError::Disconnected {
            components: components
                .into_iter()
                .map(|c| c.into_iter().map(|v| v + 1).collect())
                .collect(),
        });
    }

    // Hierholzer
    let mut stack = vec![0usize];
    let mut circuit = Vec::with_capacity(n * k as usize + 1);
    while let Some(&v) = stack.last() {
        match (0..n).find(|&u| remaining[v][u] > 0) {
            Some(u) => {
                remaining[v][u] -= 1;
                remaining[u][v] -= 1;
                stack.push(u);
            }
            None => circuit.push(stack.pop().expect("nonempty")),
        }
    }
    circuit.reverse();
    circuit.pop();
    debug_assert_eq!(circuit.first(), Some(&0));

    let tour = MultiTour::from_sequence(n, circuit)?;
    debug_assert_eq!(tour.w, w);
    Ok(tour)
}

fn components(adj: &[Vec<u64>]) -> Vec<Vec<usize>> {
    let n = adj.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut idx = 0;
        while idx < comp.len() {
            let v = comp[idx];
            idx += 1;
            for u in 0..n {
                if adj[v][u] > 0 && !seen[u] {
                    seen[u] = true;
                    comp.push(u);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Checks that `tour` is matched with `tree`: every tree edge lies on the
/// same number `2m` of consecutive leaf-to-leaf paths. Returns `m`, which
/// must also equal the cyclic-order multiplicity `k`.
pub fn validate_multitour(tree: &BinaryTree, tour: &MultiTour) -> Result<usize, TourError> {
    let n = tree.n();
    check_cyclic_order(n, &tour.sequence)?;
    let k = tour.sequence.len() / n;
    let len = tour.sequence.len();
    let mut crossings = vec![0usize; tree.edge_count()];
    for pos in 0..len {
        let (a, b) = (tour.sequence[pos], tour.sequence[(pos + 1) % len]);
        for e in 0..tree.edge_count() {
            let mask = tree.cut_mask(e);
            if (mask >> a & 1) != (mask >> b & 1) {
                crossings[e] += 1;
            }
        }
    }
    let first = crossings[0];
    if let Some((edge, &count)) = crossings.iter().enumerate().find(|(_, &c)| c != first) {
        return Err(TourError::Unmatched {
            edge: edge + 1,
            count,
            first,
        });
    }
    if first % 2 != 0 {
        return Err(TourError::OddCrossing { count: first });
    }
    let m = first / 2;
    if m != k {
        return Err(TourError::MultiplicityMismatch { m, k });
    }
    Ok(m)
}

/// Length of the closed walk divided by `2k`.
pub fn multi_perimeter(tour: &MultiTour, space: &MetricSpace) -> Rational {
    let len = tour.sequence.len();
    let total: Rational = (0..len)
        .map(|pos| space.dist(tour.sequence[pos], tour.sequence[(pos + 1) % len]).clone())
        .fold(Rational::zero(), |acc, d| acc + d);
    total / Rational::from_integer(BigInt::from(2 * tour.k))
}

/// Canonical form up to rotation and reversal, for display deduplication.
pub fn canonical_rotation(sequence: &[usize]) -> Vec<usize> {
    let len = sequence.len();
    let mut best: Option<Vec<usize>> = None;
    for start in 0..len {
        let forward: Vec<usize> = (0..len).map(|t| sequence[(start + t) % len]).collect();
        let backward: Vec<usize> = (0..len).map(|t| sequence[(start + len - t) % len]).collect();
        for cand in [forward, backward] {
            if best.as_ref().map_or(true, |b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    best.unwrap_or_default()
}
