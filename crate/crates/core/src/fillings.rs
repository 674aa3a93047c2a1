//! Minimal parametric fillings and minimal fillings.
//!
//! `mpf_dual` maximizes `H(λ) = Σ d_ij λ_ij` over the enumerated vertices of
//! `Λ_G`; `mpf_primal` minimizes the total edge weight subject to the path
//! constraints with the simplex oracle. The two routes share no code beyond
//! the tree itself: the primal builds its constraints from explicit path
//! traversal, the dual from cut bitmasks.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::cuts::build_cut_matrix;
use crate::metric::{pairs, MetricSpace};
use crate::polytope::{enumerate_vertices, relabel_vertices, DualVertex, PolytopeError};
use crate::rational::{int, Rational};
use crate::simplex::{solve, GeneralLp, LpError, LpOutcome, Relation, StandardLp};
use crate::tours::{perimeter_latex, perimeter_text, tour_from_vertex, MultiTour, TourError};
use crate::trees::{enumerate_topologies, group_by_shape, BinaryTree, TreeError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FillingError {
    #[error("metric space has {space} points but the tree has {tree} boundary points")]
    SizeMismatch { space: usize, tree: usize },
    #[error("weight vector has {found} entries, tree has {expected} edges")]
    WeightCount { found: usize, expected: usize },
    #[error("duality gap: dual maximum {dual} != primal minimum {primal}")]
    DualityGap { dual: Rational, primal: Rational },
    #[error("filling LP reported {0}; this contradicts the existence of fillings")]
    Oracle(&'static str),
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error(transparent)]
    Tour(#[from] TourError),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error(transparent)]
    Tree(#[from] TreeError),
}

/// A tree with a rational weight on every edge (canonical edge order).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedTree {
    pub tree: BinaryTree,
    pub weights: Vec<Rational>,
}

impl WeightedTree {
    pub fn new(tree: BinaryTree, weights: Vec<Rational>) -> Result<Self, FillingError> {
        if weights.len() != tree.edge_count() {
            return Err(FillingError::WeightCount {
                found: weights.len(),
                expected: tree.edge_count(),
            });
        }
        Ok(Self { tree, weights })
    }

    pub fn uniform(tree: BinaryTree, weight: Rational) -> Self {
        let weights = vec![weight; tree.edge_count()];
        Self { tree, weights }
    }

    /// `ω(G)`, the sum of all edge weights.
    pub fn total(&self) -> Rational {
        self.weights.iter().fold(Rational::zero(), |acc, w| acc + w)
    }

    /// True for a classical filling candidate (`ω >= 0`).
    pub fn is_nonnegative(&self) -> bool {
        self.weights.iter().all(|w| !w.is_negative())
    }

    /// `d_ω(i, j)`: weight of the unique leaf-to-leaf path.
    pub fn path_weight(&self, i: usize, j: usize) -> Result<Rational, TreeError> {
        Ok(self
            .tree
            .path_edges(i, j)?
            .into_iter()
            .fold(Rational::zero(), |acc, e| acc + &self.weights[e]))
    }

    pub fn omega_json(&self) -> BTreeMap<String, String> {
        self.weights
            .iter()
            .enumerate()
            .map(|(e, w)| (format!("{}", e + 1), w.to_string()))
            .collect()
    }
}

/// The pair `(i, j)` (0-based) whose path weight falls furthest short of
/// `d_ij`, with that path weight. Ties go to the lexicographically first pair.
pub fn filling_violation(
    space: &MetricSpace,
    wt: &WeightedTree,
) -> Result<Option<(usize, usize, Rational)>, FillingError> {
    check_sizes(space, &wt.tree)?;
    let mut worst: Option<(Rational, usize, usize, Rational)> = None;
    for (i, j) in pairs(space.n()) {
        let w = wt.path_weight(i, j)?;
        let deficit = space.dist(i, j) - &w;
        if deficit.is_positive() && worst.as_ref().map_or(true, |(d, ..)| deficit > *d) {
            worst = Some((deficit, i, j, w));
        }
    }
    Ok(worst.map(|(_, i, j, w)| (i, j, w)))
}

/// True iff every boundary pair satisfies `d_ω(i, j) >= d_ij`.
pub fn is_filling(space: &MetricSpace, wt: &WeightedTree) -> Result<bool, FillingError> {
    Ok(filling_violation(space, wt)?.is_none())
}

fn check_sizes(space: &MetricSpace, tree: &BinaryTree) -> Result<(), FillingError> {
    if space.n() != tree.n() {
        return Err(FillingError::SizeMismatch {
            space: space.n(),
            tree: tree.n(),
        });
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FillingResult {
    pub tree: BinaryTree,
    /// `mpf_-(M, G)`.
    pub weight: Rational,
    pub witness_vertex: DualVertex,
    pub witness_tour: MultiTour,
    /// A primal optimizer with `Σ ω = weight`.
    pub optimal_omega: WeightedTree,
}

#[derive(Debug, Serialize)]
pub struct FillingJson {
    pub tree: String,
    pub weight: String,
    pub vertex: Vec<String>,
    pub tour: Vec<usize>,
    pub multiplicity: usize,
    pub perimeter: String,
    pub omega: BTreeMap<String, String>,
}

impl FillingResult {
    pub fn to_json(&self) -> FillingJson {
        FillingJson {
            tree: self.tree.to_newick(),
            weight: self.weight.to_string(),
            vertex: self.witness_vertex.coords.iter().map(ToString::to_string).collect(),
            tour: self.witness_tour.sequence.iter().map(|l| l + 1).collect(),
            multiplicity: self.witness_tour.k,
            perimeter: self.witness_tour.perimeter_expression(),
            omega: self.optimal_omega.omega_json(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "tree: {}", self.tree);
        let _ = writeln!(out, "weight: {}", self.weight);
        let _ = writeln!(out, "vertex: {}", self.witness_vertex.to_listing());
        let _ = writeln!(out, "tour: {}", self.witness_tour);
        let _ = writeln!(out, "perimeter: {}", self.witness_tour.perimeter_expression());
        let omega: Vec<String> = self
            .optimal_omega
            .weights
            .iter()
            .enumerate()
            .map(|(e, w)| format!("e{}={}", e + 1, w))
            .collect();
        let _ = writeln!(out, "omega: {}", omega.join(" "));
        out
    }
}

/// Maximum of `H` over `vertices` and the index of the first maximizer.
pub fn dual_maximum(space: &MetricSpace, vertices: &[DualVertex]) -> Option<(Rational, usize)> {
    let d = space.pair_vector();
    let mut best: Option<(Rational, usize)> = None;
    for (idx, v) in vertices.iter().enumerate() {
        let h = v.objective(&d);
        if best.as_ref().map_or(true, |(b, _)| h > *b) {
            best = Some((h, idx));
        }
    }
    best
}

/// `mpf_-(M, G)` through the vertices of `Λ_G`, cross-checked against the
/// primal simplex optimum.
pub fn mpf_dual(space: &MetricSpace, tree: &BinaryTree) -> Result<FillingResult, FillingError> {
    check_sizes(space, tree)?;
    let vertices = enumerate_vertices(&build_cut_matrix(tree))?;
    mpf_dual_with(space, tree, &vertices)
}

/// As [`mpf_dual`] with precomputed vertices of `Λ_G`.
pub fn mpf_dual_with(
    space: &MetricSpace,
    tree: &BinaryTree,
    vertices: &[DualVertex],
) -> Result<FillingResult, FillingError> {
    check_sizes(space, tree)?;
    let (weight, idx) = dual_maximum(space, vertices).ok_or(FillingError::Oracle("an empty dual polyhedron"))?;
    let witness_vertex = vertices[idx].clone();
    let witness_tour = tour_from_vertex(&witness_vertex, tree.n())?;
    let (primal, optimal_omega) = mpf_primal(space, tree, false)?;
    if primal != weight {
        return Err(FillingError::DualityGap { dual: weight, primal });
    }
    Ok(FillingResult {
        tree: tree.clone(),
        weight,
        witness_vertex,
        witness_tour,
        optimal_omega,
    })
}

/// The filling LP: minimize `Σ ω(e)` subject to `Σ_{e ∈ γ(i,j)} ω(e) >= d_ij`
/// for every pair, with `ω >= 0` iff `nonneg`.
pub fn filling_lp(space: &MetricSpace, tree: &BinaryTree, nonneg: bool) -> Result<GeneralLp, FillingError> {
    check_sizes(space, tree)?;
    let edges = tree.edge_count();
    let mut lp = GeneralLp::minimize(vec![int(1); edges]);
    for (i, j) in pairs(space.n()) {
        let mut coeffs = vec![Rational::zero(); edges];
        for e in tree.path_edges(i, j)? {
            coeffs[e] = int(1);
        }
        lp.constrain(coeffs, Relation::Ge, space.dist(i, j).clone());
    }
    for e in 0..edges {
        lp.set_free(e, !nonneg);
    }
    Ok(lp)
}

/// Exact `mpf_-(M, G)` (`nonneg = false`) or `mpf(M, G)` (`nonneg = true`)
/// from the simplex oracle, with an optimal weight function.
pub fn mpf_primal(
    space: &MetricSpace,
    tree: &BinaryTree,
    nonneg: bool,
) -> Result<(Rational, WeightedTree), FillingError> {
    let lp = filling_lp(space, tree, nonneg)?;
    match lp.solve()? {
        LpOutcome::Optimal { value, x } => Ok((value, WeightedTree::new(tree.clone(), x)?)),
        LpOutcome::Infeasible => Err(FillingError::Oracle("infeasible")),
        LpOutcome::Unbounded => Err(FillingError::Oracle("unbounded")),
    }
}

/// The dual LP as a standard-form problem: minimize `-Σ d_ij λ_ij` subject to
/// `C(G) λ = 1`, `λ >= 0`.
pub fn dual_lp(space: &MetricSpace, tree: &BinaryTree) -> Result<StandardLp, FillingError> {
    check_sizes(space, tree)?;
    let matrix = build_cut_matrix(tree);
    let a = (0..matrix.rows())
        .map(|r| matrix.row(r).iter().map(|&v| int(i64::from(v))).collect())
        .collect();
    Ok(StandardLp {
        a,
        b: vec![int(1); matrix.rows()],
        c: space.pair_vector().into_iter().map(|d| -d).collect(),
    })
}

/// `max H` over `Λ_G` by the simplex oracle, without enumerating vertices.
pub fn mpf_dual_simplex(space: &MetricSpace, tree: &BinaryTree) -> Result<Rational, FillingError> {
    match solve(&dual_lp(space, tree)?)? {
        LpOutcome::Optimal { value, .. } => Ok(-value),
        LpOutcome::Infeasible => Err(FillingError::Oracle("an infeasible dual")),
        LpOutcome::Unbounded => Err(FillingError::Oracle("an unbounded dual")),
    }
}

/// `Λ_G` for every labeled topology on `n` leaves. One tree per shape is
/// enumerated directly; the rest are transported by leaf relabeling (falling
/// back to direct enumeration should a shape key ever be shared by
/// non-isomorphic trees).
pub fn vertices_for_topologies(
    trees: &[BinaryTree],
) -> Result<Vec<Vec<DualVertex>>, FillingError> {
    let mut out: Vec<Option<Vec<DualVertex>>> = vec![None; trees.len()];
    for (_, members) in group_by_shape(trees) {
        let rep = &trees[members[0]];
        let base = enumerate_vertices(&build_cut_matrix(rep))?;
        let moved = members[1..]
            .par_iter()
            .map(|&idx| {
                let verts = match rep.isomorphism_to(&trees[idx]) {
                    Some(sigma) => relabel_vertices(&base, rep.n(), &sigma),
                    None => enumerate_vertices(&build_cut_matrix(&trees[idx]))?,
                };
                Ok((idx, verts))
            })
            .collect::<Result<Vec<_>, FillingError>>()?;
        for (idx, v) in moved {
            out[idx] = Some(v);
        }
        out[members[0]] = Some(base);
    }
    Ok(out.into_iter().map(|v| v.expect("every tree grouped")).collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalFilling {
    pub tree: BinaryTree,
    pub result: FillingResult,
}

fn pick_min(candidates: Vec<(Rational, String, usize)>) -> Option<(Rational, usize)> {
    candidates
        .into_iter()
        .min_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)))
        .map(|(w, _, idx)| (w, idx))
}

/// `mf(M)`: the least `mpf_-` over all labeled binary topologies; ties go to
/// the lexicographically least Newick string.
pub fn mf(space: &MetricSpace) -> Result<MinimalFilling, FillingError> {
    let trees = enumerate_topologies(space.n())?;
    let vertices = vertices_for_topologies(&trees)?;
    let candidates: Vec<(Rational, String, usize)> = trees
        .par_iter()
        .zip(vertices.par_iter())
        .enumerate()
        .map(|(idx, (tree, verts))| {
            let (w, _) = dual_maximum(space, verts).expect("Λ_G is nonempty");
            (w, tree.to_newick(), idx)
        })
        .collect();
    let (_, best) = pick_min(candidates).expect("at least one topology");
    let tree = trees[best].clone();
    let result = mpf_dual(space, &tree)?;
    Ok(MinimalFilling { tree, result })
}

/// Least primal optimum over all topologies, with the minimizing tree.
pub fn mf_primal(space: &MetricSpace, nonneg: bool) -> Result<(Rational, BinaryTree), FillingError> {
    let trees = enumerate_topologies(space.n())?;
    let candidates = trees
        .par_iter()
        .enumerate()
        .map(|(idx, tree)| mpf_primal(space, tree, nonneg).map(|(w, _)| (w, tree.to_newick(), idx)))
        .collect::<Result<Vec<_>, _>>()?;
    let (w, idx) = pick_min(candidates).expect("at least one topology");
    Ok((w, trees[idx].clone()))
}

/// Whether `min_G mpf_-(M, G) = min_G mpf(M, G)` holds exactly for `space`.
pub fn mf_equality_check(space: &MetricSpace) -> Result<bool, FillingError> {
    let (signed, _) = mf_primal(space, false)?;
    let (nonneg, _) = mf_primal(space, true)?;
    Ok(signed == nonneg)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormulaTerm {
    pub coords: Vec<String>,
    pub multiplicity: u64,
    pub text: String,
    pub latex: String,
}

/// Closed-form weight of the minimal parametric filling of one tree type:
/// the maximum of the listed multi-perimeters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormulaDocument {
    pub tree: String,
    pub n: usize,
    pub terms: Vec<FormulaTerm>,
}

impl FormulaDocument {
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "tree: {}\nmpf(M, G) = max of {} multi-perimeters:\n",
            self.tree,
            self.terms.len()
        );
        for term in &self.terms {
            let _ = writeln!(out, "  {}", term.text);
        }
        out
    }

    pub fn to_latex(&self) -> String {
        let mut out = format!("% tree {}\n\\[\n\\operatorname{{mpf}}_{{-}}(\\mathcal M, G) = \\max\\Big\\{{\n", self.tree);
        for (idx, term) in self.terms.iter().enumerate() {
            let sep = if idx + 1 == self.terms.len() { "" } else { ",\\\\" };
            let _ = writeln!(out, "  {}{sep}", term.latex);
        }
        out.push_str("\\Big\\}\n\\]\n");
        out
    }
}

pub fn emit_formula(tree: &BinaryTree) -> Result<FormulaDocument, FillingError> {
    let vertices = enumerate_vertices(&build_cut_matrix(tree))?;
    let n = tree.n();
    let terms = vertices
        .iter()
        .map(|v| {
            let w = v.edge_counts();
            FormulaTerm {
                coords: v.coords.iter().map(ToString::to_string).collect(),
                multiplicity: v.multiplicity,
                text: perimeter_text(n, v.multiplicity, &w),
                latex: perimeter_latex(n, v.multiplicity, &w),
            }
        })
        .collect();
    Ok(FormulaDocument {
        tree: tree.to_newick(),
        n,
        terms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::line_metric;
    use crate::rational::frac;
    use crate::simplex::to_standard_form;
    use crate::trees::caterpillar;

    #[test]
    fn filling_checks() {
        let cat = caterpillar(4).unwrap();
        let line = line_metric(4);
        assert!(is_filling(&line, &WeightedTree::uniform(cat.clone(), line.max_distance())).unwrap());
        let zero = MetricSpace::from_fn(4, true, |_, _| int(0)).unwrap();
        assert!(is_filling(&zero, &WeightedTree::uniform(cat.clone(), int(0))).unwrap());
        let quarter = WeightedTree::uniform(cat.clone(), frac(1, 4));
        assert!(!is_filling(&line, &quarter).unwrap());
        assert_eq!(filling_violation(&line, &quarter).unwrap(), Some((0, 3, frac(3, 4))));
        assert!(matches!(
            is_filling(&line_metric(5), &quarter),
            Err(FillingError::SizeMismatch { .. })
        ));
    }

    #[test]
    fn line_metric_on_caterpillar() {
        let r = mpf_dual(&line_metric(4), &caterpillar(4).unwrap()).unwrap();
        assert_eq!(r.weight, int(3));
        assert_eq!(r.optimal_omega.total(), int(3));
        assert_eq!(mpf_dual_simplex(&line_metric(4), &caterpillar(4).unwrap()).unwrap(), int(3));
        assert!(is_filling(&line_metric(4), &r.optimal_omega).unwrap());
    }

    #[test]
    fn standard_form_of_the_four_leaf_filling_lp() {
        let lp = filling_lp(&line_metric(4), &caterpillar(4).unwrap(), false).unwrap();
        let (std, _) = to_standard_form(&lp).unwrap();
        assert_eq!(std.rows(), 6);
        assert_eq!(std.cols(), 10 + 6);
    }

    #[test]
    fn three_points_have_half_perimeter() {
        let space = MetricSpace::from_fn(3, true, |i, j| int([0, 3, 4, 3, 0, 5, 4, 5, 0][i * 3 + j])).unwrap();
        let best = mf(&space).unwrap();
        assert_eq!(best.result.weight, int(6));
        assert_eq!(mf_primal(&space, true).unwrap().0, int(6));
    }

    #[test]
    fn zero_space() {
        let zero = MetricSpace::from_fn(5, true, |_, _| int(0)).unwrap();
        assert_eq!(mf(&zero).unwrap().result.weight, int(0));
        assert!(mf_equality_check(&zero).unwrap());
    }

    #[test]
    fn line_metric_minimum_uses_neighbor_pairs() {
        let best = mf(&line_metric(4)).unwrap();
        assert_eq!(best.result.weight, int(3));
        assert_eq!(best.tree.to_newick(), "((1,2),(3,4));");
        assert!(mf_equality_check(&line_metric(5)).unwrap());
    }

    #[test]
    fn four_leaf_formula() {
        let doc = emit_formula(&caterpillar(4).unwrap()).unwrap();
        let texts: Vec<&str> = doc.terms.iter().map(|t| t.text.as_str()).collect();
        assert_eq!(texts, ["1/2 (d12 + d14 + d23 + d34)", "1/2 (d12 + d13 + d24 + d34)"]);
        assert!(doc.to_latex().contains("\\frac{1}{2}\\big(d_{12}+d_{14}+d_{23}+d_{34}\\big)"));
    }
}
