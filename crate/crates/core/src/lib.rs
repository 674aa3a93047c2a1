//! Minimal parametric fillings of finite pseudo-metric spaces.
//!
//! For a binary tree type `G` with boundary `{1..n}`, the weight of the
//! minimal (generalized) parametric filling equals the maximum of the linear
//! form `H(λ) = Σ d_ij λ_ij` over the vertices of the polyhedron
//! `Λ_G = {λ ≥ 0 : C(G) λ = 1}`, where `C(G)` is the cut matrix of the
//! complete graph induced by the edges of `G`. This crate:
//!
//! - models pseudo-metric spaces with exact rational distances ([`metric`]);
//! - enumerates labeled binary trees and their cuts ([`trees`], [`cuts`]);
//! - enumerates the vertices of `Λ_G` exactly ([`polytope`]);
//! - reconstructs the multi-tour behind each vertex ([`tours`]);
//! - computes `mpf` and `mf`, and emits closed-form weight formulas
//!   ([`fillings`]);
//! - certifies every answer with an independent exact simplex ([`simplex`]).
//!
//! All arithmetic on the solve path is exact; there are no tolerances.

pub mod cuts;
pub mod fillings;
pub mod fixtures;
pub mod metric;
pub mod polytope;
pub mod random;
pub mod rational;
pub mod simplex;
pub mod tours;
pub mod trees;
pub mod verify;

mod error;

pub use cuts::{build_cut_matrix, rational_rank, CutMatrix};
pub use error::{Error, Result};
pub use fillings::{
    emit_formula, is_filling, mf, mf_equality_check, mpf_dual, mpf_primal, FillingResult,
    FormulaDocument, MinimalFilling, WeightedTree,
};
pub use metric::{pair_index, parse_metric, render_metric, MetricSpace};
pub use polytope::{enumerate_vertices, max_basis_determinant, vertex_multiplicity, DualVertex};
pub use rational::Rational;
pub use simplex::{solve, to_standard_form, GeneralLp, LpOutcome, StandardLp};
pub use tours::{multi_perimeter, tour_from_vertex, validate_multitour, MultiTour};
pub use trees::{enumerate_topologies, BinaryTree, Cut};
