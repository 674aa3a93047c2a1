//! Self-check suite: golden fixtures, the rank lemma, multiplicity bounds,
//! strong duality against the simplex oracle, `mf_- = mf`, tour coherence
//! and filling certificates.
//!
//! Checks 4 and 6 are slow and run only when requested.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::cuts::build_cut_matrix;
use crate::fillings::{
    dual_maximum, emit_formula, is_filling, mpf_dual_simplex, mpf_primal, vertices_for_topologies,
};
use crate::fixtures::{self, Fixture};
use crate::metric::MetricSpace;
use crate::polytope::{enumerate_vertices, max_basis_determinant, DualVertex};
use crate::random::metric_batch;
use crate::rational::{frac, Rational};
use crate::tours::{multi_perimeter, tour_from_vertex, validate_multitour};
use crate::trees::{enumerate_topologies, shape_tree, BinaryTree};

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub seed: u64,
    pub slow: bool,
    /// Random spaces for the strong-duality sweep.
    pub duality_spaces: usize,
    /// Random spaces for the `mf_- = mf` sweep.
    pub mf_spaces: usize,
    /// Random metrics per fixture vertex in the tour check.
    pub tour_metrics: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            seed: 2024,
            slow: false,
            duality_spaces: 200,
            mf_spaces: 100,
            tour_metrics: 20,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CheckReport {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl CheckReport {
    pub fn line(&self) -> String {
        format!(
            "[{}] {:>2} {} ({:.2}s): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed.as_secs_f64(),
            self.detail
        )
    }
}

type Check = Result<String, String>;

fn timed(id: u8, name: &'static str, f: impl FnOnce() -> Check) -> CheckReport {
    let start = Instant::now();
    let outcome = f();
    let elapsed = start.elapsed();
    let (passed, detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    CheckReport {
        id,
        name,
        passed,
        detail,
        elapsed,
    }
}

fn fixture_vertex(denominator: u64, numerators: &[u64]) -> Vec<Rational> {
    numerators
        .iter()
        .map(|&v| frac(v as i64, denominator as i64))
        .collect()
}

fn fixture_tree(f: &Fixture) -> Result<BinaryTree, String> {
    BinaryTree::parse_newick(f.newick).map_err(|e| format!("{}: {e}", f.name))
}

/// Matrix, vertex set, multiplicities and formulas of one worked example.
pub fn check_fixture(f: &Fixture) -> Check {
    let tree = fixture_tree(f)?;
    let matrix = build_cut_matrix(&tree);
    let expected: Vec<Vec<u8>> = f.matrix.iter().map(|r| r.to_vec()).collect();
    if matrix.to_rows() != expected {
        return Err(format!("{}: cut matrix differs", f.name));
    }
    let vertices = enumerate_vertices(&matrix).map_err(|e| e.to_string())?;
    let got: BTreeSet<Vec<Rational>> = vertices.iter().map(|v| v.coords.clone()).collect();
    let want: Vec<Vec<Rational>> = f.vertices.iter().map(|(d, v)| fixture_vertex(*d, v)).collect();
    if vertices.len() != want.len() || got != want.iter().cloned().collect() {
        return Err(format!(
            "{}: {} vertices enumerated, {} expected, or sets differ",
            f.name,
            vertices.len(),
            want.len()
        ));
    }
    let doc = emit_formula(&tree).map_err(|e| e.to_string())?;
    for (v, term) in vertices.iter().zip(&doc.terms) {
        let idx = want.iter().position(|w| *w == v.coords).expect("sets agree");
        if term.latex != f.formulas[idx] {
            return Err(format!(
                "{}: formula for vertex {} is {}, expected {}",
                f.name,
                idx + 1,
                term.latex,
                f.formulas[idx]
            ));
        }
        let k = f.vertices[idx].0 / 2;
        if v.multiplicity != k {
            return Err(format!("{}: vertex {} has multiplicity {}", f.name, idx + 1, v.multiplicity));
        }
    }
    Ok(format!("{} vertices", vertices.len()))
}

/// Both six-leaf examples, and the vertices they share.
pub fn check_six() -> Check {
    let a = check_fixture(&fixtures::SIX_CATERPILLAR)?;
    let b = check_fixture(&fixtures::SIX_SNOWFLAKE)?;
    let doubled = fixtures::SIX_SNOWFLAKE.vertices.iter().filter(|(d, _)| *d == 4).count();
    if doubled != 4 {
        return Err(format!("{doubled} vertices of multiplicity 2"));
    }
    let cat = enumerate_vertices(&build_cut_matrix(&fixture_tree(&fixtures::SIX_CATERPILLAR)?))
        .map_err(|e| e.to_string())?;
    let snow = enumerate_vertices(&build_cut_matrix(&fixture_tree(&fixtures::SIX_SNOWFLAKE)?))
        .map_err(|e| e.to_string())?;
    let cat: BTreeSet<_> = cat.into_iter().map(|v| v.coords).collect();
    let snow: BTreeSet<_> = snow.into_iter().map(|v| v.coords).collect();
    let shared: Vec<_> = cat.intersection(&snow).cloned().collect();
    let expected: BTreeSet<Vec<Rational>> = fixtures::SHARED_SIX
        .iter()
        .map(|&(i, _)| {
            let (d, v) = fixtures::SIX_CATERPILLAR.vertices[i];
            fixture_vertex(d, v)
        })
        .collect();
    let mirrored = fixtures::SHARED_SIX.iter().all(|&(i, j)| {
        fixtures::SIX_CATERPILLAR.vertices[i] == fixtures::SIX_SNOWFLAKE.vertices[j]
    });
    if shared.into_iter().collect::<BTreeSet<_>>() != expected || !mirrored {
        return Err("shared vertices differ from 1,2,5,6 ~ 7,8,11,12".into());
    }
    Ok(format!("caterpillar {a}, snowflake {b}, 4 shared"))
}

pub fn check_seven() -> Check {
    let mut parts = Vec::new();
    for (shape, count, max_k) in fixtures::SEVEN_COUNTS {
        let tree = shape_tree(shape, 7).map_err(|e| e.to_string())?;
        let vertices = enumerate_vertices(&build_cut_matrix(&tree)).map_err(|e| e.to_string())?;
        let k = vertices.iter().map(|v| v.multiplicity).max().unwrap_or(0);
        if vertices.len() != count || k != max_k {
            return Err(format!("{shape}: {} vertices, max multiplicity {k}", vertices.len()));
        }
        parts.push(format!("{shape} {count} (max k={k})"));
    }
    Ok(parts.join(", "))
}

pub fn check_rank(max_n: usize) -> Check {
    let mut total = 0;
    for n in 3..=max_n {
        let trees = enumerate_topologies(n).map_err(|e| e.to_string())?;
        let bad = trees
            .par_iter()
            .find_any(|t| build_cut_matrix(t).rank() != 2 * n - 3);
        if let Some(t) = bad {
            return Err(format!("rank deficient for {t}"));
        }
        total += trees.len();
    }
    Ok(format!("{total} trees, n=3..{max_n}"))
}

/// Vertex multiplicities for every labeled topology on `3..=max_n` leaves,
/// and largest basis determinants for `3..=det_n`.
pub fn check_multiplicity(max_n: usize, det_n: usize) -> Check {
    let mut summary = Vec::new();
    for n in 3..=max_n {
        let bound = 1u64 << (2 * n - 5);
        let trees = enumerate_topologies(n).map_err(|e| e.to_string())?;
        let vertices = vertices_for_topologies(&trees).map_err(|e| e.to_string())?;
        let k = vertices.iter().flatten().map(|v| v.multiplicity).max().unwrap_or(0);
        if k > bound {
            return Err(format!("n={n}: multiplicity {k} exceeds {bound}"));
        }
        let mut line = format!("n={n}: k<={k}");
        if n <= det_n {
            let det = trees
                .par_iter()
                .map(|t| max_basis_determinant(&build_cut_matrix(t)))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| e.to_string())?
                .into_iter()
                .max()
                .unwrap_or(0);
            if det > bound {
                return Err(format!("n={n}: determinant {det} exceeds {bound}"));
            }
            line.push_str(&format!(" det<={det}"));
        }
        summary.push(format!("{line} (bound {bound})"));
    }
    Ok(summary.join("; "))
}

/// Outcome of the strong-duality and `mf_- = mf` sweeps, including the
/// filling certificates of every recovered optimizer.
#[derive(Debug, Clone, Default)]
pub struct SweepStats {
    pub instances: usize,
    pub failures: Vec<String>,
    pub certificate_failures: Vec<String>,
    /// A space and tree with `mpf_- < mpf`, if one was met.
    pub strict_gap: Option<(MetricSpace, BinaryTree, Rational, Rational)>,
}

struct Family {
    trees: Vec<BinaryTree>,
    vertices: Vec<Vec<DualVertex>>,
}

fn families(sizes: &[usize]) -> Result<Vec<(usize, Family)>, String> {
    sizes
        .iter()
        .map(|&n| {
            let trees = enumerate_topologies(n).map_err(|e| e.to_string())?;
            let vertices = vertices_for_topologies(&trees).map_err(|e| e.to_string())?;
            Ok((n, Family { trees, vertices }))
        })
        .collect()
}

/// For every space and every topology: vertex maximum = primal minimum with
/// free weights = dual simplex maximum, the witness tour's multi-perimeter
/// equals the weight, and the primal optimizer is a filling.
pub fn duality_sweep(seed: u64, count: usize, sizes: &[usize]) -> Result<SweepStats, String> {
    let fams = families(sizes)?;
    let spaces = metric_batch(seed, count, sizes);
    let per_space: Vec<SweepStats> = spaces
        .par_iter()
        .enumerate()
        .map(|(idx, space)| {
            let fam = &fams.iter().find(|(n, _)| *n == space.n()).expect("size in family").1;
            let mut stats = SweepStats::default();
            for (tree, verts) in fam.trees.iter().zip(&fam.vertices) {
                stats.instances += 1;
                let tag = format!("space {idx}, tree {tree}");
                let (dual, at) = dual_maximum(space, verts).expect("nonempty");
                let primal = match mpf_primal(space, tree, false) {
                    Ok(p) => p,
                    Err(e) => {
                        stats.failures.push(format!("{tag}: {e}"));
                        continue;
                    }
                };
                let simplex = mpf_dual_simplex(space, tree);
                if primal.0 != dual || simplex.as_ref().ok() != Some(&dual) {
                    stats.failures.push(format!(
                        "{tag}: vertices {dual}, primal {}, dual simplex {simplex:?}",
                        primal.0
                    ));
                }
                match tour_from_vertex(&verts[at], space.n()) {
                    Ok(t) if multi_perimeter(&t, space) == dual => {}
                    other => stats.failures.push(format!("{tag}: witness tour {other:?}")),
                }
                let omega = primal.1;
                if !matches!(is_filling(space, &omega), Ok(true)) || omega.total() != dual {
                    stats.certificate_failures.push(format!("{tag}: optimizer is not a filling of weight {dual}"));
                }
            }
            stats
        })
        .collect();
    Ok(merge(per_space))
}

fn merge(parts: Vec<SweepStats>) -> SweepStats {
    let mut out = SweepStats::default();
    for p in parts {
        out.instances += p.instances;
        out.failures.extend(p.failures);
        out.certificate_failures.extend(p.certificate_failures);
        if out.strict_gap.is_none() {
            out.strict_gap = p.strict_gap;
        }
    }
    out
}

/// For every space: the least free-weight optimum over all topologies
/// equals the least non-negative one. Records the first `(space, tree)`
/// where the per-tree values differ.
pub fn mf_sweep(seed: u64, count: usize, sizes: &[usize]) -> Result<SweepStats, String> {
    let spaces = metric_batch(seed, count, sizes);
    let trees: Vec<(usize, Vec<BinaryTree>)> = sizes
        .iter()
        .map(|&n| enumerate_topologies(n).map(|t| (n, t)).map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    let per_space: Vec<SweepStats> = spaces
        .par_iter()
        .enumerate()
        .map(|(idx, space)| {
            let family = &trees.iter().find(|(n, _)| *n == space.n()).expect("size in family").1;
            let mut stats = SweepStats::default();
            let mut best_free: Option<Rational> = None;
            let mut best_nonneg: Option<Rational> = None;
            for tree in family {
                stats.instances += 1;
                let tag = format!("space {idx}, tree {tree}");
                let (free, nonneg) = match (mpf_primal(space, tree, false), mpf_primal(space, tree, true)) {
                    (Ok(a), Ok(b)) => (a, b),
                    (Err(e), _) | (_, Err(e)) => {
                        stats.failures.push(format!("{tag}: {e}"));
                        continue;
                    }
                };
                let omega = &nonneg.1;
                if !omega.is_nonnegative()
                    || omega.total() != nonneg.0
                    || !matches!(is_filling(space, omega), Ok(true))
                {
                    stats.certificate_failures.push(format!("{tag}: non-negative optimizer rejected"));
                }
                if free.0 > nonneg.0 {
                    stats.failures.push(format!("{tag}: free optimum {} above {}", free.0, nonneg.0));
                }
                if free.0 < nonneg.0 && stats.strict_gap.is_none() {
                    stats.strict_gap = Some((space.clone(), tree.clone(), free.0.clone(), nonneg.0.clone()));
                }
                best_free = Some(best_free.map_or(free.0.clone(), |b| b.min(free.0)));
                best_nonneg = Some(best_nonneg.map_or(nonneg.0.clone(), |b| b.min(nonneg.0)));
            }
            if best_free != best_nonneg {
                stats.failures.push(format!(
                    "space {idx}: mf_- = {best_free:?} but mf = {best_nonneg:?}"
                ));
            }
            stats
        })
        .collect();
    Ok(merge(per_space))
}

/// Tours of every fixture vertex: reconstruction succeeds, the crossing
/// count equals the multiplicity, and the multi-perimeter equals `H(λ)` on
/// `metrics` random spaces.
pub fn check_tours(seed: u64, metrics: usize) -> Check {
    let mut checked = 0;
    for f in fixtures::ALL {
        let tree = fixture_tree(&f)?;
        let n = f.n();
        let spaces = metric_batch(seed ^ n as u64, metrics, &[n]);
        for (idx, (d, v)) in f.vertices.iter().enumerate() {
            let vertex = DualVertex::new(fixture_vertex(*d, v), Vec::new());
            let tag = format!("{} vertex {}", f.name, idx + 1);
            let tour = tour_from_vertex(&vertex, n).map_err(|e| format!("{tag}: {e}"))?;
            let m = validate_multitour(&tree, &tour).map_err(|e| format!("{tag}: {e}"))?;
            if m as u64 != vertex.multiplicity {
                return Err(format!("{tag}: crossing count {m}, multiplicity {}", vertex.multiplicity));
            }
            for space in &spaces {
                if multi_perimeter(&tour, space) != vertex.objective(&space.pair_vector()) {
                    return Err(format!("{tag}: multi-perimeter differs from H"));
                }
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} vertices x {metrics} metrics"))
}

fn sweep_check(stats: &Result<SweepStats, String>, certificates: bool) -> Check {
    let stats = stats.as_ref().map_err(Clone::clone)?;
    let failures = if certificates {
        &stats.certificate_failures
    } else {
        &stats.failures
    };
    match failures.first() {
        None => Ok(format!("{} instances", stats.instances)),
        Some(first) => Err(format!("{} of {} failed; first: {first}", failures.len(), stats.instances)),
    }
}

/// Runs the suite: checks 1–3, 5, 7–10 always, 4 and 6 with `config.slow`.
pub fn run(config: &VerifyConfig) -> Vec<CheckReport> {
    let mut reports = vec![
        timed(1, "four-point golden", || check_fixture(&fixtures::FOUR)),
        timed(2, "five-point golden", || check_fixture(&fixtures::FIVE)),
        timed(3, "six-point golden", check_six),
    ];
    if config.slow {
        reports.push(timed(4, "seven-point vertex counts", check_seven));
    }
    reports.push(timed(5, "rank lemma", || check_rank(7)));
    if config.slow {
        reports.push(timed(6, "multiplicity bound", || check_multiplicity(7, 6)));
    }
    let mut duality = Err(String::new());
    let mut mf = Err(String::new());
    reports.push(timed(7, "strong duality", || {
        duality = duality_sweep(config.seed, config.duality_spaces, &[4, 5, 6]);
        sweep_check(&duality, false)
    }));
    reports.push(timed(8, "mf_- = mf", || {
        mf = mf_sweep(config.seed.wrapping_add(1), config.mf_spaces, &[4, 5]);
        let mut out = sweep_check(&mf, false)?;
        if let Ok(SweepStats { strict_gap: Some((_, tree, a, b)), .. }) = &mf {
            out.push_str(&format!("; strict gap on {tree}: {a} < {b}"));
        }
        Ok(out)
    }));
    reports.push(timed(9, "tour coherence", || check_tours(config.seed, config.tour_metrics)));
    reports.push(timed(10, "filling certificates", || {
        let a = sweep_check(&duality, true)?;
        let b = sweep_check(&mf, true)?;
        Ok(format!("{a} (free) + {b} (non-negative)"))
    }));
    reports
}
