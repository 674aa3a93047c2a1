//! Every vertex of the dual polyhedron is a multi-tour of the tree: its
//! closed walk crosses every edge cut exactly 2k times.
//!
//!     cargo run --example multi_tours

use minfill::metric::line_metric;
use minfill::trees::shape_tree;
use minfill::{build_cut_matrix, enumerate_vertices, multi_perimeter, tour_from_vertex, validate_multitour, MultiTour};

fn main() -> minfill::Result<()> {
    let tree = shape_tree("snowflake", 6)?;
    let line = line_metric(6);
    for v in enumerate_vertices(&build_cut_matrix(&tree))? {
        let tour = tour_from_vertex(&v, 6)?;
        let m = validate_multitour(&tree, &tour)?;
        println!(
            "{tour:<32} m={m}  {}  = {} on the line",
            tour.perimeter_expression(),
            multi_perimeter(&tour, &line)
        );
    }

    // a cyclic order that does not fit the tree
    let crossed = MultiTour::from_sequence(4, vec![0, 2, 1, 3])?;
    let four = shape_tree("caterpillar", 4)?;
    println!("\n{crossed} on {four}: {}", validate_multitour(&four, &crossed).unwrap_err());
    Ok(())
}
