//! Vertices of the dual polyhedron for the two six-leaf shapes, with their
//! multiplicities and the largest basis determinant.
//!
//!     cargo run --release --example dual_vertices

use minfill::trees::shape_tree;
use minfill::{build_cut_matrix, enumerate_vertices, max_basis_determinant};

fn main() -> minfill::Result<()> {
    for shape in ["caterpillar", "snowflake"] {
        let tree = shape_tree(shape, 6)?;
        let matrix = build_cut_matrix(&tree);
        let vertices = enumerate_vertices(&matrix)?;
        println!("{shape} {tree}: {} vertices", vertices.len());
        for v in &vertices {
            assert!(v.is_certified_by(&matrix));
            println!("  k={}  {}", v.multiplicity, v.to_listing());
        }
        println!("  largest basis determinant: {}\n", max_basis_determinant(&matrix)?);
    }
    Ok(())
}
