//! Cut matrix of a tree: one row per edge, one column per boundary pair.
//!
//!     cargo run --example cut_matrix -- "((1,2),(3,(4,5)));"

use minfill::{build_cut_matrix, BinaryTree};

fn main() -> minfill::Result<()> {
    let newick = std::env::args().nth(1).unwrap_or_else(|| "((1,2),(3,(4,5)));".into());
    let tree = BinaryTree::parse_newick(&newick)?;
    for e in 0..tree.edge_count() {
        println!("edge {:>2}: {}", e + 1, tree.edge_cut(e)?);
    }
    let matrix = build_cut_matrix(&tree);
    println!("\n{}", matrix.to_text());
    println!("rank {} (2n-3 = {})", matrix.rank(), 2 * tree.n() - 3);
    println!("\n{}", matrix.to_latex());
    Ok(())
}
