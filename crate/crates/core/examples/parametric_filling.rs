//! Minimal parametric filling of one tree type, computed through the dual
//! vertices and certified by the primal simplex.
//!
//!     cargo run --example parametric_filling -- examples/data/clusters6.txt "((1,2),((3,4),(5,6)));"

use std::path::PathBuf;

use minfill::fillings::mpf_primal;
use minfill::metric::load_metric;
use minfill::{is_filling, mpf_dual, BinaryTree};

fn main() -> minfill::Result<()> {
    let mut args = std::env::args().skip(1);
    let path = args
        .next()
        .map_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/data/clusters6.txt"), PathBuf::from);
    let newick = args.next().unwrap_or_else(|| "((1,2),((3,4),(5,6)));".into());
    let space = load_metric(&path, true)?;
    let tree = BinaryTree::parse_newick(&newick)?;

    let result = mpf_dual(&space, &tree)?;
    print!("{}", result.to_text());
    assert!(is_filling(&space, &result.optimal_omega)?);

    let (classical, omega) = mpf_primal(&space, &tree, true)?;
    println!("with non-negative weights: {classical} (optimizer total {})", omega.total());
    Ok(())
}
