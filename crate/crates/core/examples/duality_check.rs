//! Strong duality and mf_- = mf on seeded random spaces, plus a search for
//! a tree where negative weights strictly help.
//!
//!     cargo run --release --example duality_check -- 42

use minfill::fillings::{mf_equality_check, mpf_dual_simplex, mpf_primal};
use minfill::random::metric_batch;
use minfill::trees::enumerate_topologies;
use minfill::mpf_dual;

fn main() -> minfill::Result<()> {
    let seed: u64 = std::env::args().nth(1).map_or(42, |a| a.parse().expect("seed"));
    let mut gap = None;
    for (idx, space) in metric_batch(seed, 30, &[4, 5]).iter().enumerate() {
        for tree in enumerate_topologies(space.n())? {
            let dual = mpf_dual(space, &tree)?.weight;
            assert_eq!(dual, mpf_dual_simplex(space, &tree)?);
            let classical = mpf_primal(space, &tree, true)?.0;
            if dual < classical && gap.is_none() {
                gap = Some((idx, tree.to_newick(), dual.clone(), classical));
            }
        }
        assert!(mf_equality_check(space)?);
    }
    println!("30 spaces: vertex maximum = primal minimum = dual simplex; mf_- = mf on each");
    match gap {
        Some((idx, tree, a, b)) => println!("space {idx}, tree {tree}: mpf_- = {a} < mpf = {b}"),
        None => println!("no tree with mpf_- < mpf among these spaces"),
    }
    Ok(())
}
