//! Labeled binary trees: counts, shapes, moustaches and their elimination.
//!
//!     cargo run --example topologies -- 6

use minfill::trees::{enumerate_topologies, group_by_shape, topology_count};

fn main() -> minfill::Result<()> {
    let n: usize = std::env::args().nth(1).map_or(6, |a| a.parse().expect("leaf count"));
    let trees = enumerate_topologies(n)?;
    println!("{n} leaves: {} labeled trees ((2n-5)!! = {})", trees.len(), topology_count(n));

    for (key, members) in group_by_shape(&trees) {
        let t = &trees[members[0]];
        let pairs: Vec<String> = t.moustaches().iter().map(|(a, b)| format!("{{{},{}}}", a + 1, b + 1)).collect();
        println!(
            "shape {key:?}: {} labelings, e.g. {t} with moustaches {}",
            members.len(),
            pairs.join(" ")
        );
        if let Some(&(a, b)) = t.moustaches().first() {
            println!("    eliminating {{{},{}}} leaves {}", a + 1, b + 1, t.eliminate_moustache(a, b)?);
        }
    }
    Ok(())
}
