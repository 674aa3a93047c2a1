//! Minimal filling: the least parametric filling over all tree types.
//!
//!     cargo run --release --example minimal_filling -- examples/data/clusters6.txt

use std::path::PathBuf;

use minfill::metric::load_metric;
use minfill::mf;

fn main() -> minfill::Result<()> {
    let path = std::env::args()
        .nth(1)
        .map_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/data/clusters6.txt"), PathBuf::from);
    let space = load_metric(&path, true)?;
    let best = mf(&space)?;
    if let Some(labels) = space.labels() {
        println!("points: {}", labels.join(" "));
    }
    print!("{}", best.result.to_text());
    println!("{}", serde_json::to_string_pretty(&best.result.to_json()).expect("serializable"));
    Ok(())
}
