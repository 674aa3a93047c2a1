//! Closed-form weight of the minimal parametric filling of a tree type, as
//! the maximum of multi-perimeters.
//!
//!     cargo run --example weight_formulas -- 5 caterpillar

use minfill::emit_formula;
use minfill::trees::shape_tree;

fn main() -> minfill::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map_or(6, |a| a.parse().expect("leaf count"));
    let shape = args.next().unwrap_or_else(|| "snowflake".into());
    let doc = emit_formula(&shape_tree(&shape, n)?)?;
    println!("{}", doc.to_text());
    println!("{}", doc.to_latex());
    Ok(())
}
