//! The exact two-phase simplex on a small general-form LP.
//!
//!     cargo run --example exact_simplex

use minfill::rational::{frac, int};
use minfill::simplex::Relation;
use minfill::{to_standard_form, GeneralLp, LpOutcome};

fn main() -> minfill::Result<()> {
    // maximize 3x + 2y  s.t.  x + y <= 4,  x + 3y <= 6,  x - y >= -2/3,  x <= 3,  y free
    let mut lp = GeneralLp::maximize(vec![int(3), int(2)]);
    lp.constrain(vec![int(1), int(1)], Relation::Le, int(4))
        .constrain(vec![int(1), int(3)], Relation::Le, int(6))
        .constrain(vec![int(1), int(-1)], Relation::Ge, frac(-2, 3))
        .constrain(vec![int(1), int(0)], Relation::Le, int(3))
        .set_free(1, true);

    let (standard, map) = to_standard_form(&lp)?;
    println!("standard form: {} rows x {} columns, columns {:?}", standard.rows(), standard.cols(), map.columns);

    match lp.solve()? {
        LpOutcome::Optimal { value, x } => {
            let x: Vec<String> = x.iter().map(ToString::to_string).collect();
            println!("optimum {value} at ({})", x.join(", "));
        }
        other => println!("{other:?}"),
    }

    // dropping the bound on x lets y run off to minus infinity
    let mut open = GeneralLp::maximize(vec![int(3), int(2)]);
    open.constrain(vec![int(1), int(1)], Relation::Le, int(4)).set_free(1, true);
    println!("without x <= 3: {:?}", open.solve()?);
    Ok(())
}
