//! Deciding C -> (B)^A_k and checking a counterexample coloring.

use ramsey_multiposet::ramsey::{arrow_check, verify_arrow_counterexample};
use ramsey_multiposet::Multiposet;

fn main() -> ramsey_multiposet::Result<()> {
    let chain = |n| Multiposet::chain(n, 1);
    let (a, b) = (chain(2)?, chain(3)?);
    for n in 3..=6 {
        let c = chain(n)?;
        let r = arrow_check(&c, &b, &a, 2)?;
        print!("chain{n} -> (chain3)^chain2_2: {}", r.holds);
        if let Some(col) = &r.counterexample {
            print!("  coloring {:?}, verified {}", col.colors, verify_arrow_counterexample(&c, &b, &a, 2, col)?);
        }
        println!();
    }
    Ok(())
}
