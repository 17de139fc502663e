//! Closures, order predicates and the fixed linear extension.

use ramsey_multiposet::relation::partial_orders;
use ramsey_multiposet::Relation;

fn main() -> ramsey_multiposet::Result<()> {
    let r = Relation::from_pairs(4, [(0, 1), (1, 3), (2, 3)])?;
    let p = r.reflexive_transitive_closure();
    println!("closure of {:?}: {:?}", r.pairs().collect::<Vec<_>>(), p.strict_pairs().collect::<Vec<_>>());
    println!("partial order: {}, linear: {}", p.is_partial_order(), p.is_linear_order());

    let line = p.linear_extension_fixed()?;
    println!("fixed linear extension: {:?}", line.linear_sequence().expect("a linear order"));

    for n in 1..=4 {
        println!("labeled partial orders on {n} points: {}", partial_orders(n, None)?.len());
    }
    Ok(())
}
