//! Decomposing templates into maximal elements, isolated points and pairs.

use ramsey_multiposet::{validate_template, Relation, Template};

fn main() -> ramsey_multiposet::Result<()> {
    for name in ["a", "b", "c", "d:3", "e:3", "e:4"] {
        let info = validate_template(&Template::preset(name)?)?;
        println!(
            "{name:>4}: t={} maximal={:?} isolated={:?} pairs={:?} -> {} slots (s={}, m={})",
            info.t,
            info.maximal,
            info.isolated,
            info.pairs,
            info.bar_slots(),
            info.s,
            info.m
        );
    }

    // a diamond: 1 below 2 and 3, both below 4
    let order = Relation::from_pairs(4, [(0, 1), (0, 2), (1, 3), (2, 3)])?.reflexive_transitive_closure();
    let info = validate_template(&Template::from_order(order)?)?;
    println!("diamond: pairs={:?} s={} m={}", info.pairs, info.s, info.m);
    Ok(())
}
