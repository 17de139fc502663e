//! Membership in K(T), its translation into K̄(T), and C(s, m).

use ramsey_multiposet::class::{bar_translate, bar_untranslate, is_member_csm, is_member_k, kbar_violation};
use ramsey_multiposet::{validate_template, Multiposet, Relation, Template};

fn main() -> ramsey_multiposet::Result<()> {
    // two linear orders and a partial order contained in both
    let t = Template::preset("e:3")?;
    let info = validate_template(&t)?;
    let x = Multiposet::new(
        3,
        vec![
            Relation::from_sequence(&[0, 1, 2])?,
            Relation::from_sequence(&[2, 0, 1])?,
            Relation::from_pairs(3, [(0, 1)])?.reflexive_closure(),
        ],
    )?;
    println!("x in K(e:3): {}", is_member_k(&t, &x)?);

    let y = bar_translate(&info, &x)?;
    println!("translated: {y:?}");
    println!("in C({},{}): {}", info.s, info.m, is_member_csm(info.s, info.m, &y)?);
    println!("round trip: {}", bar_untranslate(&info, &y)? == x);

    // break the equality between the duplicated partial slots
    let broken = y.with_relation(1, Relation::diagonal(3)?)?;
    match kbar_violation(&info, &broken)? {
        Some(v) => println!("broken copy rejected: {v}"),
        None => println!("broken copy accepted"),
    }
    Ok(())
}
