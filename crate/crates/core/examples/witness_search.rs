//! Smallest members of a class that arrow a given pair.

use ramsey_multiposet::class::ClassSpec;
use ramsey_multiposet::ramsey::{ramsey_witness_search, WitnessOutcome};
use ramsey_multiposet::{Multiposet, Template};

fn report(label: &str, outcome: WitnessOutcome) {
    match outcome {
        WitnessOutcome::Found { apex, scanned, .. } => {
            println!("{label}: size {} after {} levels: {apex:?}", apex.size(), scanned.len())
        }
        WitnessOutcome::NoneUpTo { max_n, .. } => println!("{label}: none up to {max_n}"),
    }
}

fn main() -> ramsey_multiposet::Result<()> {
    let chain = |n| Multiposet::chain(n, 1);
    for k in 2..=3 {
        report(&format!("points, chain3, k={k}"), ramsey_witness_search(&ClassSpec::Ch, &chain(1)?, &chain(3)?, k, 8)?);
    }
    report("pairs, chain3, k=2", ramsey_witness_search(&ClassSpec::Ch, &chain(2)?, &chain(3)?, 2, 8)?);

    let d2 = ClassSpec::K(Template::preset("d:2")?);
    report(
        "two agreeing orders",
        ramsey_witness_search(&d2, &Multiposet::point(2), &Multiposet::chain(2, 2)?, 2, 4)?,
    );
    Ok(())
}
