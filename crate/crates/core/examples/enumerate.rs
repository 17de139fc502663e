//! Isomorphism classes of small members, with canonical forms.

use ramsey_multiposet::canon::canonical_form;
use ramsey_multiposet::class::ClassSpec;
use ramsey_multiposet::enumerate::enumerate_class;
use ramsey_multiposet::Template;

fn main() -> ramsey_multiposet::Result<()> {
    let classes = [
        ClassSpec::Ch,
        ClassSpec::EPos,
        ClassSpec::Csm { s: 1, m: 1 },
        ClassSpec::K(Template::preset("d:2")?),
        ClassSpec::kbar(&Template::preset("e:3")?)?,
    ];
    for spec in &classes {
        let counts: Vec<usize> = (1..=4).map(|n| enumerate_class(spec, n).map(|v| v.len())).collect::<Result<_, _>>()?;
        println!("{spec}: {counts:?}");
    }
    for x in enumerate_class(&ClassSpec::EPos, 2)? {
        println!("{x:?} -> {}", canonical_form(&x).hex());
    }
    Ok(())
}
