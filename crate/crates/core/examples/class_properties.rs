//! Hereditary, joint-embedding and strong amalgamation checks.

use ramsey_multiposet::class::ClassSpec;
use ramsey_multiposet::classprops::{check_hp, check_jep, check_sap};
use ramsey_multiposet::Template;

fn main() -> ramsey_multiposet::Result<()> {
    let classes = [ClassSpec::Ch, ClassSpec::EPos, ClassSpec::K(Template::preset("b")?)];
    for spec in &classes {
        for r in [check_hp(spec, 3)?, check_jep(spec, 3)?, check_sap(spec, 3, 5)?] {
            println!("{spec} {}: {} over {} instances", r.property, r.holds, r.instances);
        }
    }
    Ok(())
}
