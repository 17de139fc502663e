//! Finding a cone in C(s, m) and building the amalgam D inside K̄(T).

use ramsey_multiposet::amalgam::{find_cone_csm, verify_main_theorem_instance, Arrow, BinaryDiagram, ConeSearch};
use ramsey_multiposet::{validate_template, Embedding, Multiposet, Relation, Template};

fn main() -> ramsey_multiposet::Result<()> {
    let info = validate_template(&Template::preset("b")?)?;
    // an antichain of two points with a linear extension
    let b = Multiposet::new(2, vec![Relation::diagonal(2)?, Relation::chain(2)?])?;
    let a = Multiposet::point(2);
    // glue the top of the first copy to the bottom of the second
    let square = [
        Arrow { top: 0, map: Embedding::new(1, 2, vec![1])? },
        Arrow { top: 1, map: Embedding::new(1, 2, vec![0])? },
    ];
    let d = BinaryDiagram::new(a, b, 2, vec![square])?;

    let ConeSearch::Found(cone) = find_cone_csm(&d, info.s, info.m, 4)? else {
        println!("no cone up to size 4");
        return Ok(());
    };
    println!("apex {:?}, legs {:?}", cone.apex, cone.legs.iter().map(|e| e.map()).collect::<Vec<_>>());

    let report = verify_main_theorem_instance(&d, &cone, &info)?;
    println!("{report}");
    if let Some(built) = &report.construction {
        println!("D = {:?} on apex points {:?}", built.d, built.points);
    }
    Ok(())
}
