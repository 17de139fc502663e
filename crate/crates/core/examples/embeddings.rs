//! Embeddings between structures and their composition.

use ramsey_multiposet::hom::{compose, enumerate_embeddings};
use ramsey_multiposet::{Multiposet, Relation};

fn main() -> ramsey_multiposet::Result<()> {
    let v = Multiposet::new(3, vec![Relation::from_pairs(3, [(0, 2), (1, 2)])?.reflexive_closure()])?;
    let two = Multiposet::new(2, vec![Relation::diagonal(2)?])?;
    let four = Multiposet::new(4, vec![Relation::from_pairs(4, [(0, 2), (1, 2), (2, 3)])?.reflexive_transitive_closure()])?;

    let into_v = enumerate_embeddings(&two, &v)?;
    let into_four = enumerate_embeddings(&v, &four)?;
    println!("antichain into V: {:?}", into_v.iter().map(|e| e.map()).collect::<Vec<_>>());
    println!("V into the 4-poset: {:?}", into_four.iter().map(|e| e.map()).collect::<Vec<_>>());
    for g in &into_four {
        for f in &into_v {
            println!("{:?} . {:?} = {:?}", g.map(), f.map(), compose(g, f)?.map());
        }
    }
    Ok(())
}
