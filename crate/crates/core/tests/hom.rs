mod common;

use proptest::prelude::*;

use ramsey_multiposet::class::{ClassSpec, StructureClass};
use ramsey_multiposet::enumerate::enumerate_class;
use ramsey_multiposet::hom::{compose, embeds, enumerate_embeddings, is_embedding, HomStore};
use ramsey_multiposet::{Embedding, Multiposet, Relation, Template};

fn multiposet(max_n: usize, slots: usize) -> impl Strategy<Value = Multiposet> {
    (1..=max_n).prop_flat_map(move |n| {
        proptest::collection::vec(proptest::collection::vec(any::<bool>(), n * n), slots).prop_map(move |cells| {
            let rels = cells
                .iter()
                .map(|c| Relation::from_pairs(n, (0..n * n).filter(|&i| c[i]).map(|i| (i / n, i % n))).unwrap())
                .collect();
            Multiposet::new(n, rels).unwrap()
        })
    })
}

/// Structures drawn from real classes, so that embeddings are plentiful.
fn members() -> Vec<Multiposet> {
    let classes = [
        ClassSpec::EPos,
        ClassSpec::Csm { s: 0, m: 2 },
        ClassSpec::K(Template::preset("d:2").unwrap()),
    ];
    classes.iter().flat_map(|c| (1..=4).flat_map(|n| c.enumerate(n).unwrap())).collect()
}

fn maps(v: &[Embedding]) -> Vec<Vec<usize>> {
    v.iter().map(|e| e.map().to_vec()).collect()
}

proptest! {
    #[test]
    fn embeddings_match_filtered_injections(a in multiposet(3, 2), b in multiposet(5, 2)) {
        let fast = enumerate_embeddings(&a, &b).unwrap();
        prop_assert_eq!(maps(&fast), common::naive_embeddings(&a, &b));
        prop_assert_eq!(embeds(&a, &b).unwrap(), !fast.is_empty());
        for e in &fast {
            prop_assert!(is_embedding(e, &a, &b).unwrap());
        }
    }

    #[test]
    fn hom_counts_are_labeling_invariant(
        (a, b, sa, sb) in (multiposet(3, 2), multiposet(5, 2)).prop_flat_map(|(a, b)| {
            let (na, nb) = (a.size(), b.size());
            (Just(a), Just(b), Just((0..na).collect::<Vec<_>>()).prop_shuffle(), Just((0..nb).collect::<Vec<_>>()).prop_shuffle())
        })
    ) {
        let before = enumerate_embeddings(&a, &b).unwrap().len();
        let after = enumerate_embeddings(&a.permuted(&sa).unwrap(), &b.permuted(&sb).unwrap()).unwrap().len();
        prop_assert_eq!(before, after);
    }
}

#[test]
fn embeddings_on_class_members() {
    let pool = members();
    for a in pool.iter().filter(|x| x.size() <= 3) {
        for b in pool.iter().filter(|x| x.slots() == a.slots()) {
            assert_eq!(maps(&enumerate_embeddings(a, b).unwrap()), common::naive_embeddings(a, b));
        }
    }
}

/// Embeddings compose, composition is associative, and identities are units.
#[test]
fn composition_laws() {
    let epos: Vec<Multiposet> = (1..=4).flat_map(|n| enumerate_class(&ClassSpec::EPos, n).unwrap()).collect();
    let mut triples = 0;
    for a in epos.iter().filter(|x| x.size() <= 2) {
        for b in epos.iter().filter(|x| x.size() <= 3) {
            for c in &epos {
                for f in enumerate_embeddings(a, b).unwrap() {
                    assert_eq!(compose(&f, &Embedding::identity(a.size())).unwrap(), f);
                    assert_eq!(compose(&Embedding::identity(b.size()), &f).unwrap(), f);
                    for g in enumerate_embeddings(b, c).unwrap() {
                        let gf = compose(&g, &f).unwrap();
                        assert!(is_embedding(&gf, a, c).unwrap());
                        for h in enumerate_embeddings(c, c).unwrap() {
                            assert_eq!(
                                compose(&h, &gf).unwrap(),
                                compose(&compose(&h, &g).unwrap(), &f).unwrap()
                            );
                            triples += 1;
                        }
                    }
                }
            }
        }
    }
    assert!(triples > 100);
}

#[test]
fn compose_rejects_mismatched_sizes() {
    let f = Embedding::new(1, 2, vec![1]).unwrap();
    let g = Embedding::new(3, 4, vec![0, 1, 2]).unwrap();
    assert!(compose(&g, &f).is_err());
}

#[test]
fn embedding_constructor_checks() {
    assert!(Embedding::new(2, 3, vec![0, 0]).is_err());
    assert!(Embedding::new(2, 3, vec![0, 3]).is_err());
    assert!(Embedding::new(2, 3, vec![0]).is_err());
    let e = Embedding::new(2, 3, vec![2, 0]).unwrap();
    assert_eq!(e.image_mask(), 0b101);
    assert_eq!(e.inverse(), vec![Some(1), None, Some(0)]);
}

#[test]
fn embedding_examples() {
    let c3 = Multiposet::chain(3, 1).unwrap();
    let c2 = Multiposet::chain(2, 1).unwrap();
    assert_eq!(maps(&enumerate_embeddings(&c2, &c3).unwrap()), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
    assert!(enumerate_embeddings(&c3, &c2).unwrap().is_empty());
    let anti = Multiposet::new(2, vec![Relation::diagonal(2).unwrap()]).unwrap();
    assert!(enumerate_embeddings(&anti, &c3).unwrap().is_empty());
    assert_eq!(enumerate_embeddings(&anti, &anti).unwrap().len(), 2);
    assert!(enumerate_embeddings(&c2, &Multiposet::chain(2, 2).unwrap()).is_err());
    // reflecting matters: a map preserving the order of an antichain is not enough
    let f = Embedding::new(2, 3, vec![0, 1]).unwrap();
    assert!(!is_embedding(&f, &anti, &c3).unwrap());
}

#[test]
fn hom_store_matches_direct_enumeration() {
    let pool = members();
    let store = HomStore::new();
    assert!(store.is_empty());
    let mut pairs = 0;
    for a in pool.iter().filter(|x| x.size() <= 2) {
        for b in pool.iter().filter(|x| x.slots() == a.slots()) {
            let direct = enumerate_embeddings(a, b).unwrap();
            assert_eq!(store.get(a, b).unwrap(), direct);
            assert_eq!(store.get(a, b).unwrap(), direct);
            let reversed: Vec<usize> = (0..b.size()).rev().collect();
            let b2 = b.permuted(&reversed).unwrap();
            assert_eq!(store.get(a, &b2).unwrap(), enumerate_embeddings(a, &b2).unwrap());
            pairs += 1;
        }
    }
    let cached = store.len();
    assert!(cached > 0 && cached <= pairs);
}
