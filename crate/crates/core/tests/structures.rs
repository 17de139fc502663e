mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;

use ramsey_multiposet::canon::{canonical_form, canonical_structure, is_isomorphic};
use ramsey_multiposet::class::{
    bar_translate, bar_untranslate, is_member_csm, is_member_k, is_member_kbar, product_membership, ClassSpec,
    StructureClass,
};
use ramsey_multiposet::enumerate::enumerate_class;
use ramsey_multiposet::template::{validate_template, Template};
use ramsey_multiposet::{Multiposet, Relation};

fn permutations(n: usize) -> Vec<Vec<usize>> {
    common::injections(n, n)
}

/// Isomorphism by trying every permutation.
fn naive_isomorphic(a: &Multiposet, b: &Multiposet) -> bool {
    a.size() == b.size()
        && a.slots() == b.slots()
        && permutations(a.size()).iter().any(|p| common::naive_is_embedding(p, a, b))
}

/// Every labeled structure on `n` points with a partial order in each slot.
fn all_structures(n: usize, slots: usize) -> Vec<Multiposet> {
    let pool = common::all_partial_orders(n);
    let mut out = vec![Vec::new()];
    for _ in 0..slots {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<Relation>| {
                pool.iter().map(move |r| {
                    let mut v = prefix.clone();
                    v.push(r.clone());
                    v
                })
            })
            .collect();
    }
    out.into_iter().map(|rels| Multiposet::new(n, rels).unwrap()).collect()
}

/// Number of isomorphism classes among members, by pairwise naive checks.
fn naive_class_count(members: &[Multiposet]) -> usize {
    let mut reps: Vec<&Multiposet> = Vec::new();
    for x in members {
        if !reps.iter().any(|r| naive_isomorphic(r, x)) {
            reps.push(x);
        }
    }
    reps.len()
}

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

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<usize>>()).prop_shuffle()
}

proptest! {
    #[test]
    fn canonical_form_ignores_labeling((x, sigma) in multiposet(6, 2).prop_flat_map(|x| {
        let n = x.size();
        (Just(x), permutation(n))
    })) {
        let y = x.permuted(&sigma).unwrap();
        prop_assert_eq!(canonical_form(&x).bytes, canonical_form(&y).bytes);
        let (rep, canon) = canonical_structure(&x);
        prop_assert_eq!(x.permuted(&canon.labeling).unwrap(), rep);
    }

    #[test]
    fn canonical_equality_is_isomorphism(x in multiposet(4, 2), y in multiposet(4, 2)) {
        prop_assume!(x.size() == y.size());
        prop_assert_eq!(is_isomorphic(&x, &y), naive_isomorphic(&x, &y));
    }
}

#[test]
fn canonical_examples() {
    let up = Multiposet::chain(2, 1).unwrap();
    let down = Multiposet::new(2, vec![Relation::from_sequence(&[1, 0]).unwrap()]).unwrap();
    let flat = Multiposet::new(2, vec![Relation::diagonal(2).unwrap()]).unwrap();
    assert_eq!(canonical_form(&up).bytes, canonical_form(&down).bytes);
    assert_ne!(canonical_form(&up).bytes, canonical_form(&flat).bytes);
}

/// One representative per class: counts equal brute force over every
/// labeled structure, each representative is a member, and no two
/// representatives are isomorphic.
#[test]
fn enumeration_matches_brute_force() {
    let classes = [
        ClassSpec::Ch,
        ClassSpec::EPos,
        ClassSpec::Csm { s: 1, m: 1 },
        ClassSpec::Csm { s: 0, m: 2 },
        ClassSpec::K(Template::preset("b").unwrap()),
        ClassSpec::K(Template::preset("c").unwrap()),
        ClassSpec::K(Template::preset("d:2").unwrap()),
        ClassSpec::K(Template::preset("e:3").unwrap()),
        ClassSpec::kbar(&Template::preset("e:3").unwrap()).unwrap(),
        ClassSpec::kbar(&Template::preset("c").unwrap()).unwrap(),
    ];
    for spec in &classes {
        for n in 1..=3 {
            let members: Vec<Multiposet> =
                all_structures(n, spec.slot_count()).into_iter().filter(|x| spec.contains(x)).collect();
            let reps = enumerate_class(spec, n).unwrap();
            assert_eq!(reps.len(), naive_class_count(&members), "{spec} at n = {n}");
            assert!(reps.iter().all(|x| spec.contains(x)));
            for (i, x) in reps.iter().enumerate() {
                assert!(reps[i + 1..].iter().all(|y| !naive_isomorphic(x, y)));
            }
        }
    }
}

#[test]
fn enumeration_examples() {
    assert!((1..=6).all(|n| enumerate_class(&ClassSpec::Ch, n).unwrap().len() == 1));
    assert_eq!(enumerate_class(&ClassSpec::EPos, 2).unwrap().len(), 2);
    assert_eq!(enumerate_class(&ClassSpec::K(Template::preset("d:2").unwrap()), 2).unwrap().len(), 2);
    // naturally labeled posets up to isomorphism: posets with a linear extension
    let counts: Vec<usize> = (1..=4).map(|n| enumerate_class(&ClassSpec::EPos, n).unwrap().len()).collect();
    let oracle: Vec<usize> = (1..=4)
        .map(|n| {
            let members: Vec<_> = all_structures(n, 2).into_iter().filter(|x| ClassSpec::EPos.contains(x)).collect();
            naive_class_count(&members)
        })
        .collect();
    assert_eq!(counts, oracle);
}

#[test]
fn membership_examples() {
    let b = Template::preset("b").unwrap();
    let flat_up = Multiposet::new(2, vec![Relation::diagonal(2).unwrap(), Relation::chain(2).unwrap()]).unwrap();
    assert!(is_member_k(&b, &flat_up).unwrap());
    let down_up = Multiposet::new(2, vec![Relation::from_sequence(&[1, 0]).unwrap(), Relation::chain(2).unwrap()]).unwrap();
    assert!(!is_member_k(&b, &down_up).unwrap());
    let d2 = Template::preset("d:2").unwrap();
    let two_lines = Multiposet::new(3, vec![Relation::from_sequence(&[2, 0, 1]).unwrap(), Relation::chain(3).unwrap()]).unwrap();
    assert!(is_member_k(&d2, &two_lines).unwrap());
    assert!(is_member_k(&d2, &Multiposet::point(3)).is_err());

    let line = Relation::chain(3).unwrap();
    assert!(is_member_csm(1, 0, &Multiposet::new(3, vec![line.clone(), line.clone()]).unwrap()).unwrap());
    assert!(!is_member_csm(1, 0, &Multiposet::new(3, vec![line, Relation::diagonal(3).unwrap()]).unwrap()).unwrap());

    let e3 = validate_template(&Template::preset("e:3").unwrap()).unwrap();
    let p = Relation::from_pairs(2, [(0, 1)]).unwrap().reflexive_closure();
    let q = Relation::diagonal(2).unwrap();
    let l = Relation::chain(2).unwrap();
    let unequal = Multiposet::new(2, vec![p.clone(), q, l.clone(), l.clone()]).unwrap();
    assert!(!is_member_kbar(&e3, &unequal).unwrap());
    let equal = Multiposet::new(2, vec![p.clone(), p, l.clone(), l]).unwrap();
    assert!(is_member_kbar(&e3, &equal).unwrap());

    let a = validate_template(&Template::preset("a").unwrap()).unwrap();
    assert_eq!((a.s, a.m), (0, 1));
    assert!(is_member_kbar(&a, &Multiposet::chain(3, 1).unwrap()).unwrap());
    let flat = Multiposet::new(3, vec![Relation::diagonal(3).unwrap()]).unwrap();
    assert!(!is_member_kbar(&a, &flat).unwrap());
}

/// Translation: round trip, membership agreement, surjectivity onto K̄(T),
/// K̄(T) ⊆ C(s, m), and the oracle's reading of the four conditions, over
/// every labeled structure with n ≤ 3.
#[test]
fn translation_is_exact_on_small_structures() {
    for name in ["a", "b", "c", "d:2", "e:3"] {
        let t = Template::preset(name).unwrap();
        let info = validate_template(&t).unwrap();
        for n in 1..=3 {
            let k_members: Vec<Multiposet> =
                all_structures(n, t.t()).into_iter().filter(|x| is_member_k(&t, x).unwrap()).collect();
            let mut images = BTreeSet::new();
            for x in &k_members {
                let y = bar_translate(&info, x).unwrap();
                assert!(is_member_kbar(&info, &y).unwrap() && common::naive_kbar(&info, &y));
                assert!(is_member_csm(info.s, info.m, &y).unwrap());
                assert_eq!(&bar_untranslate(&info, &y).unwrap(), x);
                images.insert(y);
            }
            // every member of K̄(T) is an image
            let kbar_count = all_structures(n, info.bar_slots())
                .into_iter()
                .filter(|y| {
                    let fast = is_member_kbar(&info, y).unwrap();
                    assert_eq!(fast, common::naive_kbar(&info, y), "{name}: {y:?}");
                    fast
                })
                .inspect(|y| assert!(images.contains(y)))
                .count();
            assert_eq!(kbar_count, images.len(), "{name} at n = {n}");
        }
    }
}

#[test]
fn translation_examples() {
    let b = validate_template(&Template::preset("b").unwrap()).unwrap();
    let x = Multiposet::new(2, vec![Relation::diagonal(2).unwrap(), Relation::chain(2).unwrap()]).unwrap();
    assert_eq!(bar_translate(&b, &x).unwrap(), x);

    let e3 = validate_template(&Template::preset("e:3").unwrap()).unwrap();
    let l1 = Relation::chain(2).unwrap();
    let l2 = Relation::from_sequence(&[1, 0]).unwrap();
    let p = Relation::diagonal(2).unwrap();
    let x = Multiposet::new(2, vec![l1.clone(), l2.clone(), p.clone()]).unwrap();
    let y = Multiposet::new(2, vec![p.clone(), p, l1, l2]).unwrap();
    assert_eq!(bar_translate(&e3, &x).unwrap(), y);
    assert_eq!(bar_untranslate(&e3, &y).unwrap(), x);
    assert!(bar_untranslate(&e3, &Multiposet::point(3)).is_err());
}

/// C(s, m) against its EPos/Ch product on every labeled structure.
#[test]
fn product_law_small() {
    for (s, m) in [(1, 0), (0, 1), (1, 1), (0, 2)] {
        let ClassSpec::Product(factors) = ClassSpec::csm_product(s, m) else { unreachable!() };
        for n in 1..=3 {
            for y in all_structures(n, 2 * s + m) {
                let direct = is_member_csm(s, m, &y).unwrap();
                assert_eq!(direct, product_membership(&factors, &y).unwrap());
                assert_eq!(direct, common::naive_csm(s, m, &y));
            }
        }
    }
}

#[test]
fn malformed_products_are_errors() {
    use ramsey_multiposet::class::Factor;
    let y = Multiposet::chain(2, 2).unwrap();
    let overlap = vec![
        Factor { slots: vec![0], class: ClassSpec::Ch },
        Factor { slots: vec![0], class: ClassSpec::Ch },
    ];
    assert!(product_membership(&overlap, &y).is_err());
    let short = vec![Factor { slots: vec![0], class: ClassSpec::Ch }];
    assert!(product_membership(&short, &y).is_err());
    let single = vec![Factor { slots: vec![0, 1], class: ClassSpec::EPos }];
    assert_eq!(product_membership(&single, &y).unwrap(), ClassSpec::EPos.contains(&y));
    let failing = vec![
        Factor { slots: vec![0], class: ClassSpec::Ch },
        Factor { slots: vec![1], class: ClassSpec::Ch },
    ];
    let half = Multiposet::new(2, vec![Relation::chain(2).unwrap(), Relation::diagonal(2).unwrap()]).unwrap();
    assert!(!product_membership(&failing, &half).unwrap());
}

/// Every membership predicate is closed under induced substructures.
#[test]
fn heredity_up_to_four() {
    let classes = [
        ClassSpec::K(Template::preset("b").unwrap()),
        ClassSpec::K(Template::preset("c").unwrap()),
        ClassSpec::K(Template::preset("e:3").unwrap()),
        ClassSpec::kbar(&Template::preset("e:3").unwrap()).unwrap(),
        ClassSpec::Csm { s: 1, m: 1 },
        ClassSpec::EPos,
    ];
    for spec in &classes {
        for n in 1..=4 {
            for x in enumerate_class(spec, n).unwrap() {
                for mask in 1u64..(1 << n) {
                    let (sub, emb) = x.induced_by_mask(mask).unwrap();
                    assert!(spec.contains(&sub), "{spec}: {sub:?} inside {x:?}");
                    assert!(common::naive_is_embedding(emb.map(), &sub, &x));
                }
            }
        }
    }
}

#[test]
fn reduct_and_substructure_examples() {
    let x = Multiposet::new(3, vec![Relation::diagonal(3).unwrap(), Relation::chain(3).unwrap()]).unwrap();
    assert_eq!(x.reduct(&[0, 1]).unwrap(), x);
    assert_eq!(x.reduct(&[1]).unwrap(), Multiposet::chain(3, 1).unwrap());
    assert!(x.reduct(&[2]).is_err());
    let (sub, emb) = Multiposet::chain(3, 1).unwrap().induced_substructure(&[2, 0]).unwrap();
    assert_eq!(sub, Multiposet::chain(2, 1).unwrap());
    assert_eq!(emb.map(), &[0, 2]);
    assert!(x.induced_substructure(&[]).is_err());
    let (full, _) = x.induced_substructure(&[0, 1, 2]).unwrap();
    assert_eq!(full, x);
}
