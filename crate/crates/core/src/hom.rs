//! Embeddings between multiposets.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::canon::canonical_form;
use crate::error::{Error, Result};
use crate::multiposet::Multiposet;

/// An injective map `{0..source-1} → {0..target-1}`. Whether it is an
/// embedding between two particular structures is checked by
/// [`is_embedding`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Embedding {
    source: usize,
    target: usize,
    map: Vec<usize>,
}

impl Embedding {
    pub fn new(source: usize, target: usize, map: Vec<usize>) -> Result<Self> {
        if map.len() != source {
            return Err(Error::InvalidEmbedding(format!(
                "map has {} entries for a source of size {source}",
                map.len()
            )));
        }
        let mut seen = vec![false; target];
        for &y in &map {
            if y >= target {
                return Err(Error::OutOfRange { index: y, size: target });
            }
            if std::mem::replace(&mut seen[y], true) {
                return Err(Error::InvalidEmbedding(format!("{map:?} is not injective")));
            }
        }
        Ok(Self { source, target, map })
    }

    pub fn identity(n: usize) -> Self {
        Self { source: n, target: n, map: (0..n).collect() }
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }

    /// Bit set of the image.
    pub fn image_mask(&self) -> u64 {
        self.map.iter().fold(0, |acc, &y| acc | 1 << y)
    }

    /// Partial inverse: `inverse[y] = Some(a)` iff `map[a] = y`.
    pub fn inverse(&self) -> Vec<Option<usize>> {
        let mut inv = vec![None; self.target];
        for (a, &y) in self.map.iter().enumerate() {
            inv[y] = Some(a);
        }
        inv
    }
}

/// `g ∘ f`.
pub fn compose(g: &Embedding, f: &Embedding) -> Result<Embedding> {
    if f.target != g.source {
        return Err(Error::SizeMismatch { left: f.target, right: g.source });
    }
    Ok(Embedding {
        source: f.source,
        target: g.target,
        map: f.map.iter().map(|&a| g.map[a]).collect(),
    })
}

fn check_signatures(a: &Multiposet, b: &Multiposet) -> Result<()> {
    if a.slots() != b.slots() {
        return Err(Error::SlotMismatch { expected: a.slots(), found: b.slots() });
    }
    Ok(())
}

/// Injective, and every slot is preserved and reflected.
pub fn is_embedding(f: &Embedding, a: &Multiposet, b: &Multiposet) -> Result<bool> {
    check_signatures(a, b)?;
    if f.source != a.size() || f.target != b.size() {
        return Err(Error::InvalidEmbedding(format!(
            "map {} -> {} used between sizes {} and {}",
            f.source,
            f.target,
            a.size(),
            b.size()
        )));
    }
    for (ra, rb) in a.relations().iter().zip(b.relations()) {
        for x in 0..a.size() {
            for y in 0..a.size() {
                if ra.contains(x, y) != rb.contains(f.map[x], f.map[y]) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// All embeddings `a ↪ b`, in lexicographic order of their map arrays.
pub fn enumerate_embeddings(a: &Multiposet, b: &Multiposet) -> Result<Vec<Embedding>> {
    check_signatures(a, b)?;
    let mut out = Vec::new();
    if a.size() > b.size() {
        return Ok(out);
    }
    let mut map = Vec::with_capacity(a.size());
    extend_map(a, b, &mut map, 0, &mut out);
    Ok(out)
}

/// Whether `hom(a, b)` is nonempty; stops at the first embedding.
pub fn embeds(a: &Multiposet, b: &Multiposet) -> Result<bool> {
    check_signatures(a, b)?;
    if a.size() > b.size() {
        return Ok(false);
    }
    let mut map = Vec::with_capacity(a.size());
    Ok(first_map(a, b, &mut map, 0))
}

fn consistent(a: &Multiposet, b: &Multiposet, map: &[usize], x: usize, y: usize) -> bool {
    a.relations().iter().zip(b.relations()).all(|(ra, rb)| {
        ra.contains(x, x) == rb.contains(y, y)
            && map.iter().enumerate().all(|(u, &v)| {
                ra.contains(x, u) == rb.contains(y, v) && ra.contains(u, x) == rb.contains(v, y)
            })
    })
}

fn extend_map(a: &Multiposet, b: &Multiposet, map: &mut Vec<usize>, used: u64, out: &mut Vec<Embedding>) {
    let x = map.len();
    if x == a.size() {
        out.push(Embedding { source: a.size(), target: b.size(), map: map.clone() });
        return;
    }
    for y in (0..b.size()).filter(|&y| used >> y & 1 == 0) {
        if consistent(a, b, map, x, y) {
            map.push(y);
            extend_map(a, b, map, used | 1 << y, out);
            map.pop();
        }
    }
}

fn first_map(a: &Multiposet, b: &Multiposet, map: &mut Vec<usize>, used: u64) -> bool {
    let x = map.len();
    if x == a.size() {
        return true;
    }
    for y in (0..b.size()).filter(|&y| used >> y & 1 == 0) {
        if consistent(a, b, map, x, y) {
            map.push(y);
            if first_map(a, b, map, used | 1 << y) {
                return true;
            }
            map.pop();
        }
    }
    false
}

type HomKey = (Vec<u8>, Vec<u8>);

/// Memoized hom-sets keyed by the canonical forms of both arguments.
///
/// Embeddings are stored between the canonical representatives and
/// conjugated back through the canonizing labelings on every lookup, so a
/// relabeled query reuses the cached entry.
#[derive(Default)]
pub struct HomStore {
    entries: RwLock<HashMap<HomKey, Arc<Vec<Embedding>>>>,
}

impl HomStore {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.entries.read().expect("hom store lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, a: &Multiposet, b: &Multiposet) -> Result<Vec<Embedding>> {
        check_signatures(a, b)?;
        let ca = canonical_form(a);
        let cb = canonical_form(b);
        let key = (ca.bytes.clone(), cb.bytes.clone());

        let cached = self.entries.read().expect("hom store lock").get(&key).cloned();
        let canonical_maps = match cached {
            Some(v) => v,
            None => {
                let a_rep = a.permuted(&ca.labeling)?;
                let b_rep = b.permuted(&cb.labeling)?;
                let computed = Arc::new(enumerate_embeddings(&a_rep, &b_rep)?);
                // concurrent misses may both compute; the results are identical
                self.entries.write().expect("hom store lock").insert(key, computed.clone());
                computed
            }
        };

        let mut b_inverse = vec![0; b.size()];
        for (y, &pos) in cb.labeling.iter().enumerate() {
            b_inverse[pos] = y;
        }
        let mut out: Vec<Embedding> = canonical_maps
            .iter()
            .map(|g| Embedding {
                source: a.size(),
                target: b.size(),
                map: (0..a.size()).map(|x| b_inverse[g.map[ca.labeling[x]]]).collect(),
            })
            .collect();
        out.sort();
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relation::Relation;

    fn antichain_with_extension(n: usize) -> Multiposet {
        Multiposet::new(n, vec![Relation::diagonal(n).unwrap(), Relation::chain(n).unwrap()]).unwrap()
    }

    #[test]
    fn identity_is_embedding() {
        let x = antichain_with_extension(3);
        assert!(is_embedding(&Embedding::identity(3), &x, &x).unwrap());
    }

    #[test]
    fn reversal_is_not_embedding() {
        let c = Multiposet::chain(2, 1).unwrap();
        let rev = Embedding::new(2, 2, vec![1, 0]).unwrap();
        assert!(!is_embedding(&rev, &c, &c).unwrap());
    }

    #[test]
    fn increasing_map_of_antichains() {
        let a = antichain_with_extension(2);
        let b = antichain_with_extension(3);
        // 0 ↦ 0, 1 ↦ 2: diagonal kept, (0,1) in the extension maps to (0,2)
        let f = Embedding::new(2, 3, vec![0, 2]).unwrap();
        assert!(is_embedding(&f, &a, &b).unwrap());
        let g = Embedding::new(2, 3, vec![2, 0]).unwrap();
        assert!(!is_embedding(&g, &a, &b).unwrap());
    }

    #[test]
    fn enumeration_counts() {
        let c2 = Multiposet::chain(2, 1).unwrap();
        let c4 = Multiposet::chain(4, 1).unwrap();
        assert_eq!(enumerate_embeddings(&c2, &c4).unwrap().len(), 6);

        let x = antichain_with_extension(3);
        assert_eq!(enumerate_embeddings(&Multiposet::point(2), &x).unwrap().len(), 3);
        assert_eq!(
            enumerate_embeddings(&antichain_with_extension(2), &antichain_with_extension(3))
                .unwrap()
                .len(),
            3
        );
    }

    #[test]
    fn enumeration_is_lexicographic() {
        let maps: Vec<Vec<usize>> = enumerate_embeddings(&Multiposet::chain(2, 1).unwrap(), &Multiposet::chain(3, 1).unwrap())
            .unwrap()
            .into_iter()
            .map(|e| e.map().to_vec())
            .collect();
        assert_eq!(maps, vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
    }

    #[test]
    fn slot_mismatch_is_an_error() {
        let r = enumerate_embeddings(&Multiposet::point(1), &Multiposet::point(2));
        assert!(matches!(r, Err(Error::SlotMismatch { .. })));
    }

    #[test]
    fn compose_with_identity() {
        let f = Embedding::new(2, 4, vec![1, 3]).unwrap();
        assert_eq!(compose(&Embedding::identity(4), &f).unwrap(), f);
        assert_eq!(compose(&f, &Embedding::identity(2)).unwrap(), f);
        assert!(compose(&f, &f).is_err());
    }

    #[test]
    fn embedding_rejects_non_injective() {
        assert!(Embedding::new(2, 3, vec![1, 1]).is_err());
        assert!(Embedding::new(2, 3, vec![0, 3]).is_err());
        assert!(Embedding::new(1, 3, vec![0, 1]).is_err());
    }

    #[test]
    fn store_cold_call_matches_direct() {
        let store = HomStore::new();
        let a = Multiposet::chain(2, 1).unwrap();
        let b = Multiposet::chain(4, 1).unwrap();
        assert_eq!(store.get(&a, &b).unwrap(), enumerate_embeddings(&a, &b).unwrap());
        assert_eq!(store.len(), 1);
    }

    #[test]
    fn store_conjugates_relabeled_queries() {
        let store = HomStore::new();
        let a = antichain_with_extension(2);
        let b = Multiposet::new(
            4,
            vec![
                Relation::from_pairs(4, [(0, 2)]).unwrap().reflexive_closure(),
                Relation::from_sequence(&[0, 1, 2, 3]).unwrap(),
            ],
        )
        .unwrap();
        store.get(&a, &b).unwrap();
        let b2 = b.permuted(&[3, 1, 0, 2]).unwrap();
        let a2 = a.permuted(&[1, 0]).unwrap();
        let cached = store.get(&a2, &b2).unwrap();
        assert_eq!(store.len(), 1);
        assert_eq!(cached, enumerate_embeddings(&a2, &b2).unwrap());
        for e in &cached {
            assert!(is_embedding(e, &a2, &b2).unwrap());
        }
    }
}
