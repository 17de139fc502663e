use std::fmt;

use crate::error::{Error, Result};
use crate::hom::Embedding;
use crate::relation::Relation;

/// A finite set `{0..n-1}` carrying one binary relation per signature slot.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multiposet {
    size: usize,
    relations: Vec<Relation>,
}

impl Multiposet {
    pub fn new(size: usize, relations: Vec<Relation>) -> Result<Self> {
        if size == 0 {
            return Err(Error::EmptyGroundSet);
        }
        for r in &relations {
            if r.size() != size {
                return Err(Error::SizeMismatch { left: size, right: r.size() });
            }
        }
        Ok(Self { size, relations })
    }

    /// An `n`-chain whose every one of `slots` relations is the natural order.
    pub fn chain(n: usize, slots: usize) -> Result<Self> {
        let c = Relation::chain(n)?;
        Self::new(n, vec![c; slots])
    }

    /// A single point with `slots` (trivially linear) relations.
    pub fn point(slots: usize) -> Self {
        Self::chain(1, slots).expect("a point is always valid")
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn slots(&self) -> usize {
        self.relations.len()
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn relation(&self, slot: usize) -> &Relation {
        &self.relations[slot]
    }

    /// Same ground set, only the selected slots (0-based), in the given order.
    pub fn reduct(&self, slots: &[usize]) -> Result<Multiposet> {
        let relations = slots
            .iter()
            .map(|&i| {
                self.relations
                    .get(i)
                    .cloned()
                    .ok_or(Error::OutOfRange { index: i, size: self.relations.len() })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Multiposet { size: self.size, relations })
    }

    /// Substructure induced by `subset`, with survivors renumbered in
    /// ascending order; also returns the inclusion embedding.
    pub fn induced_substructure(&self, subset: &[usize]) -> Result<(Multiposet, Embedding)> {
        let mut elements = subset.to_vec();
        elements.sort_unstable();
        elements.dedup();
        if elements.is_empty() {
            return Err(Error::EmptyGroundSet);
        }
        let relations = self
            .relations
            .iter()
            .map(|r| r.induced(&elements))
            .collect::<Result<Vec<_>>>()?;
        let sub = Multiposet { size: elements.len(), relations };
        let inclusion = Embedding::new(elements.len(), self.size, elements)?;
        Ok((sub, inclusion))
    }

    /// Induced substructure on a bit set of elements.
    pub fn induced_by_mask(&self, mask: u64) -> Result<(Multiposet, Embedding)> {
        let elements: Vec<usize> = crate::relation::bits(mask).collect();
        self.induced_substructure(&elements)
    }

    /// The isomorphic copy obtained by renaming element `a` to `sigma[a]`.
    pub fn permuted(&self, sigma: &[usize]) -> Result<Multiposet> {
        if sigma.len() != self.size {
            return Err(Error::SizeMismatch { left: self.size, right: sigma.len() });
        }
        let mut seen = vec![false; self.size];
        for &x in sigma {
            if x >= self.size || std::mem::replace(&mut seen[x], true) {
                return Err(Error::InvalidEmbedding(format!("{sigma:?} is not a permutation")));
            }
        }
        let relations = self.relations.iter().map(|r| r.permuted(sigma)).collect();
        Ok(Multiposet { size: self.size, relations })
    }

    pub fn with_relation(&self, slot: usize, relation: Relation) -> Result<Multiposet> {
        if relation.size() != self.size {
            return Err(Error::SizeMismatch { left: self.size, right: relation.size() });
        }
        let mut out = self.clone();
        *out.relations
            .get_mut(slot)
            .ok_or(Error::OutOfRange { index: slot, size: self.relations.len() })? = relation;
        Ok(out)
    }
}

impl fmt::Debug for Multiposet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Multiposet({}; ", self.size)?;
        f.debug_list().entries(self.relations.iter().map(|r| r.strict_pairs().collect::<Vec<_>>())).finish()?;
        write!(f, ")")
    }
}
