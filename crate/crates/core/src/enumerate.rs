//! Enumeration of class members up to isomorphism.
//!
//! Slots are filled one at a time from the class's [`SlotPlan`]: linear
//! slots first, then partial slots drawn only from sub-orders of the slots
//! they must be contained in. When the class has a linear slot, the first one
//! is pinned to the natural order `0 < 1 < ... < n-1`. Every member has a
//! copy of that shape, and such structures are rigid, so no isomorphism class
//! is lost. Survivors are checked against full membership and deduplicated by
//! canonical form.

use std::collections::BTreeMap;

use crate::canon::canonical_structure;
use crate::class::{ClassSpec, SlotKind, SlotPlan, StructureClass};
use crate::error::{Error, Result};
use crate::multiposet::Multiposet;
use crate::relation::{linear_orders, partial_orders, Relation};

/// Largest ground set `enumerate_class` accepts.
pub const MAX_ENUM_SIZE: usize = 8;

/// Largest ground set for a partial slot with no containing slot (there are
/// 130023 labeled posets on 6 points).
pub const MAX_FREE_POSET_SIZE: usize = 6;

/// One representative per isomorphism class of size-`n` members, sorted by
/// canonical string. Representatives are in canonical labeling.
pub fn enumerate_class(spec: &ClassSpec, n: usize) -> Result<Vec<Multiposet>> {
    if n == 0 {
        return Err(Error::EmptyGroundSet);
    }
    if n > MAX_ENUM_SIZE {
        return Err(Error::BoundExceeded(format!(
            "enumeration is limited to size {MAX_ENUM_SIZE}, asked for {n}"
        )));
    }
    let plan = spec.plan();
    let mut found: BTreeMap<Vec<u8>, Multiposet> = BTreeMap::new();
    generate(&plan, n, &mut |candidate| {
        if spec.contains(&candidate) {
            let (rep, canon) = canonical_structure(&candidate);
            found.entry(canon.bytes).or_insert(rep);
        }
    })?;
    Ok(found.into_values().collect())
}

/// Labeled structures consistent with `plan` (slot kinds and inclusions),
/// with the first linear slot pinned to the natural order.
pub fn generate(plan: &SlotPlan, n: usize, visit: &mut dyn FnMut(Multiposet)) -> Result<()> {
    let slots = plan.kinds.len();
    if slots == 0 {
        return Err(Error::SlotMismatch { expected: 1, found: 0 });
    }
    let order = fill_order(plan);
    let linear = if plan.kinds.iter().filter(|&&k| k == SlotKind::Linear).count() > 1 {
        linear_orders(n)?
    } else {
        Vec::new()
    };
    let mut g = Generator {
        plan,
        n,
        order,
        linear,
        pinned: plan.kinds.iter().position(|&k| k == SlotKind::Linear),
        assigned: vec![None; slots],
    };
    g.fill(0, visit)
}

/// Linear slots in index order, then each partial slot as soon as all slots
/// it must be contained in are filled (smallest index first when none is
/// ready, e.g. for mutually contained slots).
fn fill_order(plan: &SlotPlan) -> Vec<usize> {
    let slots = plan.kinds.len();
    let mut order: Vec<usize> = (0..slots).filter(|&i| plan.kinds[i] == SlotKind::Linear).collect();
    let mut placed = vec![false; slots];
    for &i in &order {
        placed[i] = true;
    }
    while order.len() < slots {
        let ready = (0..slots).find(|&i| {
            !placed[i] && plan.inclusions.iter().all(|&(inner, outer)| inner != i || placed[outer])
        });
        let next = ready.unwrap_or_else(|| (0..slots).find(|&i| !placed[i]).expect("unplaced slot"));
        placed[next] = true;
        order.push(next);
    }
    order
}

struct Generator<'a> {
    plan: &'a SlotPlan,
    n: usize,
    order: Vec<usize>,
    linear: Vec<Relation>,
    pinned: Option<usize>,
    assigned: Vec<Option<Relation>>,
}

impl Generator<'_> {
    fn fill(&mut self, depth: usize, visit: &mut dyn FnMut(Multiposet)) -> Result<()> {
        if depth == self.order.len() {
            let relations = self.assigned.iter().map(|r| r.clone().expect("all slots assigned")).collect();
            visit(Multiposet::new(self.n, relations)?);
            return Ok(());
        }
        let slot = self.order[depth];
        for choice in self.choices(slot)? {
            self.assigned[slot] = Some(choice);
            if self.consistent(slot)? {
                self.fill(depth + 1, visit)?;
            }
        }
        self.assigned[slot] = None;
        Ok(())
    }

    fn choices(&self, slot: usize) -> Result<Vec<Relation>> {
        match self.plan.kinds[slot] {
            SlotKind::Linear if Some(slot) == self.pinned => Ok(vec![Relation::chain(self.n)?]),
            SlotKind::Linear => Ok(self.linear.clone()),
            SlotKind::Partial => {
                let mut container: Option<Relation> = None;
                for &(inner, outer) in &self.plan.inclusions {
                    if inner == slot {
                        if let Some(o) = &self.assigned[outer] {
                            container = Some(match container {
                                Some(c) => c.intersection(o)?,
                                None => o.clone(),
                            });
                        }
                    }
                }
                if container.is_none() && self.n > MAX_FREE_POSET_SIZE {
                    return Err(Error::BoundExceeded(format!(
                        "unconstrained partial slot limited to size {MAX_FREE_POSET_SIZE}"
                    )));
                }
                partial_orders(self.n, container.as_ref())
            }
        }
    }

    fn consistent(&self, slot: usize) -> Result<bool> {
        for &(inner, outer) in &self.plan.inclusions {
            if inner != slot && outer != slot {
                continue;
            }
            if let (Some(i), Some(o)) = (&self.assigned[inner], &self.assigned[outer]) {
                if !i.is_subset_of(o)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Members of every size in `1..=max_n`, concatenated in size order.
pub fn enumerate_upto(class: &dyn StructureClass, max_n: usize) -> Result<Vec<Multiposet>> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        out.extend(class.enumerate(n)?);
    }
    Ok(out)
}
