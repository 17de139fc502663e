//! Desk-scale checkers for the hereditary, joint-embedding and strong
//! amalgamation properties of a class.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::class::{SlotKind, StructureClass};
use crate::enumerate::{enumerate_upto, MAX_ENUM_SIZE};
use crate::error::{Error, Result};
use crate::hom::{embeds, enumerate_embeddings, is_embedding, Embedding};
use crate::multiposet::Multiposet;
use crate::relation::{mask_below, Relation};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub property: &'static str,
    pub class: String,
    pub n: usize,
    pub holds: bool,
    pub instances: usize,
    /// Largest joint extension or amalgam used.
    pub max_witness_size: usize,
    pub failure: Option<String>,
}

impl PropertyReport {
    fn new(property: &'static str, class: &dyn StructureClass, n: usize) -> Self {
        Self { property, class: class.name(), n, holds: true, instances: 0, max_witness_size: 0, failure: None }
    }

    fn fail(mut self, why: String) -> Self {
        self.holds = false;
        self.failure = Some(why);
        self
    }
}

/// Every induced substructure of every member of size `<= n` is a member.
pub fn check_hp(class: &dyn StructureClass, n: usize) -> Result<PropertyReport> {
    let mut report = PropertyReport::new("HP", class, n);
    for x in enumerate_upto(class, n)? {
        for mask in 1..=mask_below(x.size()) {
            let (sub, _) = x.induced_by_mask(mask)?;
            report.instances += 1;
            if !class.contains(&sub) {
                return Ok(report.fail(format!("{sub:?} is induced in member {x:?} but is not a member")));
            }
        }
    }
    Ok(report)
}

/// Any two members of size `<= n` embed jointly into a member of size at
/// most the sum of theirs.
pub fn check_jep(class: &dyn StructureClass, n: usize) -> Result<PropertyReport> {
    let mut report = PropertyReport::new("JEP", class, n);
    let members = enumerate_upto(class, n)?;
    let mut levels: BTreeMap<usize, Vec<Multiposet>> = BTreeMap::new();
    for (i, a) in members.iter().enumerate() {
        for b in &members[i..] {
            report.instances += 1;
            let bound = a.size() + b.size();
            if bound > MAX_ENUM_SIZE {
                return Err(Error::BoundExceeded(format!("joint extension of size {bound}")));
            }
            let mut found = None;
            'sizes: for size in a.size().max(b.size())..=bound {
                if !levels.contains_key(&size) {
                    levels.insert(size, class.enumerate(size)?);
                }
                for c in &levels[&size] {
                    if embeds(a, c)? && embeds(b, c)? {
                        found = Some(size);
                        break 'sizes;
                    }
                }
            }
            match found {
                Some(size) => report.max_witness_size = report.max_witness_size.max(size),
                None => return Ok(report.fail(format!("no joint extension of {a:?} and {b:?} up to size {bound}"))),
            }
        }
    }
    Ok(report)
}

/// For all members `A, B, C` of size `<= n` and embeddings `f1: A → B`,
/// `f2: A → C`, a strong amalgam exists. A strong amalgam has exactly
/// `|B| + |C| - |A|` points, so it is searched on that ground set with `B`
/// placed identically and the new points of `C` after it.
pub fn check_sap(class: &dyn StructureClass, n: usize, size_bound: usize) -> Result<PropertyReport> {
    let mut report = PropertyReport::new("SAP", class, n);
    let members = enumerate_upto(class, n)?;
    for a in &members {
        for b in members.iter().filter(|b| b.size() >= a.size()) {
            let into_b = enumerate_embeddings(a, b)?;
            if into_b.is_empty() {
                continue;
            }
            for c in members.iter().filter(|c| c.size() >= a.size()) {
                let into_c = enumerate_embeddings(a, c)?;
                let size = b.size() + c.size() - a.size();
                if !into_c.is_empty() && size > size_bound {
                    return Err(Error::BoundExceeded(format!("amalgam of size {size} over bound {size_bound}")));
                }
                for f1 in &into_b {
                    for f2 in &into_c {
                        report.instances += 1;
                        match strong_amalgam(class, b, c, f1, f2)? {
                            Some(am) => {
                                report.max_witness_size = report.max_witness_size.max(am.apex.size());
                            }
                            None => {
                                return Ok(report.fail(format!(
                                    "no strong amalgam of {b:?} and {c:?} over {a:?} via {:?} / {:?}",
                                    f1.map(),
                                    f2.map()
                                )))
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

pub fn has_hp_upto(class: &dyn StructureClass, n: usize) -> Result<bool> {
    Ok(check_hp(class, n)?.holds)
}

pub fn has_jep_upto(class: &dyn StructureClass, n: usize) -> Result<bool> {
    Ok(check_jep(class, n)?.holds)
}

pub fn has_sap_upto(class: &dyn StructureClass, n: usize, size_bound: usize) -> Result<bool> {
    Ok(check_sap(class, n, size_bound)?.holds)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Amalgam {
    pub apex: Multiposet,
    pub into_b: Embedding,
    pub into_c: Embedding,
}

/// A class member `D` on `|B| + |C| - |A|` points with embeddings
/// `g1: B → D` (the identity on `0..|B|`) and `g2: C → D` such that
/// `g1 ∘ f1 = g2 ∘ f2` and the two images meet exactly in the image of `A`.
/// Candidate relations are searched slot by slot over the pairs between
/// the new points of `B` and of `C`, keeping only partial (or, where the
/// class demands it, linear) orders.
pub fn strong_amalgam(
    class: &dyn StructureClass,
    b: &Multiposet,
    c: &Multiposet,
    f1: &Embedding,
    f2: &Embedding,
) -> Result<Option<Amalgam>> {
    let (nb, nc) = (b.size(), c.size());
    let shared = f1.source();
    let size = nb + nc - shared;
    let f2_inv = f2.inverse();
    let mut next = nb;
    let g2_map: Vec<usize> = (0..nc)
        .map(|y| match f2_inv[y] {
            Some(a) => f1.apply(a),
            None => {
                next += 1;
                next - 1
            }
        })
        .collect();
    let g1 = Embedding::new(nb, size, (0..nb).collect())?;
    let g2 = Embedding::new(nc, size, g2_map)?;

    let b_only: Vec<usize> = (0..nb).filter(|&x| f1.image_mask() >> x & 1 == 0).collect();
    let c_only: Vec<usize> = (nb..size).collect();
    let cross: Vec<(usize, usize)> =
        b_only.iter().flat_map(|&x| c_only.iter().map(move |&y| (x, y))).collect();
    let kinds = class.slot_kinds();

    let mut per_slot: Vec<Vec<Relation>> = Vec::with_capacity(b.slots());
    for slot in 0..b.slots() {
        let mut base = Relation::empty(size)?;
        for (x, y) in b.relation(slot).pairs() {
            base.insert(x, y)?;
        }
        for (x, y) in c.relation(slot).pairs() {
            base.insert(g2.apply(x), g2.apply(y))?;
        }
        let want_linear = matches!(kinds.as_ref().and_then(|k| k.get(slot)), Some(SlotKind::Linear));
        let mut options = Vec::new();
        let total = 3usize.pow(cross.len() as u32);
        for code in 0..total {
            let mut r = base.clone();
            let mut rest = code;
            for &(x, y) in &cross {
                match rest % 3 {
                    1 => r.insert(x, y)?,
                    2 => r.insert(y, x)?,
                    _ => {}
                }
                rest /= 3;
            }
            let ok = if want_linear { r.is_linear_order() } else { r.is_partial_order() };
            if ok {
                options.push(r);
            }
        }
        if options.is_empty() {
            return Ok(None);
        }
        per_slot.push(options);
    }

    let mut choice = vec![0usize; per_slot.len()];
    loop {
        let relations = choice.iter().zip(&per_slot).map(|(&i, opts)| opts[i].clone()).collect();
        let d = Multiposet::new(size, relations)?;
        if class.contains(&d) && is_embedding(&g1, b, &d)? && is_embedding(&g2, c, &d)? {
            return Ok(Some(Amalgam { apex: d, into_b: g1, into_c: g2 }));
        }
        // odometer
        let mut i = 0;
        loop {
            if i == choice.len() {
                return Ok(None);
            }
            choice[i] += 1;
            if choice[i] < per_slot[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}
