//! Classes of multiposets and membership in them.
//!
//! The translated class K̄(T) lays a K(T) structure out as
//! `(≤_{i_1}..≤_{i_s}, ≤_{j_1}..≤_{j_s}, ≤_{k_1}..≤_{k_m})` using the
//! template's pair list and isolated points; [`bar_translate`] and
//! [`bar_untranslate`] move between the two layouts.

use std::fmt;

use crate::error::{Error, Result};
use crate::multiposet::Multiposet;
use crate::relation::Relation;
use crate::template::{validate_template, Template, TemplateInfo};

/// Anything with a membership predicate and a way to list its members of a
/// given size up to isomorphism. Every slot of a member is a partial order.
pub trait StructureClass: Sync {
    fn slot_count(&self) -> usize;

    /// Membership; a structure with the wrong slot count is not a member.
    fn contains(&self, x: &Multiposet) -> bool;

    /// One representative per isomorphism class of size-`n` members.
    fn enumerate(&self, n: usize) -> Result<Vec<Multiposet>>;

    fn name(&self) -> String;

    /// Per-slot order kinds, when known; used to prune searches.
    fn slot_kinds(&self) -> Option<Vec<SlotKind>> {
        None
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassSpec {
    /// T-multiposets.
    K(Template),
    /// The translated layout of K(T).
    KBar(TemplateInfo),
    /// `s` (partial order, linear extension) pairs and `m` free linear orders.
    Csm { s: usize, m: usize },
    /// Finite chains.
    Ch,
    /// Finite posets with a linear extension.
    EPos,
    /// Structures whose reduct to each factor's slots lies in that factor.
    Product(Vec<Factor>),
}

/// One factor of a product: the (0-based) slots it reads, in order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub slots: Vec<usize>,
    pub class: ClassSpec,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SlotKind {
    Partial,
    Linear,
}

/// Which slots must be linear and which inclusions `(inner, outer)` hold.
/// Used to drive generation; membership is always rechecked in full.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SlotPlan {
    pub kinds: Vec<SlotKind>,
    pub inclusions: Vec<(usize, usize)>,
}

impl ClassSpec {
    pub fn k(template: Template) -> Self {
        ClassSpec::K(template)
    }

    pub fn kbar(template: &Template) -> Result<Self> {
        Ok(ClassSpec::KBar(validate_template(template)?))
    }

    /// C(s, m) as the product of `s` copies of EPos over slot pairs
    /// `(α, s+α)` and `m` copies of Ch over slots `2s+β`.
    pub fn csm_product(s: usize, m: usize) -> Self {
        let mut factors: Vec<Factor> =
            (0..s).map(|a| Factor { slots: vec![a, s + a], class: ClassSpec::EPos }).collect();
        factors.extend((0..m).map(|b| Factor { slots: vec![2 * s + b], class: ClassSpec::Ch }));
        ClassSpec::Product(factors)
    }

    /// Parses `ch`, `epos`, `csm:S,M`, `k:PRESET` or `kbar:PRESET`.
    pub fn parse(text: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unknown class `{text}`"));
        match text.split_once(':') {
            None => match text {
                "ch" => Ok(ClassSpec::Ch),
                "epos" => Ok(ClassSpec::EPos),
                _ => Err(bad()),
            },
            Some(("csm", rest)) => {
                let (s, m) = rest.split_once(',').ok_or_else(bad)?;
                let s = s.trim().parse().map_err(|_| bad())?;
                let m = m.trim().parse().map_err(|_| bad())?;
                if s + m == 0 {
                    return Err(Error::Parse("C(0, 0) has no slots".into()));
                }
                Ok(ClassSpec::Csm { s, m })
            }
            Some(("k", preset)) => Ok(ClassSpec::K(Template::preset(preset)?)),
            Some(("kbar", preset)) => ClassSpec::kbar(&Template::preset(preset)?),
            Some(_) => Err(bad()),
        }
    }

    pub fn plan(&self) -> SlotPlan {
        match self {
            ClassSpec::Ch => SlotPlan { kinds: vec![SlotKind::Linear], inclusions: vec![] },
            ClassSpec::EPos => SlotPlan {
                kinds: vec![SlotKind::Partial, SlotKind::Linear],
                inclusions: vec![(0, 1)],
            },
            ClassSpec::Csm { s, m } => csm_plan(*s, *m),
            ClassSpec::K(t) => {
                let kinds = (1..=t.t())
                    .map(|i| if t.is_maximal(i) { SlotKind::Linear } else { SlotKind::Partial })
                    .collect();
                let inclusions = t.strict_pairs().into_iter().map(|(i, j)| (i - 1, j - 1)).collect();
                SlotPlan { kinds, inclusions }
            }
            ClassSpec::KBar(info) => {
                let mut plan = csm_plan(info.s, info.m);
                let tpl = info.template();
                for (a, &(ia, ja)) in info.pairs.iter().enumerate() {
                    for (b, &(ib, jb)) in info.pairs.iter().enumerate() {
                        if a != b && tpl.le(ia, ib) {
                            plan.inclusions.push((a, b));
                        }
                        if tpl.le(ia, jb) {
                            plan.inclusions.push((a, info.s + b));
                        }
                        if a != b && ja == jb {
                            plan.inclusions.push((info.s + a, info.s + b));
                        }
                    }
                }
                plan.inclusions.sort_unstable();
                plan.inclusions.dedup();
                plan
            }
            ClassSpec::Product(factors) => {
                let total = factors.iter().map(|f| f.slots.len()).sum();
                let mut plan = SlotPlan { kinds: vec![SlotKind::Partial; total], inclusions: vec![] };
                for f in factors {
                    let inner = f.class.plan();
                    for (local, &global) in f.slots.iter().enumerate() {
                        if let Some(kind) = inner.kinds.get(local) {
                            if global < total {
                                plan.kinds[global] = *kind;
                            }
                        }
                    }
                    for &(i, o) in &inner.inclusions {
                        if let (Some(&gi), Some(&go)) = (f.slots.get(i), f.slots.get(o)) {
                            plan.inclusions.push((gi, go));
                        }
                    }
                }
                plan
            }
        }
    }

    /// Membership with slot-count and product-shape errors surfaced.
    pub fn check(&self, x: &Multiposet) -> Result<bool> {
        self.check_view(&view(x))
    }

    fn check_view(&self, x: &[&Relation]) -> Result<bool> {
        match self {
            ClassSpec::K(t) => member_k(t, x),
            ClassSpec::KBar(info) => Ok(violation_kbar(info, x)?.is_none()),
            ClassSpec::Csm { s, m } => member_csm(*s, *m, x),
            ClassSpec::Ch => {
                expect_count(1, x.len())?;
                Ok(x[0].is_linear_order())
            }
            ClassSpec::EPos => {
                expect_count(2, x.len())?;
                Ok(x[0].is_partial_order() && x[1].is_linear_order() && x[0].is_subset_of(x[1])?)
            }
            ClassSpec::Product(factors) => product_view(factors, x),
        }
    }
}

fn csm_plan(s: usize, m: usize) -> SlotPlan {
    let mut kinds = vec![SlotKind::Partial; s];
    kinds.extend(std::iter::repeat(SlotKind::Linear).take(s + m));
    SlotPlan { kinds, inclusions: (0..s).map(|a| (a, s + a)).collect() }
}

impl StructureClass for ClassSpec {
    fn slot_count(&self) -> usize {
        match self {
            ClassSpec::K(t) => t.t(),
            ClassSpec::KBar(info) => info.bar_slots(),
            ClassSpec::Csm { s, m } => 2 * s + m,
            ClassSpec::Ch => 1,
            ClassSpec::EPos => 2,
            ClassSpec::Product(factors) => factors.iter().map(|f| f.slots.len()).sum(),
        }
    }

    fn contains(&self, x: &Multiposet) -> bool {
        self.check(x).unwrap_or(false)
    }

    fn enumerate(&self, n: usize) -> Result<Vec<Multiposet>> {
        crate::enumerate::enumerate_class(self, n)
    }

    fn name(&self) -> String {
        self.to_string()
    }

    fn slot_kinds(&self) -> Option<Vec<SlotKind>> {
        Some(self.plan().kinds)
    }
}

impl fmt::Display for ClassSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassSpec::K(t) => write!(f, "K(T; t={}, {:?})", t.t(), t.strict_pairs()),
            ClassSpec::KBar(info) => write!(f, "Kbar(T; t={}, pairs={:?})", info.t, info.pairs),
            ClassSpec::Csm { s, m } => write!(f, "C({s},{m})"),
            ClassSpec::Ch => write!(f, "Ch"),
            ClassSpec::EPos => write!(f, "EPos"),
            ClassSpec::Product(factors) => {
                let parts: Vec<String> =
                    factors.iter().map(|fa| format!("{}{:?}", fa.class, fa.slots)).collect();
                write!(f, "{}", parts.join(" x "))
            }
        }
    }
}

fn expect_count(expected: usize, found: usize) -> Result<()> {
    if found != expected {
        return Err(Error::SlotMismatch { expected, found });
    }
    Ok(())
}

fn view(x: &Multiposet) -> Vec<&Relation> {
    x.relations().iter().collect()
}

/// Partial orders in every slot, linear in maximal slots, and
/// `≤_i ⊆ ≤_j` whenever `i ≼ j`.
pub fn is_member_k(template: &Template, x: &Multiposet) -> Result<bool> {
    member_k(template, &view(x))
}

fn member_k(template: &Template, x: &[&Relation]) -> Result<bool> {
    expect_count(template.t(), x.len())?;
    for i in 1..=template.t() {
        let r = x[i - 1];
        if !r.is_partial_order() || (template.is_maximal(i) && !r.is_linear_order()) {
            return Ok(false);
        }
    }
    for (i, j) in template.strict_pairs() {
        if !x[i - 1].is_subset_of(x[j - 1])? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Why a structure fails the translated-class conditions. Slots are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KbarViolation {
    NotPartial { slot: usize },
    NotLinear { slot: usize },
    /// A partial slot not contained in another partial slot although its
    /// template element lies below the other's.
    PartialInclusion { inner: usize, outer: usize },
    /// A partial slot not contained in a linear slot above it.
    LinearInclusion { inner: usize, outer: usize },
    /// Two linear slots that stand for the same template element differ.
    SplitLinear { first: usize, second: usize },
}

impl fmt::Display for KbarViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KbarViolation::NotPartial { slot } => write!(f, "slot {slot} is not a partial order"),
            KbarViolation::NotLinear { slot } => write!(f, "slot {slot} is not a linear order"),
            KbarViolation::PartialInclusion { inner, outer } => {
                write!(f, "partial slot {inner} is not contained in partial slot {outer}")
            }
            KbarViolation::LinearInclusion { inner, outer } => {
                write!(f, "partial slot {inner} is not contained in linear slot {outer}")
            }
            KbarViolation::SplitLinear { first, second } => {
                write!(f, "linear slots {first} and {second} share a template element but differ")
            }
        }
    }
}

/// First violated translated-class condition, checked in order: order types,
/// partial-partial inclusions, partial-linear inclusions, equal linear slots.
pub fn kbar_violation(info: &TemplateInfo, y: &Multiposet) -> Result<Option<KbarViolation>> {
    violation_kbar(info, &view(y))
}

fn violation_kbar(info: &TemplateInfo, y: &[&Relation]) -> Result<Option<KbarViolation>> {
    expect_count(info.bar_slots(), y.len())?;
    let s = info.s;
    for a in 0..s {
        if !y[a].is_partial_order() {
            return Ok(Some(KbarViolation::NotPartial { slot: a + 1 }));
        }
    }
    for b in s..info.bar_slots() {
        if !y[b].is_linear_order() {
            return Ok(Some(KbarViolation::NotLinear { slot: b + 1 }));
        }
    }
    let tpl = info.template();
    for (a, &(ia, _)) in info.pairs.iter().enumerate() {
        for (b, &(ib, _)) in info.pairs.iter().enumerate() {
            if tpl.le(ia, ib) && !y[a].is_subset_of(y[b])? {
                return Ok(Some(KbarViolation::PartialInclusion { inner: a + 1, outer: b + 1 }));
            }
        }
    }
    for (a, &(ia, _)) in info.pairs.iter().enumerate() {
        for (b, &(_, jb)) in info.pairs.iter().enumerate() {
            if tpl.le(ia, jb) && !y[a].is_subset_of(y[s + b])? {
                return Ok(Some(KbarViolation::LinearInclusion { inner: a + 1, outer: s + b + 1 }));
            }
        }
    }
    for (a, &(_, ja)) in info.pairs.iter().enumerate() {
        for (b, &(_, jb)) in info.pairs.iter().enumerate().skip(a + 1) {
            if ja == jb && y[s + a] != y[s + b] {
                return Ok(Some(KbarViolation::SplitLinear { first: s + a + 1, second: s + b + 1 }));
            }
        }
    }
    Ok(None)
}

pub fn is_member_kbar(info: &TemplateInfo, y: &Multiposet) -> Result<bool> {
    Ok(kbar_violation(info, y)?.is_none())
}

/// Slots `0..s` partial, the rest linear, and slot `s+α` extends slot `α`.
pub fn is_member_csm(s: usize, m: usize, y: &Multiposet) -> Result<bool> {
    member_csm(s, m, &view(y))
}

fn member_csm(s: usize, m: usize, y: &[&Relation]) -> Result<bool> {
    expect_count(2 * s + m, y.len())?;
    for a in 0..s {
        if !y[a].is_partial_order() {
            return Ok(false);
        }
    }
    for b in s..2 * s + m {
        if !y[b].is_linear_order() {
            return Ok(false);
        }
    }
    for a in 0..s {
        if !y[a].is_subset_of(y[s + a])? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Checks that factor slot sets are disjoint and cover `0..slots`.
pub fn validate_product(factors: &[Factor], slots: usize) -> Result<()> {
    let mut seen = vec![false; slots];
    for f in factors {
        for &i in &f.slots {
            if i >= slots {
                return Err(Error::MalformedProduct(format!("slot {i} outside 0..{slots}")));
            }
            if std::mem::replace(&mut seen[i], true) {
                return Err(Error::MalformedProduct(format!("slot {i} used by two factors")));
            }
        }
        if f.slots.len() != f.class.slot_count() {
            return Err(Error::MalformedProduct(format!(
                "factor {} reads {} slots but has {}",
                f.class,
                f.slots.len(),
                f.class.slot_count()
            )));
        }
    }
    if let Some(i) = seen.iter().position(|&b| !b) {
        return Err(Error::MalformedProduct(format!("slot {i} not covered")));
    }
    Ok(())
}

pub fn product_membership(factors: &[Factor], y: &Multiposet) -> Result<bool> {
    product_view(factors, &view(y))
}

fn product_view(factors: &[Factor], y: &[&Relation]) -> Result<bool> {
    validate_product(factors, y.len())?;
    let mut reduct = Vec::new();
    for f in factors {
        reduct.clear();
        reduct.extend(f.slots.iter().map(|&i| y[i]));
        if !f.class.check_view(&reduct)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// K(T) layout → K̄(T) layout.
pub fn bar_translate(info: &TemplateInfo, x: &Multiposet) -> Result<Multiposet> {
    if !is_member_k(info.template(), x)? {
        return Err(Error::NotMember("K(T)".into()));
    }
    let slots: Vec<usize> = info
        .pairs
        .iter()
        .map(|&(i, _)| i - 1)
        .chain(info.pairs.iter().map(|&(_, j)| j - 1))
        .chain(info.isolated.iter().map(|&k| k - 1))
        .collect();
    x.reduct(&slots)
}

/// K̄(T) layout → K(T) layout. Each template element reads the first slot
/// that carries it.
pub fn bar_untranslate(info: &TemplateInfo, y: &Multiposet) -> Result<Multiposet> {
    if !is_member_kbar(info, y)? {
        return Err(Error::NotMember("Kbar(T)".into()));
    }
    let s = info.s;
    let slots = (1..=info.t)
        .map(|e| {
            if let Some(b) = info.isolated.iter().position(|&k| k == e) {
                Ok(2 * s + b)
            } else if let Some(a) = info.pairs.iter().position(|&(_, j)| j == e) {
                Ok(s + a)
            } else if let Some(a) = info.pairs.iter().position(|&(i, _)| i == e) {
                Ok(a)
            } else {
                Err(Error::InvalidTemplate(format!("element {e} is not covered by the decomposition")))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    y.reduct(&slots)
}
