//! Templates: a poset on `{1..t}` saying which order slots are linear and
//! which must contain which.
//!
//! Elements are 1-based in every public signature; the stored relation is
//! 0-shifted.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::relation::Relation;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Template {
    t: usize,
    order: Relation,
}

impl Template {
    /// Builds a template from 1-based pairs `(i, j)` meaning `i ≼ j`. The
    /// reflexive-transitive closure is taken; a cycle is rejected.
    pub fn new<I>(t: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if t == 0 {
            return Err(Error::InvalidTemplate("t must be at least 1".into()));
        }
        let mut raw = Relation::empty(t)?;
        for (i, j) in pairs {
            if i == 0 || j == 0 || i > t || j > t {
                return Err(Error::InvalidTemplate(format!("pair ({i}, {j}) outside 1..={t}")));
            }
            raw.insert(i - 1, j - 1)?;
        }
        let order = raw.reflexive_transitive_closure();
        if !order.is_antisymmetric() {
            return Err(Error::InvalidTemplate("order is not antisymmetric".into()));
        }
        Ok(Self { t, order })
    }

    /// Wraps an already-closed 0-based order.
    pub fn from_order(order: Relation) -> Result<Self> {
        if order.size() == 0 {
            return Err(Error::InvalidTemplate("t must be at least 1".into()));
        }
        if !order.is_partial_order() {
            return Err(Error::InvalidTemplate(format!("not a partial order: {order:?}")));
        }
        Ok(Self { t: order.size(), order })
    }

    pub fn t(&self) -> usize {
        self.t
    }

    /// The 0-based order relation.
    pub fn order(&self) -> &Relation {
        &self.order
    }

    /// `i ≼ j`, 1-based.
    pub fn le(&self, i: usize, j: usize) -> bool {
        i >= 1 && j >= 1 && self.order.contains(i - 1, j - 1)
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.le(i, j)
    }

    pub fn is_maximal(&self, i: usize) -> bool {
        (1..=self.t).all(|j| !self.lt(i, j))
    }

    pub fn is_isolated(&self, i: usize) -> bool {
        (1..=self.t).all(|j| j == i || !(self.le(i, j) || self.le(j, i)))
    }

    /// Strict pairs `(i, j)`, 1-based, in lexicographic order.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        self.order.strict_pairs().map(|(i, j)| (i + 1, j + 1)).collect()
    }

    /// Bundled templates: `a` (one chain), `b` (poset with a linear extension),
    /// `c` (poset, extension and a free linear order), `d:N` (N free linear
    /// orders) and `e:N` (a poset with N-1 linear extensions).
    ///
    /// In `e:N` the shared partial order is stored as index `N`, below each
    /// of the linear orders `1..N-1`.
    pub fn preset(name: &str) -> Result<Self> {
        let unknown = || Error::UnknownPreset(name.to_string());
        let (head, arg) = match name.split_once(':') {
            Some((h, a)) => (h, Some(a.parse::<usize>().map_err(|_| unknown())?)),
            None => (name, None),
        };
        match (head, arg) {
            ("a", None) => Template::new(1, []),
            ("b", None) => Template::new(2, [(1, 2)]),
            ("c", None) => Template::new(3, [(1, 2)]),
            ("d", Some(n)) if n >= 1 => Template::new(n, []),
            ("e", Some(n)) if n >= 2 => Template::new(n, (1..n).map(|i| (n, i))),
            _ => Err(unknown()),
        }
    }
}

/// Structural decomposition of a template: maximal elements, isolated points
/// `k_1..k_m`, and the pair list `(i_α, j_α)` with `j_α` maximal among the
/// non-isolated elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TemplateInfo {
    #[serde(skip)]
    template: Template,
    pub t: usize,
    pub maximal: Vec<usize>,
    pub isolated: Vec<usize>,
    /// Elements of the template with the isolated points removed.
    pub restricted: Vec<usize>,
    pub pairs: Vec<(usize, usize)>,
    pub s: usize,
    pub m: usize,
}

impl TemplateInfo {
    pub fn template(&self) -> &Template {
        &self.template
    }

    /// Slot count `2s + m` of the translated signature.
    pub fn bar_slots(&self) -> usize {
        2 * self.s + self.m
    }

    /// Replaces the pair list (and `s`); used to build deliberately wrong
    /// decompositions in tests.
    pub fn with_pairs(&self, pairs: Vec<(usize, usize)>) -> TemplateInfo {
        TemplateInfo { s: pairs.len(), pairs, ..self.clone() }
    }
}

pub fn validate_template(template: &Template) -> Result<TemplateInfo> {
    if !template.order.is_partial_order() {
        return Err(Error::InvalidTemplate("order is not a partial order".into()));
    }
    let t = template.t;
    let maximal: Vec<usize> = (1..=t).filter(|&i| template.is_maximal(i)).collect();
    let isolated: Vec<usize> = (1..=t).filter(|&i| template.is_isolated(i)).collect();
    let restricted: Vec<usize> = (1..=t).filter(|i| !isolated.contains(i)).collect();

    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for &j in restricted.iter().filter(|&&j| template.is_maximal(j)) {
        for &i in &restricted {
            if template.lt(i, j) {
                pairs.push((i, j));
            }
        }
    }
    pairs.sort_by_key(|&(i, j)| (j, i));

    let info = TemplateInfo {
        template: template.clone(),
        t,
        s: pairs.len(),
        m: isolated.len(),
        maximal,
        isolated,
        restricted,
        pairs,
    };
    debug_assert!(info
        .restricted
        .iter()
        .filter(|&&j| template.is_maximal(j))
        .all(|&j| info.pairs.iter().any(|&(_, pj)| pj == j)));
    Ok(info)
}
