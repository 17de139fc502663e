//! JSON file formats for templates, structures, diagrams and cones.
//!
//! Templates list `[i, j]` pairs (1-based, meaning `i ≼ j`). Structures list,
//! per slot, `[a, b]` pairs (0-based, meaning `a ≤ b`); the diagonal may be
//! omitted. Diagrams give the top count, the bottom `a` and top `b` (inline
//! or as a path relative to the diagram file) and per-bottom arrow pairs with
//! 0-based top indices. Cones give an apex and one integer array per leg.

use std::fs;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::amalgam::{Arrow, BinaryDiagram, Cone};
use crate::error::{Error, Result};
use crate::hom::Embedding;
use crate::multiposet::Multiposet;
use crate::relation::Relation;
use crate::template::Template;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TemplateFile {
    pub t: usize,
    pub order: Vec<[usize; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureFile {
    pub size: usize,
    pub relations: Vec<Vec<[usize; 2]>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StructureSource {
    Inline(StructureFile),
    Path(PathBuf),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowFile {
    pub top: usize,
    pub map: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramFile {
    pub tops: usize,
    pub a: StructureSource,
    pub b: StructureSource,
    pub bottoms: Vec<[ArrowFile; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeFile {
    pub apex: StructureFile,
    pub legs: Vec<Vec<usize>>,
}

pub fn template_to_file(t: &Template) -> TemplateFile {
    TemplateFile { t: t.t(), order: t.strict_pairs().into_iter().map(|(i, j)| [i, j]).collect() }
}

pub fn template_from_file(f: &TemplateFile) -> Result<Template> {
    Template::new(f.t, f.order.iter().map(|&[i, j]| (i, j)))
}

pub fn structure_to_file(x: &Multiposet) -> StructureFile {
    StructureFile {
        size: x.size(),
        relations: x.relations().iter().map(|r| r.strict_pairs().map(|(a, b)| [a, b]).collect()).collect(),
    }
}

/// Adds the diagonal; with `close`, also takes the transitive closure.
/// Anything that is then not a partial order is rejected.
pub fn structure_from_file(f: &StructureFile, close: bool) -> Result<Multiposet> {
    if f.size == 0 {
        return Err(Error::EmptyGroundSet);
    }
    let mut relations = Vec::with_capacity(f.relations.len());
    for (slot, pairs) in f.relations.iter().enumerate() {
        let mut r = Relation::from_pairs(f.size, pairs.iter().map(|&[a, b]| (a, b)))?.reflexive_closure();
        if close {
            r = r.transitive_closure();
        }
        if !r.is_partial_order() {
            return Err(Error::NotPartialOrder(format!("slot {} of the structure", slot + 1)));
        }
        relations.push(r);
    }
    Multiposet::new(f.size, relations)
}

pub fn diagram_to_file(d: &BinaryDiagram) -> DiagramFile {
    let arrow = |a: &Arrow| ArrowFile { top: a.top, map: a.map.map().to_vec() };
    DiagramFile {
        tops: d.tops(),
        a: StructureSource::Inline(structure_to_file(d.bottom())),
        b: StructureSource::Inline(structure_to_file(d.top())),
        bottoms: d.bottoms().iter().map(|[p, q]| [arrow(p), arrow(q)]).collect(),
    }
}

/// Path references resolve against `base`.
pub fn diagram_from_file(f: &DiagramFile, base: &Path, close: bool) -> Result<BinaryDiagram> {
    let resolve = |src: &StructureSource| -> Result<Multiposet> {
        match src {
            StructureSource::Inline(s) => structure_from_file(s, close),
            StructureSource::Path(p) => structure_from_file(&load_json(&base.join(p))?, close),
        }
    };
    let a = resolve(&f.a)?;
    let b = resolve(&f.b)?;
    let arrow = |x: &ArrowFile| -> Result<Arrow> {
        Ok(Arrow { top: x.top, map: Embedding::new(a.size(), b.size(), x.map.clone())? })
    };
    let bottoms = f.bottoms.iter().map(|[p, q]| Ok([arrow(p)?, arrow(q)?])).collect::<Result<Vec<_>>>()?;
    BinaryDiagram::new(a, b, f.tops, bottoms)
}

pub fn cone_to_file(c: &Cone) -> ConeFile {
    ConeFile { apex: structure_to_file(&c.apex), legs: c.legs.iter().map(|e| e.map().to_vec()).collect() }
}

/// Legs are read as maps from a source of size `top_size`.
pub fn cone_from_file(f: &ConeFile, top_size: usize, close: bool) -> Result<Cone> {
    let apex = structure_from_file(&f.apex, close)?;
    let legs = f
        .legs
        .iter()
        .map(|m| {
            if m.len() != top_size {
                return Err(Error::InvalidCone(format!("leg {m:?} does not have {top_size} entries")));
            }
            Embedding::new(top_size, apex.size(), m.clone())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Cone { apex, legs })
}

pub fn load_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

pub fn save_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}
