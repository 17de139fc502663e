//! The arrow relation `C → (B)^A_k` and Ramsey-witness search.
//!
//! Deciding the arrow is a hypergraph coloring question. The vertices are
//! the copies of `A` in `C` (the embeddings in `hom(A, C)`), and each copy
//! `w` of `B` contributes the hyperedge `{w ∘ h : h ∈ hom(A, B)}`. The arrow
//! fails exactly when some `k`-coloring leaves every hyperedge with at least
//! two colors; such a coloring is the counterexample certificate.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use crate::class::StructureClass;
use crate::error::{Error, Result};
use crate::hom::{compose, enumerate_embeddings, Embedding};
use crate::multiposet::Multiposet;

pub const MAX_COLORS: usize = 4;

/// A coloring of an indexed embedding list with colors `1..=k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Coloring {
    pub k: usize,
    pub colors: Vec<u8>,
}

impl Coloring {
    pub fn new(k: usize, colors: Vec<u8>) -> Result<Self> {
        check_k(k)?;
        if let Some(&c) = colors.iter().find(|&&c| c == 0 || c as usize > k) {
            return Err(Error::InvalidColoring(format!("color {c} outside 1..={k}")));
        }
        Ok(Self { k, colors })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArrowResult {
    pub holds: bool,
    /// Present exactly when the arrow fails.
    pub counterexample: Option<Coloring>,
    pub hom_ac: usize,
    pub hom_bc: usize,
    pub hom_ab: usize,
}

fn check_k(k: usize) -> Result<()> {
    if !(2..=MAX_COLORS).contains(&k) {
        return Err(Error::UnsupportedColors(k));
    }
    Ok(())
}

fn check_slots(c: &Multiposet, b: &Multiposet, a: &Multiposet) -> Result<()> {
    for x in [b, a] {
        if x.slots() != c.slots() {
            return Err(Error::SlotMismatch { expected: c.slots(), found: x.slots() });
        }
    }
    Ok(())
}

/// Vertex set `hom(A, C)`, one hyperedge per copy of `B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
    pub vertices: usize,
    pub edges: Vec<Vec<usize>>,
}

/// The copy hypergraph of an instance, plus the three hom-sets.
pub struct ArrowInstance {
    pub hom_ac: Vec<Embedding>,
    pub hom_bc: Vec<Embedding>,
    pub hom_ab: Vec<Embedding>,
    pub hypergraph: Hypergraph,
}

pub fn arrow_instance(c: &Multiposet, b: &Multiposet, a: &Multiposet) -> Result<ArrowInstance> {
    check_slots(c, b, a)?;
    let hom_ab = enumerate_embeddings(a, b)?;
    let hom_ac = enumerate_embeddings(a, c)?;
    let hom_bc = enumerate_embeddings(b, c)?;
    let index: HashMap<&[usize], usize> = hom_ac.iter().enumerate().map(|(i, e)| (e.map(), i)).collect();
    let mut edges = BTreeSet::new();
    for w in &hom_bc {
        let mut edge = hom_ab
            .iter()
            .map(|h| {
                let copy = compose(w, h)?;
                index
                    .get(copy.map())
                    .copied()
                    .ok_or_else(|| Error::Invariant("composite embedding missing from hom(A, C)".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        edge.sort_unstable();
        edge.dedup();
        edges.insert(edge);
    }
    let hypergraph = Hypergraph { vertices: hom_ac.len(), edges: edges.into_iter().collect() };
    Ok(ArrowInstance { hom_ac, hom_bc, hom_ab, hypergraph })
}

/// Decides `c → (b)^a_k`.
pub fn arrow_check(c: &Multiposet, b: &Multiposet, a: &Multiposet, k: usize) -> Result<ArrowResult> {
    check_k(k)?;
    let inst = arrow_instance(c, b, a)?;
    if inst.hom_ab.is_empty() {
        return Err(Error::EmptyHom);
    }
    let counterexample = find_polychromatic_coloring(&inst.hypergraph, k)
        .map(|colors| Coloring { k, colors: colors.into_iter().map(|c| c + 1).collect() });
    Ok(ArrowResult {
        holds: counterexample.is_none(),
        counterexample,
        hom_ac: inst.hom_ac.len(),
        hom_bc: inst.hom_bc.len(),
        hom_ab: inst.hom_ab.len(),
    })
}

/// Independent check that `col` (indexed like `enumerate_embeddings(a, c)`)
/// leaves no copy of `b` monochromatic.
pub fn verify_arrow_counterexample(
    c: &Multiposet,
    b: &Multiposet,
    a: &Multiposet,
    k: usize,
    col: &Coloring,
) -> Result<bool> {
    check_k(k)?;
    check_slots(c, b, a)?;
    let hom_ac = enumerate_embeddings(a, c)?;
    if col.colors.len() != hom_ac.len() {
        return Err(Error::InvalidColoring(format!(
            "{} colors for {} embeddings",
            col.colors.len(),
            hom_ac.len()
        )));
    }
    if col.k != k || col.colors.iter().any(|&x| x == 0 || x as usize > k) {
        return Err(Error::InvalidColoring(format!("colors must lie in 1..={k}")));
    }
    let color_of: HashMap<Vec<usize>, u8> =
        hom_ac.into_iter().zip(&col.colors).map(|(e, &x)| (e.map().to_vec(), x)).collect();
    let hom_ab = enumerate_embeddings(a, b)?;
    for w in enumerate_embeddings(b, c)? {
        let mut seen = None;
        let mut mono = true;
        for h in &hom_ab {
            let x = color_of[compose(&w, h)?.map()];
            match seen {
                None => seen = Some(x),
                Some(y) if y != x => {
                    mono = false;
                    break;
                }
                _ => {}
            }
        }
        if mono {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A `k`-coloring (colors `0..k`) with no monochromatic edge, or `None`.
///
/// Exact backtracking, most-constrained vertex first. When an edge has all
/// assigned vertices in color `c` and one vertex left, `c` is removed from
/// that vertex's domain. Colors not used yet are interchangeable, so only the
/// lowest unused one is tried.
pub fn find_polychromatic_coloring(h: &Hypergraph, k: usize) -> Option<Vec<u8>> {
    assert!((1..=8).contains(&k), "color domains are u8 bit sets");
    if h.edges.iter().any(|e| e.len() <= 1) {
        return None;
    }
    let mut solver = Solver::new(h, k);
    if solver.search() {
        Some(solver.color.iter().map(|c| c.unwrap_or(0)).collect())
    } else {
        None
    }
}

struct Solver<'a> {
    edges: &'a [Vec<usize>],
    incidence: Vec<Vec<usize>>,
    k: usize,
    color: Vec<Option<u8>>,
    domain: Vec<u8>,
    unassigned: Vec<usize>,
    counts: Vec<[u16; 8]>,
    trail: Vec<(usize, u8)>,
    used_colors: usize,
}

impl<'a> Solver<'a> {
    fn new(h: &'a Hypergraph, k: usize) -> Self {
        let mut incidence = vec![Vec::new(); h.vertices];
        for (e, edge) in h.edges.iter().enumerate() {
            for &v in edge {
                incidence[v].push(e);
            }
        }
        Solver {
            edges: &h.edges,
            incidence,
            k,
            color: vec![None; h.vertices],
            domain: vec![((1u16 << k) - 1) as u8; h.vertices],
            unassigned: h.edges.iter().map(Vec::len).collect(),
            counts: vec![[0; 8]; h.edges.len()],
            trail: Vec::new(),
            used_colors: 0,
        }
    }

    fn pick(&self) -> Option<usize> {
        let mut best: Option<(u32, usize, usize)> = None;
        for v in (0..self.color.len()).filter(|&v| self.color[v].is_none()) {
            let key = (self.domain[v].count_ones(), usize::MAX - self.incidence[v].len(), v);
            if best.map_or(true, |b| key < b) {
                best = Some(key);
            }
        }
        best.map(|(_, _, v)| v)
    }

    /// Assigns and propagates; returns false on a conflict. Always leaves
    /// counts updated so `unassign` can revert.
    fn assign(&mut self, v: usize, c: u8) -> bool {
        self.color[v] = Some(c);
        let mut ok = true;
        for i in 0..self.incidence[v].len() {
            let e = self.incidence[v][i];
            self.unassigned[e] -= 1;
            self.counts[e][c as usize] += 1;
            let len = self.edges[e].len();
            let same = self.counts[e][c as usize] as usize;
            if self.unassigned[e] == 0 && same == len {
                ok = false;
            } else if ok && self.unassigned[e] == 1 && same == len - 1 {
                let u = self.edges[e]
                    .iter()
                    .copied()
                    .find(|&u| self.color[u].is_none())
                    .expect("one unassigned vertex");
                let old = self.domain[u];
                let new = old & !(1 << c);
                if new != old {
                    self.trail.push((u, old));
                    self.domain[u] = new;
                }
                if new == 0 {
                    ok = false;
                }
            }
        }
        ok
    }

    fn unassign(&mut self, v: usize, c: u8, mark: usize) {
        for &e in &self.incidence[v] {
            self.unassigned[e] += 1;
            self.counts[e][c as usize] -= 1;
        }
        self.color[v] = None;
        while self.trail.len() > mark {
            let (u, old) = self.trail.pop().expect("trail entry");
            self.domain[u] = old;
        }
    }

    fn search(&mut self) -> bool {
        let Some(v) = self.pick() else { return true };
        let limit = (self.used_colors + 1).min(self.k);
        for c in 0..limit as u8 {
            if self.domain[v] >> c & 1 == 0 {
                continue;
            }
            let mark = self.trail.len();
            let prev_used = self.used_colors;
            self.used_colors = self.used_colors.max(c as usize + 1);
            if self.assign(v, c) && self.search() {
                return true;
            }
            self.unassign(v, c, mark);
            self.used_colors = prev_used;
        }
        false
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelSummary {
    pub size: usize,
    pub candidates: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessOutcome {
    /// The first class member (by size, then enumeration order) for which
    /// the arrow holds.
    Found { apex: Multiposet, result: ArrowResult, scanned: Vec<LevelSummary> },
    /// Every size level up to the bound was exhausted without a witness.
    NoneUpTo { max_n: usize, scanned: Vec<LevelSummary> },
}

/// Smallest member `C` of `class` with `C → (b)^a_k`, scanning sizes
/// `|b|..=max_n`. A size level that cannot be enumerated surfaces as
/// [`Error::BoundExceeded`], distinct from [`WitnessOutcome::NoneUpTo`].
pub fn ramsey_witness_search(
    class: &dyn StructureClass,
    a: &Multiposet,
    b: &Multiposet,
    k: usize,
    max_n: usize,
) -> Result<WitnessOutcome> {
    check_k(k)?;
    for (name, x) in [("A", a), ("B", b)] {
        if !class.contains(x) {
            return Err(Error::NotMember(format!("{} ({name})", class.name())));
        }
    }
    if !crate::hom::embeds(a, b)? {
        return Err(Error::EmptyHom);
    }
    let mut scanned = Vec::new();
    for n in b.size()..=max_n {
        let candidates = class.enumerate(n)?;
        scanned.push(LevelSummary { size: n, candidates: candidates.len() });
        let hit = candidates
            .par_iter()
            .map(|c| arrow_check(c, b, a, k).map(|r| (c, r)))
            .find_map_first(|r| match r {
                Ok((c, res)) if res.holds => Some(Ok((c.clone(), res))),
                Ok(_) => None,
                Err(e) => Some(Err(e)),
            });
        if let Some(hit) = hit {
            let (apex, result) = hit?;
            return Ok(WitnessOutcome::Found { apex, result, scanned });
        }
    }
    Ok(WitnessOutcome::NoneUpTo { max_n, scanned })
}
