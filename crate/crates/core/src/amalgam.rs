//! Binary diagrams, compatible cones, and the construction of a cone in
//! K̄(T) from a cone in C(s, m).

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::class::{kbar_violation, ClassSpec, StructureClass};
use crate::enumerate::{enumerate_class, MAX_ENUM_SIZE};
use crate::error::{Error, Result};
use crate::hom::{compose, enumerate_embeddings, is_embedding, Embedding};
use crate::multiposet::Multiposet;
use crate::relation::Relation;
use crate::template::TemplateInfo;

/// One arrow out of a bottom vertex: into top number `top` (0-based) via `map`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub top: usize,
    pub map: Embedding,
}

/// Every top vertex carries `top`, every bottom vertex carries `bottom`,
/// and every bottom vertex has exactly two arrows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryDiagram {
    bottom: Multiposet,
    top: Multiposet,
    tops: usize,
    bottoms: Vec<[Arrow; 2]>,
}

impl BinaryDiagram {
    pub fn new(bottom: Multiposet, top: Multiposet, tops: usize, bottoms: Vec<[Arrow; 2]>) -> Result<Self> {
        if tops == 0 {
            return Err(Error::InvalidDiagram("a diagram needs at least one top".into()));
        }
        if bottom.slots() != top.slots() {
            return Err(Error::SlotMismatch { expected: top.slots(), found: bottom.slots() });
        }
        for (v, pair) in bottoms.iter().enumerate() {
            for arrow in pair {
                if arrow.top >= tops {
                    return Err(Error::InvalidDiagram(format!(
                        "bottom {v} points at top {} of {tops}",
                        arrow.top
                    )));
                }
                if arrow.map.source() != bottom.size()
                    || arrow.map.target() != top.size()
                    || !is_embedding(&arrow.map, &bottom, &top)?
                {
                    return Err(Error::InvalidDiagram(format!(
                        "bottom {v}: {:?} is not an embedding of the bottom into the top",
                        arrow.map.map()
                    )));
                }
            }
        }
        Ok(Self { bottom, top, tops, bottoms })
    }

    pub fn bottom(&self) -> &Multiposet {
        &self.bottom
    }

    pub fn top(&self) -> &Multiposet {
        &self.top
    }

    pub fn tops(&self) -> usize {
        self.tops
    }

    pub fn bottoms(&self) -> &[[Arrow; 2]] {
        &self.bottoms
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone {
    pub apex: Multiposet,
    pub legs: Vec<Embedding>,
}

/// The first bottom whose two paths into the apex differ, if any. Legs are
/// assumed to have the right sizes.
fn broken_square(d: &BinaryDiagram, legs: &[Embedding]) -> Result<Option<usize>> {
    for (v, [p, q]) in d.bottoms.iter().enumerate() {
        if compose(&legs[p.top], &p.map)? != compose(&legs[q.top], &q.map)? {
            return Ok(Some(v));
        }
    }
    Ok(None)
}

/// Why a cone is not compatible, or `None` if it is.
fn cone_defect(d: &BinaryDiagram, cone: &Cone, class: &dyn StructureClass) -> Result<Option<String>> {
    if cone.legs.len() != d.tops {
        return Err(Error::InvalidCone(format!("{} legs for {} tops", cone.legs.len(), d.tops)));
    }
    if cone.apex.slots() != d.top.slots() {
        return Err(Error::SlotMismatch { expected: d.top.slots(), found: cone.apex.slots() });
    }
    if !class.contains(&cone.apex) {
        return Ok(Some(format!("apex is not in {}", class.name())));
    }
    for (i, leg) in cone.legs.iter().enumerate() {
        if leg.source() != d.top.size()
            || leg.target() != cone.apex.size()
            || !is_embedding(leg, &d.top, &cone.apex)?
        {
            return Ok(Some(format!("leg {i} ({:?}) is not an embedding", leg.map())));
        }
    }
    Ok(broken_square(d, &cone.legs)?.map(|v| format!("square at bottom {v} does not commute")))
}

/// Apex in `class`, every leg an embedding, every square commuting.
pub fn is_compatible_cone(d: &BinaryDiagram, cone: &Cone, class: &dyn StructureClass) -> Result<bool> {
    Ok(cone_defect(d, cone, class)?.is_none())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConeSearch {
    Found(Cone),
    /// Every apex of size at most the bound was tried.
    NoneUpTo(usize),
}

/// Smallest cone with apex in C(s, m): apexes by size, then enumeration
/// order; legs lexicographically.
pub fn find_cone_csm(d: &BinaryDiagram, s: usize, m: usize, max_size: usize) -> Result<ConeSearch> {
    if d.top.slots() != 2 * s + m {
        return Err(Error::SlotMismatch { expected: 2 * s + m, found: d.top.slots() });
    }
    if max_size > MAX_ENUM_SIZE {
        return Err(Error::BoundExceeded(format!("cone apex size {max_size} over {MAX_ENUM_SIZE}")));
    }
    let spec = ClassSpec::Csm { s, m };
    for n in d.top.size()..=max_size {
        let apexes = enumerate_class(&spec, n)?;
        let hit = apexes
            .par_iter()
            .map(|apex| {
                let homs = enumerate_embeddings(&d.top, apex)?;
                let mut legs = Vec::with_capacity(d.tops);
                Ok(choose_legs(d, &homs, &mut legs).then(|| Cone { apex: apex.clone(), legs }))
            })
            .find_map_first(|r: Result<Option<Cone>>| r.transpose());
        if let Some(cone) = hit {
            return Ok(ConeSearch::Found(cone?));
        }
    }
    Ok(ConeSearch::NoneUpTo(max_size))
}

fn choose_legs(d: &BinaryDiagram, homs: &[Embedding], legs: &mut Vec<Embedding>) -> bool {
    let next = legs.len();
    if next == d.tops {
        return true;
    }
    for e in homs {
        legs.push(e.clone());
        // squares whose tops are all placed and one of which is the new leg
        let ok = d.bottoms.iter().all(|[p, q]| {
            let placed = p.top <= next && q.top <= next && (p.top == next || q.top == next);
            !placed || p.map.map().iter().zip(q.map.map()).all(|(&x, &y)| legs[p.top].apply(x) == legs[q.top].apply(y))
        });
        if ok && choose_legs(d, homs, legs) {
            return true;
        }
        legs.pop();
    }
    false
}

/// `D` with legs `f_i: B → D` built from a cone in C(s, m).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Construction {
    pub d: Multiposet,
    pub legs: Vec<Embedding>,
    /// `points[x]` is the apex element that became element `x` of `D`.
    pub points: Vec<usize>,
}

/// Builds `D` on the union of the leg images (renumbered in ascending apex
/// order). Partial slots are transitive closures of the union of the apex
/// slot restricted to each image; linear slots are the fixed linear
/// extension of the same closure.
///
/// Checks that the cone is compatible in C(s, m) and that both diagram
/// objects lie in K̄(T) first.
pub fn construct_d(d: &BinaryDiagram, cone: &Cone, info: &TemplateInfo) -> Result<Construction> {
    if let Some(why) = cone_defect(d, cone, &ClassSpec::Csm { s: info.s, m: info.m })? {
        return Err(Error::InvalidCone(why));
    }
    for (name, x) in [("bottom", &d.bottom), ("top", &d.top)] {
        if let Some(v) = kbar_violation(info, x)? {
            return Err(Error::NotMember(format!("diagram {name}: {v}")));
        }
    }
    build_d(cone, info)
}

fn build_d(cone: &Cone, info: &TemplateInfo) -> Result<Construction> {
    let n = cone.apex.size();
    let union = cone.legs.iter().fold(0u64, |acc, e| acc | e.image_mask());
    let points: Vec<usize> = (0..n).filter(|&x| union >> x & 1 == 1).collect();
    let mut position = vec![usize::MAX; n];
    for (i, &x) in points.iter().enumerate() {
        position[x] = i;
    }
    let size = points.len();
    let legs = cone
        .legs
        .iter()
        .map(|e| Embedding::new(e.source(), size, e.map().iter().map(|&x| position[x]).collect()))
        .collect::<Result<Vec<_>>>()?;

    let mut relations = Vec::with_capacity(cone.apex.slots());
    for (slot, apex_rel) in cone.apex.relations().iter().enumerate() {
        let mut joined = Relation::empty(size)?;
        for e in &cone.legs {
            for &x in e.map() {
                for &y in e.map() {
                    if apex_rel.contains(x, y) {
                        joined.insert(position[x], position[y])?;
                    }
                }
            }
        }
        let closed = joined.transitive_closure();
        if !closed.is_partial_order() {
            return Err(Error::Invariant(format!("closure of slot {} is not a partial order", slot + 1)));
        }
        relations.push(if slot < info.s { closed } else { closed.linear_extension_fixed()? });
    }
    Ok(Construction { d: Multiposet::new(size, relations)?, legs, points })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Stage {
    ConeCompatibility,
    InputMembership,
    Construction,
    DMembership,
    LegEmbeddings,
    Compatibility,
    Containment,
    RestrictionPreservation,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Stage::ConeCompatibility => "cone compatible in C(s,m)",
            Stage::InputMembership => "A and B in K̄(T)",
            Stage::Construction => "D constructed",
            Stage::DMembership => "D in K̄(T)",
            Stage::LegEmbeddings => "legs embed B into D",
            Stage::Compatibility => "squares commute in D",
            Stage::Containment => "partial slots of D inside the apex",
            Stage::RestrictionPreservation => "D agrees with the apex on every image",
        };
        f.write_str(name)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StageOutcome {
    pub stage: Stage,
    pub passed: bool,
    pub detail: Option<String>,
}

/// Stages run in order and stop at the first failure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub passed: bool,
    pub stages: Vec<StageOutcome>,
    #[serde(skip)]
    pub construction: Option<Construction>,
}

impl TheoremReport {
    pub fn failed_stage(&self) -> Option<Stage> {
        self.stages.iter().find(|s| !s.passed).map(|s| s.stage)
    }
}

impl fmt::Display for TheoremReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.stages {
            write!(f, "[{}] {}", if s.passed { "ok" } else { "FAIL" }, s.stage)?;
            if let Some(d) = &s.detail {
                write!(f, ": {d}")?;
            }
            writeln!(f)?;
        }
        write!(f, "{}", if self.passed { "passed" } else { "failed" })
    }
}

struct Stages {
    report: TheoremReport,
}

impl Stages {
    /// Records the stage; returns whether to continue.
    fn record(&mut self, stage: Stage, defect: Option<String>) -> bool {
        let passed = defect.is_none();
        self.report.stages.push(StageOutcome { stage, passed, detail: defect });
        self.report.passed &= passed;
        passed
    }
}

/// Runs the construction with every claim about it checked independently.
/// Input problems are reported as failed stages, not errors; errors are
/// reserved for shape mismatches (leg count, slot count).
pub fn verify_main_theorem_instance(d: &BinaryDiagram, cone: &Cone, info: &TemplateInfo) -> Result<TheoremReport> {
    if d.top.slots() != info.bar_slots() {
        return Err(Error::SlotMismatch { expected: info.bar_slots(), found: d.top.slots() });
    }
    let mut st = Stages { report: TheoremReport { passed: true, stages: Vec::new(), construction: None } };

    let defect = cone_defect(d, cone, &ClassSpec::Csm { s: info.s, m: info.m })?;
    if !st.record(Stage::ConeCompatibility, defect) {
        return Ok(st.report);
    }

    let mut defect = None;
    for (name, x) in [("A", &d.bottom), ("B", &d.top)] {
        if let Some(v) = kbar_violation(info, x)? {
            defect = Some(format!("{name}: {v}"));
            break;
        }
    }
    if !st.record(Stage::InputMembership, defect) {
        return Ok(st.report);
    }

    let built = match build_d(cone, info) {
        Ok(c) => c,
        Err(e) => {
            st.record(Stage::Construction, Some(e.to_string()));
            return Ok(st.report);
        }
    };
    st.record(Stage::Construction, None);

    let defect = kbar_violation(info, &built.d)?.map(|v| v.to_string());
    if !st.record(Stage::DMembership, defect) {
        return Ok(st.report);
    }

    let mut defect = None;
    for (i, f) in built.legs.iter().enumerate() {
        if !is_embedding(f, &d.top, &built.d)? {
            defect = Some(format!("leg {i} ({:?})", f.map()));
            break;
        }
    }
    if !st.record(Stage::LegEmbeddings, defect) {
        return Ok(st.report);
    }

    let defect = broken_square(d, &built.legs)?.map(|v| format!("bottom {v}"));
    if !st.record(Stage::Compatibility, defect) {
        return Ok(st.report);
    }

    let mut defect = None;
    'slots: for slot in 0..info.s {
        let rel = built.d.relation(slot);
        for (x, y) in rel.pairs() {
            if !cone.apex.relation(slot).contains(built.points[x], built.points[y]) {
                defect = Some(format!("slot {} gains ({}, {})", slot + 1, built.points[x], built.points[y]));
                break 'slots;
            }
        }
    }
    if !st.record(Stage::Containment, defect) {
        return Ok(st.report);
    }

    let mut defect = None;
    'legs: for (i, (e, f)) in cone.legs.iter().zip(&built.legs).enumerate() {
        for slot in 0..cone.apex.slots() {
            for (&x, &fx) in e.map().iter().zip(f.map()) {
                for (&y, &fy) in e.map().iter().zip(f.map()) {
                    if cone.apex.relation(slot).contains(x, y) != built.d.relation(slot).contains(fx, fy) {
                        defect = Some(format!("image {i}, slot {}, points ({x}, {y})", slot + 1));
                        break 'legs;
                    }
                }
            }
        }
    }
    st.record(Stage::RestrictionPreservation, defect);
    st.report.construction = Some(built);
    Ok(st.report)
}

/// A diagram over `(a, b)` with `tops` legs drawn from `hom(b, apex)` and
/// `bottoms` arrow pairs chosen so every square commutes through those legs.
/// Pairs landing in two different tops are preferred when any exist.
pub fn generate_diagram_from_cone(
    apex: &Multiposet,
    b: &Multiposet,
    a: &Multiposet,
    tops: usize,
    bottoms: usize,
    seed: u64,
) -> Result<(BinaryDiagram, Cone)> {
    if tops == 0 {
        return Err(Error::InvalidDiagram("a diagram needs at least one top".into()));
    }
    let into_apex = enumerate_embeddings(b, apex)?;
    let into_b = enumerate_embeddings(a, b)?;
    if into_apex.is_empty() || into_b.is_empty() {
        return Err(Error::EmptyHom);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let legs: Vec<Embedding> = (0..tops).map(|_| into_apex[rng.gen_range(0..into_apex.len())].clone()).collect();

    // every (γ1, f1, γ2) with e_{γ1} ∘ f1 landing inside e_{γ2}(B)
    let mut same = Vec::new();
    let mut cross = Vec::new();
    for (g1, e1) in legs.iter().enumerate() {
        for f1 in &into_b {
            let path = compose(e1, f1)?;
            for (g2, e2) in legs.iter().enumerate() {
                let inv = e2.inverse();
                let Some(pulled) = path.map().iter().map(|&y| inv[y]).collect::<Option<Vec<usize>>>() else {
                    continue;
                };
                let f2 = Embedding::new(a.size(), b.size(), pulled)?;
                let pair = [Arrow { top: g1, map: f1.clone() }, Arrow { top: g2, map: f2 }];
                if g1 == g2 { same.push(pair) } else { cross.push(pair) }
            }
        }
    }
    let pool = if cross.is_empty() { &same } else { &cross };
    if pool.is_empty() {
        return Err(Error::NoCompatiblePair);
    }
    let chosen = (0..bottoms).map(|_| pool.choose(&mut rng).expect("nonempty pool").clone()).collect();
    let diagram = BinaryDiagram::new(a.clone(), b.clone(), tops, chosen)?;
    Ok((diagram, Cone { apex: apex.clone(), legs }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::template::{validate_template, Template};

    fn epos(size: usize, strict: &[(usize, usize)], line: &[usize]) -> Multiposet {
        let p = Relation::from_pairs(size, strict.iter().copied()).unwrap().reflexive_transitive_closure();
        Multiposet::new(size, vec![p, Relation::from_sequence(line).unwrap()]).unwrap()
    }

    fn info(name: &str) -> TemplateInfo {
        validate_template(&Template::preset(name).unwrap()).unwrap()
    }

    fn single_top(b: &Multiposet, f: Embedding) -> BinaryDiagram {
        let a = Multiposet::point(b.slots());
        let pair = [Arrow { top: 0, map: f.clone() }, Arrow { top: 0, map: f }];
        BinaryDiagram::new(a, b.clone(), 1, vec![pair]).unwrap()
    }

    #[test]
    fn identity_cone_over_one_top() {
        let b = epos(2, &[], &[0, 1]);
        let d = single_top(&b, Embedding::new(1, 2, vec![1]).unwrap());
        let cone = Cone { apex: b.clone(), legs: vec![Embedding::identity(2)] };
        assert!(is_compatible_cone(&d, &cone, &ClassSpec::Csm { s: 1, m: 0 }).unwrap());
        let built = construct_d(&d, &cone, &info("b")).unwrap();
        assert_eq!(built.d, b);
        assert_eq!(built.legs, vec![Embedding::identity(2)]);
    }

    #[test]
    fn non_commuting_legs_are_rejected() {
        let b = epos(2, &[], &[0, 1]);
        let a = Multiposet::point(2);
        let f = Embedding::new(1, 2, vec![0]).unwrap();
        let pair = [Arrow { top: 0, map: f.clone() }, Arrow { top: 1, map: f }];
        let d = BinaryDiagram::new(a, b, 2, vec![pair]).unwrap();
        let apex = epos(3, &[], &[0, 1, 2]);
        let legs = vec![Embedding::new(2, 3, vec![0, 1]).unwrap(), Embedding::new(2, 3, vec![1, 2]).unwrap()];
        assert!(!is_compatible_cone(&d, &Cone { apex, legs }, &ClassSpec::Csm { s: 1, m: 0 }).unwrap());
    }

    #[test]
    fn diagram_validation() {
        let b = epos(2, &[], &[0, 1]);
        let a = Multiposet::point(2);
        let f = Embedding::new(1, 2, vec![0]).unwrap();
        let pair = [Arrow { top: 0, map: f.clone() }, Arrow { top: 2, map: f }];
        assert!(matches!(BinaryDiagram::new(a, b, 2, vec![pair]), Err(Error::InvalidDiagram(_))));
    }

    #[test]
    fn cone_search_single_top_finds_identity() {
        let b = epos(2, &[], &[0, 1]);
        let d = single_top(&b, Embedding::new(1, 2, vec![0]).unwrap());
        match find_cone_csm(&d, 1, 0, 3).unwrap() {
            ConeSearch::Found(cone) => {
                assert_eq!(cone.apex.size(), 2);
                assert!(is_compatible_cone(&d, &cone, &ClassSpec::Csm { s: 1, m: 0 }).unwrap());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn contradictory_diagram_has_no_cone() {
        let b = epos(2, &[], &[0, 1]);
        let a = Multiposet::point(2);
        let pair = [
            Arrow { top: 0, map: Embedding::new(1, 2, vec![0]).unwrap() },
            Arrow { top: 0, map: Embedding::new(1, 2, vec![1]).unwrap() },
        ];
        let d = BinaryDiagram::new(a, b, 1, vec![pair]).unwrap();
        assert_eq!(find_cone_csm(&d, 1, 0, 4).unwrap(), ConeSearch::NoneUpTo(4));
        assert!(matches!(find_cone_csm(&d, 1, 0, MAX_ENUM_SIZE + 1), Err(Error::BoundExceeded(_))));
    }

    #[test]
    fn overlapping_images_pass_every_stage() {
        // apex: 3-antichain with extension 0<1<2, legs onto {0,1} and {1,2}
        let b = epos(2, &[], &[0, 1]);
        let a = Multiposet::point(2);
        let pair = [
            Arrow { top: 0, map: Embedding::new(1, 2, vec![1]).unwrap() },
            Arrow { top: 1, map: Embedding::new(1, 2, vec![0]).unwrap() },
        ];
        let d = BinaryDiagram::new(a, b, 2, vec![pair]).unwrap();
        let apex = epos(3, &[(0, 2)], &[0, 1, 2]);
        let legs = vec![Embedding::new(2, 3, vec![0, 1]).unwrap(), Embedding::new(2, 3, vec![1, 2]).unwrap()];
        let report = verify_main_theorem_instance(&d, &Cone { apex, legs }, &info("b")).unwrap();
        assert!(report.passed, "{report}");
        let built = report.construction.unwrap();
        // (0, 2) lies in no single image, so it is dropped from the partial slot
        assert!(!built.d.relation(0).contains(0, 2));
        assert!(built.d.relation(1).contains(0, 2));
    }

    #[test]
    fn perturbed_leg_fails_first_stage() {
        let b = epos(2, &[], &[0, 1]);
        let a = Multiposet::point(2);
        let pair = [
            Arrow { top: 0, map: Embedding::new(1, 2, vec![1]).unwrap() },
            Arrow { top: 1, map: Embedding::new(1, 2, vec![0]).unwrap() },
        ];
        let d = BinaryDiagram::new(a, b, 2, vec![pair]).unwrap();
        let apex = epos(3, &[], &[0, 1, 2]);
        let legs = vec![Embedding::new(2, 3, vec![0, 1]).unwrap(), Embedding::new(2, 3, vec![0, 2]).unwrap()];
        let report = verify_main_theorem_instance(&d, &Cone { apex, legs }, &info("b")).unwrap();
        assert_eq!(report.failed_stage(), Some(Stage::ConeCompatibility));
        assert_eq!(report.stages.len(), 1);
    }

    #[test]
    fn generated_cones_are_compatible_and_seeded() {
        let apex = epos(4, &[(0, 3)], &[0, 1, 2, 3]);
        let b = epos(2, &[], &[0, 1]);
        let a = Multiposet::point(2);
        let (d, cone) = generate_diagram_from_cone(&apex, &b, &a, 3, 4, 7).unwrap();
        assert!(is_compatible_cone(&d, &cone, &ClassSpec::Csm { s: 1, m: 0 }).unwrap());
        assert_eq!(generate_diagram_from_cone(&apex, &b, &a, 3, 4, 7).unwrap(), (d, cone));
    }
}
