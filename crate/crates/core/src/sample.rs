//! Seeded random structures for tests, examples and instance generation.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::class::{bar_translate, is_member_kbar, ClassSpec, SlotKind};
use crate::error::{Error, Result};
use crate::multiposet::Multiposet;
use crate::relation::Relation;
use crate::template::TemplateInfo;

pub fn random_linear_order<R: Rng>(n: usize, rng: &mut R) -> Result<Relation> {
    let mut seq: Vec<usize> = (0..n).collect();
    seq.shuffle(rng);
    Relation::from_sequence(&seq)
}

/// A partial order inside the partial order `container`: each strict pair of
/// the container is kept with probability `density`, then closed.
pub fn random_suborder<R: Rng>(container: &Relation, density: f64, rng: &mut R) -> Relation {
    let mut r = Relation::diagonal(container.size()).expect("size already validated");
    for (a, b) in container.strict_pairs() {
        if rng.gen_bool(density) {
            r.insert(a, b).expect("pair in range");
        }
    }
    r.transitive_closure()
}

/// A member of K(T) (`spec` must be `ClassSpec::K`): maximal slots are
/// random linear orders, the rest random sub-orders of everything above.
pub fn random_member_k<R: Rng>(spec: &ClassSpec, n: usize, density: f64, rng: &mut R) -> Result<Multiposet> {
    let ClassSpec::K(template) = spec else {
        return Err(Error::Parse(format!("{spec} is not a template class")));
    };
    let plan = spec.plan();
    let t = template.t();
    let mut slots: Vec<Option<Relation>> = vec![None; t];
    for i in (0..t).filter(|&i| plan.kinds[i] == SlotKind::Linear) {
        slots[i] = Some(random_linear_order(n, rng)?);
    }
    // a slot is ready once every slot above it is filled; templates are acyclic
    while slots.iter().any(Option::is_none) {
        let i = (0..t)
            .find(|&i| {
                slots[i].is_none()
                    && plan.inclusions.iter().all(|&(inner, outer)| inner != i || slots[outer].is_some())
            })
            .ok_or_else(|| Error::Invariant("template inclusions are cyclic".into()))?;
        let mut container: Option<Relation> = None;
        for &(inner, outer) in &plan.inclusions {
            if inner == i {
                let o = slots[outer].as_ref().expect("ready");
                container = Some(match container {
                    Some(c) => c.intersection(o)?,
                    None => o.clone(),
                });
            }
        }
        // with nothing above, sub-orders of a random linear order reach every partial order
        let container = match container {
            Some(c) => c,
            None => random_linear_order(n, rng)?,
        };
        slots[i] = Some(random_suborder(&container, density, rng));
    }
    Multiposet::new(n, slots.into_iter().map(|r| r.expect("filled")).collect())
}

/// A member of C(s, m) containing a translated member of K(T): each partial
/// slot gets extra pairs from its linear slot, so the result is usually
/// outside K̄(T) while still in C(s, m).
pub fn random_csm_apex<R: Rng>(
    info: &TemplateInfo,
    n: usize,
    density: f64,
    perturb: f64,
    rng: &mut R,
) -> Result<Multiposet> {
    let x = random_member_k(&ClassSpec::K(info.template().clone()), n, density, rng)?;
    let mut y = bar_translate(info, &x)?;
    for alpha in 0..info.s {
        let line = y.relation(info.s + alpha).clone();
        let mut r = y.relation(alpha).clone();
        for (a, b) in line.strict_pairs() {
            if rng.gen_bool(perturb) {
                r.insert(a, b)?;
            }
        }
        y = y.with_relation(alpha, r.transitive_closure())?;
    }
    Ok(y)
}

/// An induced substructure of `x` on a random subset of size `size` that
/// lies in K̄(T); falls back to a single point after `tries` misses.
pub fn random_kbar_substructure<R: Rng>(
    info: &TemplateInfo,
    x: &Multiposet,
    size: usize,
    tries: usize,
    rng: &mut R,
) -> Result<Multiposet> {
    let mut ids: Vec<usize> = (0..x.size()).collect();
    let size = size.clamp(1, x.size());
    for _ in 0..tries {
        ids.shuffle(rng);
        let (sub, _) = x.induced_substructure(&ids[..size])?;
        if is_member_kbar(info, &sub)? {
            return Ok(sub);
        }
    }
    Ok(x.induced_substructure(&ids[..1])?.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::class::{is_member_csm, is_member_k};
    use crate::template::{validate_template, Template};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_members_are_members() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for name in ["a", "b", "c", "d:3", "e:3", "e:4"] {
            let t = Template::preset(name).unwrap();
            let info = validate_template(&t).unwrap();
            for n in 1..=6 {
                let x = random_member_k(&ClassSpec::K(t.clone()), n, 0.4, &mut rng).unwrap();
                assert!(is_member_k(&t, &x).unwrap(), "{name} {x:?}");
                let apex = random_csm_apex(&info, n, 0.4, 0.3, &mut rng).unwrap();
                assert!(is_member_csm(info.s, info.m, &apex).unwrap());
                let sub = random_kbar_substructure(&info, &apex, 3, 10, &mut rng).unwrap();
                assert!(is_member_kbar(&info, &sub).unwrap());
            }
        }
    }
}
