//! Slow, obviously-correct reimplementations used as test oracles. Nothing
//! here calls the library's search or membership code.

#![allow(dead_code)]

use ramsey_multiposet::class::StructureClass;
use ramsey_multiposet::template::TemplateInfo;
use ramsey_multiposet::{Multiposet, Relation, Result};

/// Every injection `{0..a} → {0..b}`, in lexicographic order.
pub fn injections(a: usize, b: usize) -> Vec<Vec<usize>> {
    fn go(a: usize, b: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == a {
            out.push(cur.clone());
            return;
        }
        for y in 0..b {
            if !cur.contains(&y) {
                cur.push(y);
                go(a, b, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(a, b, &mut Vec::new(), &mut out);
    out
}

pub fn naive_is_embedding(map: &[usize], a: &Multiposet, b: &Multiposet) -> bool {
    (0..a.slots()).all(|s| {
        (0..a.size()).all(|x| {
            (0..a.size()).all(|y| a.relation(s).contains(x, y) == b.relation(s).contains(map[x], map[y]))
        })
    })
}

/// All embeddings by filtering every injection.
pub fn naive_embeddings(a: &Multiposet, b: &Multiposet) -> Vec<Vec<usize>> {
    injections(a.size(), b.size()).into_iter().filter(|m| naive_is_embedding(m, a, b)).collect()
}

/// Copies of `A` inside each copy of `B`, as index sets into `hom(A, C)`.
pub fn naive_edges(c: &Multiposet, b: &Multiposet, a: &Multiposet) -> (usize, Vec<Vec<usize>>) {
    let ac = naive_embeddings(a, c);
    let ab = naive_embeddings(a, b);
    let edges = naive_embeddings(b, c)
        .iter()
        .map(|w| {
            ab.iter()
                .map(|h| {
                    let composite: Vec<usize> = h.iter().map(|&x| w[x]).collect();
                    ac.iter().position(|e| *e == composite).expect("composite of embeddings embeds")
                })
                .collect()
        })
        .collect();
    (ac.len(), edges)
}

/// The arrow relation by trying all `k^|hom(A, C)|` colorings.
pub fn naive_arrow(c: &Multiposet, b: &Multiposet, a: &Multiposet, k: usize) -> bool {
    let (n, edges) = naive_edges(c, b, a);
    let mut colors = vec![0usize; n];
    loop {
        let some_mono = edges.iter().any(|e| e.iter().all(|&v| colors[v] == colors[e[0]]));
        if !some_mono {
            return false;
        }
        let mut i = 0;
        loop {
            if i == n {
                return true;
            }
            colors[i] += 1;
            if colors[i] < k {
                break;
            }
            colors[i] = 0;
            i += 1;
        }
    }
}

pub fn naive_partial(r: &Relation) -> bool {
    let n = r.size();
    (0..n).all(|a| r.contains(a, a))
        && (0..n).all(|a| (0..n).all(|b| a == b || !(r.contains(a, b) && r.contains(b, a))))
        && (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| !(r.contains(a, b) && r.contains(b, c)) || r.contains(a, c))))
}

pub fn naive_linear(r: &Relation) -> bool {
    let n = r.size();
    naive_partial(r) && (0..n).all(|a| (0..n).all(|b| r.contains(a, b) || r.contains(b, a)))
}

pub fn naive_subset(p: &Relation, q: &Relation) -> bool {
    (0..p.size()).all(|a| (0..p.size()).all(|b| !p.contains(a, b) || q.contains(a, b)))
}

/// The four K̄(T) conditions read straight off their definitions.
pub fn naive_kbar(info: &TemplateInfo, y: &Multiposet) -> bool {
    let s = info.s;
    let t = info.template();
    if y.slots() != 2 * s + info.m {
        return false;
    }
    let orders = (0..s).all(|a| naive_partial(y.relation(a))) && (s..2 * s + info.m).all(|b| naive_linear(y.relation(b)));
    let partial_chain = (0..s).all(|a| {
        (0..s).all(|b| !t.le(info.pairs[a].0, info.pairs[b].0) || naive_subset(y.relation(a), y.relation(b)))
    });
    let below_linear = (0..s).all(|a| {
        (0..s).all(|b| !t.le(info.pairs[a].0, info.pairs[b].1) || naive_subset(y.relation(a), y.relation(s + b)))
    });
    let shared_tops = (0..s).all(|a| {
        (0..s).all(|b| info.pairs[a].1 != info.pairs[b].1 || y.relation(s + a) == y.relation(s + b))
    });
    orders && partial_chain && below_linear && shared_tops
}

pub fn naive_csm(s: usize, m: usize, y: &Multiposet) -> bool {
    y.slots() == 2 * s + m
        && (0..s).all(|a| naive_partial(y.relation(a)) && naive_subset(y.relation(a), y.relation(s + a)))
        && (s..2 * s + m).all(|b| naive_linear(y.relation(b)))
}

/// Chains of even size: a class that fails the hereditary property.
pub struct EvenChains;

impl StructureClass for EvenChains {
    fn slot_count(&self) -> usize {
        1
    }

    fn contains(&self, x: &Multiposet) -> bool {
        x.slots() == 1 && x.size() % 2 == 0 && naive_linear(x.relation(0))
    }

    fn enumerate(&self, n: usize) -> Result<Vec<Multiposet>> {
        Ok(if n % 2 == 0 { vec![Multiposet::chain(n, 1)?] } else { vec![] })
    }

    fn name(&self) -> String {
        "even chains".into()
    }
}

/// All labeled reflexive partial orders on `n` points, by brute force over
/// every set of off-diagonal pairs.
pub fn all_partial_orders(n: usize) -> Vec<Relation> {
    let cells: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|(a, b)| a != b).collect();
    (0u64..1 << cells.len())
        .filter_map(|mask| {
            let mut r = Relation::diagonal(n).unwrap();
            for (i, &(a, b)) in cells.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    r.insert(a, b).unwrap();
                }
            }
            naive_partial(&r).then_some(r)
        })
        .collect()
}
