//! Exact canonical forms for multiposets.
//!
//! The encoding lists, for each position `p` in turn, every slot's entries
//! between `p` and the earlier positions (`(p, q)` then `(q, p)` for `q < p`,
//! then the diagonal). A partial assignment of the first positions fixes a
//! prefix of the string, so the lexicographic minimum over all `n!` labelings
//! is found by branch-and-bound: at each depth only the candidates with the
//! least shell survive, and a branch whose prefix already exceeds the best
//! complete string is cut.

use crate::multiposet::Multiposet;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Canonical {
    pub bytes: Vec<u8>,
    /// `labeling[a]` is the canonical position of element `a`; applying it
    /// with [`Multiposet::permuted`] yields the canonical representative.
    pub labeling: Vec<usize>,
}

impl Canonical {
    pub fn hex(&self) -> String {
        hex::encode(&self.bytes)
    }
}

pub fn canonical_form(x: &Multiposet) -> Canonical {
    let n = x.size();
    let mut search = Search {
        x,
        order: Vec::with_capacity(n),
        used: 0,
        bytes: vec![n as u8, x.slots() as u8],
        best: None,
    };
    search.descend();
    let (bytes, order) = search.best.expect("n >= 1 always yields a labeling");
    let mut labeling = vec![0; n];
    for (pos, &a) in order.iter().enumerate() {
        labeling[a] = pos;
    }
    Canonical { bytes, labeling }
}

/// Canonical representative (the structure relabeled by its canonical labeling).
pub fn canonical_structure(x: &Multiposet) -> (Multiposet, Canonical) {
    let c = canonical_form(x);
    let y = x.permuted(&c.labeling).expect("canonical labeling is a permutation");
    (y, c)
}

pub fn is_isomorphic(a: &Multiposet, b: &Multiposet) -> bool {
    a.size() == b.size() && a.slots() == b.slots() && canonical_form(a).bytes == canonical_form(b).bytes
}

struct Search<'a> {
    x: &'a Multiposet,
    order: Vec<usize>,
    used: u64,
    bytes: Vec<u8>,
    best: Option<(Vec<u8>, Vec<usize>)>,
}

impl Search<'_> {
    fn shell(&self, v: usize, out: &mut Vec<u8>) {
        for r in self.x.relations() {
            for &u in &self.order {
                out.push(r.contains(v, u) as u8);
                out.push(r.contains(u, v) as u8);
            }
            out.push(r.contains(v, v) as u8);
        }
    }

    fn descend(&mut self) {
        let n = self.x.size();
        if self.order.len() == n {
            let better = match &self.best {
                Some((b, _)) => self.bytes < *b,
                None => true,
            };
            if better {
                self.best = Some((self.bytes.clone(), self.order.clone()));
            }
            return;
        }

        let mut min_shell: Option<Vec<u8>> = None;
        let mut ties: Vec<usize> = Vec::new();
        let mut buf = Vec::new();
        for v in (0..n).filter(|&v| self.used >> v & 1 == 0) {
            buf.clear();
            self.shell(v, &mut buf);
            match &min_shell {
                Some(m) if buf > *m => {}
                Some(m) if buf == *m => ties.push(v),
                _ => {
                    min_shell = Some(buf.clone());
                    ties.clear();
                    ties.push(v);
                }
            }
        }
        let shell = min_shell.expect("an unused element remains");

        let start = self.bytes.len();
        self.bytes.extend_from_slice(&shell);
        if let Some((best, _)) = &self.best {
            if self.bytes[..] > best[..self.bytes.len()] {
                self.bytes.truncate(start);
                return;
            }
        }
        for v in ties {
            self.order.push(v);
            self.used |= 1 << v;
            self.descend();
            self.used &= !(1 << v);
            self.order.pop();
        }
        self.bytes.truncate(start);
    }
}
