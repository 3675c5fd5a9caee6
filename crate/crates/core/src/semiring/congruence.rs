use std::collections::BTreeMap;

use petgraph::unionfind::UnionFind;

use super::{FiniteSemiring, SemiringHom};
use crate::error::{Error, Result};

/// An equivalence relation on the elements of a semiring, stored as a
/// canonical block labeling: element `a` lies in block `blocks[a]`, and
/// blocks are numbered in order of their smallest element.
///
/// The carrier is not stored; operations take the semiring explicitly.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Congruence {
    blocks: Vec<usize>,
}

impl Congruence {
    /// Canonicalizes an arbitrary labeling into block numbers.
    pub fn from_labeling<T: Ord + Copy>(labeling: &[T]) -> Self {
        let mut ids = BTreeMap::new();
        let blocks = labeling
            .iter()
            .map(|x| {
                let next = ids.len();
                *ids.entry(*x).or_insert(next)
            })
            .collect();
        Congruence { blocks }
    }

    pub fn diagonal(n: usize) -> Self {
        Congruence { blocks: (0..n).collect() }
    }

    pub fn total(n: usize) -> Self {
        Congruence { blocks: vec![0; n] }
    }

    /// Validates that the given partition (as block lists) is a congruence.
    pub fn from_blocks(r: &FiniteSemiring, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut label = vec![usize::MAX; r.len()];
        for (i, b) in blocks.iter().enumerate() {
            for &a in b {
                r.check_element(a)?;
                if label[a] != usize::MAX {
                    return Err(Error::NotACongruence(format!("{} lies in two blocks", r.label(a))));
                }
                label[a] = i;
            }
        }
        if let Some(a) = label.iter().position(|&l| l == usize::MAX) {
            return Err(Error::NotACongruence(format!("{} lies in no block", r.label(a))));
        }
        let c = Congruence::from_labeling(&label);
        c.check_stable(r)?;
        Ok(c)
    }

    /// The smallest congruence containing `pairs` (and everything in `base`).
    pub fn generated(r: &FiniteSemiring, base: Option<&Congruence>, pairs: &[(usize, usize)]) -> Self {
        let n = r.len();
        let mut uf = UnionFind::<usize>::new(n);
        if let Some(c) = base {
            let mut first = vec![usize::MAX; n];
            for a in 0..n {
                let b = c.blocks[a];
                if first[b] == usize::MAX {
                    first[b] = a;
                } else {
                    uf.union(first[b], a);
                }
            }
        }
        for &(a, b) in pairs {
            uf.union(a, b);
        }
        loop {
            let mut changed = false;
            for a in 0..n {
                let root = uf.find_mut(a);
                if root == a {
                    continue;
                }
                for c in 0..n {
                    changed |= uf.union(r.add(a, c), r.add(root, c));
                    changed |= uf.union(r.mul(a, c), r.mul(root, c));
                }
            }
            if !changed {
                break;
            }
        }
        Congruence::from_labeling(&uf.into_labeling())
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn related(&self, a: usize, b: usize) -> bool {
        self.blocks[a] == self.blocks[b]
    }

    pub fn block_of(&self, a: usize) -> usize {
        self.blocks[a]
    }

    pub fn labeling(&self) -> &[usize] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.iter().max().map_or(0, |m| m + 1)
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.block_count()];
        for (a, &b) in self.blocks.iter().enumerate() {
            out[b].push(a);
        }
        out
    }

    pub fn is_diagonal(&self) -> bool {
        self.block_count() == self.len()
    }

    /// `(1, 0) ∉ c`.
    pub fn is_proper(&self, r: &FiniteSemiring) -> bool {
        !self.related(r.one(), r.zero())
    }

    /// `c ⊆ other` as relations.
    pub fn is_finer_than(&self, other: &Congruence) -> bool {
        let n = self.len();
        (0..n).all(|a| (0..n).all(|b| !self.related(a, b) || other.related(a, b)))
    }

    pub fn check_stable(&self, r: &FiniteSemiring) -> Result<()> {
        for a in r.elements() {
            for b in r.elements() {
                if !self.related(a, b) {
                    continue;
                }
                for c in r.elements() {
                    if !self.related(r.add(a, c), r.add(b, c)) {
                        return Err(Error::NotACongruence(format!(
                            "{} ~ {} but {0} + {2} and {1} + {2} are not related",
                            r.label(a),
                            r.label(b),
                            r.label(c)
                        )));
                    }
                    if !self.related(r.mul(a, c), r.mul(b, c)) {
                        return Err(Error::NotACongruence(format!(
                            "{} ~ {} but {0}·{2} and {1}·{2} are not related",
                            r.label(a),
                            r.label(b),
                            r.label(c)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn format(&self, r: &FiniteSemiring) -> String {
        let bs: Vec<String> = self
            .blocks()
            .into_iter()
            .map(|b| {
                let ls: Vec<&str> = b.into_iter().map(|a| r.label(a)).collect();
                format!("{{{}}}", ls.join(","))
            })
            .collect();
        bs.join("")
    }

    /// `f⁻¹(c) = {(a, b) | (f a, f b) ∈ c}` for a congruence on the target of `f`.
    pub fn pullback(&self, f: &SemiringHom) -> Congruence {
        let labeling: Vec<usize> = f.map().iter().map(|&x| self.blocks[x]).collect();
        Congruence::from_labeling(&labeling)
    }
}

/// `R/c` together with the projection; block representatives (smallest
/// members) keep their labels.
pub fn quotient(r: &FiniteSemiring, c: &Congruence) -> Result<(FiniteSemiring, SemiringHom)> {
    if c.len() != r.len() {
        return Err(Error::NotACongruence("partition has the wrong size".into()));
    }
    c.check_stable(r)?;
    let blocks = c.blocks();
    let reps: Vec<usize> = blocks.iter().map(|b| b[0]).collect();
    let labels = reps.iter().map(|&a| r.label(a).to_string()).collect();
    let q = FiniteSemiring::from_fn(
        labels,
        c.block_of(r.zero()),
        c.block_of(r.one()),
        |x, y| c.block_of(r.add(reps[x], reps[y])),
        |x, y| c.block_of(r.mul(reps[x], reps[y])),
    )?;
    let proj = SemiringHom::new_unchecked(r.clone(), q.clone(), c.labeling().to_vec());
    Ok((q, proj))
}
