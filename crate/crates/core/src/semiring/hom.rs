use std::fmt;

use super::{Congruence, FiniteSemiring};
use crate::error::{Error, Result};

/// A morphism of semirings preserving 0, 1, addition and multiplication.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SemiringHom {
    source: FiniteSemiring,
    target: FiniteSemiring,
    map: Vec<usize>,
}

impl fmt::Debug for SemiringHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self
            .source
            .elements()
            .map(|a| format!("{}->{}", self.source.label(a), self.target.label(self.map[a])))
            .collect();
        write!(f, "SemiringHom[{}]", pairs.join(" "))
    }
}

impl SemiringHom {
    pub fn new(source: FiniteSemiring, target: FiniteSemiring, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.len() {
            return Err(Error::NotAHom(format!(
                "map has {} entries, source has {} elements",
                map.len(),
                source.len()
            )));
        }
        if let Some(&bad) = map.iter().find(|&&x| x >= target.len()) {
            return Err(Error::ElementOutOfRange { index: bad, size: target.len() });
        }
        if let Some(why) = violation(&source, &target, &map) {
            return Err(Error::NotAHom(why));
        }
        Ok(SemiringHom { source, target, map })
    }

    pub(crate) fn new_unchecked(source: FiniteSemiring, target: FiniteSemiring, map: Vec<usize>) -> Self {
        debug_assert!(violation(&source, &target, &map).is_none());
        SemiringHom { source, target, map }
    }

    pub fn identity(r: &FiniteSemiring) -> Self {
        SemiringHom { source: r.clone(), target: r.clone(), map: r.elements().collect() }
    }

    pub fn source(&self) -> &FiniteSemiring {
        &self.source
    }

    pub fn target(&self) -> &FiniteSemiring {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &SemiringHom) -> Result<SemiringHom> {
        if self.target != other.source {
            return Err(Error::NotAHom("composition of non-matching morphisms".into()));
        }
        let map = self.map.iter().map(|&x| other.map[x]).collect();
        Ok(SemiringHom { source: self.source.clone(), target: other.target.clone(), map })
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.len()];
        self.map.iter().all(|&x| !std::mem::replace(&mut seen[x], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.len()];
        for &x in &self.map {
            hit[x] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn is_bijective(&self) -> bool {
        self.source.len() == self.target.len() && self.is_injective()
    }

    /// The congruence `{(a, b) | f(a) = f(b)}` on the source.
    pub fn kernel_congruence(&self) -> Congruence {
        Congruence::from_labeling(&self.map)
    }

    /// Given `self: R → C` and a surjection `surj: R → B`, returns the unique
    /// `g: B → C` with `g ∘ surj = self`, if `self` is constant on the fibres
    /// of `surj`.
    pub fn factor_through(&self, surj: &SemiringHom) -> Option<SemiringHom> {
        if surj.source != self.source || !surj.is_surjective() {
            return None;
        }
        let mut g = vec![usize::MAX; surj.target.len()];
        for a in self.source.elements() {
            let slot = &mut g[surj.map[a]];
            if *slot == usize::MAX {
                *slot = self.map[a];
            } else if *slot != self.map[a] {
                return None;
            }
        }
        // a well-defined factorization through a surjective hom is a hom
        Some(SemiringHom::new_unchecked(surj.target.clone(), self.target.clone(), g))
    }

    /// `f⁻¹(S)` for a subset `S` of the target.
    pub fn preimage(&self, subset: &std::collections::BTreeSet<usize>) -> std::collections::BTreeSet<usize> {
        self.source.elements().filter(|&a| subset.contains(&self.map[a])).collect()
    }
}

fn violation(s: &FiniteSemiring, t: &FiniteSemiring, map: &[usize]) -> Option<String> {
    if map[s.zero()] != t.zero() {
        return Some("0 is not preserved".into());
    }
    if map[s.one()] != t.one() {
        return Some("1 is not preserved".into());
    }
    for a in s.elements() {
        for b in s.elements() {
            if map[s.add(a, b)] != t.add(map[a], map[b]) {
                return Some(format!("addition fails at ({}, {})", s.label(a), s.label(b)));
            }
            if map[s.mul(a, b)] != t.mul(map[a], map[b]) {
                return Some(format!("multiplication fails at ({}, {})", s.label(a), s.label(b)));
            }
        }
    }
    None
}

/// Extends forced values until a fixpoint; false on contradiction.
fn propagate(s: &FiniteSemiring, t: &FiniteSemiring, assign: &mut [Option<usize>]) -> bool {
    loop {
        let mut changed = false;
        for a in s.elements() {
            let Some(fa) = assign[a] else { continue };
            for b in a..s.len() {
                let Some(fb) = assign[b] else { continue };
                for (img, want) in [(s.add(a, b), t.add(fa, fb)), (s.mul(a, b), t.mul(fa, fb))] {
                    match assign[img] {
                        None => {
                            assign[img] = Some(want);
                            changed = true;
                        }
                        Some(v) if v != want => return false,
                        Some(_) => {}
                    }
                }
            }
        }
        if !changed {
            return true;
        }
    }
}

/// All homomorphisms `source → target` agreeing with `fixed` where it is
/// `Some`, in lexicographic order of their map vectors. Stops after `limit`
/// results when given.
pub fn search_homs(
    source: &FiniteSemiring,
    target: &FiniteSemiring,
    fixed: &[Option<usize>],
    limit: Option<usize>,
) -> Vec<Vec<usize>> {
    assert_eq!(fixed.len(), source.len());
    let mut assign = fixed.to_vec();
    for (slot, want) in [(source.zero(), target.zero()), (source.one(), target.one())] {
        match assign[slot] {
            Some(v) if v != want => return Vec::new(),
            _ => assign[slot] = Some(want),
        }
    }
    let mut out = Vec::new();
    if propagate(source, target, &mut assign) {
        descend(source, target, assign, limit, &mut out);
    }
    out
}

fn descend(
    s: &FiniteSemiring,
    t: &FiniteSemiring,
    assign: Vec<Option<usize>>,
    limit: Option<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if limit.is_some_and(|l| out.len() >= l) {
        return;
    }
    let Some(next) = assign.iter().position(Option::is_none) else {
        out.push(assign.into_iter().map(Option::unwrap).collect());
        return;
    };
    for v in t.elements() {
        let mut trial = assign.clone();
        trial[next] = Some(v);
        if propagate(s, t, &mut trial) {
            descend(s, t, trial, limit, out);
        }
    }
}

/// All semiring morphisms `source → target`, lexicographic on map vectors.
pub fn enumerate_homs(source: &FiniteSemiring, target: &FiniteSemiring) -> Vec<SemiringHom> {
    search_homs(source, target, &vec![None; source.len()], None)
        .into_iter()
        .map(|m| SemiringHom::new_unchecked(source.clone(), target.clone(), m))
        .collect()
}

/// The lexicographically first isomorphism `a → b`, if any.
pub fn find_isomorphism(a: &FiniteSemiring, b: &FiniteSemiring) -> Option<SemiringHom> {
    if a.len() != b.len() {
        return None;
    }
    search_homs(a, b, &vec![None; a.len()], None)
        .into_iter()
        .map(|m| SemiringHom::new_unchecked(a.clone(), b.clone(), m))
        .find(SemiringHom::is_bijective)
}

pub fn is_isomorphic(a: &FiniteSemiring, b: &FiniteSemiring) -> bool {
    find_isomorphism(a, b).is_some()
}
