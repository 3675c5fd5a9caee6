//! Colimits of finite diagrams of finite semirings.
//!
//! The colimit is presented by one generator per element of each node,
//! subject to the node tables, `x ~ f(x)` for every arrow, and the semiring
//! axioms. It is computed by a coset-enumeration style closure: partial
//! addition and multiplication tables over a growing set of classes are
//! saturated under the axioms, coincidences are merged, and missing table
//! entries are defined one at a time (oldest pairs first) until the tables
//! are complete. The element budget turns an oversized instance into an
//! error instead of a runaway computation.

use std::collections::{BTreeSet, HashMap};

use petgraph::unionfind::UnionFind;

use super::{FiniteSemiring, SemiringHom};
use crate::error::{Error, Result};

pub const DEFAULT_COLIMIT_BUDGET: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagramArrow {
    pub source: usize,
    pub target: usize,
    pub hom: SemiringHom,
}

/// A diagram of semirings indexed by the free category on a finite multigraph.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SemiringDiagram {
    nodes: Vec<FiniteSemiring>,
    arrows: Vec<DiagramArrow>,
}

impl SemiringDiagram {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_node(&mut self, r: FiniteSemiring) -> usize {
        self.nodes.push(r);
        self.nodes.len() - 1
    }

    pub fn add_arrow(&mut self, source: usize, target: usize, hom: SemiringHom) -> Result<usize> {
        let (Some(s), Some(t)) = (self.nodes.get(source), self.nodes.get(target)) else {
            return Err(Error::InvalidDiagram(format!("arrow {source} -> {target} references a missing node")));
        };
        if hom.source() != s || hom.target() != t {
            return Err(Error::InvalidDiagram(format!(
                "arrow {source} -> {target} does not match its endpoint semirings"
            )));
        }
        self.arrows.push(DiagramArrow { source, target, hom });
        Ok(self.arrows.len() - 1)
    }

    pub fn nodes(&self) -> &[FiniteSemiring] {
        &self.nodes
    }

    pub fn arrows(&self) -> &[DiagramArrow] {
        &self.arrows
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Colimit {
    pub semiring: FiniteSemiring,
    /// One cocone map per node.
    pub cocone: Vec<SemiringHom>,
}

type Table = HashMap<(usize, usize), usize>;

struct Engine {
    uf: UnionFind<usize>,
    add: Table,
    mul: Table,
    zero: usize,
    one: usize,
}

impl Engine {
    fn key(&self, u: usize, v: usize) -> (usize, usize) {
        let (a, b) = (self.uf.find(u), self.uf.find(v));
        (a.min(b), a.max(b))
    }

    fn get(&self, mul: bool, u: usize, v: usize) -> Option<usize> {
        let t = if mul { &self.mul } else { &self.add };
        t.get(&self.key(u, v)).map(|&w| self.uf.find(w))
    }

    /// Records `u ∘ v = w`; returns whether anything changed.
    fn set(&mut self, mul: bool, u: usize, v: usize, w: usize) -> bool {
        let key = self.key(u, v);
        let t = if mul { &mut self.mul } else { &mut self.add };
        match t.get(&key).copied() {
            Some(x) => self.uf.union(x, w),
            None => {
                t.insert(key, w);
                true
            }
        }
    }

    /// Rewrites table keys to current roots, merging clashing entries.
    fn normalize(&mut self) {
        loop {
            let mut merged = false;
            for mul in [false, true] {
                let old = std::mem::take(if mul { &mut self.mul } else { &mut self.add });
                let mut fresh = Table::with_capacity(old.len());
                for ((u, v), w) in old {
                    let key = self.key(u, v);
                    let w = self.uf.find(w);
                    match fresh.get(&key) {
                        Some(&x) if x != w => {
                            self.uf.union(x, w);
                            merged = true;
                        }
                        Some(_) => {}
                        None => {
                            fresh.insert(key, w);
                        }
                    }
                }
                *(if mul { &mut self.mul } else { &mut self.add }) = fresh;
            }
            if !merged {
                return;
            }
        }
    }

    fn live(&mut self, created: usize) -> Vec<usize> {
        let roots: BTreeSet<usize> = (0..created).map(|x| self.uf.find_mut(x)).collect();
        // order classes by their oldest member
        let mut oldest: HashMap<usize, usize> = HashMap::new();
        for x in (0..created).rev() {
            oldest.insert(self.uf.find(x), x);
        }
        let mut v: Vec<usize> = roots.into_iter().collect();
        v.sort_by_key(|r| oldest[r]);
        v
    }

    /// `l` and `r` must agree whenever both sides are computable.
    fn equate(&mut self, mul_l: bool, lu: usize, lv: usize, mul_r: bool, ru: usize, rv: usize) -> bool {
        match (self.get(mul_l, lu, lv), self.get(mul_r, ru, rv)) {
            (Some(l), Some(r)) => self.uf.union(l, r),
            (Some(l), None) => self.set(mul_r, ru, rv, l),
            (None, Some(r)) => self.set(mul_l, lu, lv, r),
            (None, None) => false,
        }
    }

    /// One pass of axiom deductions over all live triples.
    fn deduce(&mut self, live: &[usize]) -> bool {
        let mut changed = false;
        let (z, o) = (self.uf.find(self.zero), self.uf.find(self.one));
        for &u in live {
            changed |= self.set(false, z, u, u);
            changed |= self.set(true, o, u, u);
            changed |= self.set(true, z, u, z);
        }
        for &u in live {
            for &v in live {
                for &w in live {
                    for mul in [false, true] {
                        if let (Some(uv), Some(vw)) = (self.get(mul, u, v), self.get(mul, v, w)) {
                            changed |= self.equate(mul, uv, w, mul, u, vw);
                        }
                    }
                    if let (Some(vw), Some(m1), Some(m2)) =
                        (self.get(false, v, w), self.get(true, u, v), self.get(true, u, w))
                    {
                        changed |= self.equate(true, u, vw, false, m1, m2);
                    }
                }
            }
        }
        changed
    }
}

/// Computes the colimit of `d`, failing once more than `budget` classes are live.
pub fn colimit(d: &SemiringDiagram, budget: usize) -> Result<Colimit> {
    if budget == 0 {
        return Err(Error::BudgetExceeded { budget });
    }
    let mut offsets = Vec::with_capacity(d.nodes.len());
    let mut created = 0;
    for r in &d.nodes {
        offsets.push(created);
        created += r.len();
    }
    let gens = created;
    let mut uf = UnionFind::<usize>::new(created);
    let (zero, one) = match d.nodes.first() {
        Some(r) => (r.zero(), r.one()),
        None => {
            uf.new_set();
            uf.new_set();
            created = 2;
            (0, 1)
        }
    };
    let mut e = Engine { uf, add: Table::new(), mul: Table::new(), zero, one };
    for (i, r) in d.nodes.iter().enumerate() {
        let g = |a: usize| offsets[i] + a;
        e.uf.union(g(r.zero()), zero);
        e.uf.union(g(r.one()), one);
        for a in r.elements() {
            for b in a..r.len() {
                e.set(false, g(a), g(b), g(r.add(a, b)));
                e.set(true, g(a), g(b), g(r.mul(a, b)));
            }
        }
    }
    for arrow in &d.arrows {
        for a in d.nodes[arrow.source].elements() {
            e.uf.union(offsets[arrow.source] + a, offsets[arrow.target] + arrow.hom.apply(a));
        }
    }

    let live = loop {
        loop {
            e.normalize();
            let live = e.live(created);
            if !e.deduce(&live) {
                break;
            }
        }
        let live = e.live(created);
        if live.len() > budget {
            return Err(Error::BudgetExceeded { budget });
        }
        let missing = (0..live.len()).find_map(|j| {
            (0..=j).find_map(|i| {
                let (u, v) = (live[i], live[j]);
                [false, true].into_iter().find(|&m| e.get(m, u, v).is_none()).map(|m| (m, u, v))
            })
        });
        let Some((mul, u, v)) = missing else { break live };
        let fresh = e.uf.new_set();
        created += 1;
        e.set(mul, u, v, fresh);
    };

    let index: HashMap<usize, usize> = live.iter().enumerate().map(|(i, &r)| (r, i)).collect();
    let idx = |e: &Engine, x: usize| index[&e.uf.find(x)];

    // labels: the oldest generator in each class, disambiguated by node index
    let mut first_gen: HashMap<usize, usize> = HashMap::new();
    for x in (0..gens).rev() {
        first_gen.insert(idx(&e, x), x);
    }
    let node_of = |x: usize| offsets.iter().rposition(|&o| o <= x).expect("generator has a node");
    let mut labels: Vec<String> = Vec::with_capacity(live.len());
    for i in 0..live.len() {
        let mut label = match first_gen.get(&i) {
            Some(&x) => {
                let n = node_of(x);
                let base = d.nodes[n].label(x - offsets[n]).to_string();
                if labels.contains(&base) {
                    format!("{base}@{n}")
                } else {
                    base
                }
            }
            None => format!("t{i}"),
        };
        while labels.contains(&label) {
            label.push('\'');
        }
        labels.push(label);
    }
    let table = |mul: bool| -> Vec<Vec<usize>> {
        live.iter()
            .map(|&u| live.iter().map(|&v| idx(&e, e.get(mul, u, v).expect("tables are complete"))).collect())
            .collect()
    };
    let semiring = FiniteSemiring::new(labels, table(false), table(true), idx(&e, e.zero), idx(&e, e.one))?;
    let cocone = d
        .nodes
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let map = r.elements().map(|a| idx(&e, offsets[i] + a)).collect();
            SemiringHom::new(r.clone(), semiring.clone(), map)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Colimit { semiring, cocone })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::semiring::{is_isomorphic, localize};

    fn span(r: &FiniteSemiring, g: usize, h: usize) -> SemiringDiagram {
        let mut d = SemiringDiagram::new();
        let base = d.add_node(r.clone());
        let lg = localize(r, g).unwrap();
        let lh = localize(r, h).unwrap();
        let a = d.add_node(lg.semiring.clone());
        let b = d.add_node(lh.semiring.clone());
        d.add_arrow(base, a, lg.map).unwrap();
        d.add_arrow(base, b, lh.map).unwrap();
        d
    }

    #[test]
    fn single_node() {
        for e in catalog::standard() {
            let mut d = SemiringDiagram::new();
            d.add_node(e.semiring.clone());
            let c = colimit(&d, 100).unwrap();
            assert_eq!(c.semiring, e.semiring);
            assert_eq!(c.cocone[0], SemiringHom::identity(&e.semiring));
        }
    }

    #[test]
    fn span_of_localizations_is_localization_at_product() {
        for e in catalog::standard() {
            let r = &e.semiring;
            for g in r.elements() {
                for h in r.elements() {
                    let c = colimit(&span(r, g, h), 100).unwrap();
                    let lgh = localize(r, r.mul(g, h)).unwrap();
                    assert!(is_isomorphic(&c.semiring, &lgh.semiring), "{} g={g} h={h}", e.name);
                    // and compatibly with the maps out of R
                    let via = c.cocone[0].clone();
                    let k = lgh.map.factor_through(&via).expect("factors");
                    assert!(k.is_bijective());
                }
            }
        }
    }

    #[test]
    fn coequalizer_of_equal_maps() {
        let b = catalog::boolean();
        let mut d = SemiringDiagram::new();
        let x = d.add_node(b.clone());
        let y = d.add_node(b.clone());
        d.add_arrow(x, y, SemiringHom::identity(&b)).unwrap();
        d.add_arrow(x, y, SemiringHom::identity(&b)).unwrap();
        let c = colimit(&d, 100).unwrap();
        assert_eq!(c.semiring.len(), 2);
        assert!(is_isomorphic(&c.semiring, &b));
    }

    #[test]
    fn coproducts() {
        let cases = [
            (catalog::zmod(2), catalog::zmod(3), 1),
            (catalog::boolean(), catalog::boolean(), 2),
            (catalog::boolean(), catalog::zmod(3), 1),
            (catalog::truncated(2), catalog::boolean(), 2),
            (catalog::zmod(2), catalog::zmod(2), 2),
        ];
        for (a, b, size) in cases {
            let mut d = SemiringDiagram::new();
            d.add_node(a.clone());
            d.add_node(b.clone());
            let c = colimit(&d, 200).unwrap();
            assert_eq!(c.semiring.len(), size, "{a:?} ⊔ {b:?}");
        }
    }

    #[test]
    fn tensor_of_boolean_pairs() {
        // (B×B) ⊗ (B×B) = B⁴ has 16 elements
        let bb = catalog::boolean().product(&catalog::boolean());
        let mut d = SemiringDiagram::new();
        d.add_node(bb.clone());
        d.add_node(bb);
        let c = colimit(&d, 500).unwrap();
        assert_eq!(c.semiring.len(), 16);
    }

    #[test]
    fn empty_diagram_exceeds_budget() {
        // the colimit of the empty diagram is the natural numbers
        assert_eq!(colimit(&SemiringDiagram::new(), 20), Err(Error::BudgetExceeded { budget: 20 }));
    }

    #[test]
    fn bad_arrow_rejected() {
        let mut d = SemiringDiagram::new();
        let x = d.add_node(catalog::boolean());
        assert!(d.add_arrow(x, 3, SemiringHom::identity(&catalog::boolean())).is_err());
        let y = d.add_node(catalog::zmod(2));
        assert!(d.add_arrow(x, y, SemiringHom::identity(&catalog::boolean())).is_err());
    }
}
