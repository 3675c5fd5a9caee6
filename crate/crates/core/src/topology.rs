//! Finite topological spaces given by their full family of open sets.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use petgraph::unionfind::UnionFind;

use crate::error::{Error, Result};

pub type PointSet = BTreeSet<usize>;

/// A finite space with an explicit open family and optionally a named basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteTopSpace {
    labels: Vec<String>,
    opens: BTreeSet<PointSet>,
    basis: Option<Vec<(String, PointSet)>>,
}

fn fmt_set(labels: &[String], s: &PointSet) -> String {
    let ls: Vec<&str> = s.iter().map(|&p| labels[p].as_str()).collect();
    format!("{{{}}}", ls.join(","))
}

impl FiniteTopSpace {
    /// Validates that `opens` is a topology on `labels.len()` points.
    pub fn new(labels: Vec<String>, opens: impl IntoIterator<Item = PointSet>) -> Result<Self> {
        let n = labels.len();
        let opens: BTreeSet<PointSet> = opens.into_iter().collect();
        let full: PointSet = (0..n).collect();
        if let Some(bad) = opens.iter().find(|u| u.iter().any(|&p| p >= n)) {
            return Err(Error::NotATopology(format!("open set {bad:?} mentions a missing point")));
        }
        if !opens.contains(&PointSet::new()) {
            return Err(Error::NotATopology("the empty set is not open".into()));
        }
        if !opens.contains(&full) {
            return Err(Error::NotATopology("the whole space is not open".into()));
        }
        for u in &opens {
            for v in &opens {
                if !opens.contains(&(u | v)) {
                    return Err(Error::NotATopology(format!(
                        "union of {} and {} is not open",
                        fmt_set(&labels, u),
                        fmt_set(&labels, v)
                    )));
                }
                if !opens.contains(&(u & v)) {
                    return Err(Error::NotATopology(format!(
                        "intersection of {} and {} is not open",
                        fmt_set(&labels, u),
                        fmt_set(&labels, v)
                    )));
                }
            }
        }
        Ok(FiniteTopSpace { labels, opens, basis: None })
    }

    /// The coarsest topology in which every set of `subbasis` is open.
    pub fn generated_by(labels: Vec<String>, subbasis: &[PointSet]) -> Self {
        let full: PointSet = (0..labels.len()).collect();
        let mut meets: BTreeSet<PointSet> = BTreeSet::from([full]);
        for s in subbasis {
            let more: Vec<PointSet> = meets.iter().map(|m| m & s).collect();
            meets.extend(more);
        }
        let mut opens: BTreeSet<PointSet> = BTreeSet::from([PointSet::new()]);
        for b in &meets {
            let more: Vec<PointSet> = opens.iter().map(|u| u | b).collect();
            opens.extend(more);
        }
        FiniteTopSpace { labels, opens, basis: None }
    }

    /// Like [`generated_by`](Self::generated_by), remembering the generators by name.
    pub fn with_basis(labels: Vec<String>, basis: Vec<(String, PointSet)>) -> Self {
        let sets: Vec<PointSet> = basis.iter().map(|(_, s)| s.clone()).collect();
        let mut x = Self::generated_by(labels, &sets);
        x.basis = Some(basis);
        x
    }

    /// The discrete space.
    pub fn discrete(labels: Vec<String>) -> Self {
        let singletons: Vec<PointSet> = (0..labels.len()).map(|p| PointSet::from([p])).collect();
        Self::generated_by(labels, &singletons)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn points(&self) -> std::ops::Range<usize> {
        0..self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, p: usize) -> &str {
        &self.labels[p]
    }

    pub fn full(&self) -> PointSet {
        self.points().collect()
    }

    /// Open sets in ascending lexicographic order.
    pub fn opens(&self) -> &BTreeSet<PointSet> {
        &self.opens
    }

    pub fn basis(&self) -> Option<&[(String, PointSet)]> {
        self.basis.as_deref()
    }

    pub fn is_open(&self, s: &PointSet) -> bool {
        self.opens.contains(s)
    }

    pub fn is_closed(&self, s: &PointSet) -> bool {
        self.is_open(&(&self.full() - s))
    }

    /// The smallest open set containing `p`.
    pub fn minimal_open(&self, p: usize) -> PointSet {
        self.opens.iter().filter(|u| u.contains(&p)).fold(self.full(), |acc, u| &acc & u)
    }

    pub fn closure(&self, s: &PointSet) -> PointSet {
        self.points().filter(|&q| self.minimal_open(q).iter().any(|x| s.contains(x))).collect()
    }

    pub fn point_closure(&self, p: usize) -> PointSet {
        self.closure(&PointSet::from([p]))
    }

    /// `y` is a specialization of `x`: `y ∈ cl{x}`.
    pub fn specializes_to(&self, x: usize, y: usize) -> bool {
        self.minimal_open(y).contains(&x)
    }

    /// Points whose closure is a single point.
    pub fn closed_points(&self) -> Vec<usize> {
        self.points().filter(|&p| self.point_closure(p).len() == 1).collect()
    }

    pub fn is_t0(&self) -> bool {
        let mins: BTreeSet<PointSet> = self.points().map(|p| self.minimal_open(p)).collect();
        mins.len() == self.len()
    }

    pub fn is_discrete(&self) -> bool {
        self.points().all(|p| self.minimal_open(p).len() == 1)
    }

    /// Covering pairs `(y, x)` of the specialization order: `y` is a
    /// specialization of `x` with nothing strictly between.
    pub fn specialization_edges(&self) -> Vec<(usize, usize)> {
        let strict = |x: usize, y: usize| x != y && self.specializes_to(x, y) && !self.specializes_to(y, x);
        let mut edges = Vec::new();
        for y in self.points() {
            for x in self.points() {
                if strict(x, y) && !self.points().any(|z| strict(x, z) && strict(z, y)) {
                    edges.push((y, x));
                }
            }
        }
        edges
    }

    /// The specialization order in DOT, one `closed_pt -> generizing_pt` edge per line.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("digraph \"{name}\" {{\n");
        for p in self.points() {
            let _ = writeln!(out, "  \"{}\";", self.labels[p]);
        }
        for (y, x) in self.specialization_edges() {
            let _ = writeln!(out, "  \"{}\" -> \"{}\";", self.labels[y], self.labels[x]);
        }
        out.push_str("}\n");
        out
    }

    pub fn format_set(&self, s: &PointSet) -> String {
        fmt_set(&self.labels, s)
    }

    /// The subspace on `points` (in the given order) with the induced topology.
    pub fn subspace(&self, points: &[usize]) -> FiniteTopSpace {
        let pos: BTreeMap<usize, usize> = points.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let opens = self
            .opens
            .iter()
            .map(|u| u.iter().filter_map(|p| pos.get(p).copied()).collect())
            .collect();
        let basis = self.basis.as_ref().map(|b| {
            b.iter()
                .map(|(name, u)| (name.clone(), u.iter().filter_map(|p| pos.get(p).copied()).collect()))
                .collect()
        });
        FiniteTopSpace { labels: points.iter().map(|&p| self.labels[p].clone()).collect(), opens, basis }
    }

    /// The Kolmogorov quotient: points with equal closures are identified.
    /// Returns the quotient and the projection.
    pub fn t0_quotient(&self) -> (FiniteTopSpace, ContinuousMap) {
        let mut classes: Vec<PointSet> = Vec::new();
        let mut class_of = vec![0; self.len()];
        for p in self.points() {
            let m = self.minimal_open(p);
            let i = match classes.iter().position(|c| *c == m) {
                Some(i) => i,
                None => {
                    classes.push(m);
                    classes.len() - 1
                }
            };
            class_of[p] = i;
        }
        let mut labels = vec![String::new(); classes.len()];
        for p in self.points().rev() {
            labels[class_of[p]] = self.labels[p].clone();
        }
        let opens = self.opens.iter().map(|u| u.iter().map(|&p| class_of[p]).collect()).collect();
        let q = FiniteTopSpace { labels, opens, basis: None };
        let map = ContinuousMap { source: self.clone(), target: q.clone(), map: class_of };
        (q, map)
    }

    /// Some homeomorphism `self → other`, if one exists.
    pub fn find_homeomorphism(&self, other: &FiniteTopSpace) -> Option<Vec<usize>> {
        if self.len() != other.len() || self.opens.len() != other.opens.len() {
            return None;
        }
        let sig = |x: &FiniteTopSpace, p: usize| {
            (x.minimal_open(p).len(), x.point_closure(p).len())
        };
        let mut map = vec![usize::MAX; self.len()];
        let mut used = vec![false; other.len()];
        fn go(
            a: &FiniteTopSpace,
            b: &FiniteTopSpace,
            i: usize,
            map: &mut Vec<usize>,
            used: &mut Vec<bool>,
            sig: &dyn Fn(&FiniteTopSpace, usize) -> (usize, usize),
        ) -> bool {
            if i == a.len() {
                return a.is_homeomorphism(b, map);
            }
            for q in b.points() {
                if used[q] || sig(a, i) != sig(b, q) {
                    continue;
                }
                // specialization must be preserved in both directions
                if (0..i).any(|j| a.specializes_to(j, i) != b.specializes_to(map[j], q)
                    || a.specializes_to(i, j) != b.specializes_to(q, map[j]))
                {
                    continue;
                }
                map[i] = q;
                used[q] = true;
                if go(a, b, i + 1, map, used, sig) {
                    return true;
                }
                used[q] = false;
            }
            false
        }
        go(self, other, 0, &mut map, &mut used, &sig).then_some(map)
    }

    /// Whether `map` is a bijection carrying the opens of `self` exactly onto those of `other`.
    pub fn is_homeomorphism(&self, other: &FiniteTopSpace, map: &[usize]) -> bool {
        if map.len() != self.len() || self.len() != other.len() {
            return false;
        }
        let image: BTreeSet<usize> = map.iter().copied().collect();
        if image.len() != map.len() || image.iter().any(|&q| q >= other.len()) {
            return false;
        }
        let pushed: BTreeSet<PointSet> =
            self.opens.iter().map(|u| u.iter().map(|&p| map[p]).collect()).collect();
        pushed == other.opens
    }

    pub fn is_homeomorphic(&self, other: &FiniteTopSpace) -> bool {
        self.find_homeomorphism(other).is_some()
    }
}

/// A continuous map of finite spaces.
/// A disjoint union of spaces modulo the equivalence generated by `identify`
/// (pairs of `(space, point)`), with the quotient topology.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gluing {
    pub space: FiniteTopSpace,
    /// Per input space, its map into the quotient.
    pub charts: Vec<ContinuousMap>,
    /// Per quotient point, the `(space, point)` it was first seen as.
    pub provenance: Vec<(usize, usize)>,
}

/// Builds the quotient; `label(i, x)` names the class first reached at point
/// `x` of space `i`.
pub fn glue_spaces(
    spaces: &[FiniteTopSpace],
    identify: &[((usize, usize), (usize, usize))],
    label: impl Fn(usize, usize) -> String,
) -> Gluing {
    let mut offsets = Vec::new();
    let mut total = 0;
    for x in spaces {
        offsets.push(total);
        total += x.len();
    }
    let mut uf = UnionFind::<usize>::new(total);
    for &((i, x), (j, y)) in identify {
        uf.union(offsets[i] + x, offsets[j] + y);
    }
    let locate = |g: usize| {
        let i = (0..spaces.len()).rfind(|&i| offsets[i] <= g && g < offsets[i] + spaces[i].len()).expect("g lies in a space");
        (i, g - offsets[i])
    };
    let mut class: Vec<usize> = vec![usize::MAX; total];
    let mut provenance = Vec::new();
    for g in 0..total {
        let root = uf.find(g);
        if class[root] == usize::MAX {
            class[root] = provenance.len();
            provenance.push(locate(g));
        }
        class[g] = class[root];
    }
    let labels: Vec<String> = provenance.iter().map(|&(i, x)| label(i, x)).collect();

    // smallest saturated set containing q whose preimage in every space is open
    let minimal_open = |q: usize| -> PointSet {
        let mut s: PointSet = PointSet::from([q]);
        loop {
            let mut grown = s.clone();
            for (i, x) in spaces.iter().enumerate() {
                for pt in x.points() {
                    if s.contains(&class[offsets[i] + pt]) {
                        grown.extend(x.minimal_open(pt).iter().map(|&y| class[offsets[i] + y]));
                    }
                }
            }
            if grown == s {
                return s;
            }
            s = grown;
        }
    };
    let mins: Vec<PointSet> = (0..provenance.len()).map(minimal_open).collect();
    let space = FiniteTopSpace::generated_by(labels, &mins);
    let charts = spaces
        .iter()
        .enumerate()
        .map(|(i, x)| {
            let map = x.points().map(|pt| class[offsets[i] + pt]).collect();
            ContinuousMap::new(x.clone(), space.clone(), map).expect("charts are continuous into the quotient")
        })
        .collect();
    Gluing { space, charts, provenance }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContinuousMap {
    source: FiniteTopSpace,
    target: FiniteTopSpace,
    map: Vec<usize>,
}

impl ContinuousMap {
    pub fn new(source: FiniteTopSpace, target: FiniteTopSpace, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.len() || map.iter().any(|&q| q >= target.len()) {
            return Err(Error::NotContinuous("point assignment has the wrong shape".into()));
        }
        let f = ContinuousMap { source, target, map };
        if let Some(u) = f.target.opens.iter().find(|u| !f.source.is_open(&f.preimage(u))) {
            return Err(Error::NotContinuous(f.target.format_set(u)));
        }
        Ok(f)
    }

    pub fn identity(x: &FiniteTopSpace) -> Self {
        ContinuousMap { source: x.clone(), target: x.clone(), map: x.points().collect() }
    }

    pub fn source(&self) -> &FiniteTopSpace {
        &self.source
    }

    pub fn target(&self) -> &FiniteTopSpace {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, p: usize) -> usize {
        self.map[p]
    }

    pub fn preimage(&self, s: &PointSet) -> PointSet {
        self.source.points().filter(|&p| s.contains(&self.map[p])).collect()
    }

    pub fn image(&self, s: &PointSet) -> PointSet {
        s.iter().map(|&p| self.map[p]).collect()
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &ContinuousMap) -> Result<ContinuousMap> {
        if self.target != other.source {
            return Err(Error::NotContinuous("composition of non-matching maps".into()));
        }
        let map = self.map.iter().map(|&p| other.map[p]).collect();
        Ok(ContinuousMap { source: self.source.clone(), target: other.target.clone(), map })
    }

    pub fn is_injective(&self) -> bool {
        let img: BTreeSet<usize> = self.map.iter().copied().collect();
        img.len() == self.map.len()
    }

    pub fn is_surjective(&self) -> bool {
        let img: BTreeSet<usize> = self.map.iter().copied().collect();
        img.len() == self.target.len()
    }

    /// Injective, and every open of the source is the preimage of an open.
    pub fn is_embedding(&self) -> bool {
        self.is_injective() && {
            let induced: BTreeSet<PointSet> = self.target.opens.iter().map(|u| self.preimage(u)).collect();
            induced == self.source.opens
        }
    }

    pub fn is_open_embedding(&self) -> bool {
        self.is_embedding() && self.source.opens.iter().all(|u| self.target.is_open(&self.image(u)))
    }
}
