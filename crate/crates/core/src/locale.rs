//! Finite frames, their points, and Stone duality with finite spaces.
//!
//! In the finite case arbitrary joins are finite joins, so a frame is just a
//! finite distributive lattice.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::topology::{ContinuousMap, FiniteTopSpace, PointSet};

/// A finite distributive lattice given by its order; meets and joins are cached.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteFrame {
    labels: Vec<String>,
    leq: Vec<Vec<bool>>,
    meet: Vec<Vec<usize>>,
    join: Vec<Vec<usize>>,
    bottom: usize,
    top: usize,
}

impl FiniteFrame {
    /// Builds a frame from a full order matrix, `leq[a][b]` meaning `a ≤ b`.
    pub fn from_order(labels: Vec<String>, leq: Vec<Vec<bool>>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::NotALattice("a lattice needs at least one element".into()));
        }
        if leq.len() != n || leq.iter().any(|row| row.len() != n) {
            return Err(Error::NotALattice("order matrix has the wrong shape".into()));
        }
        for a in 0..n {
            if !leq[a][a] {
                return Err(Error::NotALattice(format!("{} ≤ {0} fails", labels[a])));
            }
            for b in 0..n {
                if a != b && leq[a][b] && leq[b][a] {
                    return Err(Error::NotALattice(format!("{} and {} are distinct but equivalent", labels[a], labels[b])));
                }
                for c in 0..n {
                    if leq[a][b] && leq[b][c] && !leq[a][c] {
                        return Err(Error::NotALattice(format!(
                            "order is not transitive at {}, {}, {}",
                            labels[a], labels[b], labels[c]
                        )));
                    }
                }
            }
        }
        let bound = |up: bool, a: usize, b: usize| -> Result<usize> {
            let rel = |x: usize, y: usize| if up { leq[x][y] } else { leq[y][x] };
            let bounds: Vec<usize> = (0..n).filter(|&x| rel(a, x) && rel(b, x)).collect();
            bounds.iter().copied().find(|&x| bounds.iter().all(|&y| rel(x, y))).ok_or_else(|| {
                Error::NotALattice(format!(
                    "{} and {} have no {}",
                    labels[a],
                    labels[b],
                    if up { "least upper bound" } else { "greatest lower bound" }
                ))
            })
        };
        let mut meet = vec![vec![0; n]; n];
        let mut join = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                meet[a][b] = bound(false, a, b)?;
                join[a][b] = bound(true, a, b)?;
            }
        }
        let bottom = (0..n).find(|&x| (0..n).all(|y| leq[x][y])).expect("finite lattices are bounded");
        let top = (0..n).find(|&x| (0..n).all(|y| leq[y][x])).expect("finite lattices are bounded");
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if meet[a][join[b][c]] != join[meet[a][b]][meet[a][c]] {
                        return Err(Error::NotDistributive {
                            a: labels[a].clone(),
                            b: labels[b].clone(),
                            c: labels[c].clone(),
                        });
                    }
                }
            }
        }
        Ok(FiniteFrame { labels, leq, meet, join, bottom, top })
    }

    /// Builds a frame from covering pairs `(a, b)` meaning `a < b`.
    pub fn from_hasse(labels: Vec<String>, covers: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        let mut leq = vec![vec![false; n]; n];
        for (a, row) in leq.iter_mut().enumerate() {
            row[a] = true;
        }
        for &(a, b) in covers {
            if a >= n || b >= n {
                return Err(Error::NotALattice("covering pair mentions a missing element".into()));
            }
            leq[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if leq[i][k] && leq[k][j] {
                        leq[i][j] = true;
                    }
                }
            }
        }
        Self::from_order(labels, leq)
    }

    /// A chain `0 < 1 < ... < k-1`.
    pub fn chain(k: usize) -> Self {
        let labels = (0..k).map(|i| i.to_string()).collect();
        let leq = (0..k).map(|a| (0..k).map(|b| a <= b).collect()).collect();
        Self::from_order(labels, leq).expect("chains are distributive")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a][b]
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a][b]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn join_all(&self, xs: impl IntoIterator<Item = usize>) -> usize {
        xs.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    pub fn meet_all(&self, xs: impl IntoIterator<Item = usize>) -> usize {
        xs.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    /// Covering pairs `(a, b)`: `a < b` with nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let lt = |a: usize, b: usize| a != b && self.leq[a][b];
        let mut out = Vec::new();
        for a in self.elements() {
            for b in self.elements() {
                if lt(a, b) && !self.elements().any(|c| lt(a, c) && lt(c, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// `a ≠ 0` and `a ≤ b ∨ c` implies `a ≤ b` or `a ≤ c`.
    pub fn is_join_prime(&self, a: usize) -> bool {
        a != self.bottom
            && self.elements().all(|b| {
                self.elements().all(|c| !self.leq(a, self.join(b, c)) || self.leq(a, b) || self.leq(a, c))
            })
    }

    /// `p ≠ 1` and `a ∧ b ≤ p` implies `a ≤ p` or `b ≤ p`.
    pub fn is_meet_prime(&self, p: usize) -> bool {
        p != self.top
            && self.elements().all(|a| {
                self.elements().all(|b| !self.leq(self.meet(a, b), p) || self.leq(a, p) || self.leq(b, p))
            })
    }

    pub fn up_set(&self, a: usize) -> BTreeSet<usize> {
        self.elements().filter(|&b| self.leq(a, b)).collect()
    }

    pub fn down_set(&self, a: usize) -> BTreeSet<usize> {
        self.elements().filter(|&b| self.leq(b, a)).collect()
    }
}

/// A point of a finite frame: a completely prime filter. In the finite case
/// every such filter is `↑a` for a join-prime `a`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct PrimeFilterPoint {
    pub generator: usize,
    pub filter: BTreeSet<usize>,
}

impl PrimeFilterPoint {
    /// The principal prime ideal `L − F`.
    pub fn complement(&self, l: &FiniteFrame) -> BTreeSet<usize> {
        l.elements().filter(|a| !self.filter.contains(a)).collect()
    }
}

/// The points of `l`, ordered by generator.
pub fn prime_filters(l: &FiniteFrame) -> Vec<PrimeFilterPoint> {
    l.elements()
        .filter(|&a| l.is_join_prime(a))
        .map(|a| PrimeFilterPoint { generator: a, filter: l.up_set(a) })
        .collect()
}

/// Points of `l` whose filter contains `u`.
pub fn canonical_open(l: &FiniteFrame, u: usize) -> PointSet {
    prime_filters(l).iter().enumerate().filter(|(_, p)| p.filter.contains(&u)).map(|(i, _)| i).collect()
}

/// The space of points of `l`, with opens `{p | u ∈ p}` for `u ∈ l`.
pub fn stone_dual(l: &FiniteFrame) -> FiniteTopSpace {
    let points = prime_filters(l);
    let labels = points.iter().map(|p| format!("^{}", l.label(p.generator))).collect();
    let opens: Vec<PointSet> = l.elements().map(|u| canonical_open(l, u)).collect();
    FiniteTopSpace::new(labels, opens).expect("the canonical opens of a frame form a topology")
}

/// The lattice of open sets; element `i` is the `i`-th entry of `x.opens()`.
pub fn frame_of_opens(x: &FiniteTopSpace) -> FiniteFrame {
    let opens: Vec<&PointSet> = x.opens().iter().collect();
    let labels = opens.iter().map(|u| x.format_set(u)).collect();
    let leq = opens.iter().map(|u| opens.iter().map(|v| u.is_subset(v)).collect()).collect();
    FiniteFrame::from_order(labels, leq).expect("open sets form a distributive lattice")
}

/// Whether `u ↦ {p | u ∈ p}` is an order isomorphism from `l` onto the
/// opens of its Stone dual.
pub fn spatiality_check(l: &FiniteFrame) -> bool {
    let x = stone_dual(l);
    let image: Vec<PointSet> = l.elements().map(|u| canonical_open(l, u)).collect();
    let distinct: BTreeSet<&PointSet> = image.iter().collect();
    distinct.len() == l.len()
        && distinct.len() == x.opens().len()
        && l.elements().all(|a| l.elements().all(|b| l.leq(a, b) == image[a].is_subset(&image[b])))
}

/// A closed irreducible set without exactly one generic point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SobrietyWitness {
    pub closed: PointSet,
    pub generic_points: Vec<usize>,
}

fn is_irreducible(x: &FiniteTopSpace, c: &PointSet) -> bool {
    if c.is_empty() {
        return false;
    }
    let closed: Vec<PointSet> =
        x.opens().iter().map(|u| &x.full() - u).filter(|d| d.is_subset(c) && d != c).collect();
    !closed.iter().any(|a| closed.iter().any(|b| &(a | b) == c))
}

/// Checks every irreducible closed set for a unique generic point.
pub fn sobriety(x: &FiniteTopSpace) -> std::result::Result<(), SobrietyWitness> {
    for u in x.opens() {
        let c = &x.full() - u;
        if !is_irreducible(x, &c) {
            continue;
        }
        let generic: Vec<usize> = c.iter().copied().filter(|&p| x.point_closure(p) == c).collect();
        if generic.len() != 1 {
            return Err(SobrietyWitness { closed: c, generic_points: generic });
        }
    }
    Ok(())
}

pub fn is_sober(x: &FiniteTopSpace) -> bool {
    sobriety(x).is_ok()
}

/// The unit `X → stone_dual(frame_of_opens(X))`, sending `p` to the filter
/// of opens containing it.
pub fn sobrification(x: &FiniteTopSpace) -> ContinuousMap {
    let l = frame_of_opens(x);
    let opens: Vec<&PointSet> = x.opens().iter().collect();
    let points = prime_filters(&l);
    let map = x
        .points()
        .map(|p| {
            let m = x.minimal_open(p);
            let g = opens.iter().position(|u| **u == m).expect("minimal opens are open");
            points.iter().position(|f| f.generator == g).expect("minimal opens are join-prime")
        })
        .collect();
    ContinuousMap::new(x.clone(), stone_dual(&l), map).expect("the unit is continuous")
}

/// `f*: source → target` preserving 0, 1, binary joins and meets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrameMorphism {
    source: FiniteFrame,
    target: FiniteFrame,
    map: Vec<usize>,
}

impl FrameMorphism {
    pub fn new(source: FiniteFrame, target: FiniteFrame, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.len() || map.iter().any(|&x| x >= target.len()) {
            return Err(Error::NotAFrameMorphism("assignment has the wrong shape".into()));
        }
        if map[source.bottom] != target.bottom || map[source.top] != target.top {
            return Err(Error::NotAFrameMorphism("bottom or top is not preserved".into()));
        }
        for a in source.elements() {
            for b in source.elements() {
                if map[source.join(a, b)] != target.join(map[a], map[b]) {
                    return Err(Error::NotAFrameMorphism(format!(
                        "join of {} and {} is not preserved",
                        source.label(a),
                        source.label(b)
                    )));
                }
                if map[source.meet(a, b)] != target.meet(map[a], map[b]) {
                    return Err(Error::NotAFrameMorphism(format!(
                        "meet of {} and {} is not preserved",
                        source.label(a),
                        source.label(b)
                    )));
                }
            }
        }
        Ok(FrameMorphism { source, target, map })
    }

    pub fn source(&self) -> &FiniteFrame {
        &self.source
    }

    pub fn target(&self) -> &FiniteFrame {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }
}

/// `f*: O(Y) → O(X)` for continuous `f: X → Y`.
pub fn opens_map(f: &ContinuousMap) -> FrameMorphism {
    let src: Vec<&PointSet> = f.target().opens().iter().collect();
    let tgt: Vec<&PointSet> = f.source().opens().iter().collect();
    let map = src
        .iter()
        .map(|u| {
            let back = f.preimage(u);
            tgt.iter().position(|v| **v == back).expect("f is continuous")
        })
        .collect();
    FrameMorphism::new(frame_of_opens(f.target()), frame_of_opens(f.source()), map)
        .expect("preimage preserves unions and intersections")
}

/// The map of points `stone_dual(target) → stone_dual(source)` induced by
/// `φ: source → target`: a point `F` goes to `φ⁻¹(F)`.
pub fn stone_map(phi: &FrameMorphism) -> ContinuousMap {
    let (l, m) = (phi.source(), phi.target());
    let here = prime_filters(l);
    let map = prime_filters(m)
        .iter()
        .map(|f| {
            let back: BTreeSet<usize> = l.elements().filter(|&u| f.filter.contains(&phi.apply(u))).collect();
            here.iter().position(|p| p.filter == back).expect("preimages of prime filters are prime filters")
        })
        .collect();
    ContinuousMap::new(stone_dual(m), stone_dual(l), map).expect("induced maps of points are continuous")
}

/// `elements: ...` followed by one `a < b` line per covering pair.
pub fn format_hasse(l: &FiniteFrame) -> String {
    let mut out = format!("elements: {}\n", l.labels.join(" "));
    for (a, b) in l.covers() {
        let _ = writeln!(out, "{} < {}", l.label(a), l.label(b));
    }
    out
}

pub fn parse_hasse(text: &str) -> Result<FiniteFrame> {
    let mut labels: Option<Vec<String>> = None;
    let mut pairs = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| Error::Parse { line: i + 1, message };
        if let Some(rest) = line.strip_prefix("elements:") {
            if labels.is_some() {
                return Err(err("duplicate `elements:` line".into()));
            }
            labels = Some(rest.split_whitespace().map(str::to_string).collect());
            continue;
        }
        let Some(ls) = &labels else {
            return Err(err("expected `elements:` first".into()));
        };
        let toks: Vec<&str> = line.split_whitespace().collect();
        let [a, "<", b] = toks.as_slice() else {
            return Err(err(format!("expected `a < b`, found `{line}`")));
        };
        let find = |t: &str| ls.iter().position(|l| l == t).ok_or_else(|| err(format!("unknown element `{t}`")));
        pairs.push((find(a)?, find(b)?));
    }
    let labels = labels.ok_or(Error::Parse { line: 1, message: "missing `elements:` line".into() })?;
    FiniteFrame::from_hasse(labels, &pairs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn set(v: &[usize]) -> PointSet {
        v.iter().copied().collect()
    }

    fn diamond() -> FiniteFrame {
        FiniteFrame::from_hasse(labels(&["0", "a", "b", "1"]), &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()
    }

    /// Oracle: completely prime filters found by scanning all subsets.
    fn filters_by_scan(l: &FiniteFrame) -> Vec<BTreeSet<usize>> {
        let n = l.len();
        let mut out = Vec::new();
        for m in 0u32..1 << n {
            let f: BTreeSet<usize> = (0..n).filter(|&i| m & (1 << i) != 0).collect();
            let upward = f.iter().all(|&a| l.up_set(a).is_subset(&f));
            let meets = f.iter().all(|&a| f.iter().all(|&b| f.contains(&l.meet(a, b))));
            let prime = l.elements().all(|a| {
                l.elements().all(|b| !f.contains(&l.join(a, b)) || f.contains(&a) || f.contains(&b))
            });
            if f.contains(&l.top()) && !f.contains(&l.bottom()) && upward && meets && prime {
                out.push(f);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn rejects_non_distributive() {
        // M3: three atoms below a common top
        let m3 = FiniteFrame::from_hasse(
            labels(&["0", "a", "b", "c", "1"]),
            &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)],
        );
        assert!(matches!(m3, Err(Error::NotDistributive { .. })));
        let n5 = FiniteFrame::from_hasse(labels(&["0", "a", "b", "c", "1"]), &[(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)]);
        assert!(matches!(n5, Err(Error::NotDistributive { .. })));
        let not_lattice = FiniteFrame::from_hasse(labels(&["a", "b"]), &[]);
        assert!(matches!(not_lattice, Err(Error::NotALattice(_))));
    }

    #[test]
    fn frames_of_small_spaces() {
        let point = FiniteTopSpace::discrete(labels(&["p"]));
        let l = frame_of_opens(&point);
        assert_eq!(l.len(), 2);
        let sierpinski = FiniteTopSpace::new(labels(&["o", "c"]), [set(&[]), set(&[0]), set(&[0, 1])]).unwrap();
        let l = frame_of_opens(&sierpinski);
        assert_eq!(l.len(), 3);
        assert_eq!(l.covers().len(), 2);
        let empty = FiniteTopSpace::discrete(vec![]);
        let l = frame_of_opens(&empty);
        assert_eq!(l.len(), 1);
        assert_eq!(l.bottom(), l.top());
    }

    #[test]
    fn duals_of_small_frames() {
        assert_eq!(stone_dual(&FiniteFrame::chain(2)).len(), 1);
        let s = stone_dual(&FiniteFrame::chain(3));
        assert_eq!(s.len(), 2);
        assert_eq!(s.opens().len(), 3);
        let d = stone_dual(&diamond());
        assert!(d.is_discrete());
        assert_eq!(d.len(), 2);
        assert!(stone_dual(&FiniteFrame::chain(1)).is_empty());
    }

    #[test]
    fn points_match_definition() {
        for l in [FiniteFrame::chain(1), FiniteFrame::chain(4), diamond(), frame_of_opens(&FiniteTopSpace::discrete(labels(&["x", "y", "z"])))] {
            let fast: Vec<BTreeSet<usize>> = prime_filters(&l).into_iter().map(|p| p.filter).collect();
            let mut sorted = fast.clone();
            sorted.sort();
            assert_eq!(sorted, filters_by_scan(&l));
            // complements are principal prime ideals
            for p in prime_filters(&l) {
                let ideal = p.complement(&l);
                let top = l.join_all(ideal.iter().copied());
                assert!(l.is_meet_prime(top));
                assert_eq!(ideal, l.down_set(top));
            }
            let meet_primes = l.elements().filter(|&p| l.is_meet_prime(p)).count();
            assert_eq!(meet_primes, fast.len());
        }
    }

    #[test]
    fn spatial() {
        for l in [FiniteFrame::chain(1), FiniteFrame::chain(2), FiniteFrame::chain(3), diamond()] {
            assert!(spatiality_check(&l));
        }
    }

    #[test]
    fn sober_examples() {
        let indiscrete = FiniteTopSpace::new(labels(&["x", "y"]), [set(&[]), set(&[0, 1])]).unwrap();
        let w = sobriety(&indiscrete).unwrap_err();
        assert_eq!(w.generic_points, vec![0, 1]);
        assert!(is_sober(&FiniteTopSpace::discrete(vec![])));
        assert!(is_sober(&FiniteTopSpace::discrete(labels(&["x", "y"]))));
    }

    #[test]
    fn unit_collapses_to_t0_quotient() {
        let x = FiniteTopSpace::new(labels(&["x", "y", "z"]), [set(&[]), set(&[0, 1]), set(&[0, 1, 2])]).unwrap();
        let unit = sobrification(&x);
        assert_eq!(unit.target().len(), 2);
        assert!(unit.target().is_homeomorphic(&x.t0_quotient().0));
    }

    #[test]
    fn hasse_round_trip() {
        let d = diamond();
        let text = format_hasse(&d);
        assert_eq!(text, "elements: 0 a b 1\n0 < a\n0 < b\na < 1\nb < 1\n");
        assert_eq!(parse_hasse(&text).unwrap(), d);
        assert!(matches!(parse_hasse("0 < 1"), Err(Error::Parse { .. })));
    }

    #[test]
    fn functoriality_on_a_map() {
        let d = FiniteTopSpace::discrete(labels(&["x", "y"]));
        let s = FiniteTopSpace::new(labels(&["o", "c"]), [set(&[]), set(&[0]), set(&[0, 1])]).unwrap();
        let f = ContinuousMap::new(d.clone(), s.clone(), vec![0, 1]).unwrap();
        let g = ContinuousMap::identity(&s);
        let fg = f.then(&g).unwrap();
        // (g ∘ f)* = f* ∘ g*
        let lhs = opens_map(&fg);
        let (gs, fs) = (opens_map(&g), opens_map(&f));
        let composed: Vec<usize> = gs.map().iter().map(|&u| fs.apply(u)).collect();
        assert_eq!(lhs.map(), composed.as_slice());
        // points of the dual of f* recover f up to the units
        let back = stone_map(&fs);
        let (ud, us) = (sobrification(&d), sobrification(&s));
        for p in d.points() {
            assert_eq!(back.apply(ud.apply(p)), us.apply(f.apply(p)));
        }
    }
}
