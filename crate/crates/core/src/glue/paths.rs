use std::collections::BTreeSet;
use std::fmt;

use super::SPresentation;
use crate::error::Result;
use crate::semiring::{colimit, search_homs, Colimit, SemiringDiagram};

pub const DEFAULT_PATH_BOUND: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Step {
    pub arrow: usize,
    /// Traversed from the arrow's source semiring to its target.
    pub forward: bool,
}

/// A walk in the index graph of a presentation, ignoring arrow directions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiagramPath {
    pub start: usize,
    pub steps: Vec<Step>,
}

impl DiagramPath {
    /// The node sequence, `steps.len() + 1` long.
    pub fn nodes(&self, p: &SPresentation) -> Vec<usize> {
        self.nodes_along(&arrow_ends(p))
    }

    /// The node sequence, given each arrow as `(source, target)`.
    pub fn nodes_along(&self, ends: &[(usize, usize)]) -> Vec<usize> {
        let mut out = vec![self.start];
        for s in &self.steps {
            let (a, b) = ends[s.arrow];
            out.push(if s.forward { b } else { a });
        }
        out
    }

    /// The same closed walk started at each of its positions in turn.
    pub fn rotations(&self, ends: &[(usize, usize)]) -> Vec<DiagramPath> {
        let nodes = self.nodes_along(ends);
        (0..self.steps.len().max(1))
            .map(|k| {
                let steps = self.steps[k..].iter().chain(&self.steps[..k]).copied().collect();
                DiagramPath { start: nodes[k], steps }
            })
            .collect()
    }

    pub fn is_closed(&self, p: &SPresentation) -> bool {
        self.nodes(p).last() == Some(&self.start)
    }

    /// Renders the path with arrows drawn as open immersions (opposite to
    /// the semiring maps), e.g. `V <-a0- U -a1-> V`.
    pub fn render(&self, p: &SPresentation) -> String {
        let nodes = self.nodes(p);
        let mut out = p.node_name(nodes[0]).to_string();
        for (s, &n) in self.steps.iter().zip(&nodes[1..]) {
            let name = &p.arrows()[s.arrow].name;
            if s.forward {
                out.push_str(&format!(" <-{name}- "));
            } else {
                out.push_str(&format!(" -{name}-> "));
            }
            out.push_str(p.node_name(n));
        }
        out
    }
}

fn arrow_ends(p: &SPresentation) -> Vec<(usize, usize)> {
    p.arrows().iter().map(|a| (a.source, a.target)).collect()
}

/// Simple closed paths of length at most `bound`, each listed once (from its
/// smallest node, in one direction), and whether a longer one was skipped.
pub fn closed_paths(p: &SPresentation, bound: usize) -> (Vec<DiagramPath>, bool) {
    simple_cycles(p.nodes().len(), &arrow_ends(p), bound)
}

/// [`closed_paths`] for any finite multigraph with arrows `(source, target)`.
pub fn simple_cycles(nodes: usize, ends: &[(usize, usize)], bound: usize) -> (Vec<DiagramPath>, bool) {
    struct Search<'a> {
        ends: &'a [(usize, usize)],
        bound: usize,
        start: usize,
        found: Vec<DiagramPath>,
        skipped: bool,
    }
    impl Search<'_> {
        fn go(&mut self, cur: usize, visited: &mut BTreeSet<usize>, steps: &mut Vec<Step>) {
            for (i, &(src, tgt)) in self.ends.iter().enumerate() {
                if steps.iter().any(|s| s.arrow == i) {
                    continue;
                }
                let moves: Vec<(bool, usize)> = match (src == cur, tgt == cur) {
                    (true, true) => vec![(true, cur)],
                    (true, false) => vec![(true, tgt)],
                    (false, true) => vec![(false, src)],
                    (false, false) => vec![],
                };
                for (forward, next) in moves {
                    let step = Step { arrow: i, forward };
                    if next == self.start {
                        let first = steps.first().map_or(i, |s| s.arrow);
                        if steps.is_empty() && src != tgt {
                            continue;
                        }
                        if first <= i {
                            if steps.len() < self.bound {
                                let mut path = steps.clone();
                                path.push(step);
                                self.found.push(DiagramPath { start: self.start, steps: path });
                            } else {
                                self.skipped = true;
                            }
                        }
                    } else if next > self.start && !visited.contains(&next) {
                        if self.skipped && steps.len() + 1 >= self.bound {
                            continue;
                        }
                        visited.insert(next);
                        steps.push(step);
                        self.go(next, visited, steps);
                        steps.pop();
                        visited.remove(&next);
                    }
                }
            }
        }
    }
    let mut s = Search { ends, bound, start: 0, found: Vec::new(), skipped: false };
    for start in 0..nodes {
        s.start = start;
        s.go(start, &mut BTreeSet::from([start]), &mut Vec::new());
    }
    (s.found, s.skipped)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathMode {
    /// Repeated nodes of the walk are one node of the diagram.
    Closed,
    /// Every position of the walk is its own node.
    Opened,
}

/// The algebra whose spectrum is the limit of the path diagram: the
/// colimit of the semirings along the walk. Cocone legs are indexed by
/// diagram node; see [`path_positions`] for the node of each position.
pub fn path_limit(p: &SPresentation, path: &DiagramPath, mode: PathMode, budget: usize) -> Result<Colimit> {
    let nodes = path.nodes(p);
    let positions = path_positions(&nodes, mode);
    let mut d = SemiringDiagram::new();
    let count = positions.iter().max().map_or(0, |m| m + 1);
    for k in 0..count {
        let pos = positions.iter().position(|&x| x == k).expect("every diagram node has a position");
        d.add_node(p.node(nodes[pos]).clone());
    }
    for (i, s) in path.steps.iter().enumerate() {
        let a = &p.arrows()[s.arrow];
        let (from, to) = if s.forward { (i, i + 1) } else { (i + 1, i) };
        d.add_arrow(positions[from], positions[to], a.hom.clone())?;
    }
    colimit(&d, budget)
}

/// Diagram node of each walk position.
pub fn path_positions(nodes: &[usize], mode: PathMode) -> Vec<usize> {
    match mode {
        PathMode::Opened => (0..nodes.len()).collect(),
        PathMode::Closed => {
            let mut seen: Vec<usize> = Vec::new();
            nodes
                .iter()
                .map(|n| match seen.iter().position(|m| m == n) {
                    Some(i) => i,
                    None => {
                        seen.push(*n);
                        seen.len() - 1
                    }
                })
                .collect()
        }
    }
}

/// Whether `μ_Π: lim Π → lim Π̂` is an isomorphism, checked on algebras:
/// the map from the opened colimit to the closed one that is compatible
/// with the cocone legs must exist and be bijective.
pub fn comparison_is_iso(p: &SPresentation, path: &DiagramPath, budget: usize) -> Result<(bool, Colimit, Colimit)> {
    let nodes = path.nodes(p);
    let closed = path_limit(p, path, PathMode::Closed, budget)?;
    let opened = path_limit(p, path, PathMode::Opened, budget)?;
    let cpos = path_positions(&nodes, PathMode::Closed);
    let mut fixed = vec![None; opened.semiring.len()];
    let mut consistent = true;
    for (i, &n) in nodes.iter().enumerate() {
        for r in p.node(n).elements() {
            let (a, b) = (opened.cocone[i].apply(r), closed.cocone[cpos[i]].apply(r));
            match fixed[a] {
                Some(x) if x != b => consistent = false,
                _ => fixed[a] = Some(b),
            }
        }
    }
    let iso = consistent
        && search_homs(&opened.semiring, &closed.semiring, &fixed, Some(1))
            .first()
            .is_some_and(|m| {
                opened.semiring.len() == closed.semiring.len() && m.iter().collect::<BTreeSet<_>>().len() == m.len()
            });
    Ok((iso, closed, opened))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonodromyFailure {
    pub path: DiagramPath,
    pub rendered: String,
    /// Sizes of the closed and opened path algebras.
    pub closed_size: usize,
    pub opened_size: usize,
}

impl fmt::Display for MonodromyFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} (closed-path algebra of size {}, opened-path algebra of size {})",
            self.rendered, self.closed_size, self.opened_size
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonodromyReport {
    pub bound: usize,
    pub checked: usize,
    pub failure: Option<MonodromyFailure>,
    /// A simple closed path longer than `bound` exists and was not checked.
    pub inconclusive: bool,
}

impl MonodromyReport {
    pub fn is_free(&self) -> bool {
        self.failure.is_none() && !self.inconclusive
    }
}

/// Checks `μ_Π` on every simple closed path up to `bound` steps, from every
/// base point, stopping at the first failure.
pub fn is_monodromy_free(p: &SPresentation, bound: usize, budget: usize) -> Result<MonodromyReport> {
    let (cycles, skipped) = closed_paths(p, bound);
    let ends = arrow_ends(p);
    let mut checked = 0;
    for path in cycles.iter().flat_map(|c| c.rotations(&ends)) {
        checked += 1;
        let (iso, closed, opened) = comparison_is_iso(p, &path, budget)?;
        if !iso {
            let failure = MonodromyFailure {
                rendered: path.render(p),
                closed_size: closed.semiring.len(),
                opened_size: opened.semiring.len(),
                path,
            };
            return Ok(MonodromyReport { bound, checked, failure: Some(failure), inconclusive: skipped });
        }
    }
    Ok(MonodromyReport { bound, checked, failure: None, inconclusive: skipped })
}
