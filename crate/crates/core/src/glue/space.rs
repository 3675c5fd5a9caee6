use std::collections::BTreeSet;

use super::{is_monodromy_free, SPresentation};
use crate::error::{Error, PathWitness, Result};
use crate::spectra::{visualization_chain, visualization_map, visualize, Visualization};
use crate::topology::{glue_spaces, ContinuousMap, FiniteTopSpace};

/// The colimit of a visualization applied nodewise to a presentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GluedSpace {
    pub visualization: Visualization,
    pub space: FiniteTopSpace,
    /// Per node, the map from its space into the glued space.
    pub charts: Vec<ContinuousMap>,
    /// Per glued point, the `(node, point)` it was first seen as.
    pub provenance: Vec<(usize, usize)>,
}

impl GluedSpace {
    /// Point table rows: glued label, then every chart point it comes from.
    pub fn point_table(&self, p: &SPresentation) -> Vec<(String, Vec<String>)> {
        self.space
            .points()
            .map(|q| {
                let sources = self
                    .charts
                    .iter()
                    .enumerate()
                    .flat_map(|(i, c)| {
                        c.source()
                            .points()
                            .filter(move |&x| c.apply(x) == q)
                            .map(move |x| format!("{}:{}", p.node_name(i), c.source().label(x)))
                    })
                    .collect();
                (self.space.label(q).to_string(), sources)
            })
            .collect()
    }
}

fn check_free(p: &SPresentation, bound: usize, budget: usize) -> Result<()> {
    let rep = is_monodromy_free(p, bound, budget)?;
    if let Some(f) = rep.failure {
        return Err(Error::Monodromy(PathWitness(f.to_string())));
    }
    if rep.inconclusive {
        return Err(Error::Inconclusive { bound });
    }
    Ok(())
}

/// Glues the chosen visualization of each node along the arrows, after
/// checking that the presentation is monodromy free.
pub fn glue_space(p: &SPresentation, vis: Visualization, bound: usize, budget: usize) -> Result<GluedSpace> {
    check_free(p, bound, budget)?;
    Ok(glue_unchecked(p, vis))
}

fn glue_unchecked(p: &SPresentation, vis: Visualization) -> GluedSpace {
    let spaces: Vec<FiniteTopSpace> = p.nodes().iter().map(|(_, r)| visualize(r, vis).0).collect();
    let mut identify = Vec::new();
    for a in p.arrows() {
        // the arrow R_s → R_t induces X(R_t) → X(R_s)
        let m = visualization_map(&a.hom, vis);
        identify.extend(m.source().points().map(|q| ((a.target, q), (a.source, m.apply(q)))));
    }
    let g = glue_spaces(&spaces, &identify, |i, x| format!("{}:{}", p.node_name(i), spaces[i].label(x)));
    GluedSpace { visualization: vis, space: g.space, charts: g.charts, provenance: g.provenance }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GluedChainArrow {
    pub source: Visualization,
    pub target: Visualization,
    /// `None` when the nodewise maps do not descend to the glued spaces.
    pub map: Option<ContinuousMap>,
    pub injective_expected: bool,
}

impl GluedChainArrow {
    pub fn name(&self) -> String {
        format!("{} -> {}", self.source, self.target)
    }
}

/// The visualization chain glued over a presentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GluedChain {
    pub spaces: Vec<GluedSpace>,
    pub arrows: Vec<GluedChainArrow>,
    /// For every arrow of the presentation and of the chain, the square
    /// relating the induced map and the chain maps commutes.
    pub naturality: bool,
}

impl GluedChain {
    pub fn descends(&self) -> bool {
        self.arrows.iter().all(|a| a.map.is_some())
    }

    pub fn hooks_injective(&self) -> bool {
        self.arrows.iter().filter(|a| a.injective_expected).all(|a| a.map.as_ref().is_some_and(|m| m.is_injective()))
    }

    pub fn kernel_surjective(&self) -> bool {
        self.arrows.iter().filter(|a| a.source == Visualization::Weak).all(|a| a.map.as_ref().is_some_and(|m| m.is_surjective()))
    }
}

const CHAIN: [Visualization; 5] =
    [Visualization::Twisted, Visualization::Strong, Visualization::Weak, Visualization::K, Visualization::Prime];

pub fn glued_chain(p: &SPresentation, bound: usize, budget: usize) -> Result<GluedChain> {
    check_free(p, bound, budget)?;
    let spaces: Vec<GluedSpace> = CHAIN.iter().map(|&v| glue_unchecked(p, v)).collect();
    let chains: Vec<_> = p.nodes().iter().map(|(_, r)| visualization_chain(r)).collect();
    let mut arrows = Vec::new();
    for k in 0..4 {
        let (from, to) = (&spaces[k], &spaces[k + 1]);
        let mut map = vec![usize::MAX; from.space.len()];
        let mut descends = true;
        for (i, chain) in chains.iter().enumerate() {
            let m = &chain.arrows[k].map;
            for x in m.source().points() {
                let (q, y) = (from.charts[i].apply(x), to.charts[i].apply(m.apply(x)));
                if map[q] == usize::MAX {
                    map[q] = y;
                } else if map[q] != y {
                    descends = false;
                }
            }
        }
        let map = if descends { ContinuousMap::new(from.space.clone(), to.space.clone(), map).ok() } else { None };
        arrows.push(GluedChainArrow { source: CHAIN[k], target: CHAIN[k + 1], map, injective_expected: k != 2 });
    }
    let mut naturality = true;
    for a in p.arrows() {
        for k in 0..4 {
            let f_src = visualization_map(&a.hom, CHAIN[k]);
            let f_tgt = visualization_map(&a.hom, CHAIN[k + 1]);
            let (c_s, c_t) = (&chains[a.source].arrows[k].map, &chains[a.target].arrows[k].map);
            for x in f_src.source().points() {
                naturality &= c_s.apply(f_src.apply(x)) == f_tgt.apply(c_t.apply(x));
            }
        }
    }
    Ok(GluedChain { spaces, arrows, naturality })
}

/// Points of the glued space hit by more than one node, for reports.
pub fn shared_points(g: &GluedSpace) -> BTreeSet<usize> {
    g.space
        .points()
        .filter(|&q| g.charts.iter().filter(|c| c.map().contains(&q)).count() > 1)
        .collect()
}
