//! Presentations of semiring schemes by diagrams of principal opens, the
//! closed-path monodromy test, atlases, and gluing of underlying spaces.
//!
//! A presentation is stored on the algebra side: an arrow `R → R′` is a
//! finite localization, standing for the open immersion `Spec R′ → Spec R`.

mod paths;
mod space;

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::semiring::{find_isomorphism, is_finite_localization, localize, FiniteSemiring, SemiringHom};
use crate::site::CoverFamily;

pub use paths::{
    closed_paths, comparison_is_iso, is_monodromy_free, path_limit, path_positions, simple_cycles, DiagramPath,
    MonodromyFailure, MonodromyReport, PathMode, Step, DEFAULT_PATH_BOUND,
};
pub use space::{glue_space, glued_chain, shared_points, GluedChain, GluedChainArrow, GluedSpace};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresentationArrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
    pub hom: SemiringHom,
    /// An element `h` of the source with `hom` isomorphic to `λ_h`.
    pub localized_at: usize,
}

/// A finite diagram of finite semirings whose arrows are finite localizations.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SPresentation {
    nodes: Vec<(String, FiniteSemiring)>,
    arrows: Vec<PresentationArrow>,
}

impl SPresentation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_node(&mut self, name: &str, r: FiniteSemiring) -> Result<usize> {
        if self.nodes.iter().any(|(n, _)| n == name) {
            return Err(Error::InvalidDiagram(format!("duplicate node `{name}`")));
        }
        self.nodes.push((name.to_string(), r));
        Ok(self.nodes.len() - 1)
    }

    /// Adds `hom`, which must be a finite localization between the given nodes.
    pub fn add_arrow(&mut self, source: usize, target: usize, hom: SemiringHom) -> Result<usize> {
        let (Some((sn, s)), Some((tn, t))) = (self.nodes.get(source), self.nodes.get(target)) else {
            return Err(Error::InvalidDiagram(format!("arrow {source} -> {target} references a missing node")));
        };
        if hom.source() != s || hom.target() != t {
            return Err(Error::InvalidDiagram(format!("arrow {sn} -> {tn} does not match its endpoints")));
        }
        let Some(h) = is_finite_localization(&hom)? else {
            return Err(Error::InvalidDiagram(format!("arrow {sn} -> {tn} is not a finite localization")));
        };
        let name = format!("a{}", self.arrows.len());
        self.arrows.push(PresentationArrow { name, source, target, hom, localized_at: h });
        Ok(self.arrows.len() - 1)
    }

    /// Adds `λ_h` followed by the first isomorphism `R[h⁻¹] → target`.
    pub fn add_localization(&mut self, source: usize, target: usize, h: usize) -> Result<usize> {
        let (Some((sn, s)), Some((tn, t))) = (self.nodes.get(source), self.nodes.get(target)) else {
            return Err(Error::InvalidDiagram(format!("arrow {source} -> {target} references a missing node")));
        };
        let loc = localize(s, h)?;
        let Some(iso) = find_isomorphism(&loc.semiring, t) else {
            return Err(Error::InvalidDiagram(format!(
                "{tn} is not isomorphic to the localization of {sn} at {}",
                s.label(h)
            )));
        };
        let hom = loc.map.then(&iso)?;
        self.add_arrow(source, target, hom)
    }

    pub fn nodes(&self) -> &[(String, FiniteSemiring)] {
        &self.nodes
    }

    pub fn node(&self, i: usize) -> &FiniteSemiring {
        &self.nodes[i].1
    }

    pub fn node_name(&self, i: usize) -> &str {
        &self.nodes[i].0
    }

    pub fn arrows(&self) -> &[PresentationArrow] {
        &self.arrows
    }
}

/// The atlas of a family: one node per member, one per pairwise overlap
/// `U_i ∩ U_j` (`i < j`, realized as the localization at `h_i h_j`), and
/// the two restriction arrows into each overlap.
pub fn atlas(s: &CoverFamily) -> Result<SPresentation> {
    let r = s.base();
    let hs = s.elements();
    let mut p = SPresentation::new();
    let mut charts = Vec::new();
    for (i, m) in s.members().iter().enumerate() {
        charts.push(p.add_node(&format!("U{i}_{}", r.label(hs[i])), m.ring().clone())?);
    }
    for i in 0..hs.len() {
        for j in i + 1..hs.len() {
            let overlap = localize(r, r.mul(hs[i], hs[j]))?;
            let o = p.add_node(&format!("U{i}{j}"), overlap.semiring.clone())?;
            for k in [i, j] {
                let res = overlap.map.factor_through(s.members()[k].map()).expect("overlap inverts h_k");
                p.add_arrow(charts[k], o, res)?;
            }
        }
    }
    Ok(p)
}

/// Parses the presentation format:
///
/// ```text
/// node <name> <semiring-file>
/// arrow <src> <dst> localize-at <element>
/// arrow <src> <dst> map <label> <label> ...
/// ```
///
/// `load` resolves semiring file names.
pub fn parse_presentation(text: &str, mut load: impl FnMut(&str) -> Result<FiniteSemiring>) -> Result<SPresentation> {
    let mut p = SPresentation::new();
    let mut names: BTreeMap<String, usize> = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let at = |e: Error| match e {
            Error::Parse { .. } | Error::Io { .. } => e,
            other => Error::Parse { line: i + 1, message: other.to_string() },
        };
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks.as_slice() {
            ["node", name, file] => {
                let r = load(file)?;
                names.insert(name.to_string(), p.add_node(name, r).map_err(at)?);
            }
            ["arrow", src, dst, kind, rest @ ..] => {
                let node = |n: &str| {
                    names.get(n).copied().ok_or_else(|| Error::Parse { line: i + 1, message: format!("unknown node `{n}`") })
                };
                let (s, t) = (node(src)?, node(dst)?);
                match (*kind, rest) {
                    ("localize-at", [h]) => {
                        let h = p.node(s).index_of(h).map_err(at)?;
                        p.add_localization(s, t, h).map_err(at)?;
                    }
                    ("map", labels) => {
                        let map = labels.iter().map(|l| p.node(t).index_of(l)).collect::<Result<Vec<_>>>().map_err(at)?;
                        let hom = SemiringHom::new(p.node(s).clone(), p.node(t).clone(), map).map_err(at)?;
                        p.add_arrow(s, t, hom).map_err(at)?;
                    }
                    _ => {
                        return Err(Error::Parse {
                            line: i + 1,
                            message: "expected `localize-at <element>` or `map <labels>`".into(),
                        })
                    }
                }
            }
            _ => return Err(Error::Parse { line: i + 1, message: format!("unexpected line `{line}`") }),
        }
    }
    if p.nodes.is_empty() {
        return Err(Error::Empty("presentation has no nodes".into()));
    }
    Ok(p)
}

/// Two copies of `Spec Z/6` glued along `U_2`.
pub fn doubled_point() -> SPresentation {
    let z6 = crate::catalog::zmod(6);
    let z3 = localize(&z6, 2).expect("2 is an element").semiring;
    let mut p = SPresentation::new();
    let a = p.add_node("A", z6.clone()).expect("fresh name");
    let b = p.add_node("B", z6).expect("fresh name");
    let c = p.add_node("C", z3).expect("fresh name");
    p.add_localization(a, c, 2).expect("localization");
    p.add_localization(b, c, 2).expect("localization");
    p
}

/// `Spec B` mapped twice into `Spec(B×B)`, once onto each point.
pub fn wedge() -> SPresentation {
    let b = crate::catalog::boolean();
    let bb = b.product(&b);
    let mut p = SPresentation::new();
    let v = p.add_node("V", bb.clone()).expect("fresh name");
    let u = p.add_node("U", b).expect("fresh name");
    for label in ["(1,0)", "(0,1)"] {
        p.add_localization(v, u, bb.index_of(label).expect("label exists")).expect("localization");
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn atlas_examples() {
        let b = catalog::boolean();
        let bb = b.product(&b);
        let s = CoverFamily::from_labels(&bb, &["(1,0)", "(0,1)"]).unwrap();
        let a = atlas(&s).unwrap();
        assert_eq!(a.nodes().len(), 3);
        assert_eq!(a.arrows().len(), 2);
        assert!(a.node(2).is_trivial());

        let id = CoverFamily::new(&bb, &[bb.one()]).unwrap();
        let a = atlas(&id).unwrap();
        assert_eq!((a.nodes().len(), a.arrows().len()), (1, 0));

        let z6 = catalog::zmod(6);
        let a = atlas(&CoverFamily::new(&z6, &[2, 3]).unwrap()).unwrap();
        let sizes: Vec<usize> = a.nodes().iter().map(|(_, r)| r.len()).collect();
        assert_eq!(sizes, vec![3, 2, 1]);
    }

    #[test]
    fn rejects_non_localizations() {
        let b = catalog::boolean();
        let bb = b.product(&b);
        let mut p = SPresentation::new();
        let x = p.add_node("X", b.clone()).unwrap();
        let y = p.add_node("Y", bb.clone()).unwrap();
        // the diagonal B → B×B is a hom but not a localization
        let f = SemiringHom::new(b, bb.clone(), vec![bb.zero(), bb.one()]).unwrap();
        assert!(matches!(p.add_arrow(x, y, f), Err(Error::InvalidDiagram(_))));
        assert!(p.add_node("X", catalog::boolean()).is_err());
    }

    #[test]
    fn parse_format() {
        let text = "node A z6\nnode C z3\narrow A C localize-at 2\narrow A C map 0 1 2 0 1 2\n";
        let p = parse_presentation(text, |f| match f {
            "z6" => Ok(catalog::zmod(6)),
            "z3" => Ok(catalog::zmod(3)),
            _ => Err(Error::Io { path: f.into(), message: "missing".into() }),
        })
        .unwrap();
        assert_eq!(p.arrows().len(), 2);
        assert_eq!(p.arrows()[0].hom, p.arrows()[1].hom);
        let bad = parse_presentation("node A z6\narrow A B localize-at 2\n", |_| Ok(catalog::zmod(6)));
        assert!(matches!(bad, Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_presentation("", |_| Ok(catalog::boolean())), Err(Error::Empty(_))));
    }
}
