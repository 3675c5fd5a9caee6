//! The site of finite sets: principal opens are injections, coverings are
//! families of injections. Simplices, simplicial complexes and their face
//! spaces, and a set-level monodromy test.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::glue::{path_positions, simple_cycles, DiagramPath, PathMode, Step};
use crate::topology::{glue_spaces, FiniteTopSpace, PointSet};

/// Largest `#A` for which [`families_up_to_symmetry`] enumerates.
pub const MAX_FAMILY_BASE: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FinSet {
    labels: Vec<String>,
}

impl FinSet {
    pub fn new(labels: Vec<String>) -> Result<Self> {
        let distinct: BTreeSet<&String> = labels.iter().collect();
        if distinct.len() != labels.len() {
            return Err(Error::Malformed("finite set has a repeated label".into()));
        }
        Ok(FinSet { labels })
    }

    /// `{a, b, c, …}` with `n` elements.
    pub fn of_size(n: usize) -> Self {
        let labels = (0..n)
            .map(|i| if n <= 26 { ((b'a' + i as u8) as char).to_string() } else { format!("v{i}") })
            .collect();
        FinSet { labels }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels.iter().position(|l| l == label).ok_or_else(|| Error::UnknownElement(label.to_string()))
    }

    pub fn subset(&self, members: &BTreeSet<usize>) -> FinSet {
        FinSet { labels: members.iter().map(|&i| self.labels[i].clone()).collect() }
    }

    pub fn format_subset(&self, s: &BTreeSet<usize>) -> String {
        let ls: Vec<&str> = s.iter().map(|&i| self.label(i)).collect();
        format!("{{{}}}", ls.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Injection {
    source: FinSet,
    target: FinSet,
    map: Vec<usize>,
}

impl Injection {
    pub fn new(source: FinSet, target: FinSet, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.len() {
            return Err(Error::Malformed(format!("map has {} entries for {} elements", map.len(), source.len())));
        }
        if let Some(&bad) = map.iter().find(|&&y| y >= target.len()) {
            return Err(Error::ElementOutOfRange { index: bad, size: target.len() });
        }
        if map.iter().collect::<BTreeSet<_>>().len() != map.len() {
            return Err(Error::Malformed("map is not injective".into()));
        }
        Ok(Injection { source, target, map })
    }

    /// The inclusion of a subset, elements in increasing order.
    pub fn inclusion(target: &FinSet, members: &BTreeSet<usize>) -> Self {
        Injection { source: target.subset(members), target: target.clone(), map: members.iter().copied().collect() }
    }

    pub fn identity(a: &FinSet) -> Self {
        Injection::inclusion(a, &(0..a.len()).collect())
    }

    pub fn source(&self) -> &FinSet {
        &self.source
    }

    pub fn target(&self) -> &FinSet {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn image(&self) -> BTreeSet<usize> {
        self.map.iter().copied().collect()
    }

    pub fn is_bijective(&self) -> bool {
        self.source.len() == self.target.len()
    }
}

/// A family of injections into a common target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InjectionFamily {
    target: FinSet,
    members: Vec<Injection>,
}

impl InjectionFamily {
    pub fn new(target: FinSet, members: Vec<Injection>) -> Result<Self> {
        if members.iter().any(|m| m.target != target) {
            return Err(Error::InvalidDiagram("family members have different targets".into()));
        }
        Ok(InjectionFamily { target, members })
    }

    /// Inclusions of the given subsets.
    pub fn of_subsets(target: &FinSet, subsets: &[BTreeSet<usize>]) -> Self {
        InjectionFamily {
            target: target.clone(),
            members: subsets.iter().map(|s| Injection::inclusion(target, s)).collect(),
        }
    }

    pub fn target(&self) -> &FinSet {
        &self.target
    }

    pub fn members(&self) -> &[Injection] {
        &self.members
    }

    pub fn format(&self) -> String {
        let parts: Vec<String> = self.members.iter().map(|m| self.target.format_subset(&m.image())).collect();
        format!("[{}] -> {}", parts.join(" "), self.target.format_subset(&(0..self.target.len()).collect()))
    }
}

pub fn is_jointly_surjective(f: &InjectionFamily) -> bool {
    let hit: BTreeSet<usize> = f.members.iter().flat_map(|m| m.map.iter().copied()).collect();
    hit.len() == f.target.len()
}

pub fn contains_bijection(f: &InjectionFamily) -> bool {
    f.members.iter().any(Injection::is_bijective)
}

/// All maps `{0..n} → {0..m}` as vectors, in lexicographic order.
fn all_maps(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if n > 0 && m == 0 {
        return out;
    }
    let mut cur = vec![0; n];
    loop {
        out.push(cur.clone());
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] < m {
                break;
            }
            cur[i] = 0;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SetSheafWitness {
    /// Two maps `A → Y` restricting to the same family.
    NotInjective { first: Vec<usize>, second: Vec<usize> },
    /// A compatible family of maps `B_i → Y` that does not glue.
    NotSurjective { family: Vec<Vec<usize>> },
}

/// `Ψ: Hom(A, Y) → Eq(∏ Hom(B_i, Y) ⇉ ∏ Hom(B_i ×_A B_j, Y))` for the
/// representable presheaf of a finite set `Y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetSheafCheck {
    pub maps: usize,
    pub families: usize,
    pub witness: Option<SetSheafWitness>,
}

impl SetSheafCheck {
    pub fn is_bijection(&self) -> bool {
        self.witness.is_none()
    }
}

/// Compatible families, found member by member: values already fixed by a
/// pullback with an earlier member are forced, the rest range over `Y`.
fn compatible_families(f: &InjectionFamily, y: usize) -> Vec<Vec<Vec<usize>>> {
    fn go(f: &InjectionFamily, y: usize, i: usize, acc: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == f.members.len() {
            out.push(acc.clone());
            return;
        }
        let m = &f.members[i];
        let mut forced: Vec<Option<usize>> = vec![None; m.source.len()];
        for (b, &ab) in m.map.iter().enumerate() {
            // B_i ×_A B_j = {(b, b′) : ι_i(b) = ι_j(b′)}
            for (j, earlier) in f.members[..i].iter().enumerate() {
                for (b2, &ab2) in earlier.map.iter().enumerate() {
                    if ab == ab2 {
                        let v = acc[j][b2];
                        match forced[b] {
                            Some(w) if w != v => return,
                            _ => forced[b] = Some(v),
                        }
                    }
                }
            }
        }
        let free: Vec<usize> = (0..forced.len()).filter(|&b| forced[b].is_none()).collect();
        for choice in all_maps(free.len(), y) {
            let mut s: Vec<usize> = forced.iter().map(|v| v.unwrap_or(0)).collect();
            for (&b, &v) in free.iter().zip(&choice) {
                s[b] = v;
            }
            acc.push(s);
            go(f, y, i + 1, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(f, y, 0, &mut Vec::new(), &mut out);
    out
}

/// Checks the sheaf axiom for `Hom(-, Y)` with `#Y = y`, using all maps of
/// sets as morphisms.
pub fn set_sheaf_check(f: &InjectionFamily, y: usize) -> SetSheafCheck {
    let maps = all_maps(f.target.len(), y);
    let mut image: BTreeMap<Vec<Vec<usize>>, Vec<usize>> = BTreeMap::new();
    let mut witness = None;
    for g in &maps {
        let family: Vec<Vec<usize>> = f.members.iter().map(|m| m.map.iter().map(|&a| g[a]).collect()).collect();
        if let Some(first) = image.insert(family, g.clone()) {
            witness.get_or_insert(SetSheafWitness::NotInjective { first, second: g.clone() });
        }
    }
    let families = compatible_families(f, y);
    if witness.is_none() {
        if let Some(family) = families.iter().find(|s| !image.contains_key(*s)) {
            witness = Some(SetSheafWitness::NotSurjective { family: family.clone() });
        }
    }
    SetSheafCheck { maps: maps.len(), families: families.len(), witness }
}

/// The sheaf axiom for `Hom(-, Y)` over every `Y` with `#Y ≤ max_y`.
pub fn bounded_subcanonical(f: &InjectionFamily, max_y: usize) -> bool {
    (0..=max_y).all(|y| set_sheaf_check(f, y).is_bijection())
}

/// One family of subset inclusions into `{0..n}` per orbit of the symmetric
/// group acting on sets of subsets; `n ≤ MAX_FAMILY_BASE`.
pub fn families_up_to_symmetry(n: usize) -> Result<Vec<InjectionFamily>> {
    if n > MAX_FAMILY_BASE {
        return Err(Error::Malformed(format!("family enumeration supports #A ≤ {MAX_FAMILY_BASE}, got {n}")));
    }
    let subsets = 1usize << n;
    let perms = permutations(n);
    // action of each permutation on subset bitmasks
    let moved: Vec<Vec<usize>> = perms
        .iter()
        .map(|p| {
            (0..subsets)
                .map(|s| (0..n).filter(|&i| s >> i & 1 == 1).fold(0, |acc, i| acc | 1 << p[i]))
                .collect()
        })
        .collect();
    let a = FinSet::of_size(n);
    let mut out = Vec::new();
    for fam in 0u64..1 << subsets {
        let canonical = moved.iter().all(|mv| {
            let image = (0..subsets).filter(|&s| fam >> s & 1 == 1).fold(0u64, |acc, s| acc | 1 << mv[s]);
            image >= fam
        });
        if canonical {
            let members: Vec<BTreeSet<usize>> = (0..subsets)
                .filter(|&s| fam >> s & 1 == 1)
                .map(|s| (0..n).filter(|&i| s >> i & 1 == 1).collect())
                .collect();
            out.push(InjectionFamily::of_subsets(&a, &members));
        }
    }
    Ok(out)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// The vertex inclusions `{a} ↪ A`: jointly surjective, with no bijection
/// once `#A ≥ 2`.
pub fn vertex_cover(a: &FinSet) -> InjectionFamily {
    let singletons: Vec<BTreeSet<usize>> = (0..a.len()).map(|i| BTreeSet::from([i])).collect();
    InjectionFamily::of_subsets(a, &singletons)
}

/// Nonempty subsets of `{0..n}`, by size and then lexicographically.
pub fn nonempty_faces(n: usize) -> Vec<BTreeSet<usize>> {
    let mut faces: Vec<BTreeSet<usize>> =
        (1usize..1 << n).map(|s| (0..n).filter(|&i| s >> i & 1 == 1).collect()).collect();
    faces.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
    faces
}

/// A space on the given faces whose opens are the sets closed under
/// passing to nonempty subfaces.
fn face_space(vertices: &FinSet, faces: &[BTreeSet<usize>]) -> FiniteTopSpace {
    let labels = faces.iter().map(|f| vertices.format_subset(f)).collect();
    let minimal: Vec<PointSet> =
        faces.iter().map(|f| (0..faces.len()).filter(|&j| faces[j].is_subset(f)).collect()).collect();
    FiniteTopSpace::generated_by(labels, &minimal)
}

/// The underlying space of the simplex on `A`: one point per nonempty face,
/// vertices open, the top face the only closed point.
pub fn simplex_space(a: &FinSet) -> Result<FiniteTopSpace> {
    if a.is_empty() {
        return Err(Error::Empty("the simplex on the empty set has no points".into()));
    }
    let x = face_space(a, &nonempty_faces(a.len()));
    debug_assert_eq!(x.closed_points(), vec![x.len() - 1]);
    Ok(x)
}

/// A finite abstract simplicial complex on labelled vertices. Faces are
/// nonempty and closed under nonempty subsets; every vertex is a face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbstractSimplicialComplex {
    vertices: FinSet,
    faces: Vec<BTreeSet<usize>>,
}

impl AbstractSimplicialComplex {
    /// Closes `generators` under nonempty subsets and adds every vertex.
    pub fn new(vertices: FinSet, generators: &[BTreeSet<usize>]) -> Result<Self> {
        let mut faces: BTreeSet<BTreeSet<usize>> = (0..vertices.len()).map(|v| BTreeSet::from([v])).collect();
        for g in generators {
            if let Some(&bad) = g.iter().find(|&&v| v >= vertices.len()) {
                return Err(Error::ElementOutOfRange { index: bad, size: vertices.len() });
            }
            let g: Vec<usize> = g.iter().copied().collect();
            for s in nonempty_faces(g.len()) {
                faces.insert(s.iter().map(|&i| g[i]).collect());
            }
        }
        let mut faces: Vec<BTreeSet<usize>> = faces.into_iter().collect();
        faces.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
        Ok(AbstractSimplicialComplex { vertices, faces })
    }

    pub fn simplex(n: usize) -> Self {
        let a = FinSet::of_size(n);
        let faces = nonempty_faces(n);
        AbstractSimplicialComplex { vertices: a, faces }
    }

    pub fn vertices(&self) -> &FinSet {
        &self.vertices
    }

    pub fn faces(&self) -> &[BTreeSet<usize>] {
        &self.faces
    }

    pub fn face_label(&self, i: usize) -> String {
        self.vertices.format_subset(&self.faces[i])
    }

    /// Faces with no proper coface.
    pub fn facets(&self) -> Vec<usize> {
        (0..self.faces.len())
            .filter(|&i| !self.faces.iter().any(|g| g.len() > self.faces[i].len() && self.faces[i].is_subset(g)))
            .collect()
    }

    /// The face poset as a space: opens are the sets of faces closed under
    /// nonempty subfaces.
    pub fn face_poset_space(&self) -> FiniteTopSpace {
        face_space(&self.vertices, &self.faces)
    }
}

/// Parses `vertices: a b c` followed by `face: a b` lines.
pub fn parse_asc(text: &str) -> Result<AbstractSimplicialComplex> {
    let mut vertices: Option<FinSet> = None;
    let mut faces = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| Error::Parse { line: i + 1, message };
        let (key, rest) = line.split_once(':').ok_or_else(|| err(format!("expected `key: values`, got `{line}`")))?;
        let toks: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
        match key.trim() {
            "vertices" if vertices.is_none() => {
                vertices = Some(FinSet::new(toks).map_err(|e| err(e.to_string()))?);
            }
            "face" => {
                let v = vertices.as_ref().ok_or_else(|| err("`face` before `vertices`".into()))?;
                if toks.is_empty() {
                    return Err(err("empty face".into()));
                }
                let face = toks.iter().map(|t| v.index_of(t)).collect::<Result<BTreeSet<_>>>().map_err(|e| err(e.to_string()))?;
                faces.push(face);
            }
            other => return Err(err(format!("unexpected key `{other}`"))),
        }
    }
    let vertices = vertices.ok_or_else(|| Error::Parse { line: 1, message: "missing `vertices:` line".into() })?;
    AbstractSimplicialComplex::new(vertices, &faces)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetArrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
    pub map: Injection,
}

/// A finite diagram of finite sets and injections, arrows pointing the way
/// of the open immersions.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SetPresentation {
    nodes: Vec<(String, FinSet)>,
    arrows: Vec<SetArrow>,
}

impl SetPresentation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_node(&mut self, name: &str, a: FinSet) -> Result<usize> {
        if self.nodes.iter().any(|(n, _)| n == name) {
            return Err(Error::InvalidDiagram(format!("duplicate node `{name}`")));
        }
        self.nodes.push((name.to_string(), a));
        Ok(self.nodes.len() - 1)
    }

    pub fn add_arrow(&mut self, name: &str, source: usize, target: usize, map: Injection) -> Result<usize> {
        match (self.nodes.get(source), self.nodes.get(target)) {
            (Some((_, s)), Some((_, t))) if *s == map.source && *t == map.target => {}
            _ => return Err(Error::InvalidDiagram(format!("arrow `{name}` does not match its endpoints"))),
        }
        self.arrows.push(SetArrow { name: name.to_string(), source, target, map });
        Ok(self.arrows.len() - 1)
    }

    pub fn nodes(&self) -> &[(String, FinSet)] {
        &self.nodes
    }

    pub fn node(&self, i: usize) -> &FinSet {
        &self.nodes[i].1
    }

    pub fn node_name(&self, i: usize) -> &str {
        &self.nodes[i].0
    }

    pub fn arrows(&self) -> &[SetArrow] {
        &self.arrows
    }

    fn ends(&self) -> Vec<(usize, usize)> {
        self.arrows.iter().map(|a| (a.source, a.target)).collect()
    }

    /// e.g. `V <-alpha- U -beta-> V`
    pub fn render(&self, path: &DiagramPath) -> String {
        let nodes = path.nodes_along(&self.ends());
        let mut out = self.node_name(nodes[0]).to_string();
        for (s, &n) in path.steps.iter().zip(&nodes[1..]) {
            let name = &self.arrows[s.arrow].name;
            if s.forward {
                out.push_str(&format!(" -{name}-> "));
            } else {
                out.push_str(&format!(" <-{name}- "));
            }
            out.push_str(self.node_name(n));
        }
        out
    }
}

/// One node per face of `K` and one arrow per proper face inclusion.
pub fn asc_presentation(k: &AbstractSimplicialComplex) -> SetPresentation {
    let mut p = SetPresentation::new();
    for i in 0..k.faces.len() {
        p.add_node(&k.face_label(i), k.vertices.subset(&k.faces[i])).expect("faces are distinct");
    }
    for (i, small) in k.faces.iter().enumerate() {
        for (j, big) in k.faces.iter().enumerate() {
            if small.len() < big.len() && small.is_subset(big) {
                let big_list: Vec<usize> = big.iter().copied().collect();
                let map = small.iter().map(|v| big_list.iter().position(|w| w == v).expect("subface")).collect();
                let inj = Injection::new(p.node(i).clone(), p.node(j).clone(), map).expect("inclusion");
                p.add_arrow(&format!("{}<{}", k.face_label(i), k.face_label(j)), i, j, inj).expect("endpoints match");
            }
        }
    }
    p
}

/// Glues the simplex spaces of the nodes along the arrows. Points are
/// labelled by their image in the last vertex set they reach, so an
/// [`asc_presentation`] gives back face labels.
pub fn glue_simplices(p: &SetPresentation) -> Result<FiniteTopSpace> {
    let faces: Vec<Vec<BTreeSet<usize>>> = p.nodes.iter().map(|(_, a)| nonempty_faces(a.len())).collect();
    let spaces = p.nodes.iter().map(|(_, a)| simplex_space(a)).collect::<Result<Vec<_>>>()?;
    let mut identify = Vec::new();
    for a in &p.arrows {
        for (x, f) in faces[a.source].iter().enumerate() {
            let image: BTreeSet<usize> = f.iter().map(|&v| a.map.apply(v)).collect();
            let y = faces[a.target].iter().position(|g| *g == image).expect("image of a face is a face");
            identify.push(((a.source, x), (a.target, y)));
        }
    }
    let g = glue_spaces(&spaces, &identify, |i, x| spaces[i].label(x).to_string());
    Ok(g.space)
}

/// Elements of the limit of a path diagram: one element per diagram node,
/// compatible with every arrow.
pub fn set_path_limit(p: &SetPresentation, path: &DiagramPath, mode: PathMode) -> Vec<Vec<usize>> {
    let walk = path.nodes_along(&p.ends());
    let pos = path_positions(&walk, mode);
    let count = pos.iter().max().map_or(0, |m| m + 1);
    let mut sizes = vec![0; count];
    for (i, &q) in pos.iter().enumerate() {
        sizes[q] = p.node(walk[i]).len();
    }
    let edges: Vec<(usize, usize, &Injection)> = path
        .steps
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let a = &p.arrows[s.arrow];
            let (from, to) = if s.forward { (i, i + 1) } else { (i + 1, i) };
            (pos[from], pos[to], &a.map)
        })
        .collect();
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(sizes: &[usize], edges: &[(usize, usize, &Injection)], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let k = cur.len();
        if k == sizes.len() {
            out.push(cur.clone());
            return;
        }
        for e in 0..sizes[k] {
            cur.push(e);
            let ok = edges.iter().all(|&(s, t, m)| s.max(t) > k || m.apply(cur[s]) == cur[t]);
            if ok {
                go(sizes, edges, cur, out);
            }
            cur.pop();
        }
    }
    go(&sizes, &edges, &mut cur, &mut out);
    out
}

/// `μ_Π` for a set-level closed path: restriction from the closed limit to
/// the opened one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetPathComparison {
    pub path: DiagramPath,
    pub rendered: String,
    pub closed: Vec<Vec<usize>>,
    pub opened: Vec<Vec<usize>>,
}

impl SetPathComparison {
    /// The restriction is always injective, so it is an isomorphism exactly
    /// when the two limits have the same size.
    pub fn is_iso(&self) -> bool {
        self.closed.len() == self.opened.len()
    }
}

impl fmt::Display for SetPathComparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} (closed-path limit of size {}, opened-path limit of size {})",
            self.rendered,
            self.closed.len(),
            self.opened.len()
        )
    }
}

pub fn compare_set_path(p: &SetPresentation, path: &DiagramPath) -> SetPathComparison {
    SetPathComparison {
        path: path.clone(),
        rendered: p.render(path),
        closed: set_path_limit(p, path, PathMode::Closed),
        opened: set_path_limit(p, path, PathMode::Opened),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetMonodromyReport {
    pub bound: usize,
    pub checked: usize,
    pub failure: Option<SetPathComparison>,
    pub inconclusive: bool,
}

impl SetMonodromyReport {
    pub fn is_free(&self) -> bool {
        self.failure.is_none() && !self.inconclusive
    }
}

pub fn set_monodromy_check(p: &SetPresentation, bound: usize) -> SetMonodromyReport {
    let ends = p.ends();
    let (cycles, inconclusive) = simple_cycles(p.nodes.len(), &ends, bound);
    let mut checked = 0;
    for path in cycles.iter().flat_map(|c| c.rotations(&ends)) {
        checked += 1;
        let c = compare_set_path(p, &path);
        if !c.is_iso() {
            return SetMonodromyReport { bound, checked, failure: Some(c), inconclusive };
        }
    }
    SetMonodromyReport { bound, checked, failure: None, inconclusive }
}

/// `U = {x}` mapped into `V = {x, y}` by `α(x) = x` and `β(x) = y`.
pub fn wedge_presentation() -> SetPresentation {
    let u = FinSet::new(vec!["x".into()]).expect("distinct");
    let v = FinSet::new(vec!["x".into(), "y".into()]).expect("distinct");
    let mut p = SetPresentation::new();
    let ui = p.add_node("U", u.clone()).expect("fresh");
    let vi = p.add_node("V", v.clone()).expect("fresh");
    p.add_arrow("alpha", ui, vi, Injection::new(u.clone(), v.clone(), vec![0]).expect("injective")).expect("ok");
    p.add_arrow("beta", ui, vi, Injection::new(u, v, vec![1]).expect("injective")).expect("ok");
    p
}

/// The closed path `V ← U → V` of [`wedge_presentation`] with its two limits.
pub fn monodromy_wedge_counterexample() -> SetPathComparison {
    let p = wedge_presentation();
    let path = DiagramPath {
        start: 1,
        steps: vec![Step { arrow: 0, forward: false }, Step { arrow: 1, forward: true }],
    };
    compare_set_path(&p, &path)
}

/// Whether `x` has one point per face of `k`, matched by label, with
/// specialization equal to inclusion of faces.
pub fn face_order_matches(k: &AbstractSimplicialComplex, x: &FiniteTopSpace) -> bool {
    let index: BTreeMap<String, usize> = (0..k.faces.len()).map(|i| (k.face_label(i), i)).collect();
    if x.len() != k.faces.len() {
        return false;
    }
    let seen: HashSet<usize> = x.labels().iter().filter_map(|l| index.get(l).copied()).collect();
    if seen.len() != k.faces.len() {
        return false;
    }
    x.points().all(|p| {
        x.points().all(|q| {
            let (fp, fq) = (&k.faces[index[x.label(p)]], &k.faces[index[x.label(q)]]);
            x.specializes_to(p, q) == fp.is_subset(fq)
        })
    })
}
