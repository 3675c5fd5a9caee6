use serde::Serialize;

use finscheme::FiniteTopSpace;

#[derive(Debug, Serialize)]
pub struct NamedSet {
    pub name: String,
    pub points: Vec<String>,
}

/// A finite space as points, basis opens and specialization pairs.
#[derive(Debug, Serialize)]
pub struct SpaceReport {
    pub points: Vec<String>,
    pub discrete: bool,
    pub closed_points: Vec<String>,
    pub basis: Vec<NamedSet>,
    /// `[closed, generizing]` covering pairs.
    pub specialization: Vec<[String; 2]>,
}

impl SpaceReport {
    pub fn new(x: &FiniteTopSpace) -> Self {
        let names = |s: &finscheme::PointSet| s.iter().map(|&p| x.label(p).to_string()).collect();
        let basis = x
            .basis()
            .unwrap_or_default()
            .iter()
            .map(|(n, s)| NamedSet { name: n.clone(), points: names(s) })
            .collect();
        SpaceReport {
            points: x.labels().to_vec(),
            discrete: x.is_discrete(),
            closed_points: x.closed_points().iter().map(|&p| x.label(p).to_string()).collect(),
            basis,
            specialization: x
                .specialization_edges()
                .into_iter()
                .map(|(y, z)| [x.label(y).to_string(), x.label(z).to_string()])
                .collect(),
        }
    }

    pub fn summary(&self) -> String {
        let n = self.points.len();
        let noun = if n == 1 { "point" } else { "points" };
        if self.discrete && n > 1 {
            format!("{n} {noun}, discrete")
        } else {
            format!("{n} {noun}")
        }
    }

    pub fn write_text(&self, out: &mut String) {
        out.push_str(&self.summary());
        out.push('\n');
        out.push_str("points:\n");
        for p in &self.points {
            out.push_str(&format!("  {p}\n"));
        }
        out.push_str(&format!("closed points: {}\n", self.closed_points.join(" ")));
        if !self.basis.is_empty() {
            out.push_str("basis:\n");
            for b in &self.basis {
                out.push_str(&format!("  {} = {{{}}}\n", b.name, b.points.join(",")));
            }
        }
        if !self.specialization.is_empty() {
            out.push_str("specialization:\n");
            for [y, x] in &self.specialization {
                out.push_str(&format!("  {y} in closure of {x}\n"));
            }
        }
    }
}
