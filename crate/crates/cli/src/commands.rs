use std::path::{Path, PathBuf};

use serde::Serialize;

use finscheme::finset::{asc_presentation, glue_simplices, parse_asc, simplex_space, FinSet};
use finscheme::glue::{glue_space, parse_presentation};
use finscheme::locale::{format_hasse, is_sober, parse_hasse, prime_filters, spatiality_check, stone_dual};
use finscheme::semiring::{format_semiring, localize as localize_at, parse_semiring};
use finscheme::site::{covers, lambda_x, parse_cover_spec, sheaf_axiom_check, theorem_a_check, CoverFamily, SheafWitness};
use finscheme::spectra::{
    enumerate_congruences, is_k_ideal, kernel_ideal, prime_ideals, primality, visualize, CongruenceFlavor,
    Visualization,
};
use finscheme::verify::verify_dir;
use finscheme::{Error, FiniteSemiring, FiniteTopSpace, Result};

use crate::report::SpaceReport;
use crate::{error_code, Outcome, RunConfig, EXIT_CHECK_FAILED};

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io { path: path.display().to_string(), message: e.to_string() })
}

fn load(path: &Path) -> Result<FiniteSemiring> {
    parse_semiring(&read(path)?)
}

/// Resolves `name` against the directory of `file`.
fn beside(file: &Path, name: &str) -> PathBuf {
    file.parent().unwrap_or(Path::new(".")).join(name)
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize")
}

fn write_dot(path: Option<&Path>, x: &FiniteTopSpace, name: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, x.to_dot(name))
            .map_err(|e| Error::Io { path: p.display().to_string(), message: e.to_string() }),
        None => Ok(()),
    }
}

fn ok(text: String, structured: String) -> Outcome {
    Outcome { text, structured, code: 0 }
}

#[derive(Serialize)]
struct CheckReport {
    valid: bool,
    elements: Option<usize>,
    error: Option<String>,
}

pub fn check(file: &Path) -> Result<Outcome> {
    match load(file) {
        Ok(r) => {
            let rep = CheckReport { valid: true, elements: Some(r.len()), error: None };
            Ok(ok(format!("valid, {} elements\n", r.len()), json(&rep)))
        }
        Err(e @ Error::Axiom { .. }) => {
            let rep = CheckReport { valid: false, elements: None, error: Some(e.to_string()) };
            Ok(Outcome { text: format!("invalid: {e}\n"), structured: json(&rep), code: error_code(&e) })
        }
        Err(e) => Err(e),
    }
}

#[derive(Serialize)]
struct SpectrumReport {
    flavor: String,
    space: SpaceReport,
    /// For the k-spectrum, primes that are not k-ideals.
    excluded: Vec<String>,
}

pub fn spectrum(file: &Path, vis: Visualization, dot: Option<&Path>) -> Result<Outcome> {
    let r = load(file)?;
    let (x, _) = visualize(&r, vis);
    let excluded = if vis == Visualization::K {
        prime_ideals(&r).into_iter().filter(|p| !is_k_ideal(&r, p)).map(|p| p.format(&r)).collect()
    } else {
        Vec::new()
    };
    write_dot(dot, &x, vis.name())?;
    let rep = SpectrumReport { flavor: vis.name().to_string(), space: SpaceReport::new(&x), excluded };
    let mut text = String::new();
    rep.space.write_text(&mut text);
    if !rep.excluded.is_empty() {
        text.push_str(&format!("primes that are not k-ideals: {}\n", rep.excluded.join(" ")));
    }
    Ok(ok(text, json(&rep)))
}

#[derive(Serialize)]
struct CongruenceRow {
    blocks: String,
    weak: bool,
    strong: bool,
    twisted: bool,
    kernel: Option<String>,
}

pub fn congruences(file: &Path) -> Result<Outcome> {
    let r = load(file)?;
    let rows: Vec<CongruenceRow> = enumerate_congruences(&r)
        .iter()
        .map(|c| CongruenceRow {
            blocks: c.format(&r),
            weak: primality(&r, c, CongruenceFlavor::Weak),
            strong: primality(&r, c, CongruenceFlavor::Strong),
            twisted: primality(&r, c, CongruenceFlavor::Twisted),
            kernel: kernel_ideal(&r, c).ok().map(|i| i.format(&r)),
        })
        .collect();
    let mut text = format!("{} congruences\n", rows.len());
    for c in &rows {
        let flags: Vec<&str> =
            [(c.weak, "weak"), (c.strong, "strong"), (c.twisted, "twisted")].iter().filter(|f| f.0).map(|f| f.1).collect();
        text.push_str(&format!("  {}", c.blocks));
        if !flags.is_empty() {
            text.push_str(&format!("  [{}]", flags.join(" ")));
        }
        if let Some(k) = &c.kernel {
            text.push_str(&format!("  kernel {k}"));
        }
        text.push('\n');
    }
    Ok(ok(text, json(&rows)))
}

#[derive(Serialize)]
struct LocaleReport {
    opens: Vec<String>,
    covers: Vec<[String; 2]>,
    points: usize,
    homeomorphic_to_spectrum: bool,
    spectrum_sober: bool,
    spatial: bool,
}

pub fn locale(file: &Path) -> Result<Outcome> {
    let r = load(file)?;
    let lx = lambda_x(&r);
    let a = theorem_a_check(&r);
    let rep = LocaleReport {
        opens: lx.frame.labels().to_vec(),
        covers: lx.frame.covers().iter().map(|&(x, y)| [lx.frame.label(x).into(), lx.frame.label(y).into()]).collect(),
        points: a.dual.len(),
        homeomorphic_to_spectrum: a.homeomorphism,
        spectrum_sober: a.sober,
        spatial: a.spatial,
    };
    let text = format!(
        "{}points: {}\nhomeomorphic to the prime spectrum: {}\nspectrum sober: {}\nspatial: {}\n",
        format_hasse(&lx.frame),
        rep.points,
        rep.homeomorphic_to_spectrum,
        rep.spectrum_sober,
        rep.spatial
    );
    let code = if a.holds() { 0 } else { EXIT_CHECK_FAILED };
    Ok(Outcome { text, structured: json(&rep), code })
}

#[derive(Serialize)]
struct StoneReport {
    space: SpaceReport,
    /// Per point, the join-prime generating its filter.
    generators: Vec<String>,
    spatial: bool,
    sober: bool,
}

pub fn stone(file: &Path, dot: Option<&Path>) -> Result<Outcome> {
    let l = parse_hasse(&read(file)?)?;
    let x = stone_dual(&l);
    write_dot(dot, &x, "stone")?;
    let rep = StoneReport {
        space: SpaceReport::new(&x),
        generators: prime_filters(&l).iter().map(|p| l.label(p.generator).to_string()).collect(),
        spatial: spatiality_check(&l),
        sober: is_sober(&x),
    };
    let mut text = String::new();
    rep.space.write_text(&mut text);
    text.push_str(&format!("spatial: {}\nsober: {}\n", rep.spatial, rep.sober));
    Ok(ok(text, json(&rep)))
}

#[derive(Serialize)]
struct LocalizeReport {
    element: String,
    elements: Vec<String>,
    zero: String,
    one: String,
    add: Vec<Vec<String>>,
    mul: Vec<Vec<String>>,
    /// Image of each source element.
    map: Vec<String>,
}

pub fn localize(file: &Path, element: &str) -> Result<Outcome> {
    let r = load(file)?;
    let h = r.index_of(element)?;
    let loc = localize_at(&r, h)?;
    let s = &loc.semiring;
    let table = |t: Vec<Vec<usize>>| -> Vec<Vec<String>> {
        t.into_iter().map(|row| row.into_iter().map(|x| s.label(x).to_string()).collect()).collect()
    };
    let rep = LocalizeReport {
        element: element.to_string(),
        elements: s.labels().to_vec(),
        zero: s.label(s.zero()).to_string(),
        one: s.label(s.one()).to_string(),
        add: table(s.add_table()),
        mul: table(s.mul_table()),
        map: r.elements().map(|a| s.label(loc.map.apply(a)).to_string()).collect(),
    };
    let pairs: Vec<String> = r.elements().zip(&rep.map).map(|(a, b)| format!("{}->{}", r.label(a), b)).collect();
    let text = format!("{}map: {}\n", format_semiring(s), pairs.join(" "));
    Ok(ok(text, json(&rep)))
}

#[derive(Serialize)]
struct SheafRow {
    target: String,
    morphisms: usize,
    families: usize,
    bijection: bool,
    witness: Option<String>,
}

#[derive(Serialize)]
struct SheafReport {
    family: String,
    covers: bool,
    targets: Vec<SheafRow>,
}

fn format_witness(w: &SheafWitness) -> String {
    let show = |f: &finscheme::SemiringHom| {
        f.map().iter().map(|&x| f.target().label(x).to_string()).collect::<Vec<_>>().join(" ")
    };
    match w {
        SheafWitness::NotInjective { first, second } => {
            format!("not injective: [{}] and [{}] restrict alike", show(first), show(second))
        }
        SheafWitness::NotSurjective { family } => {
            let parts: Vec<String> = family.iter().map(|f| format!("[{}]", show(f))).collect();
            format!("not surjective: family {} does not glue", parts.join(" "))
        }
    }
}

pub fn sheaf_check(file: &Path, targets: &[PathBuf]) -> Result<Outcome> {
    let spec = parse_cover_spec(&read(file)?)?;
    let r = load(&beside(file, &spec.semiring))?;
    let labels: Vec<&str> = spec.cover.iter().map(String::as_str).collect();
    let family = CoverFamily::from_labels(&r, &labels)?;
    let ys: Vec<(String, FiniteSemiring)> = if targets.is_empty() {
        finscheme::catalog::standard().into_iter().map(|e| (e.name, e.semiring)).collect()
    } else {
        targets.iter().map(|t| Ok((t.display().to_string(), load(t)?))).collect::<Result<_>>()?
    };
    let mut rows = Vec::new();
    for (name, y) in &ys {
        let c = sheaf_axiom_check(&family, y)?;
        rows.push(SheafRow {
            target: name.clone(),
            morphisms: c.morphisms,
            families: c.families,
            bijection: c.is_bijection(),
            witness: c.witness.as_ref().map(format_witness),
        });
    }
    let rep = SheafReport { family: family.format(), covers: covers(&family), targets: rows };
    let mut text = format!("family {}\ncovers: {}\n", rep.family, rep.covers);
    for row in &rep.targets {
        let verdict = row.witness.clone().unwrap_or_else(|| "bijection".into());
        text.push_str(&format!("  {}: {} maps, {} families, {verdict}\n", row.target, row.morphisms, row.families));
    }
    let code = if rep.targets.iter().all(|r| r.bijection) { 0 } else { EXIT_CHECK_FAILED };
    Ok(Outcome { text, structured: json(&rep), code })
}

pub fn verify(dir: &Path) -> Result<Outcome> {
    let rep = verify_dir(dir)?;
    let code = if rep.failed() { EXIT_CHECK_FAILED } else { 0 };
    Ok(Outcome { text: rep.to_text(), structured: json(&rep), code })
}

#[derive(Serialize)]
struct GlueRow {
    point: String,
    sources: Vec<String>,
}

#[derive(Serialize)]
struct GlueReport {
    visualization: String,
    monodromy_free: bool,
    refusal: Option<String>,
    space: Option<SpaceReport>,
    table: Vec<GlueRow>,
}

pub fn glue(file: &Path, vis: Visualization, cfg: &RunConfig, dot: Option<&Path>) -> Result<Outcome> {
    let text = read(file)?;
    let p = parse_presentation(&text, |name| load(&beside(file, name)))?;
    match glue_space(&p, vis, cfg.bound, cfg.budget) {
        Ok(g) => {
            write_dot(dot, &g.space, "glued")?;
            let table: Vec<GlueRow> =
                g.point_table(&p).into_iter().map(|(point, sources)| GlueRow { point, sources }).collect();
            let rep = GlueReport {
                visualization: vis.name().to_string(),
                monodromy_free: true,
                refusal: None,
                space: Some(SpaceReport::new(&g.space)),
                table,
            };
            let mut out = String::new();
            if let Some(s) = &rep.space {
                s.write_text(&mut out);
            }
            out.push_str("charts:\n");
            for row in &rep.table {
                out.push_str(&format!("  {} <- {}\n", row.point, row.sources.join(" ")));
            }
            Ok(ok(out, json(&rep)))
        }
        Err(e @ (Error::Monodromy(_) | Error::Inconclusive { .. })) => {
            let rep = GlueReport {
                visualization: vis.name().to_string(),
                monodromy_free: false,
                refusal: Some(e.to_string()),
                space: None,
                table: Vec::new(),
            };
            Ok(Outcome { text: format!("refused: {e}\n"), structured: json(&rep), code: EXIT_CHECK_FAILED })
        }
        Err(e) => Err(e),
    }
}

#[derive(Serialize)]
struct SimplexReport {
    space: SpaceReport,
    /// Per point, its closure.
    closures: Vec<Vec<String>>,
    unique_closed_point: Option<String>,
}

pub fn simplex(n: Option<usize>, file: Option<&Path>, dot: Option<&Path>) -> Result<Outcome> {
    let x = match (n, file) {
        (Some(n), _) => simplex_space(&FinSet::of_size(n + 1))?,
        (None, Some(f)) => glue_simplices(&asc_presentation(&parse_asc(&read(f)?)?))?,
        (None, None) => return Err(Error::Empty("give --n or a complex file".into())),
    };
    write_dot(dot, &x, "faces")?;
    let closed = x.closed_points();
    let rep = SimplexReport {
        space: SpaceReport::new(&x),
        closures: x.points().map(|p| x.point_closure(p).iter().map(|&q| x.label(q).to_string()).collect()).collect(),
        unique_closed_point: (closed.len() == 1).then(|| x.label(closed[0]).to_string()),
    };
    let mut text = String::new();
    rep.space.write_text(&mut text);
    text.push_str("closures:\n");
    for (p, c) in x.labels().iter().zip(&rep.closures) {
        text.push_str(&format!("  cl {p} = {{{}}}\n", c.join(" ")));
    }
    if let Some(c) = &rep.unique_closed_point {
        text.push_str(&format!("unique closed point: {c}\n"));
    }
    Ok(ok(text, json(&rep)))
}
