//! The per-semiring check report behind the `verify` command.

use std::fmt;
use std::path::Path;

use serde::Serialize;

use crate::catalog::CatalogEntry;
use crate::error::{Error, Result};
use crate::semiring::{is_isomorphic, localize, parse_semiring, FiniteSemiring};
use crate::site::{
    covers, intrinsic_order_check, principal_open_props_check, sheaf_axiom_check, structure_sheaf_sections,
    theorem_a_check, two_generator_gluing, CoverFamily, OpenSubscheme,
};
use crate::spectra::{
    basic_open, congruence_spectrum, is_k_ideal, is_prime, kernel_ideal, prime_ideals, visualization_chain,
    CongruenceFlavor,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// A reported observation that is not a failure.
    Flag,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Flag => "flag",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyRow {
    pub semiring: String,
    pub check: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub rows: Vec<VerifyRow>,
}

impl VerifyReport {
    pub fn failed(&self) -> bool {
        self.rows.iter().any(|r| r.status == Status::Fail)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.rows {
            out.push_str(&format!("{:<10} {:<16} {:<4} {}\n", r.semiring, r.check, r.status, r.detail));
        }
        let fails = self.rows.iter().filter(|r| r.status == Status::Fail).count();
        out.push_str(&format!("{} rows, {} failed\n", self.rows.len(), fails));
        out
    }
}

/// Reads every `*.sr` file of `dir`, sorted by file name. Files that fail to
/// parse or validate are kept with their error.
pub fn load_dir(dir: &Path) -> Result<Vec<(String, Result<FiniteSemiring>)>> {
    let io = |e: std::io::Error| Error::Io { path: dir.display().to_string(), message: e.to_string() };
    let mut paths: Vec<_> = std::fs::read_dir(dir)
        .map_err(io)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "sr"))
        .collect();
    paths.sort();
    Ok(paths
        .into_iter()
        .map(|p| {
            let name = p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            let parsed = std::fs::read_to_string(&p)
                .map_err(|e| Error::Io { path: p.display().to_string(), message: e.to_string() })
                .and_then(|t| parse_semiring(&t));
            (name, parsed)
        })
        .collect())
}

fn row(semiring: &str, check: &str, pass: bool, detail: String) -> VerifyRow {
    let status = if pass { Status::Pass } else { Status::Fail };
    VerifyRow { semiring: semiring.to_string(), check: check.to_string(), status, detail }
}

fn kernel_row(name: &str, r: &FiniteSemiring) -> VerifyRow {
    let [w, s, t] = [CongruenceFlavor::Weak, CongruenceFlavor::Strong, CongruenceFlavor::Twisted]
        .map(|f| congruence_spectrum(r, f).congruences);
    let nested = t.iter().all(|c| s.contains(c)) && s.iter().all(|c| w.contains(c));
    let kernels_ok = w.iter().all(|c| kernel_ideal(r, c).is_ok_and(|i| is_prime(r, &i) && is_k_ideal(r, &i)));
    let detail = format!("twisted {} <= strong {} <= weak {}", t.len(), s.len(), w.len());
    row(name, "prime-kernels", nested && kernels_ok, detail)
}

fn structure_sheaf_row(name: &str, r: &FiniteSemiring) -> Result<VerifyRow> {
    let mut ok = true;
    for h in r.elements() {
        let sections = structure_sheaf_sections(r, &OpenSubscheme::principal(r, h)?)?;
        ok &= is_isomorphic(&sections.semiring, &localize(r, h)?.semiring);
    }
    let full = structure_sheaf_sections(r, &OpenSubscheme::new(r, r.elements().collect())?)?;
    ok &= full.global.is_bijective();
    let mut pairs = 0;
    for g in r.elements() {
        for h in g..r.len() {
            pairs += 1;
            ok &= two_generator_gluing(r, g, h)?;
        }
    }
    Ok(row(name, "structure-sheaf", ok, format!("{} principal opens, {pairs} two-generator opens", r.len())))
}

fn basis_row(name: &str, r: &FiniteSemiring) -> Result<VerifyRow> {
    let primes = prime_ideals(r);
    let mut ok = true;
    for g in r.elements() {
        for h in r.elements() {
            let meet = &basic_open(&primes, g) & &basic_open(&primes, h);
            ok &= meet == basic_open(&primes, r.mul(g, h));
            ok &= intrinsic_order_check(r, g, h)?.agrees();
        }
    }
    Ok(row(name, "basis-law", ok, format!("{} pairs", r.len() * r.len())))
}

fn sheaf_row(name: &str, r: &FiniteSemiring, targets: &[&FiniteSemiring]) -> Result<VerifyRow> {
    let mut ok = true;
    let mut families = 0;
    let mut witness = String::new();
    for g in r.elements() {
        for h in g..r.len() {
            let gens = if g == h { vec![g] } else { vec![g, h] };
            let s = CoverFamily::new(r, &gens)?;
            if !covers(&s) {
                continue;
            }
            families += 1;
            for y in targets {
                let c = sheaf_axiom_check(&s, y)?;
                if !c.is_bijection() && ok {
                    ok = false;
                    witness = format!(", fails for {}", s.format());
                }
            }
        }
    }
    let detail = format!("{families} covering families x {} targets{witness}", targets.len());
    Ok(row(name, "sheaf-axiom", ok, detail))
}

fn chain_rows(name: &str, r: &FiniteSemiring) -> Vec<VerifyRow> {
    let c = visualization_chain(r);
    let sizes: Vec<String> = c.spaces().iter().map(|(n, x)| format!("{n}={}", x.len())).collect();
    let hooks = row(name, "chain-hooks", c.hooks_injective(), sizes.join(" "));
    let missing = c.kernel_counterexamples();
    let kernel = if missing.is_empty() {
        row(name, "kernel-onto", true, "X^w -> X^k surjective".into())
    } else {
        VerifyRow {
            semiring: name.to_string(),
            check: "kernel-onto".into(),
            status: Status::Flag,
            detail: format!("not hit: {}", missing.join(" ")),
        }
    };
    vec![hooks, kernel]
}

/// Runs every check on every entry that loaded; `Y` ranges over the loaded
/// entries for the sheaf-axiom check.
pub fn verify_entries(entries: &[(String, Result<FiniteSemiring>)]) -> Result<VerifyReport> {
    let valid: Vec<CatalogEntry> = entries
        .iter()
        .filter_map(|(n, r)| r.as_ref().ok().map(|r| CatalogEntry { name: n.clone(), semiring: r.clone() }))
        .collect();
    let targets: Vec<&FiniteSemiring> = valid.iter().map(|e| &e.semiring).collect();
    let props = principal_open_props_check(&valid)?;
    let mut rows = Vec::new();
    for (name, r) in entries {
        let r = match r {
            Ok(r) => r,
            Err(e) => {
                rows.push(row(name, "axioms", false, e.to_string()));
                continue;
            }
        };
        rows.push(row(name, "axioms", true, format!("{} elements", r.len())));
        rows.push(kernel_row(name, r));
        let a = theorem_a_check(r);
        let detail = format!("{} points, sober {}, spatial {}", a.spectrum.len(), a.sober, a.spatial);
        rows.push(row(name, "theorem-a", a.holds(), detail));
        rows.push(structure_sheaf_row(name, r)?);
        rows.push(basis_row(name, r)?);
        rows.push(sheaf_row(name, r, &targets)?);
        rows.extend(chain_rows(name, r));
        for p in props.iter().filter(|p| &p.semiring == name) {
            rows.push(row(name, &format!("principal-{}", p.property), p.pass, p.detail.clone()));
        }
    }
    Ok(VerifyReport { rows })
}

pub fn verify_dir(dir: &Path) -> Result<VerifyReport> {
    verify_entries(&load_dir(dir)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn entries() -> Vec<(String, Result<FiniteSemiring>)> {
        catalog::standard().into_iter().map(|e| (e.name, Ok(e.semiring))).collect()
    }

    #[test]
    fn catalog_passes() {
        let rep = verify_entries(&entries()).unwrap();
        assert!(!rep.failed(), "{}", rep.to_text());
        assert!(rep.rows.iter().all(|r| r.status == Status::Pass));
    }

    #[test]
    fn broken_entry_fails_its_row() {
        let mut e = entries();
        e.push(("broken".into(), parse_semiring("elements: 0 1\nzero: 0\none: 1\nadd:\n0 1\n1 0\nmul:\n0 0\n0 0\n")));
        let rep = verify_entries(&e).unwrap();
        assert!(rep.failed());
        let bad: Vec<&VerifyRow> = rep.rows.iter().filter(|r| r.status == Status::Fail).collect();
        assert_eq!(bad.len(), 1);
        assert_eq!((bad[0].semiring.as_str(), bad[0].check.as_str()), ("broken", "axioms"));
    }

    #[test]
    fn empty_report() {
        let rep = verify_entries(&[]).unwrap();
        assert!(rep.rows.is_empty() && !rep.failed());
    }
}
