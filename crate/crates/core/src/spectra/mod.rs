//! Ideals, prime spectra, congruence spectra and the maps between them.

mod chain;
mod congruences;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::semiring::{FiniteSemiring, SemiringHom};
use crate::topology::{ContinuousMap, FiniteTopSpace, PointSet};

pub use chain::{visualization_chain, ChainArrow, VisualizationChain};
pub use congruences::{
    congruence_spectrum, enumerate_congruences, kernel_ideal, primality, CongruenceFlavor, CongruenceSpectrum,
};

/// A subset of a semiring containing 0, closed under addition and absorbing
/// multiplication. The carrier is passed explicitly to every operation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ideal {
    members: BTreeSet<usize>,
}

impl Ideal {
    pub fn new(r: &FiniteSemiring, members: BTreeSet<usize>) -> Result<Self> {
        for &a in &members {
            r.check_element(a)?;
        }
        if !is_ideal(r, &members) {
            return Err(Error::Malformed(format!("{} is not an ideal", format_subset(r, &members))));
        }
        Ok(Ideal { members })
    }

    /// The smallest ideal containing `generators`.
    pub fn generated(r: &FiniteSemiring, generators: &[usize]) -> Self {
        let mut members: BTreeSet<usize> = generators.iter().copied().collect();
        members.insert(r.zero());
        loop {
            let mut more = Vec::new();
            for &a in &members {
                for x in r.elements() {
                    more.push(r.mul(a, x));
                }
                for &b in &members {
                    more.push(r.add(a, b));
                }
            }
            let before = members.len();
            members.extend(more);
            if members.len() == before {
                return Ideal { members };
            }
        }
    }

    pub fn members(&self) -> &BTreeSet<usize> {
        &self.members
    }

    pub fn contains(&self, a: usize) -> bool {
        self.members.contains(&a)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn format(&self, r: &FiniteSemiring) -> String {
        format_subset(r, &self.members)
    }
}

pub fn format_subset(r: &FiniteSemiring, s: &BTreeSet<usize>) -> String {
    let ls: Vec<&str> = s.iter().map(|&a| r.label(a)).collect();
    format!("{{{}}}", ls.join(","))
}

pub fn is_ideal(r: &FiniteSemiring, s: &BTreeSet<usize>) -> bool {
    s.contains(&r.zero())
        && s.iter().all(|&a| s.iter().all(|&b| s.contains(&r.add(a, b))))
        && s.iter().all(|&a| r.elements().all(|x| s.contains(&r.mul(a, x))))
}

/// All ideals, ordered by size and then lexicographically.
pub fn enumerate_ideals(r: &FiniteSemiring) -> Vec<Ideal> {
    let mut seen: BTreeSet<Ideal> = BTreeSet::new();
    let mut stack = vec![Ideal::generated(r, &[])];
    while let Some(i) = stack.pop() {
        if !seen.insert(i.clone()) {
            continue;
        }
        for a in r.elements().filter(|&a| !i.contains(a)) {
            let mut gens: Vec<usize> = i.members.iter().copied().collect();
            gens.push(a);
            stack.push(Ideal::generated(r, &gens));
        }
    }
    let mut out: Vec<Ideal> = seen.into_iter().collect();
    out.sort_by(|a, b| (a.len(), &a.members).cmp(&(b.len(), &b.members)));
    out
}

/// `b ∈ I` and `a + b ∈ I` imply `a ∈ I`.
pub fn is_k_ideal(r: &FiniteSemiring, i: &Ideal) -> bool {
    r.elements()
        .all(|a| i.contains(a) || !i.members.iter().any(|&b| i.contains(r.add(a, b))))
}

/// The complement contains 1 and is closed under multiplication.
pub fn is_prime(r: &FiniteSemiring, i: &Ideal) -> bool {
    !i.contains(r.one())
        && r.elements().all(|a| {
            r.elements().all(|b| i.contains(a) || i.contains(b) || !i.contains(r.mul(a, b)))
        })
}

pub fn prime_ideals(r: &FiniteSemiring) -> Vec<Ideal> {
    enumerate_ideals(r).into_iter().filter(|i| is_prime(r, i)).collect()
}

/// `U_h` as a set of indices into `primes`.
pub fn basic_open(primes: &[Ideal], h: usize) -> PointSet {
    primes.iter().enumerate().filter(|(_, p)| !p.contains(h)).map(|(i, _)| i).collect()
}

fn spectrum_space(r: &FiniteSemiring, primes: &[Ideal]) -> FiniteTopSpace {
    let labels = primes.iter().map(|p| p.format(r)).collect();
    let basis = r.elements().map(|h| (format!("U_{}", r.label(h)), basic_open(primes, h))).collect();
    FiniteTopSpace::with_basis(labels, basis)
}

/// Prime ideals with the topology generated by the `U_h`; points are in
/// the order of [`prime_ideals`] and basis entries in element order.
pub fn prime_spectrum(r: &FiniteSemiring) -> FiniteTopSpace {
    spectrum_space(r, &prime_ideals(r))
}

/// Prime k-ideals as a subspace of the prime spectrum, with the inclusion.
pub fn k_spectrum(r: &FiniteSemiring) -> (FiniteTopSpace, ContinuousMap) {
    let primes = prime_ideals(r);
    let whole = spectrum_space(r, &primes);
    let idx: Vec<usize> = (0..primes.len()).filter(|&i| is_k_ideal(r, &primes[i])).collect();
    let sub = whole.subspace(&idx);
    let inc = ContinuousMap::new(sub.clone(), whole, idx).expect("subspace inclusions are continuous");
    (sub, inc)
}

/// `f*: PSpec R′ → PSpec R`, `𝔭 ↦ f⁻¹(𝔭)`, for `f: R → R′`.
pub fn spec_map(f: &SemiringHom) -> ContinuousMap {
    let (r, r2) = (f.source(), f.target());
    let primes = prime_ideals(r);
    let primes2 = prime_ideals(r2);
    let map = primes2
        .iter()
        .map(|q| {
            let back = Ideal { members: f.preimage(q.members()) };
            primes.iter().position(|p| *p == back).expect("preimages of primes are prime")
        })
        .collect();
    ContinuousMap::new(spectrum_space(r2, &primes2), spectrum_space(r, &primes), map)
        .expect("f* is continuous: (f*)⁻¹(U_h) = U_f(h)")
}

/// The spaces that can be attached to a semiring: the prime spectrum, its
/// k-ideal subspace, and the three congruence spectra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Visualization {
    Prime,
    K,
    Weak,
    Strong,
    Twisted,
}

impl Visualization {
    pub const ALL: [Visualization; 5] =
        [Visualization::Prime, Visualization::K, Visualization::Weak, Visualization::Strong, Visualization::Twisted];

    pub fn name(self) -> &'static str {
        match self {
            Visualization::Prime => "prime",
            Visualization::K => "k",
            Visualization::Weak => "weak",
            Visualization::Strong => "strong",
            Visualization::Twisted => "twisted",
        }
    }

    fn flavor(self) -> Option<CongruenceFlavor> {
        match self {
            Visualization::Weak => Some(CongruenceFlavor::Weak),
            Visualization::Strong => Some(CongruenceFlavor::Strong),
            Visualization::Twisted => Some(CongruenceFlavor::Twisted),
            _ => None,
        }
    }
}

impl fmt::Display for Visualization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Visualization {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Visualization::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| format!("unknown visualization `{s}` (expected prime, k, weak, strong or twisted)"))
    }
}

/// The chosen visualization of `r`, with its map to the prime spectrum.
pub fn visualize(r: &FiniteSemiring, vis: Visualization) -> (FiniteTopSpace, ContinuousMap) {
    match vis.flavor() {
        None if vis == Visualization::Prime => {
            let x = prime_spectrum(r);
            (x.clone(), ContinuousMap::identity(&x))
        }
        None => k_spectrum(r),
        Some(flavor) => {
            let s = congruence_spectrum(r, flavor);
            (s.space, s.kernel_map)
        }
    }
}

/// The map `X(R′) → X(R)` induced by `f: R → R′` (preimages of ideals,
/// pullbacks of congruences).
pub fn visualization_map(f: &SemiringHom, vis: Visualization) -> ContinuousMap {
    let (x, _) = visualize(f.source(), vis);
    let (y, _) = visualize(f.target(), vis);
    let map = match vis.flavor() {
        None => {
            let (r, r2) = (f.source(), f.target());
            let ideals = |s: &FiniteSemiring| -> Vec<Ideal> {
                if vis == Visualization::Prime {
                    prime_ideals(s)
                } else {
                    prime_ideals(s).into_iter().filter(|p| is_k_ideal(s, p)).collect()
                }
            };
            let here = ideals(r);
            ideals(r2)
                .iter()
                .map(|q| {
                    let back = Ideal { members: f.preimage(q.members()) };
                    here.iter().position(|p| *p == back).expect("preimages of prime k-ideals are prime k-ideals")
                })
                .collect()
        }
        Some(flavor) => {
            let here = congruence_spectrum(f.source(), flavor).congruences;
            congruence_spectrum(f.target(), flavor)
                .congruences
                .iter()
                .map(|c| {
                    let back = c.pullback(f);
                    here.iter().position(|d| *d == back).expect("pullbacks of prime congruences are prime")
                })
                .collect()
        }
    };
    ContinuousMap::new(y, x, map).expect("induced maps of visualizations are continuous")
}
