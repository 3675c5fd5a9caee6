use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use super::{prime_ideals, Ideal};
use crate::error::{Error, Result};
use crate::semiring::{Congruence, FiniteSemiring};
use crate::topology::{ContinuousMap, FiniteTopSpace, PointSet};

/// All congruences of `r`, in ascending order of their block labelings.
///
/// Every congruence is reached from the diagonal by repeatedly adding one
/// pair and closing, so only congruences (never bare partitions) are visited.
pub fn enumerate_congruences(r: &FiniteSemiring) -> Vec<Congruence> {
    let mut seen: BTreeSet<Congruence> = BTreeSet::new();
    let mut stack = vec![Congruence::diagonal(r.len())];
    while let Some(c) = stack.pop() {
        if seen.contains(&c) {
            continue;
        }
        for a in r.elements() {
            for b in a + 1..r.len() {
                if !c.related(a, b) {
                    let next = Congruence::generated(r, Some(&c), &[(a, b)]);
                    if !seen.contains(&next) {
                        stack.push(next);
                    }
                }
            }
        }
        seen.insert(c);
    }
    seen.into_iter().collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CongruenceFlavor {
    Weak,
    Strong,
    Twisted,
}

impl CongruenceFlavor {
    pub const ALL: [CongruenceFlavor; 3] = [CongruenceFlavor::Weak, CongruenceFlavor::Strong, CongruenceFlavor::Twisted];

    pub fn name(self) -> &'static str {
        match self {
            CongruenceFlavor::Weak => "weak",
            CongruenceFlavor::Strong => "strong",
            CongruenceFlavor::Twisted => "twisted",
        }
    }
}

impl fmt::Display for CongruenceFlavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CongruenceFlavor {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        CongruenceFlavor::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| format!("unknown flavor `{s}` (expected weak, strong or twisted)"))
    }
}

/// Whether `c` is a prime congruence of the given flavor. Only proper
/// congruences, those with `(1, 0) ∉ c`, qualify.
///
/// - weak: `(ab, 0) ∈ c` implies `(a, 0) ∈ c` or `(b, 0) ∈ c`
/// - strong: `(ab, ac) ∈ c` implies `(a, 0) ∈ c` or `(b, c) ∈ c`
/// - twisted: `(ac + bd, ad + bc) ∈ c` implies `(a, b) ∈ c` or `(c, d) ∈ c`
pub fn primality(r: &FiniteSemiring, c: &Congruence, flavor: CongruenceFlavor) -> bool {
    if !c.is_proper(r) {
        return false;
    }
    let z = r.zero();
    let el = || r.elements();
    match flavor {
        CongruenceFlavor::Weak => {
            el().all(|a| el().all(|b| !c.related(r.mul(a, b), z) || c.related(a, z) || c.related(b, z)))
        }
        CongruenceFlavor::Strong => el().all(|a| {
            c.related(a, z)
                || el().all(|b| el().all(|x| !c.related(r.mul(a, b), r.mul(a, x)) || c.related(b, x)))
        }),
        CongruenceFlavor::Twisted => el().all(|a| {
            el().all(|b| {
                c.related(a, b)
                    || el().all(|x| {
                        el().all(|d| {
                            let lhs = r.add(r.mul(a, x), r.mul(b, d));
                            let rhs = r.add(r.mul(a, d), r.mul(b, x));
                            !c.related(lhs, rhs) || c.related(x, d)
                        })
                    })
            })
        }),
    }
}

/// `I_c = {a | (a, 0) ∈ c}` for a weak prime congruence `c`.
pub fn kernel_ideal(r: &FiniteSemiring, c: &Congruence) -> Result<Ideal> {
    if !primality(r, c, CongruenceFlavor::Weak) {
        return Err(Error::NotWeakPrime);
    }
    let members = r.elements().filter(|&a| c.related(a, r.zero())).collect();
    Ideal::new(r, members)
}

/// A congruence spectrum with its kernel map to the prime spectrum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceSpectrum {
    pub flavor: CongruenceFlavor,
    /// Points, in the order of [`enumerate_congruences`].
    pub congruences: Vec<Congruence>,
    pub space: FiniteTopSpace,
    /// `c ↦ I_c`.
    pub kernel_map: ContinuousMap,
}

/// The weak spectrum carries the topology generated by the sets
/// `U_{a,b} = {c | (a, b) ∉ c}`; the strong and twisted spectra are
/// subspaces of it.
pub fn congruence_spectrum(r: &FiniteSemiring, flavor: CongruenceFlavor) -> CongruenceSpectrum {
    let all = enumerate_congruences(r);
    let weak: Vec<Congruence> = all.into_iter().filter(|c| primality(r, c, CongruenceFlavor::Weak)).collect();
    let mut basis = Vec::new();
    for a in r.elements() {
        for b in a..r.len() {
            let u: PointSet = (0..weak.len()).filter(|&i| !weak[i].related(a, b)).collect();
            basis.push((format!("U_{},{}", r.label(a), r.label(b)), u));
        }
    }
    let labels = weak.iter().map(|c| c.format(r)).collect();
    let xw = FiniteTopSpace::with_basis(labels, basis);
    let keep: Vec<usize> = (0..weak.len()).filter(|&i| primality(r, &weak[i], flavor)).collect();
    let space = xw.subspace(&keep);
    let congruences: Vec<Congruence> = keep.iter().map(|&i| weak[i].clone()).collect();

    let primes = prime_ideals(r);
    let pspec = super::prime_spectrum(r);
    let map = congruences
        .iter()
        .map(|c| {
            let i = kernel_ideal(r, c).expect("points are weak prime");
            primes.iter().position(|p| *p == i).expect("kernel ideals are prime")
        })
        .collect();
    let kernel_map = ContinuousMap::new(space.clone(), pspec, map).expect("preimage of U_h is U_{h,0}");
    CongruenceSpectrum { flavor, congruences, space, kernel_map }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::spectra::{enumerate_ideals, is_k_ideal, is_prime};

    /// Oracle: all set partitions, kept when stable.
    fn congruences_by_scan(r: &FiniteSemiring) -> Vec<Congruence> {
        fn partitions(n: usize, i: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if i == n {
                out.push(cur.clone());
                return;
            }
            let next = cur.iter().max().map_or(0, |m| m + 1);
            for b in 0..=next {
                cur.push(b);
                partitions(n, i + 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        partitions(r.len(), 0, &mut Vec::new(), &mut out);
        let mut cs: Vec<Congruence> = out
            .into_iter()
            .map(|l| Congruence::from_labeling(&l))
            .filter(|c| c.check_stable(r).is_ok())
            .collect();
        cs.sort();
        cs
    }

    #[test]
    fn enumeration_matches_partition_scan() {
        for e in catalog::standard() {
            assert_eq!(enumerate_congruences(&e.semiring), congruences_by_scan(&e.semiring), "{}", e.name);
        }
    }

    #[test]
    fn small_congruence_counts() {
        assert_eq!(enumerate_congruences(&catalog::boolean()).len(), 2);
        assert_eq!(enumerate_congruences(&FiniteSemiring::trivial()).len(), 1);
        let z6 = catalog::zmod(6);
        assert_eq!(enumerate_congruences(&z6).len(), enumerate_ideals(&z6).len());
        assert_eq!(enumerate_ideals(&z6).len(), 4);
    }

    #[test]
    fn primality_examples() {
        let b = catalog::boolean();
        assert!(primality(&b, &Congruence::diagonal(2), CongruenceFlavor::Twisted));
        for e in catalog::standard() {
            let total = Congruence::total(e.semiring.len());
            for f in CongruenceFlavor::ALL {
                assert!(!primality(&e.semiring, &total, f));
            }
        }
        let z6 = catalog::zmod(6);
        assert!(!primality(&z6, &Congruence::diagonal(6), CongruenceFlavor::Weak));
    }

    #[test]
    fn flavors_nest_and_kernels_are_prime_k_ideals() {
        for e in catalog::standard() {
            let r = &e.semiring;
            for c in enumerate_congruences(r) {
                let [w, s, t] = CongruenceFlavor::ALL.map(|f| primality(r, &c, f));
                assert!(!t || s, "{} {}", e.name, c.format(r));
                assert!(!s || w, "{} {}", e.name, c.format(r));
                if w {
                    let i = kernel_ideal(r, &c).unwrap();
                    assert!(is_prime(r, &i) && is_k_ideal(r, &i));
                } else {
                    assert_eq!(kernel_ideal(r, &c), Err(Error::NotWeakPrime));
                }
            }
        }
    }

    #[test]
    fn kernel_examples() {
        let z6 = catalog::zmod(6);
        let c = Congruence::from_blocks(&z6, &[vec![0, 3], vec![1, 4], vec![2, 5]]).unwrap();
        assert_eq!(kernel_ideal(&z6, &c).unwrap().members(), &BTreeSet::from([0, 3]));
        let n2 = catalog::truncated(2);
        let i = kernel_ideal(&n2, &Congruence::diagonal(3)).unwrap();
        assert_eq!(i.members(), &BTreeSet::from([0]));
    }

    #[test]
    fn spectra_of_small_semirings() {
        assert_eq!(congruence_spectrum(&catalog::boolean(), CongruenceFlavor::Twisted).space.len(), 1);
        let z6 = congruence_spectrum(&catalog::zmod(6), CongruenceFlavor::Weak);
        assert_eq!(z6.space.len(), 2);
        assert!(z6.kernel_map.is_injective() && z6.kernel_map.is_surjective());
        assert!(congruence_spectrum(&FiniteSemiring::trivial(), CongruenceFlavor::Weak).space.is_empty());
    }

    #[test]
    fn preimage_of_basic_open() {
        for e in catalog::standard() {
            let r = &e.semiring;
            let s = congruence_spectrum(r, CongruenceFlavor::Weak);
            let primes = prime_ideals(r);
            for h in r.elements() {
                let back = s.kernel_map.preimage(&super::super::basic_open(&primes, h));
                let u: PointSet =
                    (0..s.congruences.len()).filter(|&i| !s.congruences[i].related(h, r.zero())).collect();
                assert_eq!(back, u);
            }
        }
    }
}
