//! Property tests for the algebraic and set-level invariants.

mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;

use finscheme::finset::{bounded_subcanonical, is_jointly_surjective, set_sheaf_check, FinSet, InjectionFamily};
use finscheme::semiring::{colimit, enumerate_homs, localize, quotient, SemiringDiagram, DEFAULT_COLIMIT_BUDGET};
use finscheme::spectra::enumerate_congruences;
use finscheme::{Congruence, FiniteSemiring};

use common::*;

/// Catalog entries plus the products that stay at eight elements or fewer.
fn pool() -> Vec<FiniteSemiring> {
    let cat: Vec<FiniteSemiring> = catalog().into_iter().map(|(_, r)| r).collect();
    let mut out = cat.clone();
    for a in &cat {
        for b in &cat {
            if a.len() > 1 && b.len() > 1 && a.len() * b.len() <= 8 {
                out.push(a.product(b));
            }
        }
    }
    out
}

fn semiring_and_elements() -> impl Strategy<Value = (FiniteSemiring, usize, usize)> {
    let pool = pool();
    (0..pool.len(), any::<usize>(), any::<usize>()).prop_map(move |(i, g, h)| {
        let r = pool[i].clone();
        let n = r.len();
        (r, g % n, h % n)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn localization_matches_idempotent_corner((r, h, _) in semiring_and_elements()) {
        let l = localize(&r, h).unwrap();
        prop_assert!(isomorphic_oracle(&l.semiring, &localization_oracle(&r, h)));
    }

    #[test]
    fn localizing_twice_changes_nothing((r, h, _) in semiring_and_elements()) {
        let l = localize(&r, h).unwrap();
        let again = localize(&l.semiring, l.map.apply(h)).unwrap();
        prop_assert!(again.map.is_bijective());
    }

    #[test]
    fn span_colimit_inverts_the_product((r, g, h) in semiring_and_elements()) {
        let (lg, lh) = (localize(&r, g).unwrap(), localize(&r, h).unwrap());
        let mut d = SemiringDiagram::new();
        let base = d.add_node(r.clone());
        let a = d.add_node(lg.semiring.clone());
        let b = d.add_node(lh.semiring.clone());
        d.add_arrow(base, a, lg.map.clone()).unwrap();
        d.add_arrow(base, b, lh.map.clone()).unwrap();
        let c = colimit(&d, DEFAULT_COLIMIT_BUDGET).unwrap();
        prop_assert!(isomorphic_oracle(&c.semiring, &localization_oracle(&r, r.mul(g, h))));
    }

    #[test]
    fn hom_enumeration_is_sorted_and_complete(i in 0usize..64, j in 0usize..64) {
        let pool = pool();
        let (a, b) = (&pool[i % pool.len()], &pool[j % pool.len()]);
        prop_assume!(b.len().pow(a.len() as u32) <= 50_000);
        let got: Vec<Vec<usize>> = enumerate_homs(a, b).iter().map(|f| f.map().to_vec()).collect();
        prop_assert!(got.windows(2).all(|w| w[0] < w[1]));
        // every map of underlying sets, kept when it preserves the structure
        let mut want = Vec::new();
        let mut m = vec![0; a.len()];
        loop {
            let ok = m[a.zero()] == b.zero()
                && m[a.one()] == b.one()
                && a.elements().all(|x| a.elements().all(|y| {
                    m[a.add(x, y)] == b.add(m[x], m[y]) && m[a.mul(x, y)] == b.mul(m[x], m[y])
                }));
            if ok {
                want.push(m.clone());
            }
            let Some(k) = (0..m.len()).rev().find(|&k| m[k] + 1 < b.len()) else { break };
            m[k] += 1;
            for x in &mut m[k + 1..] {
                *x = 0;
            }
        }
        prop_assert_eq!(got, want);
    }

    #[test]
    fn quotients_factor_coarser_maps(i in 0usize..64, j in 0usize..64, k in any::<usize>()) {
        let pool = pool();
        let (r, y) = (&pool[i % pool.len()], &pool[j % pool.len()]);
        let congs = enumerate_congruences(r);
        let want: BTreeSet<Vec<usize>> = congruences_oracle(r).into_iter().collect();
        let got: BTreeSet<Vec<usize>> = congs.iter().map(|c| c.labeling().to_vec()).collect();
        prop_assert_eq!(&got, &want);
        let c = &congs[k % congs.len()];
        let (q, pi) = quotient(r, c).unwrap();
        prop_assert!(pi.is_surjective());
        prop_assert_eq!(pi.kernel_congruence(), c.clone());
        prop_assert_eq!(q.len(), c.block_count());
        for f in enumerate_homs(r, y) {
            let coarser = c.is_finer_than(&f.kernel_congruence());
            match f.factor_through(&pi) {
                Some(g) => {
                    prop_assert!(coarser);
                    prop_assert_eq!(pi.then(&g).unwrap(), f);
                }
                None => prop_assert!(!coarser),
            }
        }
    }

    #[test]
    fn congruences_are_stable(i in 0usize..64) {
        let pool = pool();
        let r = &pool[i % pool.len()];
        for l in congruences_oracle(r) {
            prop_assert!(Congruence::from_labeling(&l).check_stable(r).is_ok());
        }
    }

    #[test]
    fn set_sheaf_check_matches_product_scan(
        n in 0usize..=3,
        masks in proptest::collection::vec(0u32..8, 0..=3),
        y in 0usize..=3,
    ) {
        let a = FinSet::of_size(n);
        let subsets: Vec<BTreeSet<usize>> =
            masks.iter().map(|m| (0..n).filter(|&i| m >> i & 1 == 1).collect()).collect();
        let f = InjectionFamily::of_subsets(&a, &subsets);
        let check = set_sheaf_check(&f, y);
        let (maps, families, bijective) = sheaf_oracle(n, &subsets, y);
        prop_assert_eq!(check.maps, maps);
        prop_assert_eq!(check.families, families);
        prop_assert_eq!(check.is_bijection(), bijective);
        let covered: BTreeSet<usize> = subsets.iter().flatten().copied().collect();
        prop_assert_eq!(is_jointly_surjective(&f), covered.len() == n);
        prop_assert_eq!(bounded_subcanonical(&f, 3), covered.len() == n);
    }
}

/// All tuples of `len` values below `y`.
fn tuples(len: usize, y: usize) -> Vec<Vec<usize>> {
    (0..len).fold(vec![Vec::new()], |acc, _| {
        acc.into_iter().flat_map(|t| (0..y).map(move |v| [t.clone(), vec![v]].concat())).collect()
    })
}

/// Counts maps `A → Y`, compatible families over the subsets, and whether
/// restriction is a bijection, by scanning the full product of hom-sets.
fn sheaf_oracle(n: usize, subsets: &[BTreeSet<usize>], y: usize) -> (usize, usize, bool) {
    let members: Vec<Vec<usize>> = subsets.iter().map(|s| s.iter().copied().collect()).collect();
    let per_member: Vec<Vec<Vec<usize>>> = members.iter().map(|m| tuples(m.len(), y)).collect();
    let product = per_member.iter().fold(vec![Vec::new()], |acc: Vec<Vec<Vec<usize>>>, choices| {
        acc.into_iter()
            .flat_map(|t| choices.iter().map(move |c| [t.clone(), vec![c.clone()]].concat()))
            .collect()
    });
    let compatible: BTreeSet<Vec<Vec<usize>>> = product
        .into_iter()
        .filter(|fam| {
            (0..members.len()).all(|i| {
                (0..members.len()).all(|j| {
                    members[i].iter().enumerate().all(|(bi, &x)| {
                        members[j].iter().enumerate().all(|(bj, &z)| x != z || fam[i][bi] == fam[j][bj])
                    })
                })
            })
        })
        .collect();
    let maps = tuples(n, y);
    let restricted: Vec<Vec<Vec<usize>>> =
        maps.iter().map(|g| members.iter().map(|m| m.iter().map(|&x| g[x]).collect()).collect()).collect();
    let distinct: BTreeSet<_> = restricted.iter().cloned().collect();
    let bijective = distinct.len() == maps.len() && distinct == compatible;
    (maps.len(), compatible.len(), bijective)
}
