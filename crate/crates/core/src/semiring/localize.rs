use petgraph::unionfind::UnionFind;

use super::{Congruence, FiniteSemiring, SemiringHom};
use crate::error::Result;

/// `R[h⁻¹]` together with the canonical map `λ_h: R → R[h⁻¹]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Localization {
    pub semiring: FiniteSemiring,
    pub map: SemiringHom,
    /// The inverted element of the base.
    pub inverted: usize,
}

impl Localization {
    pub fn base(&self) -> &FiniteSemiring {
        self.map.source()
    }
}

/// Localizes `r` at `h`.
///
/// Elements are classes of pairs `(a, s)` with `s` a power of `h`, where
/// `(a, s) ~ (b, t)` iff `u·t·a = u·s·b` for some power `u`. Powers of `h`
/// cycle in a finite semiring, so the pair set is finite. Classes keep the
/// label of the smallest `a` with `(a, 1)` in the class.
pub fn localize(r: &FiniteSemiring, h: usize) -> Result<Localization> {
    r.check_element(h)?;
    let powers = r.powers(h);
    let k = powers.len();
    let n = r.len();
    let pair = |i: usize| (i / k, powers[i % k]);
    let power_index = |s: usize| powers.iter().position(|&p| p == s).expect("powers are closed under products");

    let mut uf = UnionFind::<usize>::new(n * k);
    for i in 0..n * k {
        let (a, s) = pair(i);
        for j in i + 1..n * k {
            let (b, t) = pair(j);
            if powers
                .iter()
                .any(|&u| r.mul(u, r.mul(t, a)) == r.mul(u, r.mul(s, b)))
            {
                uf.union(i, j);
            }
        }
    }
    let classes = Congruence::from_labeling(&uf.into_labeling());
    let reps: Vec<usize> = classes.blocks().iter().map(|b| b[0]).collect();
    let labels = classes
        .blocks()
        .iter()
        .map(|b| match b.iter().find(|&&i| i % k == 0) {
            Some(&i) => r.label(i / k).to_string(),
            None => {
                let (a, _) = pair(b[0]);
                format!("{}/{}^{}", r.label(a), r.label(h), b[0] % k)
            }
        })
        .collect();
    let class_of = |a: usize, s: usize| classes.block_of(a * k + power_index(s));
    let semiring = FiniteSemiring::from_fn(
        labels,
        class_of(r.zero(), r.one()),
        class_of(r.one(), r.one()),
        |x, y| {
            let ((a, s), (b, t)) = (pair(reps[x]), pair(reps[y]));
            class_of(r.add(r.mul(a, t), r.mul(b, s)), r.mul(s, t))
        },
        |x, y| {
            let ((a, s), (b, t)) = (pair(reps[x]), pair(reps[y]));
            class_of(r.mul(a, b), r.mul(s, t))
        },
    )?;
    let map = SemiringHom::new(r.clone(), semiring.clone(), r.elements().map(|a| class_of(a, r.one())).collect())?;
    Ok(Localization { semiring, map, inverted: h })
}

/// If `f` is a finite localization (an isomorphism composed after some
/// `λ_h`), returns the smallest such `h`.
pub fn is_finite_localization(f: &SemiringHom) -> Result<Option<usize>> {
    if !f.is_surjective() {
        return Ok(None);
    }
    let ker = f.kernel_congruence();
    for h in f.source().elements() {
        let loc = localize(f.source(), h)?;
        if loc.map.kernel_congruence() == ker {
            return Ok(Some(h));
        }
    }
    Ok(None)
}
