use super::{congruence_spectrum, is_k_ideal, kernel_ideal, k_spectrum, prime_ideals, CongruenceFlavor};
use crate::semiring::FiniteSemiring;
use crate::topology::{ContinuousMap, FiniteTopSpace};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArrowKind {
    /// Expected to be an injective embedding.
    Hook,
    /// Expected to be surjective.
    Onto,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainArrow {
    pub source: &'static str,
    pub target: &'static str,
    pub kind: ArrowKind,
    pub map: ContinuousMap,
}

impl ChainArrow {
    pub fn name(&self) -> String {
        format!("{} -> {}", self.source, self.target)
    }

    /// Whether the arrow has the shape it is drawn with.
    pub fn holds(&self) -> bool {
        match self.kind {
            ArrowKind::Hook => self.map.is_embedding(),
            ArrowKind::Onto => self.map.is_surjective(),
        }
    }
}

/// `X^t ↪ X^s ↪ X^w → X^k ↪ PSpec`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VisualizationChain {
    pub arrows: Vec<ChainArrow>,
}

impl VisualizationChain {
    pub fn spaces(&self) -> Vec<(&'static str, &FiniteTopSpace)> {
        let mut out: Vec<(&'static str, &FiniteTopSpace)> =
            self.arrows.iter().map(|a| (a.source, a.map.source())).collect();
        if let Some(last) = self.arrows.last() {
            out.push((last.target, last.map.target()));
        }
        out
    }

    pub fn hooks_injective(&self) -> bool {
        self.arrows.iter().filter(|a| a.kind == ArrowKind::Hook).all(|a| a.map.is_injective())
    }

    /// The kernel map `X^w → X^k`.
    pub fn kernel_arrow(&self) -> &ChainArrow {
        &self.arrows[2]
    }

    /// Points of `X^k` outside the image of the kernel map.
    pub fn kernel_counterexamples(&self) -> Vec<String> {
        let a = self.kernel_arrow();
        let image: Vec<usize> = a.map.map().to_vec();
        a.map.target().points().filter(|p| !image.contains(p)).map(|p| a.map.target().label(p).to_string()).collect()
    }
}

fn positions<T: PartialEq>(sub: &[T], whole: &[T]) -> Vec<usize> {
    sub.iter().map(|x| whole.iter().position(|y| y == x).expect("sub is contained in whole")).collect()
}

pub fn visualization_chain(r: &FiniteSemiring) -> VisualizationChain {
    let [w, s, t] = [CongruenceFlavor::Weak, CongruenceFlavor::Strong, CongruenceFlavor::Twisted]
        .map(|f| congruence_spectrum(r, f));
    let (xk, k_inc) = k_spectrum(r);
    let k_ideals: Vec<_> = prime_ideals(r).into_iter().filter(|p| is_k_ideal(r, p)).collect();

    let continuous = "maps in the chain are continuous";
    let t_s = ContinuousMap::new(t.space.clone(), s.space.clone(), positions(&t.congruences, &s.congruences))
        .expect(continuous);
    let s_w = ContinuousMap::new(s.space.clone(), w.space.clone(), positions(&s.congruences, &w.congruences))
        .expect(continuous);
    let kernels: Vec<_> = w.congruences.iter().map(|c| kernel_ideal(r, c).expect("weak prime")).collect();
    let w_k = ContinuousMap::new(w.space.clone(), xk, positions(&kernels, &k_ideals)).expect(continuous);

    let arrow = |source, target, kind, map| ChainArrow { source, target, kind, map };
    VisualizationChain {
        arrows: vec![
            arrow("X^t", "X^s", ArrowKind::Hook, t_s),
            arrow("X^s", "X^w", ArrowKind::Hook, s_w),
            arrow("X^w", "X^k", ArrowKind::Onto, w_k),
            arrow("X^k", "PSpec", ArrowKind::Hook, k_inc),
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn boolean_chain_is_points() {
        let c = visualization_chain(&catalog::boolean());
        for (_, x) in c.spaces() {
            assert_eq!(x.len(), 1);
        }
        assert!(c.arrows.iter().all(ChainArrow::holds));
    }

    #[test]
    fn z6_chain() {
        let c = visualization_chain(&catalog::zmod(6));
        assert!(c.spaces().iter().all(|(_, x)| x.len() == 2));
        assert!(c.kernel_arrow().map.is_injective());
        assert!(c.kernel_counterexamples().is_empty());
    }

    #[test]
    fn trivial_chain_is_empty() {
        let c = visualization_chain(&FiniteSemiring::trivial());
        assert!(c.spaces().iter().all(|(_, x)| x.is_empty()));
        assert!(c.hooks_injective());
    }

    #[test]
    fn catalog_chains_hold() {
        for e in catalog::standard() {
            let c = visualization_chain(&e.semiring);
            assert!(c.hooks_injective(), "{}", e.name);
            assert!(c.arrows.iter().all(ChainArrow::holds), "{}: {:?}", e.name, c.kernel_counterexamples());
        }
    }
}
