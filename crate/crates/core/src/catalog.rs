//! Small named semirings used throughout the tests and by the bundled catalog.

use crate::semiring::FiniteSemiring;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub semiring: FiniteSemiring,
}

fn labels(v: impl IntoIterator<Item = impl ToString>) -> Vec<String> {
    v.into_iter().map(|s| s.to_string()).collect()
}

/// The Boolean semiring `{0, 1}` with `1 + 1 = 1`.
pub fn boolean() -> FiniteSemiring {
    chain(2)
}

/// `Z/n` as a semiring.
pub fn zmod(n: usize) -> FiniteSemiring {
    assert!(n >= 1);
    FiniteSemiring::from_fn(labels(0..n), 0, 1 % n, |a, b| (a + b) % n, |a, b| (a * b) % n)
        .expect("Z/n is a semiring")
}

/// Naturals truncated at `top`: `{0, 1, ..., top-1, T}` where every sum or
/// product reaching `top` is `T`.
pub fn truncated(top: usize) -> FiniteSemiring {
    assert!(top >= 1);
    let mut ls: Vec<String> = (0..top).map(|i| i.to_string()).collect();
    ls.push("T".into());
    FiniteSemiring::from_fn(ls, 0, 1, |a, b| (a + b).min(top), |a, b| (a * b).min(top))
        .expect("truncated naturals form a semiring")
}

/// The `k`-element chain `0 < a < b < ... < 1` with `+ = max` and `· = min`.
pub fn chain(k: usize) -> FiniteSemiring {
    assert!(k >= 2);
    let mut ls = vec!["0".to_string()];
    ls.extend((0..k - 2).map(|i| char::from(b'a' + i as u8).to_string()));
    ls.push("1".into());
    FiniteSemiring::from_fn(ls, 0, k - 1, |a, b| a.max(b), |a, b| a.min(b))
        .expect("a chain is a distributive lattice")
}

/// The bundled catalog, in a fixed order.
pub fn standard() -> Vec<CatalogEntry> {
    let b = boolean();
    [
        ("B", b.clone()),
        ("BxB", b.product(&b)),
        ("Z2", zmod(2)),
        ("Z3", zmod(3)),
        ("Z6", zmod(6)),
        ("N2", truncated(2)),
        ("N3", truncated(3)),
        ("Chain4", chain(4)),
        ("Trivial", FiniteSemiring::trivial()),
    ]
    .into_iter()
    .map(|(name, semiring)| CatalogEntry { name: name.to_string(), semiring })
    .collect()
}

pub fn by_name(name: &str) -> Option<FiniteSemiring> {
    standard().into_iter().find(|e| e.name == name).map(|e| e.semiring)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_sizes() {
        let sizes: Vec<usize> = standard().iter().map(|e| e.semiring.len()).collect();
        assert_eq!(sizes, vec![2, 4, 2, 3, 6, 3, 4, 4, 1]);
    }

    #[test]
    fn truncated_arithmetic() {
        let n2 = truncated(2);
        assert_eq!(n2.label(n2.add(1, 1)), "T");
        assert_eq!(n2.label(n2.mul(1, 2)), "T");
        let n3 = truncated(3);
        assert_eq!(n3.label(n3.add(1, 1)), "2");
        assert_eq!(n3.label(n3.mul(2, 2)), "T");
    }

    #[test]
    fn zmod_one_is_trivial() {
        assert!(zmod(1).is_trivial());
    }
}
