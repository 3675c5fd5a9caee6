//! Finite commutative semirings with 0 and 1.
//!
//! A [`FiniteSemiring`] is stored as a pair of `n × n` index tables over an
//! ordered list of element labels. Element identity is by index; labels are
//! only used for input and output.

mod colimit;
mod congruence;
mod hom;
mod localize;
mod text;

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

pub use colimit::{colimit, Colimit, DiagramArrow, SemiringDiagram, DEFAULT_COLIMIT_BUDGET};
pub use congruence::{quotient, Congruence};
pub use hom::{enumerate_homs, find_isomorphism, is_isomorphic, search_homs, SemiringHom};
pub use localize::{is_finite_localization, localize, Localization};
pub use text::{format_raw, format_semiring, parse_raw, parse_semiring, RawTables};

/// The axioms checked by [`validate_semiring`], in the order they are checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    AdditiveIdentity,
    MultiplicativeIdentity,
    AdditiveCommutativity,
    MultiplicativeCommutativity,
    AdditiveAssociativity,
    MultiplicativeAssociativity,
    Distributivity,
    Annihilation,
}

impl Axiom {
    pub const ALL: [Axiom; 8] = [
        Axiom::AdditiveIdentity,
        Axiom::MultiplicativeIdentity,
        Axiom::AdditiveCommutativity,
        Axiom::MultiplicativeCommutativity,
        Axiom::AdditiveAssociativity,
        Axiom::MultiplicativeAssociativity,
        Axiom::Distributivity,
        Axiom::Annihilation,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::AdditiveIdentity => "additive identity",
            Axiom::MultiplicativeIdentity => "multiplicative identity",
            Axiom::AdditiveCommutativity => "additive commutativity",
            Axiom::MultiplicativeCommutativity => "multiplicative commutativity",
            Axiom::AdditiveAssociativity => "additive associativity",
            Axiom::MultiplicativeAssociativity => "multiplicative associativity",
            Axiom::Distributivity => "distributivity",
            Axiom::Annihilation => "annihilation",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A finite commutative semiring given by addition and multiplication tables.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteSemiring {
    labels: Vec<String>,
    add: Vec<usize>,
    mul: Vec<usize>,
    zero: usize,
    one: usize,
}

impl fmt::Debug for FiniteSemiring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteSemiring")
            .field("labels", &self.labels)
            .field("zero", &self.labels[self.zero])
            .field("one", &self.labels[self.one])
            .finish_non_exhaustive()
    }
}

impl FiniteSemiring {
    /// Builds a semiring from index tables, checking every axiom.
    pub fn new(
        labels: Vec<String>,
        add: Vec<Vec<usize>>,
        mul: Vec<Vec<usize>>,
        zero: usize,
        one: usize,
    ) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::Malformed("a semiring needs at least one element".into()));
        }
        for (i, l) in labels.iter().enumerate() {
            if l.is_empty() || l.chars().any(char::is_whitespace) {
                return Err(Error::Malformed(format!("bad label {l:?}")));
            }
            if labels[..i].contains(l) {
                return Err(Error::Malformed(format!("duplicate label `{l}`")));
            }
        }
        if zero >= n || one >= n {
            return Err(Error::Malformed("zero or one out of range".into()));
        }
        let flat = |name: &str, t: Vec<Vec<usize>>| -> Result<Vec<usize>> {
            if t.len() != n || t.iter().any(|row| row.len() != n) {
                return Err(Error::Malformed(format!("{name} table is not {n}x{n}")));
            }
            let v: Vec<usize> = t.into_iter().flatten().collect();
            if let Some(&bad) = v.iter().find(|&&x| x >= n) {
                return Err(Error::ElementOutOfRange { index: bad, size: n });
            }
            Ok(v)
        };
        let add = flat("add", add)?;
        let mul = flat("mul", mul)?;
        let r = FiniteSemiring { labels, add, mul, zero, one };
        if let Some((axiom, w)) = r.first_violation() {
            return Err(Error::Axiom {
                axiom,
                witness: w.into_iter().map(|i| r.labels[i].clone()).collect(),
            });
        }
        Ok(r)
    }

    /// Builds a semiring from closures over `0..n`.
    pub fn from_fn(
        labels: Vec<String>,
        zero: usize,
        one: usize,
        add: impl Fn(usize, usize) -> usize,
        mul: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        let n = labels.len();
        let table = |f: &dyn Fn(usize, usize) -> usize| -> Vec<Vec<usize>> {
            (0..n).map(|a| (0..n).map(|b| f(a, b)).collect()).collect()
        };
        let a = table(&add);
        let m = table(&mul);
        Self::new(labels, a, m, zero, one)
    }

    /// The one-element semiring in which 0 = 1.
    pub fn trivial() -> Self {
        FiniteSemiring {
            labels: vec!["0".into()],
            add: vec![0],
            mul: vec![0],
            zero: 0,
            one: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    /// Always false: every semiring has at least one element.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_trivial(&self) -> bool {
        self.zero == self.one
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.len()
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.len() + b]
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.len() + b]
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownElement(label.to_string()))
    }

    pub fn check_element(&self, a: usize) -> Result<usize> {
        if a < self.len() {
            Ok(a)
        } else {
            Err(Error::ElementOutOfRange { index: a, size: self.len() })
        }
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        (0..k).fold(self.one, |acc, _| self.mul(acc, a))
    }

    /// The distinct powers `1, h, h², ...` in order of first appearance.
    pub fn powers(&self, h: usize) -> Vec<usize> {
        let mut out = vec![self.one];
        loop {
            let next = self.mul(*out.last().unwrap(), h);
            if out.contains(&next) {
                return out;
            }
            out.push(next);
        }
    }

    pub fn is_unit(&self, a: usize) -> bool {
        self.elements().any(|b| self.mul(a, b) == self.one)
    }

    pub fn add_table(&self) -> Vec<Vec<usize>> {
        self.add.chunks(self.len()).map(<[usize]>::to_vec).collect()
    }

    pub fn mul_table(&self) -> Vec<Vec<usize>> {
        self.mul.chunks(self.len()).map(<[usize]>::to_vec).collect()
    }

    /// Direct product `self × other`, elements labelled `(a,b)`.
    pub fn product(&self, other: &FiniteSemiring) -> FiniteSemiring {
        let m = other.len();
        let labels = self
            .elements()
            .flat_map(|a| other.elements().map(move |b| (a, b)))
            .map(|(a, b)| format!("({},{})", self.label(a), other.label(b)))
            .collect();
        let pair = |i: usize| (i / m, i % m);
        FiniteSemiring::from_fn(
            labels,
            self.zero * m + other.zero,
            self.one * m + other.one,
            |i, j| {
                let ((a, b), (c, d)) = (pair(i), pair(j));
                self.add(a, c) * m + other.add(b, d)
            },
            |i, j| {
                let ((a, b), (c, d)) = (pair(i), pair(j));
                self.mul(a, c) * m + other.mul(b, d)
            },
        )
        .expect("products of semirings are semirings")
    }

    /// Same tables with new labels.
    pub fn relabeled(&self, labels: Vec<String>) -> Result<FiniteSemiring> {
        FiniteSemiring::new(labels, self.add_table(), self.mul_table(), self.zero, self.one)
    }

    /// Scans the axioms in [`Axiom::ALL`] order and returns the first
    /// violation with a witness tuple of element indices.
    pub fn first_violation(&self) -> Option<(Axiom, Vec<usize>)> {
        let n = self.len();
        let (z, o) = (self.zero, self.one);
        for a in 0..n {
            if self.add(z, a) != a || self.add(a, z) != a {
                return Some((Axiom::AdditiveIdentity, vec![a]));
            }
        }
        for a in 0..n {
            if self.mul(o, a) != a || self.mul(a, o) != a {
                return Some((Axiom::MultiplicativeIdentity, vec![a]));
            }
        }
        for a in 0..n {
            for b in 0..n {
                if self.add(a, b) != self.add(b, a) {
                    return Some((Axiom::AdditiveCommutativity, vec![a, b]));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                if self.mul(a, b) != self.mul(b, a) {
                    return Some((Axiom::MultiplicativeCommutativity, vec![a, b]));
                }
            }
        }
        let triples = || (0..n).flat_map(move |a| (0..n).flat_map(move |b| (0..n).map(move |c| (a, b, c))));
        for (a, b, c) in triples() {
            if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                return Some((Axiom::AdditiveAssociativity, vec![a, b, c]));
            }
        }
        for (a, b, c) in triples() {
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                return Some((Axiom::MultiplicativeAssociativity, vec![a, b, c]));
            }
        }
        for (a, b, c) in triples() {
            if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                return Some((Axiom::Distributivity, vec![a, b, c]));
            }
        }
        for a in 0..n {
            if self.mul(z, a) != z {
                return Some((Axiom::Annihilation, vec![a]));
            }
        }
        None
    }
}

/// Validates raw label tables; see [`RawTables`].
pub fn validate_semiring(raw: &RawTables) -> Result<FiniteSemiring> {
    raw.validate()
}
