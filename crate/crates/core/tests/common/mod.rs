//! Brute-force oracles shared by the integration tests. They work from the
//! definitions directly and share no code with the library beyond reading
//! tables.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use finscheme::semiring::parse_semiring;
use finscheme::{ContinuousMap, FiniteSemiring, FiniteTopSpace};

pub fn catalog_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../catalog")
}

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

/// The bundled catalog files, read and validated, sorted by name.
pub fn catalog() -> Vec<(String, FiniteSemiring)> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(catalog_dir())
        .expect("catalog directory")
        .map(|e| e.expect("entry").path())
        .filter(|p| p.extension().is_some_and(|x| x == "sr"))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let name = p.file_stem().unwrap().to_string_lossy().into_owned();
            let r = parse_semiring(&std::fs::read_to_string(&p).unwrap()).unwrap_or_else(|e| panic!("{name}: {e}"));
            (name, r)
        })
        .collect()
}

/// Names of every axiom that fails somewhere in the tables.
pub fn axiom_violations(add: &[Vec<usize>], mul: &[Vec<usize>], zero: usize, one: usize) -> BTreeSet<&'static str> {
    let n = add.len();
    let mut v = BTreeSet::new();
    for a in 0..n {
        if add[zero][a] != a || add[a][zero] != a {
            v.insert("additive identity");
        }
        if mul[one][a] != a || mul[a][one] != a {
            v.insert("multiplicative identity");
        }
        if mul[zero][a] != zero || mul[a][zero] != zero {
            v.insert("annihilation");
        }
        for b in 0..n {
            if add[a][b] != add[b][a] {
                v.insert("additive commutativity");
            }
            if mul[a][b] != mul[b][a] {
                v.insert("multiplicative commutativity");
            }
            for c in 0..n {
                if add[add[a][b]][c] != add[a][add[b][c]] {
                    v.insert("additive associativity");
                }
                if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                    v.insert("multiplicative associativity");
                }
                if mul[a][add[b][c]] != add[mul[a][b]][mul[a][c]] || mul[add[b][c]][a] != add[mul[b][a]][mul[c][a]] {
                    v.insert("distributivity");
                }
            }
        }
    }
    v
}

fn subsets(n: usize) -> impl Iterator<Item = BTreeSet<usize>> {
    (0u32..1 << n).map(move |m| (0..n).filter(|&i| m >> i & 1 == 1).collect())
}

pub fn is_ideal_oracle(r: &FiniteSemiring, s: &BTreeSet<usize>) -> bool {
    s.contains(&r.zero())
        && s.iter().all(|&a| s.iter().all(|&b| s.contains(&r.add(a, b))))
        && s.iter().all(|&a| r.elements().all(|x| s.contains(&r.mul(a, x))))
}

/// Prime ideals by scanning every subset.
pub fn prime_ideals_oracle(r: &FiniteSemiring) -> Vec<BTreeSet<usize>> {
    subsets(r.len())
        .filter(|s| {
            let comp: Vec<usize> = r.elements().filter(|a| !s.contains(a)).collect();
            is_ideal_oracle(r, s)
                && comp.contains(&r.one())
                && comp.iter().all(|&a| comp.iter().all(|&b| comp.contains(&r.mul(a, b))))
        })
        .collect()
}

pub fn is_k_ideal_oracle(r: &FiniteSemiring, s: &BTreeSet<usize>) -> bool {
    r.elements().all(|a| r.elements().all(|b| !(s.contains(&r.add(a, b)) && s.contains(&b)) || s.contains(&a)))
}

/// Primes `p` with `h ∉ p`, as a set of positions in `primes`.
pub fn basic_open_oracle(primes: &[BTreeSet<usize>], h: usize) -> BTreeSet<usize> {
    (0..primes.len()).filter(|&i| !primes[i].contains(&h)).collect()
}

/// Congruences as canonical block labelings, found by scanning partitions.
pub fn congruences_oracle(r: &FiniteSemiring) -> Vec<Vec<usize>> {
    fn go(n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        let next = cur.iter().max().map_or(0, |m| m + 1);
        for b in 0..=next {
            cur.push(b);
            go(n, cur, out);
            cur.pop();
        }
    }
    let mut all = Vec::new();
    go(r.len(), &mut Vec::new(), &mut all);
    all.into_iter()
        .filter(|l| {
            r.elements().all(|a| {
                r.elements().all(|b| {
                    l[a] != l[b]
                        || r.elements().all(|c| l[r.add(a, c)] == l[r.add(b, c)] && l[r.mul(a, c)] == l[r.mul(b, c)])
                })
            })
        })
        .collect()
}

/// Primality flags `[weak, strong, twisted]` of a block labeling, straight
/// from the definitions, for proper congruences only.
pub fn primality_oracle(r: &FiniteSemiring, l: &[usize]) -> [bool; 3] {
    let rel = |a: usize, b: usize| l[a] == l[b];
    let z = r.zero();
    if rel(r.one(), z) {
        return [false; 3];
    }
    let e: Vec<usize> = r.elements().collect();
    let mut weak = true;
    let mut strong = true;
    let mut twisted = true;
    for &a in &e {
        for &b in &e {
            if rel(r.mul(a, b), z) && !rel(a, z) && !rel(b, z) {
                weak = false;
            }
            for &c in &e {
                if rel(r.mul(a, b), r.mul(a, c)) && !rel(a, z) && !rel(b, c) {
                    strong = false;
                }
                for &d in &e {
                    let lhs = r.add(r.mul(a, c), r.mul(b, d));
                    let rhs = r.add(r.mul(a, d), r.mul(b, c));
                    if rel(lhs, rhs) && !rel(a, b) && !rel(c, d) {
                        twisted = false;
                    }
                }
            }
        }
    }
    [weak, strong, twisted]
}

/// `R[h⁻¹]` realized as `eR` for the idempotent power `e` of `h`: a map
/// inverting `h` inverts `e`, and an invertible idempotent is 1.
pub fn localization_oracle(r: &FiniteSemiring, h: usize) -> FiniteSemiring {
    // the cyclic semigroup generated by h holds exactly one idempotent
    let mut p = h;
    let mut e = None;
    for _ in 0..2 * r.len() {
        if r.mul(p, p) == p {
            e = Some(p);
            break;
        }
        p = r.mul(p, h);
    }
    let e = e.expect("some power of h is idempotent");
    let carrier: Vec<usize> = r.elements().map(|a| r.mul(e, a)).collect::<BTreeSet<_>>().into_iter().collect();
    let pos = |x: usize| carrier.iter().position(|&y| y == x).expect("closed under the operations");
    let labels = carrier.iter().map(|&x| r.label(x).to_string()).collect();
    FiniteSemiring::from_fn(
        labels,
        pos(r.zero()),
        pos(e),
        |a, b| pos(r.add(carrier[a], carrier[b])),
        |a, b| pos(r.mul(carrier[a], carrier[b])),
    )
    .expect("eR is a semiring")
}

/// Whether two semirings are isomorphic, by trying every bijection.
pub fn isomorphic_oracle(a: &FiniteSemiring, b: &FiniteSemiring) -> bool {
    fn go(a: &FiniteSemiring, b: &FiniteSemiring, map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let i = map.len();
        if i == a.len() {
            return map[a.zero()] == b.zero()
                && map[a.one()] == b.one()
                && a.elements().all(|x| {
                    a.elements()
                        .all(|y| map[a.add(x, y)] == b.add(map[x], map[y]) && map[a.mul(x, y)] == b.mul(map[x], map[y]))
                });
        }
        for j in 0..b.len() {
            if !used[j] {
                used[j] = true;
                map.push(j);
                if go(a, b, map, used) {
                    return true;
                }
                map.pop();
                used[j] = false;
            }
        }
        false
    }
    a.len() == b.len() && go(a, b, &mut Vec::new(), &mut vec![false; b.len()])
}

pub fn continuous_oracle(f: &ContinuousMap) -> bool {
    f.target().opens().iter().all(|u| {
        let pre: BTreeSet<usize> = f.source().points().filter(|&p| u.contains(&f.apply(p))).collect();
        f.source().opens().contains(&pre)
    })
}

/// `y ∈ cl{x}`, from the open sets.
pub fn specializes_oracle(x: &FiniteTopSpace, p: usize, q: usize) -> bool {
    x.opens().iter().all(|u| !u.contains(&q) || u.contains(&p))
}
