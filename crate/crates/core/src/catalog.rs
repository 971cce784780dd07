//! Named groups: standard permutation realizations, isomorphism-invariant
//! fingerprints and identification against a small built-in catalog.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::iso::is_isomorphic;
use crate::perm::Perm;

fn perm(degree: usize, cycles: &[&[usize]]) -> Perm {
    let cycles: Vec<Vec<usize>> = cycles.iter().map(|c| c.to_vec()).collect();
    Perm::from_cycles(degree, &cycles).expect("valid cycles")
}

pub fn cyclic(n: usize) -> PermGroup {
    assert!(n >= 1);
    if n == 1 {
        return PermGroup::trivial(1);
    }
    let c: Vec<usize> = (1..=n).collect();
    PermGroup::new(n, vec![perm(n, &[&c])]).expect("cyclic group")
}

/// Dihedral group of the given order (`2n`), acting on `n` points.
pub fn dihedral(order: usize) -> PermGroup {
    assert!(order >= 2 && order.is_multiple_of(2));
    let n = order / 2;
    match n {
        1 => cyclic(2),
        2 => elementary_abelian(2, 2),
        _ => {
            let rot: Vec<usize> = (1..=n).collect();
            let refl: Vec<Vec<usize>> = (1..=n / 2).map(|i| vec![i, n + 1 - i]).collect();
            let refl = Perm::from_cycles(n, &refl).expect("reflection");
            PermGroup::new(n, vec![perm(n, &[&rot]), refl]).expect("dihedral group")
        }
    }
}

pub fn symmetric(n: usize) -> PermGroup {
    assert!(n >= 1);
    if n == 1 {
        return PermGroup::trivial(1);
    }
    let c: Vec<usize> = (1..=n).collect();
    let mut gens = vec![perm(n, &[&[1, 2]])];
    if n > 2 {
        gens.push(perm(n, &[&c]));
    }
    PermGroup::new(n, gens).expect("symmetric group")
}

pub fn alternating(n: usize) -> PermGroup {
    assert!(n >= 1);
    if n < 3 {
        return PermGroup::trivial(n);
    }
    let gens = (3..=n).map(|k| perm(n, &[&[1, 2, k]])).collect();
    PermGroup::new(n, gens).expect("alternating group")
}

/// `C_p^k` acting on `p * k` points.
pub fn elementary_abelian(p: usize, k: usize) -> PermGroup {
    let base = cyclic(p);
    (1..k).fold(base.clone(), |acc, _| direct_product(&acc, &base))
}

pub fn quaternion8() -> PermGroup {
    PermGroup::new(
        8,
        vec![
            perm(8, &[&[1, 2, 4, 7], &[3, 6, 8, 5]]),
            perm(8, &[&[1, 3, 4, 8], &[2, 5, 7, 6]]),
        ],
    )
    .expect("quaternion group")
}

/// Matrices over `GF(q)` (q prime) acting on the right of nonzero row vectors.
fn linear_group(q: usize, dim: usize, mats: &[Vec<Vec<usize>>]) -> PermGroup {
    let vectors: Vec<Vec<usize>> = (1..q.pow(dim as u32))
        .map(|mut code| {
            let mut v = vec![0; dim];
            for x in v.iter_mut() {
                *x = code % q;
                code /= q;
            }
            v
        })
        .collect();
    let lookup = |v: &[usize]| vectors.iter().position(|w| w == v).expect("nonzero vector");
    let gens = mats
        .iter()
        .map(|m| {
            let images = vectors
                .iter()
                .map(|v| {
                    let w: Vec<usize> = (0..dim)
                        .map(|j| (0..dim).map(|i| v[i] * m[i][j]).sum::<usize>() % q)
                        .collect();
                    lookup(&w) as u32
                })
                .collect();
            Perm::from_images(images).expect("invertible matrix")
        })
        .collect();
    PermGroup::new(vectors.len(), gens).expect("linear group")
}

pub fn sl23() -> PermGroup {
    linear_group(3, 2, &[vec![vec![1, 1], vec![0, 1]], vec![vec![1, 0], vec![1, 1]]])
}

pub fn gl23() -> PermGroup {
    linear_group(
        3,
        2,
        &[
            vec![vec![1, 1], vec![0, 1]],
            vec![vec![1, 0], vec![1, 1]],
            vec![vec![2, 0], vec![0, 1]],
        ],
    )
}

pub fn sl32() -> PermGroup {
    let mut mats = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                let mut m = vec![vec![0; 3]; 3];
                for (k, row) in m.iter_mut().enumerate() {
                    row[k] = 1;
                }
                m[i][j] = 1;
                mats.push(m);
            }
        }
    }
    linear_group(2, 3, &mats)
}

/// `a x b` acting on the disjoint union of the two point sets.
pub fn direct_product(a: &PermGroup, b: &PermGroup) -> PermGroup {
    let (da, db) = (a.degree(), b.degree());
    let n = da + db;
    let mut gens = Vec::new();
    for g in a.generators() {
        gens.push(g.extend(n).expect("extend"));
    }
    for g in b.generators() {
        let mut images: Vec<u32> = (0..da as u32).collect();
        images.extend(g.images().iter().map(|&i| i + da as u32));
        gens.push(Perm::from_images(images).expect("shifted"));
    }
    PermGroup::new(n, gens).expect("direct product")
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Fingerprint {
    pub order: usize,
    /// element order -> number of elements of that order
    pub element_orders: BTreeMap<u64, usize>,
    /// invariant factors of `G/[G,G]`, each dividing the next
    pub abelian_invariants: Vec<u64>,
    pub center_order: usize,
    pub derived_order: usize,
    pub class_count: usize,
    pub exponent: u64,
}

fn prime_factors(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Invariant factors of `G/D` for a normal subgroup `D` with abelian
/// quotient, from counts of cosets killed by each prime power.
fn abelian_quotient_invariants(g: &PermGroup, d: &PermGroup) -> Vec<u64> {
    let in_d: Vec<bool> = g.elements().iter().map(|p| d.contains(p)).collect();
    let quotient_order = (g.order() / d.order()) as u64;
    let mut per_prime: Vec<Vec<u64>> = Vec::new();
    for (p, e) in prime_factors(quotient_order) {
        // ranks[k] = log_p #{x in G/D : x^(p^k) = 1}
        let mut ranks = vec![0u32];
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            let killed = (0..g.order()).filter(|&x| in_d[g.pow(x, pk)]).count() / d.order();
            let mut r = 0;
            let mut c = killed as u64;
            while c > 1 {
                c /= p;
                r += 1;
            }
            ranks.push(r);
        }
        // at_least[k] = number of cyclic factors of order >= p^k
        let mut powers = Vec::new();
        for k in 1..ranks.len() {
            let at_least = ranks[k] - ranks[k - 1];
            let next = if k + 1 < ranks.len() { ranks[k + 1] - ranks[k] } else { 0 };
            for _ in 0..(at_least - next) {
                powers.push(p.pow(k as u32));
            }
        }
        powers.sort_unstable_by(|a, b| b.cmp(a));
        per_prime.push(powers);
    }
    let len = per_prime.iter().map(Vec::len).max().unwrap_or(0);
    let mut factors: Vec<u64> = (0..len)
        .map(|i| per_prime.iter().map(|v| v.get(i).copied().unwrap_or(1)).product())
        .collect();
    factors.reverse();
    factors
}

pub fn fingerprint(g: &PermGroup) -> Fingerprint {
    let mut element_orders = BTreeMap::new();
    for &o in g.element_orders() {
        *element_orders.entry(o).or_insert(0) += 1;
    }
    let derived = g.derived_subgroup();
    Fingerprint {
        order: g.order(),
        element_orders,
        abelian_invariants: abelian_quotient_invariants(g, &derived),
        center_order: g.center_indices().len(),
        derived_order: derived.order(),
        class_count: g.conjugacy_classes().len(),
        exponent: g.exponent(),
    }
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub realization: Arc<PermGroup>,
    pub fingerprint: Fingerprint,
}

fn entry(name: &str, g: PermGroup) -> CatalogEntry {
    let fingerprint = fingerprint(&g);
    CatalogEntry {
        name: name.to_string(),
        realization: Arc::new(g),
        fingerprint,
    }
}

/// The built-in catalog, in a fixed order.
pub fn catalog() -> &'static [CatalogEntry] {
    static CATALOG: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    CATALOG.get_or_init(|| {
        let mut v = vec![entry("1", PermGroup::trivial(1))];
        for n in 2..=16 {
            v.push(entry(&format!("C{}", n), cyclic(n)));
        }
        v.push(entry("C2^2", elementary_abelian(2, 2)));
        v.push(entry("C2^3", elementary_abelian(2, 3)));
        v.push(entry("C4 x C2^3", direct_product(&cyclic(4), &elementary_abelian(2, 3))));
        for order in [8, 10, 12, 14, 16] {
            v.push(entry(&format!("D{}", order), dihedral(order)));
        }
        for n in 3..=5 {
            v.push(entry(&format!("S{}", n), symmetric(n)));
        }
        v.push(entry("A4", alternating(4)));
        v.push(entry("A5", alternating(5)));
        v.push(entry("Q8", quaternion8()));
        v.push(entry("SL(2,3)", sl23()));
        v.push(entry("GL(2,3)", gl23()));
        v.push(entry("SL(3,2)", sl32()));
        v.push(entry("S4 x C2", direct_product(&symmetric(4), &cyclic(2))));
        v.push(entry("C3 x SL(2,3)", direct_product(&cyclic(3), &sl23())));
        v
    })
}

fn squash(name: &str) -> String {
    name.chars().filter(|c| !c.is_whitespace()).collect()
}

/// Resolves a group name: catalog names, the families `Cn`, `Dn` (by
/// order), `Sn`, `An`, `Cp^k`, and direct products written `A x B`.
pub fn lookup(name: &str) -> Result<PermGroup> {
    let key = squash(name);
    if let Some(e) = catalog().iter().find(|e| squash(&e.name) == key) {
        return Ok((*e.realization).clone());
    }
    if name.contains(" x ") {
        let mut parts = name.split(" x ");
        let first = lookup(parts.next().unwrap_or_default())?;
        return parts.try_fold(first, |acc, p| Ok(direct_product(&acc, &lookup(p)?)));
    }
    let num = |s: &str| s.parse::<usize>().ok().filter(|&n| (1..=64).contains(&n));
    let unknown = || Error::UnknownName(name.to_string());
    if key == "1" || key == "I" {
        return Ok(PermGroup::trivial(1));
    }
    if let Some((base, exp)) = key.split_once('^') {
        let k = num(exp).ok_or_else(unknown)?;
        let p = base.strip_prefix('C').and_then(num).ok_or_else(unknown)?;
        return Ok(elementary_abelian(p, k));
    }
    let mut chars = key.chars();
    let head = chars.next().ok_or_else(unknown)?;
    let n = num(chars.as_str()).ok_or_else(unknown)?;
    match head {
        'C' => Ok(cyclic(n)),
        'D' if n % 2 == 0 => Ok(dihedral(n)),
        'S' if n <= 8 => Ok(symmetric(n)),
        'A' if n <= 8 => Ok(alternating(n)),
        _ => Err(unknown()),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Identification {
    Named { name: String },
    Unknown { order: usize, fingerprint: Fingerprint },
}

impl Identification {
    pub fn name(&self) -> Option<&str> {
        match self {
            Identification::Named { name } => Some(name),
            Identification::Unknown { .. } => None,
        }
    }

    /// Catalog name, or `Unknown(order)`.
    pub fn label(&self) -> String {
        match self {
            Identification::Named { name } => name.clone(),
            Identification::Unknown { order, .. } => format!("Unknown({})", order),
        }
    }
}

/// Names `g` only after an explicit isomorphism to a catalog entry has been
/// found; fingerprint equality alone is never enough.
pub fn identify(g: &Arc<PermGroup>) -> Result<Identification> {
    let fp = fingerprint(g);
    for e in catalog() {
        if e.fingerprint == fp && is_isomorphic(g, &e.realization)?.is_some() {
            return Ok(Identification::Named {
                name: e.name.clone(),
            });
        }
    }
    Ok(Identification::Unknown {
        order: g.order(),
        fingerprint: fp,
    })
}
