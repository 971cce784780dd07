//! Extension data for one-relator groups and nonabelian factor systems.
//!
//! For a relator `r(x, y)`, an extension of `A` is described by `a` in `A`
//! and automorphisms `a_x`, `a_y` with `r(a_x, a_y) = inn(a)`, where
//! `inn(a): c -> a^-1 c a`. Automorphisms are permutations of `A`'s element
//! indices and compose left to right, like every other permutation here.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fpres::Word;
use crate::group::PermGroup;
use crate::iso::automorphism_group;
use crate::perm::Perm;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtensionDatum {
    /// Element index in `A`.
    pub a: usize,
    /// Element indices in the computed `Aut(A)`.
    pub ax: usize,
    pub ay: usize,
}

#[derive(Debug, Clone)]
pub struct ExtensionSolutions {
    pub aut: Arc<PermGroup>,
    pub solutions: Vec<ExtensionDatum>,
}

impl ExtensionSolutions {
    /// Orbits of solutions under simultaneous conjugation by `Aut(A)`:
    /// `(a, ax, ay) -> (s(a), s^-1 ax s, s^-1 ay s)`. Each orbit lists
    /// positions in `solutions`, orbits ordered by their first member.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let position: std::collections::HashMap<(usize, usize, usize), usize> = self
            .solutions
            .iter()
            .enumerate()
            .map(|(i, d)| ((d.a, d.ax, d.ay), i))
            .collect();
        let mut orbit_of = vec![usize::MAX; self.solutions.len()];
        let mut orbits = Vec::new();
        for start in 0..self.solutions.len() {
            if orbit_of[start] != usize::MAX {
                continue;
            }
            let id = orbits.len();
            let mut members = BTreeSet::new();
            let d = &self.solutions[start];
            for s in 0..self.aut.order() {
                let sigma = self.aut.element(s);
                let image = (
                    sigma.apply(d.a),
                    self.aut.conj(d.ax, s),
                    self.aut.conj(d.ay, s),
                );
                let j = position[&image];
                orbit_of[j] = id;
                members.insert(j);
            }
            orbits.push(members.into_iter().collect());
        }
        orbits
    }
}

/// `c -> a^-1 c a` as a permutation of element indices.
pub fn inner_automorphism(g: &PermGroup, a: usize) -> Perm {
    Perm::from_images((0..g.order()).map(|c| g.conj(c, a) as u32).collect()).expect("conjugation is bijective")
}

/// All `(a, ax, ay)` with `relator(ax, ay) = inn(a)`, ordered by `a`, then
/// `ax`, then `ay` (canonical element orders of `A` and `Aut(A)`).
pub fn solve_relator_extension(a: &PermGroup, relator: &Word, aut_cap: usize) -> Result<ExtensionSolutions> {
    relator.validate(2)?;
    let aut = Arc::new(automorphism_group(a, aut_cap)?.group);
    let inner: Vec<Perm> = (0..a.order()).map(|x| inner_automorphism(a, x)).collect();
    let mut solutions = Vec::new();
    let n = aut.order();
    // evaluate the relator once per pair, then match against each inn(a)
    let mut values = Vec::with_capacity(n * n);
    for ax in 0..n {
        for ay in 0..n {
            values.push(relator.eval(&[aut.element(ax).clone(), aut.element(ay).clone()], a.order()));
        }
    }
    for (x, inn) in inner.iter().enumerate() {
        for ax in 0..n {
            for ay in 0..n {
                if &values[ax * n + ay] == inn {
                    solutions.push(ExtensionDatum { a: x, ax, ay });
                }
            }
        }
    }
    Ok(ExtensionSolutions { aut, solutions })
}

/// Finite factor system: `k1[s]` is an automorphism of `A` (as a map on
/// element indices) and `k2[s * |T| + t]` an element index of `A`.
/// The extension multiplies by `(a, s)(b, t) = (a k1[s](b) k2(s, t), st)`.
#[derive(Debug, Clone)]
pub struct FactorSystem {
    pub t: Arc<PermGroup>,
    pub k1: Vec<Perm>,
    pub k2: Vec<usize>,
}

impl FactorSystem {
    fn k2(&self, s: usize, t: usize) -> usize {
        self.k2[s * self.t.order() + t]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FactorViolation {
    WrongShape,
    NotAutomorphism { s: usize },
    NotNormalized { s: usize, t: usize },
    /// `k1(s) k1(t) != inn' k1(st)` at the element `c`.
    TwistedMultiplicativity { s: usize, t: usize, c: usize },
    /// `k2(s,t) k2(st,u) != k1(s)(k2(t,u)) k2(s,tu)`.
    Cocycle { s: usize, t: usize, u: usize },
}

/// Every violated condition. With `phi_s = k1[s]` applied as a function:
/// `phi_1 = id`, `k2(1, t) = k2(s, 1) = 1`,
/// `phi_s(phi_t(c)) = k2(s,t) phi_st(c) k2(s,t)^-1` and
/// `k2(s,t) k2(st,u) = phi_s(k2(t,u)) k2(s,tu)`.
pub fn check_factor_system(fs: &FactorSystem, a: &PermGroup) -> Vec<FactorViolation> {
    let nt = fs.t.order();
    let na = a.order();
    if fs.k1.len() != nt
        || fs.k2.len() != nt * nt
        || fs.k1.iter().any(|p| p.degree() != na)
        || fs.k2.iter().any(|&x| x >= na)
    {
        return vec![FactorViolation::WrongShape];
    }
    let mut out = Vec::new();
    for (s, phi) in fs.k1.iter().enumerate() {
        let m = phi.images();
        if (0..na).any(|x| (0..na).any(|y| m[a.mul(x, y)] as usize != a.mul(m[x] as usize, m[y] as usize))) {
            out.push(FactorViolation::NotAutomorphism { s });
        }
    }
    if !out.is_empty() {
        return out;
    }
    if !fs.k1[0].is_identity() {
        out.push(FactorViolation::NotNormalized { s: 0, t: 0 });
    }
    for s in 0..nt {
        if fs.k2(0, s) != 0 {
            out.push(FactorViolation::NotNormalized { s: 0, t: s });
        }
        if s != 0 && fs.k2(s, 0) != 0 {
            out.push(FactorViolation::NotNormalized { s, t: 0 });
        }
    }
    let phi = |s: usize, c: usize| fs.k1[s].apply(c);
    for s in 0..nt {
        for t in 0..nt {
            let st = fs.t.mul(s, t);
            let k = fs.k2(s, t);
            if let Some(c) = (0..na).find(|&c| phi(s, phi(t, c)) != a.mul(a.mul(k, phi(st, c)), a.inv(k))) {
                out.push(FactorViolation::TwistedMultiplicativity { s, t, c });
            }
        }
    }
    for s in 0..nt {
        for t in 0..nt {
            for u in 0..nt {
                let st = fs.t.mul(s, t);
                let tu = fs.t.mul(t, u);
                let lhs = a.mul(fs.k2(s, t), fs.k2(st, u));
                let rhs = a.mul(phi(s, fs.k2(t, u)), fs.k2(s, tu));
                if lhs != rhs {
                    out.push(FactorViolation::Cocycle { s, t, u });
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone)]
pub struct Extension {
    /// Regular representation on `A x T`, point `a * |T| + s` for `(a, s)`.
    pub group: Arc<PermGroup>,
    /// The normal subgroup `{(a, 1)}`.
    pub kernel: Arc<PermGroup>,
}

/// Checks the factor system and builds the extension group.
pub fn verify_factor_system(fs: &FactorSystem, a: &PermGroup) -> Result<Extension> {
    if let Some(v) = check_factor_system(fs, a).first() {
        return Err(Error::CocycleViolation(format!("{:?}", v)));
    }
    let nt = fs.t.order();
    let na = a.order();
    let point = |x: usize, s: usize| (x * nt + s) as u32;
    let times = |(x, s): (usize, usize), (y, t): (usize, usize)| {
        let z = a.mul(a.mul(x, fs.k1[s].apply(y)), fs.k2(s, t));
        (z, fs.t.mul(s, t))
    };
    let right = |g: (usize, usize)| -> Perm {
        let images = (0..na)
            .flat_map(|x| (0..nt).map(move |s| (x, s)))
            .map(|e| {
                let (z, u) = times(e, g);
                point(z, u)
            })
            .collect();
        Perm::from_images(images).expect("right multiplication is bijective")
    };
    let a_gens: Vec<Perm> = (0..a.generators().len())
        .map(|i| right((a.generator_index(i), 0)))
        .collect();
    let mut gens = a_gens.clone();
    gens.extend((0..fs.t.generators().len()).map(|i| right((0, fs.t.generator_index(i)))));
    let degree = na * nt;
    let group = Arc::new(PermGroup::new(degree, gens)?);
    let kernel = Arc::new(PermGroup::new(degree, a_gens)?);
    debug_assert_eq!(group.order(), degree);
    Ok(Extension { group, kernel })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{cyclic, dihedral, elementary_abelian, symmetric};
    use crate::fpres::parse_word;
    use crate::group::quotient;
    use crate::iso::{is_isomorphic, DEFAULT_AUT_CAP};

    fn trefoil() -> Word {
        parse_word("x^3*y^-2", &["x".to_string(), "y".to_string()]).unwrap()
    }

    /// Automorphisms by trying every bijection of the element list.
    fn brute_automorphisms(g: &PermGroup) -> Vec<Vec<u32>> {
        fn rec(g: &PermGroup, map: &mut Vec<u32>, used: &mut Vec<bool>, out: &mut Vec<Vec<u32>>) {
            let k = map.len();
            if k == g.order() {
                let n = g.order();
                if (0..n).all(|x| (0..n).all(|y| map[g.mul(x, y)] as usize == g.mul(map[x] as usize, map[y] as usize))) {
                    out.push(map.clone());
                }
                return;
            }
            for y in 0..g.order() {
                if !used[y] {
                    used[y] = true;
                    map.push(y as u32);
                    rec(g, map, used, out);
                    map.pop();
                    used[y] = false;
                }
            }
        }
        let mut out = Vec::new();
        rec(g, &mut Vec::new(), &mut vec![false; g.order()], &mut out);
        out
    }

    fn brute_count(g: &PermGroup, relator: &Word) -> usize {
        let auts: Vec<Perm> = brute_automorphisms(g)
            .into_iter()
            .map(|m| Perm::from_images(m).unwrap())
            .collect();
        let mut count = 0;
        for x in 0..g.order() {
            let inn: Vec<u32> = (0..g.order())
                .map(|c| g.index_of(&g.element(c).conjugate_by(g.element(x))).unwrap() as u32)
                .collect();
            for ax in &auts {
                for ay in &auts {
                    let mut acc = Perm::identity(g.order());
                    for &l in relator.letters() {
                        let p = if l.abs() == 1 { ax } else { ay };
                        acc = acc.mul(&if l > 0 { p.clone() } else { p.inverse() });
                    }
                    if acc.images() == inn.as_slice() {
                        count += 1;
                    }
                }
            }
        }
        count
    }

    #[test]
    fn trefoil_counts_match_oracle() {
        for (g, expected) in [(cyclic(1), 1), (cyclic(2), 2), (cyclic(3), 6)] {
            let sol = solve_relator_extension(&g, &trefoil(), DEFAULT_AUT_CAP).unwrap();
            assert_eq!(sol.solutions.len(), expected);
            assert_eq!(brute_count(&g, &trefoil()), expected);
        }
        for g in [cyclic(4), symmetric(3), elementary_abelian(2, 2), cyclic(5)] {
            let sol = solve_relator_extension(&g, &trefoil(), DEFAULT_AUT_CAP).unwrap();
            assert_eq!(sol.solutions.len(), brute_count(&g, &trefoil()));
        }
    }

    #[test]
    fn solutions_satisfy_the_relator() {
        let g = symmetric(3);
        let sol = solve_relator_extension(&g, &trefoil(), DEFAULT_AUT_CAP).unwrap();
        assert!(!sol.solutions.is_empty());
        for d in &sol.solutions {
            let v = trefoil().eval(&[sol.aut.element(d.ax).clone(), sol.aut.element(d.ay).clone()], g.order());
            assert_eq!(v, inner_automorphism(&g, d.a));
        }
        let keys: Vec<_> = sol.solutions.iter().map(|d| (d.a, d.ax, d.ay)).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }

    #[test]
    fn count_is_invariant_under_isomorphic_copies() {
        let p = |c: &[Vec<usize>]| Perm::from_cycles(4, c).unwrap();
        let klein = PermGroup::new(4, vec![p(&[vec![1, 2], vec![3, 4]]), p(&[vec![1, 3], vec![2, 4]])]).unwrap();
        let c2 = PermGroup::new(4, vec![p(&[vec![1, 2], vec![3, 4]])]).unwrap();
        let c4 = PermGroup::new(4, vec![p(&[vec![1, 3, 2, 4]])]).unwrap();
        let pairs = [
            (symmetric(3), dihedral(6)),
            (elementary_abelian(2, 2), klein),
            (cyclic(2), c2),
            (cyclic(4), c4),
        ];
        for (g, h) in pairs {
            let rel = parse_word("x^2*y^3*x*y^-1", &["x".to_string(), "y".to_string()]).unwrap();
            for r in [trefoil(), rel] {
                let a = solve_relator_extension(&g, &r, DEFAULT_AUT_CAP).unwrap().solutions.len();
                let b = solve_relator_extension(&h, &r, DEFAULT_AUT_CAP).unwrap().solutions.len();
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn orbits_partition_solutions() {
        let g = symmetric(3);
        let sol = solve_relator_extension(&g, &trefoil(), DEFAULT_AUT_CAP).unwrap();
        let orbits = sol.orbits();
        let total: usize = orbits.iter().map(Vec::len).sum();
        assert_eq!(total, sol.solutions.len());
        assert!(orbits.iter().all(|o| sol.aut.order().is_multiple_of(o.len())));
    }

    fn c2_by_c2(k: usize) -> (PermGroup, FactorSystem) {
        let a = cyclic(2);
        let t = Arc::new(cyclic(2));
        let fs = FactorSystem {
            t,
            k1: vec![Perm::identity(2), Perm::identity(2)],
            k2: vec![0, 0, 0, k],
        };
        (a, fs)
    }

    #[test]
    fn nonsplit_c2_by_c2_is_c4() {
        let (a, fs) = c2_by_c2(1);
        let ext = verify_factor_system(&fs, &a).unwrap();
        assert_eq!(ext.group.order(), 4);
        assert!(ext.group.element_orders().contains(&4));
        let (a, fs) = c2_by_c2(0);
        let ext = verify_factor_system(&fs, &a).unwrap();
        assert!(!ext.group.element_orders().contains(&4));
    }

    #[test]
    fn split_extension_is_semidirect() {
        let a = cyclic(3);
        let t = Arc::new(cyclic(2));
        let inv = Perm::from_images((0..3).map(|x| a.inv(x) as u32).collect()).unwrap();
        let fs = FactorSystem {
            t: t.clone(),
            k1: vec![Perm::identity(3), inv],
            k2: vec![0; 4],
        };
        let ext = verify_factor_system(&fs, &a).unwrap();
        assert_eq!(ext.group.order(), 6);
        assert!(is_isomorphic(&ext.group, &Arc::new(symmetric(3))).unwrap().is_some());
        let (q, _) = quotient(&ext.group, &ext.kernel).unwrap();
        assert!(is_isomorphic(&q, &t).unwrap().is_some());
        assert!(is_isomorphic(&ext.kernel, &Arc::new(a)).unwrap().is_some());
    }

    #[test]
    fn broken_cocycle_names_a_triple() {
        let a = cyclic(3);
        let t = Arc::new(cyclic(3));
        let mut k2 = vec![0; 9];
        k2[4] = 1; // k2(1, 1) only
        let fs = FactorSystem {
            t,
            k1: vec![Perm::identity(3); 3],
            k2,
        };
        let violations = check_factor_system(&fs, &a);
        assert!(violations.iter().any(|v| matches!(v, FactorViolation::Cocycle { .. })));
        let err = verify_factor_system(&fs, &a).unwrap_err();
        assert!(matches!(err, Error::CocycleViolation(ref s) if s.contains("Cocycle")));
    }
}
