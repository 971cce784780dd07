//! Isomorphism, automorphism and homomorphism searches by backtracking over
//! images of a small generating set.
//!
//! The generating set is chosen greedily; at each level the partial map on
//! the subgroup generated so far is rebuilt and checked for consistency, so
//! dead branches are cut as soon as a relation among the chosen generators
//! is violated.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{PermGroup, DEFAULT_ELEMENT_CAP};
use crate::hom::GroupHom;
use crate::perm::Perm;

pub const DEFAULT_AUT_CAP: usize = 512;

const UNSET: u32 = u32::MAX;

/// Isomorphism-invariant data attached to a single element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementSignature {
    pub order: u64,
    pub class_size: usize,
    pub square_roots: usize,
}

pub fn element_signatures(g: &PermGroup) -> Vec<ElementSignature> {
    let n = g.order();
    let mut class_size = vec![0; n];
    for c in g.conjugacy_classes() {
        for &x in c {
            class_size[x] = c.len();
        }
    }
    let mut roots = vec![0usize; n];
    for y in 0..n {
        roots[g.mul(y, y)] += 1;
    }
    let orders = g.element_orders();
    (0..n)
        .map(|x| ElementSignature {
            order: orders[x],
            class_size: class_size[x],
            square_roots: roots[x],
        })
        .collect()
}

fn closure(g: &PermGroup, gens: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; g.order()];
    seen[0] = true;
    let mut members = vec![0];
    let mut k = 0;
    while k < members.len() {
        let x = members[k];
        k += 1;
        for &s in gens {
            let y = g.mul(x, s);
            if !seen[y] {
                seen[y] = true;
                members.push(y);
            }
        }
    }
    members
}

/// A short generating sequence `g_1, g_2, ..` with each `g_i` outside
/// `<g_1, .., g_{i-1}>`, chosen to grow the subgroup as fast as possible.
/// Ties go to elements with the rarest signature, then to the earliest index.
pub fn search_generators(g: &PermGroup, sigs: &[ElementSignature]) -> Vec<usize> {
    let n = g.order();
    let mut freq = std::collections::HashMap::new();
    for s in sigs {
        *freq.entry(*s).or_insert(0usize) += 1;
    }
    let mut gens = Vec::new();
    let mut inside = vec![false; n];
    inside[0] = true;
    let mut size = 1;
    while size < n {
        let mut best: Option<(usize, usize, usize)> = None;
        for x in 0..n {
            if inside[x] {
                continue;
            }
            let mut trial = gens.clone();
            trial.push(x);
            let grown = closure(g, &trial).len();
            let key = (grown, freq[&sigs[x]], x);
            best = match best {
                None => Some(key),
                Some(b) if (key.0 > b.0) || (key.0 == b.0 && (key.1, key.2) < (b.1, b.2)) => Some(key),
                keep => keep,
            };
        }
        let (_, _, x) = best.expect("element outside proper subgroup");
        gens.push(x);
        inside.iter_mut().for_each(|b| *b = false);
        for y in closure(g, &gens) {
            inside[y] = true;
        }
        size = inside.iter().filter(|&&b| b).count();
    }
    gens
}

struct Backtrack<'a> {
    g: &'a PermGroup,
    h: &'a PermGroup,
    gens: Vec<usize>,
    candidates: Vec<Vec<usize>>,
    injective: bool,
}

impl Backtrack<'_> {
    /// Map on `<gens[..images.len()]>` determined by `images`, or `None` if
    /// inconsistent (or non-injective when required).
    fn partial_map(&self, images: &[usize]) -> Option<Vec<u32>> {
        let mut map = vec![UNSET; self.g.order()];
        let mut used = if self.injective {
            vec![false; self.h.order()]
        } else {
            Vec::new()
        };
        map[0] = 0;
        if self.injective {
            used[0] = true;
        }
        let mut queue = vec![0usize];
        let mut k = 0;
        while k < queue.len() {
            let x = queue[k];
            k += 1;
            for (t, &img) in images.iter().enumerate() {
                let y = self.g.mul(x, self.gens[t]);
                let im = self.h.mul(map[x] as usize, img) as u32;
                if map[y] == UNSET {
                    if self.injective {
                        if used[im as usize] {
                            return None;
                        }
                        used[im as usize] = true;
                    }
                    map[y] = im;
                    queue.push(y);
                } else if map[y] != im {
                    return None;
                }
            }
        }
        Some(map)
    }

    /// Visits every complete consistent assignment in canonical order until
    /// `visit` returns `false`.
    fn run(&self, visit: &mut dyn FnMut(&[u32]) -> bool) {
        let mut images = Vec::with_capacity(self.gens.len());
        self.descend(&mut images, visit);
    }

    fn descend(&self, images: &mut Vec<usize>, visit: &mut dyn FnMut(&[u32]) -> bool) -> bool {
        let level = images.len();
        if level == self.gens.len() {
            let map = self.partial_map(images).expect("checked at previous level");
            return visit(&map);
        }
        for &c in &self.candidates[level] {
            images.push(c);
            if self.partial_map(images).is_some() && !self.descend(images, visit) {
                images.pop();
                return false;
            }
            images.pop();
        }
        true
    }
}

fn hom_from_map(g: &Arc<PermGroup>, h: &Arc<PermGroup>, map: &[u32]) -> GroupHom {
    let gens: Vec<Perm> = (0..g.generators().len())
        .map(|s| h.element(map[g.generator_index(s)] as usize).clone())
        .collect();
    GroupHom::new(g.clone(), h.clone(), gens).expect("backtrack result is a homomorphism")
}

/// Cheap invariants compared before any search.
fn coarse_invariants(g: &PermGroup) -> (usize, Vec<u64>, usize, usize, usize) {
    let mut orders = g.element_orders().to_vec();
    orders.sort_unstable();
    (
        g.order(),
        orders,
        g.center_indices().len(),
        g.derived_subgroup().order(),
        g.conjugacy_classes().len(),
    )
}

/// An explicit isomorphism `g -> h`, or `None`. The first isomorphism in
/// canonical search order is returned.
pub fn is_isomorphic(g: &Arc<PermGroup>, h: &Arc<PermGroup>) -> Result<Option<GroupHom>> {
    if g.order() != h.order() {
        return Ok(None);
    }
    if coarse_invariants(g) != coarse_invariants(h) {
        return Ok(None);
    }
    let gs = element_signatures(g);
    let hs = element_signatures(h);
    let mut a = gs.clone();
    let mut b = hs.clone();
    a.sort_unstable();
    b.sort_unstable();
    if a != b {
        return Ok(None);
    }
    let gens = search_generators(g, &gs);
    let candidates = gens
        .iter()
        .map(|&x| (0..h.order()).filter(|&y| hs[y] == gs[x]).collect())
        .collect();
    let bt = Backtrack {
        g,
        h,
        gens,
        candidates,
        injective: true,
    };
    let mut found = None;
    bt.run(&mut |map| {
        found = Some(map.to_vec());
        false
    });
    Ok(found.map(|m| hom_from_map(g, h, &m)))
}

/// The automorphism group of `g`, acting on `g`'s canonical element list.
#[derive(Debug, Clone)]
pub struct AutomorphismGroup {
    pub group: PermGroup,
    /// Every automorphism as a permutation of element indices, in search order.
    pub automorphisms: Vec<Perm>,
}

impl AutomorphismGroup {
    pub fn order(&self) -> usize {
        self.automorphisms.len()
    }
}

pub fn automorphism_group(g: &PermGroup, cap: usize) -> Result<AutomorphismGroup> {
    if g.order() > cap {
        return Err(Error::CapExceeded { cap });
    }
    let sigs = element_signatures(g);
    let gens = search_generators(g, &sigs);
    let candidates = gens
        .iter()
        .map(|&x| (0..g.order()).filter(|&y| sigs[y] == sigs[x]).collect())
        .collect();
    let bt = Backtrack {
        g,
        h: g,
        gens,
        candidates,
        injective: true,
    };
    let mut automorphisms = Vec::new();
    let mut overflow = false;
    bt.run(&mut |map| {
        if automorphisms.len() == DEFAULT_ELEMENT_CAP {
            overflow = true;
            return false;
        }
        automorphisms.push(Perm::from_images(map.to_vec()).expect("bijective map"));
        true
    });
    if overflow {
        return Err(Error::CapExceeded { cap: DEFAULT_ELEMENT_CAP });
    }
    let degree = g.order();
    let mut chosen: Vec<Perm> = Vec::new();
    let mut group = PermGroup::trivial(degree);
    for a in &automorphisms {
        if !group.contains(a) {
            chosen.push(a.clone());
            group = PermGroup::new(degree, chosen.clone())?;
        }
    }
    debug_assert_eq!(group.order(), automorphisms.len());
    Ok(AutomorphismGroup {
        group,
        automorphisms,
    })
}

/// Visits every homomorphism `g -> h` (as element-index maps) in canonical
/// order until `visit` returns `false`.
pub fn for_each_homomorphism(g: &PermGroup, h: &PermGroup, visit: &mut dyn FnMut(&[u32]) -> bool) {
    let sigs = element_signatures(g);
    let gens = search_generators(g, &sigs);
    let h_orders = h.element_orders();
    let candidates = gens
        .iter()
        .map(|&x| {
            let ox = g.element_orders()[x];
            (0..h.order()).filter(|&y| ox.is_multiple_of(h_orders[y])).collect()
        })
        .collect();
    let bt = Backtrack {
        g,
        h,
        gens,
        candidates,
        injective: false,
    };
    bt.run(visit);
}

pub fn all_homomorphisms(g: &Arc<PermGroup>, h: &Arc<PermGroup>) -> Vec<GroupHom> {
    let mut out = Vec::new();
    for_each_homomorphism(g, h, &mut |map| {
        out.push(hom_from_map(g, h, map));
        true
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{cyclic, dihedral, elementary_abelian, symmetric};

    fn arc(g: PermGroup) -> Arc<PermGroup> {
        Arc::new(g)
    }

    #[test]
    fn c4_vs_klein() {
        let k = arc(elementary_abelian(2, 2));
        assert!(is_isomorphic(&arc(cyclic(4)), &k).unwrap().is_none());
    }

    #[test]
    fn self_isomorphism_is_identity() {
        let g = arc(symmetric(4));
        let iso = is_isomorphic(&g, &g).unwrap().unwrap();
        assert_eq!(iso.map(), GroupHom::identity(g.clone()).map());
    }

    #[test]
    fn s3_is_dihedral_of_order_6() {
        let s3 = arc(
            PermGroup::new(
                3,
                vec![
                    Perm::from_cycles(3, &[vec![1, 2]]).unwrap(),
                    Perm::from_cycles(3, &[vec![1, 2, 3]]).unwrap(),
                ],
            )
            .unwrap(),
        );
        let d6 = arc(dihedral(6));
        let iso = is_isomorphic(&s3, &d6).unwrap().expect("S3 = D6");
        assert!(iso.is_bijective());
        // brute force oracle: some bijection of 6 elements preserves products
        assert!(brute_force_isomorphic(&s3, &d6));
    }

    /// Tries every bijection between the element lists.
    pub(crate) fn brute_force_isomorphic(g: &PermGroup, h: &PermGroup) -> bool {
        fn rec(g: &PermGroup, h: &PermGroup, map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
            let k = map.len();
            if k == g.order() {
                return (0..k).all(|i| (0..k).all(|j| map[g.mul(i, j)] == h.mul(map[i], map[j])));
            }
            for y in 0..h.order() {
                if !used[y] {
                    used[y] = true;
                    map.push(y);
                    if rec(g, h, map, used) {
                        return true;
                    }
                    map.pop();
                    used[y] = false;
                }
            }
            false
        }
        g.order() == h.order() && rec(g, h, &mut Vec::new(), &mut vec![false; h.order()])
    }

    #[test]
    fn automorphism_examples() {
        assert_eq!(automorphism_group(&elementary_abelian(2, 3), DEFAULT_AUT_CAP).unwrap().order(), 168);
        assert_eq!(automorphism_group(&cyclic(2), DEFAULT_AUT_CAP).unwrap().order(), 1);
        let s3 = symmetric(3);
        let aut = automorphism_group(&s3, DEFAULT_AUT_CAP).unwrap();
        assert_eq!(aut.order(), 6);
        // all inner: each automorphism is conjugation by some element
        for a in &aut.automorphisms {
            assert!((0..6).any(|p| (0..6).all(|x| a.apply(x) == s3.conj(x, p))));
        }
    }

    /// Oracle for automorphism counts: every bijection fixing the identity
    /// that preserves products.
    fn brute_force_aut_order(g: &PermGroup) -> usize {
        fn rec(g: &PermGroup, map: &mut Vec<usize>, used: &mut Vec<bool>, count: &mut usize) {
            let k = map.len();
            if k == g.order() {
                if (0..k).all(|i| (0..k).all(|j| map[g.mul(i, j)] == g.mul(map[i], map[j]))) {
                    *count += 1;
                }
                return;
            }
            for y in 0..g.order() {
                if !used[y] && g.element_orders()[y] == g.element_orders()[k] {
                    used[y] = true;
                    map.push(y);
                    rec(g, map, used, count);
                    map.pop();
                    used[y] = false;
                }
            }
        }
        let mut count = 0;
        rec(g, &mut Vec::new(), &mut vec![false; g.order()], &mut count);
        count
    }

    #[test]
    fn automorphism_counts_match_brute_force() {
        for g in [cyclic(5), cyclic(6), elementary_abelian(2, 2), dihedral(8), symmetric(3)] {
            let aut = automorphism_group(&g, DEFAULT_AUT_CAP).unwrap();
            assert_eq!(aut.order(), brute_force_aut_order(&g), "{:?}", g);
            // closed under composition and preserves products
            for a in &aut.automorphisms {
                for b in &aut.automorphisms {
                    assert!(aut.group.contains(&a.mul(b)));
                }
                for i in 0..g.order() {
                    for j in 0..g.order() {
                        assert_eq!(a.apply(g.mul(i, j)), g.mul(a.apply(i), a.apply(j)));
                    }
                }
            }
        }
    }

    #[test]
    fn homomorphism_count_c4_to_c2() {
        let homs = all_homomorphisms(&arc(cyclic(4)), &arc(cyclic(2)));
        assert_eq!(homs.len(), 2);
        let homs = all_homomorphisms(&arc(symmetric(3)), &arc(cyclic(6)));
        assert_eq!(homs.len(), 2);
    }

    #[test]
    fn aut_cap() {
        assert!(matches!(
            automorphism_group(&symmetric(4), 10),
            Err(Error::CapExceeded { cap: 10 })
        ));
    }
}
