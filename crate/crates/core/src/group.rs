//! Finite permutation groups with an explicitly materialized element list.
//!
//! Elements are enumerated breadth-first over generator words; each layer
//! is sorted lexicographically by image sequence. The identity is always
//! element 0, and the element list order is the canonical order used by
//! every search in the crate.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::hom::GroupHom;
use crate::perm::{lcm, Perm};

pub const DEFAULT_ELEMENT_CAP: usize = 100_000;

/// Groups up to this order get a cached Cayley table.
const TABLE_LIMIT: usize = 2048;

const ROOT: u32 = u32::MAX;

/// Canonical enumeration of `<generators>`.
#[derive(Debug, Clone)]
pub struct Enumeration {
    pub elements: Vec<Perm>,
    /// `(parent, generator)` such that `elements[i] = elements[parent] * generators[generator]`.
    pub tree: Vec<(u32, u32)>,
}

pub fn enumerate(degree: usize, generators: &[Perm], cap: usize) -> Result<Enumeration> {
    for g in generators {
        if g.degree() != degree {
            return Err(Error::DegreeMismatch {
                expected: degree,
                found: g.degree(),
            });
        }
    }
    let id = Perm::identity(degree);
    let mut index: HashMap<Perm, u32> = HashMap::new();
    index.insert(id.clone(), 0);
    let mut elements = vec![id];
    let mut tree = vec![(ROOT, ROOT)];
    if cap == 0 {
        return Err(Error::CapExceeded { cap });
    }
    let mut layer_start = 0;
    while layer_start < elements.len() {
        let layer_end = elements.len();
        let mut fresh: BTreeMap<Perm, (u32, u32)> = BTreeMap::new();
        for x in layer_start..layer_end {
            for (s, g) in generators.iter().enumerate() {
                let y = elements[x].mul(g);
                if !index.contains_key(&y) {
                    fresh.entry(y).or_insert((x as u32, s as u32));
                }
            }
        }
        if elements.len() + fresh.len() > cap {
            return Err(Error::CapExceeded { cap });
        }
        for (y, parent) in fresh {
            index.insert(y.clone(), elements.len() as u32);
            elements.push(y);
            tree.push(parent);
        }
        layer_start = layer_end;
    }
    Ok(Enumeration { elements, tree })
}

#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    index: HashMap<Perm, u32>,
    tree: Vec<(u32, u32)>,
    /// `right[i * k + s]` = index of `elements[i] * generators[s]`.
    right: Vec<u32>,
    table: OnceLock<Vec<u32>>,
    words: OnceLock<Vec<Vec<u32>>>,
    inverses: OnceLock<Vec<u32>>,
    orders: OnceLock<Vec<u64>>,
    classes: OnceLock<Vec<Vec<usize>>>,
}

impl std::fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Perm>) -> Result<Self> {
        Self::with_cap(degree, generators, DEFAULT_ELEMENT_CAP)
    }

    pub fn with_cap(degree: usize, generators: Vec<Perm>, cap: usize) -> Result<Self> {
        let Enumeration { elements, tree } = enumerate(degree, &generators, cap)?;
        let index: HashMap<Perm, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i as u32))
            .collect();
        let k = generators.len();
        let mut right = Vec::with_capacity(elements.len() * k);
        for x in &elements {
            for g in &generators {
                right.push(index[&x.mul(g)]);
            }
        }
        Ok(PermGroup {
            degree,
            generators,
            elements,
            index,
            tree,
            right,
            table: OnceLock::new(),
            words: OnceLock::new(),
            inverses: OnceLock::new(),
            orders: OnceLock::new(),
            classes: OnceLock::new(),
        })
    }

    pub fn trivial(degree: usize) -> Self {
        Self::new(degree, Vec::new()).expect("trivial group")
    }

    /// The subgroup of `self` whose elements are exactly `members`.
    /// Generators are picked greedily in the order given.
    pub fn subgroup_from_elements(&self, members: &[usize]) -> Result<PermGroup> {
        let mut gens: Vec<Perm> = Vec::new();
        let mut current = PermGroup::trivial(self.degree);
        for &m in members {
            let p = &self.elements[m];
            if !current.contains(p) {
                gens.push(p.clone());
                current = PermGroup::new(self.degree, gens.clone())?;
            }
        }
        if current.order() != members.len() {
            return Err(Error::InvalidPermutation(format!(
                "element set of size {} is not a subgroup",
                members.len()
            )));
        }
        Ok(current)
    }

    pub fn subgroup(&self, generators: Vec<Perm>) -> Result<PermGroup> {
        for g in &generators {
            if !self.contains(g) {
                return Err(Error::NotMember(g.to_string()));
            }
        }
        PermGroup::new(self.degree, generators)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.degree
    }

    #[inline]
    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    #[inline]
    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    #[inline]
    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).map(|&i| i as usize)
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.index.contains_key(p)
    }

    /// Index of `generators[s]` in the element list.
    pub fn generator_index(&self, s: usize) -> usize {
        self.right[s] as usize
    }

    pub(crate) fn tree(&self) -> &[(u32, u32)] {
        &self.tree
    }

    /// Index of `elements[i] * generators[s]`.
    #[inline]
    pub fn mul_gen(&self, i: usize, s: usize) -> usize {
        self.right[i * self.generators.len() + s] as usize
    }

    fn cayley(&self) -> Option<&[u32]> {
        let n = self.order();
        if n > TABLE_LIMIT {
            return None;
        }
        Some(self.table.get_or_init(|| {
            let mut t = vec![0u32; n * n];
            for i in 0..n {
                t[i * n] = i as u32;
                for j in 1..n {
                    let (parent, s) = self.tree[j];
                    let ip = t[i * n + parent as usize] as usize;
                    t[i * n + j] = self.mul_gen(ip, s as usize) as u32;
                }
            }
            t
        }))
    }

    #[inline]
    pub fn mul(&self, i: usize, j: usize) -> usize {
        match self.cayley() {
            Some(t) => t[i * self.order() + j] as usize,
            None => self.words()[j].iter().fold(i, |acc, &s| self.mul_gen(acc, s as usize)),
        }
    }

    pub fn inv(&self, i: usize) -> usize {
        self.inverses.get_or_init(|| {
            self.elements
                .iter()
                .map(|p| self.index[&p.inverse()])
                .collect()
        })[i] as usize
    }

    /// `p^-1 x p`.
    pub fn conj(&self, x: usize, p: usize) -> usize {
        self.mul(self.mul(self.inv(p), x), p)
    }

    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn pow(&self, x: usize, e: u64) -> usize {
        let mut acc = 0;
        let mut base = x;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn element_orders(&self) -> &[u64] {
        self.orders
            .get_or_init(|| self.elements.iter().map(Perm::order).collect())
    }

    pub fn exponent(&self) -> u64 {
        self.element_orders().iter().fold(1, |a, &b| lcm(a, b))
    }

    /// Generator word (as generator positions) reaching element `i`.
    /// Generator word of every element along the enumeration tree.
    fn words(&self) -> &[Vec<u32>] {
        self.words.get_or_init(|| {
            let mut words: Vec<Vec<u32>> = Vec::with_capacity(self.order());
            words.push(Vec::new());
            for j in 1..self.order() {
                let (parent, s) = self.tree[j];
                let mut w = words[parent as usize].clone();
                w.push(s);
                words.push(w);
            }
            words
        })
    }

    pub fn word_of(&self, mut i: usize) -> Vec<usize> {
        let mut w = Vec::new();
        while i != 0 {
            let (parent, s) = self.tree[i];
            w.push(s as usize);
            i = parent as usize;
        }
        w.reverse();
        w
    }

    pub fn is_abelian(&self) -> bool {
        let gens: Vec<usize> = (0..self.generators.len())
            .map(|s| self.generator_index(s))
            .collect();
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn center_indices(&self) -> Vec<usize> {
        let gens: Vec<usize> = (0..self.generators.len())
            .map(|s| self.generator_index(s))
            .collect();
        (0..self.order())
            .filter(|&x| gens.iter().all(|&g| self.mul(x, g) == self.mul(g, x)))
            .collect()
    }

    pub fn center(&self) -> PermGroup {
        self.subgroup_from_elements(&self.center_indices())
            .expect("center is a subgroup")
    }

    pub fn derived_subgroup(&self) -> PermGroup {
        let gens: Vec<usize> = (0..self.generators.len())
            .map(|s| self.generator_index(s))
            .collect();
        let mut comms = Vec::new();
        for &a in &gens {
            for &b in &gens {
                let c = self.commutator(a, b);
                if c != 0 {
                    comms.push(self.elements[c].clone());
                }
            }
        }
        normal_closure(self, &comms).expect("derived subgroup within parent cap")
    }

    /// Conjugacy classes as sorted lists of element indices, ordered by their
    /// smallest member.
    pub fn conjugacy_classes(&self) -> &[Vec<usize>] {
        self.classes.get_or_init(|| {
            let n = self.order();
            let gens: Vec<usize> = (0..self.generators.len())
                .map(|s| self.generator_index(s))
                .collect();
            let mut class_of = vec![usize::MAX; n];
            let mut classes = Vec::new();
            for start in 0..n {
                if class_of[start] != usize::MAX {
                    continue;
                }
                let id = classes.len();
                class_of[start] = id;
                let mut members = vec![start];
                let mut k = 0;
                while k < members.len() {
                    let x = members[k];
                    k += 1;
                    for &g in &gens {
                        let y = self.conj(x, g);
                        if class_of[y] == usize::MAX {
                            class_of[y] = id;
                            members.push(y);
                        }
                    }
                }
                members.sort_unstable();
                classes.push(members);
            }
            classes
        })
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.generators.iter().all(|g| other.contains(g))
    }

    /// True when `n` is a normal subgroup of `self`.
    pub fn has_normal_subgroup(&self, n: &PermGroup) -> bool {
        n.is_subgroup_of(self)
            && self.generators.iter().all(|g| {
                let gi = g.inverse();
                n.generators.iter().all(|x| n.contains(&gi.mul(x).mul(g)))
            })
    }

    pub fn same_elements(&self, other: &PermGroup) -> bool {
        self.degree == other.degree
            && self.order() == other.order()
            && other.elements.iter().all(|p| self.contains(p))
    }

    /// Same group acting on `degree` points; fails if a generator moves a
    /// point that would be dropped.
    pub fn with_degree(&self, degree: usize) -> Result<PermGroup> {
        if degree == self.degree {
            return Ok(self.clone());
        }
        let gens = self
            .generators
            .iter()
            .map(|g| g.extend(degree))
            .collect::<Result<Vec<_>>>()?;
        PermGroup::new(degree, gens)
    }
}

/// Smallest normal subgroup of `q` containing `s`.
pub fn normal_closure(q: &PermGroup, s: &[Perm]) -> Result<PermGroup> {
    for p in s {
        if !q.contains(p) {
            return Err(Error::NotMember(p.to_string()));
        }
    }
    let mut gens: Vec<Perm> = Vec::new();
    let mut current = PermGroup::trivial(q.degree());
    for p in s {
        if !current.contains(p) {
            gens.push(p.clone());
            current = PermGroup::new(q.degree(), gens.clone())?;
        }
    }
    loop {
        let mut missing = None;
        'scan: for x in current.generators() {
            for g in q.generators() {
                let c = x.conjugate_by(g);
                if !current.contains(&c) {
                    missing = Some(c);
                    break 'scan;
                }
            }
        }
        match missing {
            Some(c) => {
                gens.push(c);
                current = PermGroup::new(q.degree(), gens.clone())?;
            }
            None => return Ok(current),
        }
    }
}

/// Right cosets `N x` of a normal subgroup, in order of their first member.
#[derive(Debug, Clone)]
pub struct Cosets {
    pub coset_of: Vec<usize>,
    pub representatives: Vec<usize>,
}

pub fn right_cosets(g: &PermGroup, n: &PermGroup) -> Result<Cosets> {
    if !n.is_subgroup_of(g) {
        return Err(Error::NotNormal("not a subgroup".into()));
    }
    let nidx: Vec<usize> = n
        .elements()
        .iter()
        .map(|p| g.index_of(p).expect("subgroup member"))
        .collect();
    let mut coset_of = vec![usize::MAX; g.order()];
    let mut representatives = Vec::new();
    for x in 0..g.order() {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let id = representatives.len();
        representatives.push(x);
        for &k in &nidx {
            coset_of[g.mul(k, x)] = id;
        }
    }
    Ok(Cosets {
        coset_of,
        representatives,
    })
}

/// `g / n` realized by the action of `g` on the right cosets of `n`, with
/// the projection homomorphism.
pub fn quotient(g: &Arc<PermGroup>, n: &PermGroup) -> Result<(Arc<PermGroup>, GroupHom)> {
    if !g.has_normal_subgroup(n) {
        return Err(Error::NotNormal(format!(
            "subgroup of order {} in group of order {}",
            n.order(),
            g.order()
        )));
    }
    let cosets = right_cosets(g, n)?;
    let k = cosets.representatives.len();
    let gens: Vec<Perm> = (0..g.generators().len())
        .map(|s| {
            let images = cosets
                .representatives
                .iter()
                .map(|&r| cosets.coset_of[g.mul_gen(r, s)] as u32)
                .collect();
            Perm::from_images(images)
        })
        .collect::<Result<_>>()?;
    let q = Arc::new(PermGroup::new(k.max(1), gens.clone())?);
    let proj = GroupHom::new(g.clone(), q.clone(), gens)?;
    Ok((q, proj))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::symmetric;

    fn cyc(degree: usize, cycles: &[&[usize]]) -> Perm {
        Perm::from_cycles(degree, &cycles.iter().map(|c| c.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn s4() -> PermGroup {
        PermGroup::new(4, vec![cyc(4, &[&[1, 2]]), cyc(4, &[&[1, 2, 3, 4]])]).unwrap()
    }

    fn klein() -> PermGroup {
        PermGroup::new(4, vec![cyc(4, &[&[1, 2], &[3, 4]]), cyc(4, &[&[1, 3], &[2, 4]])]).unwrap()
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(s4().order(), 24);
        assert_eq!(PermGroup::new(4, vec![cyc(4, &[&[1, 2], &[3, 4]])]).unwrap().order(), 2);
        let err = PermGroup::with_cap(4, vec![cyc(4, &[&[1, 2]]), cyc(4, &[&[1, 2, 3, 4]])], 10);
        assert!(matches!(err, Err(Error::CapExceeded { cap: 10 })));
    }

    #[test]
    fn canonical_order_is_deterministic() {
        let a = s4();
        let b = s4();
        assert_eq!(a.elements(), b.elements());
        assert!(a.element(0).is_identity());
        // layer 1 is the generators themselves, sorted
        assert_eq!(a.element(1).to_string(), "(1,2)");
        assert_eq!(a.element(2).to_string(), "(1,2,3,4)");
    }

    #[test]
    fn closure_and_membership() {
        let g = s4();
        for i in 0..g.order() {
            assert!(g.contains(&g.element(i).inverse()));
            for j in 0..g.order() {
                let p = g.element(i).mul(g.element(j));
                assert_eq!(g.index_of(&p), Some(g.mul(i, j)));
            }
        }
    }

    #[test]
    fn normal_closure_examples() {
        let q = s4();
        assert_eq!(normal_closure(&q, &[cyc(4, &[&[1, 2]])]).unwrap().order(), 24);
        let k = normal_closure(&q, &[cyc(4, &[&[1, 2], &[3, 4]])]).unwrap();
        assert_eq!(k.order(), 4);
        assert!(k.same_elements(&klein()));
        let c6 = PermGroup::new(5, vec![cyc(5, &[&[1, 2, 3], &[4, 5]])]).unwrap();
        let s = [cyc(5, &[&[1, 2, 3]])];
        let nc = normal_closure(&c6, &s).unwrap();
        assert!(nc.same_elements(&PermGroup::new(5, s.to_vec()).unwrap()));
    }

    /// Brute force: smallest normal subgroup containing `s` among all
    /// subsets closed under products and conjugation, by fixed-point
    /// iteration over the element set.
    fn brute_normal_closure(q: &PermGroup, s: &[Perm]) -> Vec<usize> {
        let mut set = vec![false; q.order()];
        set[0] = true;
        for p in s {
            set[q.index_of(p).unwrap()] = true;
        }
        loop {
            let mut changed = false;
            let members: Vec<usize> = (0..q.order()).filter(|&i| set[i]).collect();
            for &a in &members {
                for &b in &members {
                    let c = q.mul(a, b);
                    if !set[c] {
                        set[c] = true;
                        changed = true;
                    }
                }
                for g in 0..q.order() {
                    let c = q.conj(a, g);
                    if !set[c] {
                        set[c] = true;
                        changed = true;
                    }
                }
            }
            if !changed {
                return (0..q.order()).filter(|&i| set[i]).collect();
            }
        }
    }

    #[test]
    fn normal_closure_matches_brute_force_on_s4() {
        let q = s4();
        for i in 0..q.order() {
            let s = [q.element(i).clone()];
            let nc = normal_closure(&q, &s).unwrap();
            let brute = brute_normal_closure(&q, &s);
            assert_eq!(nc.order(), brute.len());
            for b in brute {
                assert!(nc.contains(q.element(b)));
            }
            assert!(q.has_normal_subgroup(&nc));
        }
    }

    #[test]
    fn quotient_examples() {
        let g = Arc::new(s4());
        let (q, proj) = quotient(&g, &klein()).unwrap();
        assert_eq!(q.order(), 6);
        assert!(!q.is_abelian());
        assert_eq!(proj.kernel().order(), 4);

        let (q, _) = quotient(&g, &g).unwrap();
        assert_eq!(q.order(), 1);
        let (q, _) = quotient(&g, &PermGroup::trivial(4)).unwrap();
        assert_eq!(q.order(), 24);

        let not_normal = PermGroup::new(4, vec![cyc(4, &[&[1, 2]])]).unwrap();
        assert!(matches!(quotient(&g, &not_normal), Err(Error::NotNormal(_))));
    }

    #[test]
    fn structure_of_s4() {
        let g = symmetric(4);
        assert_eq!(g.center().order(), 1);
        assert_eq!(g.derived_subgroup().order(), 12);
        assert_eq!(g.conjugacy_classes().len(), 5);
        assert_eq!(g.exponent(), 12);
    }
}
