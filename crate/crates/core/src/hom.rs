use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Perm;

/// Source groups up to this order get a check over every pair of elements;
/// larger ones are checked on (element, generator) pairs, which is
/// equivalent for a map built along the enumeration tree.
const FULL_CHECK_LIMIT: usize = 512;

/// A homomorphism between permutation groups, stored by generator images
/// and as a full element-index map.
#[derive(Clone)]
pub struct GroupHom {
    source: Arc<PermGroup>,
    target: Arc<PermGroup>,
    gen_images: Vec<Perm>,
    map: Vec<u32>,
}

impl std::fmt::Debug for GroupHom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GroupHom")
            .field("source", &self.source.generators())
            .field("gen_images", &self.gen_images)
            .finish()
    }
}

impl GroupHom {
    pub fn new(source: Arc<PermGroup>, target: Arc<PermGroup>, gen_images: Vec<Perm>) -> Result<Self> {
        if gen_images.len() != source.generators().len() {
            return Err(Error::NotHomomorphism(format!(
                "{} images for {} generators",
                gen_images.len(),
                source.generators().len()
            )));
        }
        let idx = gen_images
            .iter()
            .map(|p| target.index_of(p).ok_or_else(|| Error::NotMember(p.to_string())))
            .collect::<Result<Vec<_>>>()?;
        let map = extend_on_tree(&source, &target, &idx)
            .ok_or_else(|| Error::NotHomomorphism("relation among source generators is not preserved".into()))?;
        Ok(GroupHom {
            source,
            target,
            gen_images,
            map,
        })
    }

    /// Generator images given as element indices of the target.
    pub fn from_indices(source: Arc<PermGroup>, target: Arc<PermGroup>, images: &[usize]) -> Result<Self> {
        let gens = images.iter().map(|&i| target.element(i).clone()).collect();
        Self::new(source, target, gens)
    }

    pub fn identity(g: Arc<PermGroup>) -> Self {
        let gens = g.generators().to_vec();
        Self::new(g.clone(), g, gens).expect("identity map")
    }

    /// Inclusion of `sub` into `sup` (same degree, `sub` a subgroup).
    pub fn inclusion(sub: Arc<PermGroup>, sup: Arc<PermGroup>) -> Result<Self> {
        let gens = sub.generators().to_vec();
        Self::new(sub, sup, gens)
    }

    pub fn trivial(source: Arc<PermGroup>, target: Arc<PermGroup>) -> Self {
        let id = Perm::identity(target.degree());
        let gens = vec![id; source.generators().len()];
        Self::new(source, target, gens).expect("trivial map")
    }

    pub fn source(&self) -> &Arc<PermGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<PermGroup> {
        &self.target
    }

    pub fn generator_images(&self) -> &[Perm] {
        &self.gen_images
    }

    /// Element-index map from source to target.
    pub fn map(&self) -> &[u32] {
        &self.map
    }

    #[inline]
    pub fn image_index(&self, i: usize) -> usize {
        self.map[i] as usize
    }

    pub fn apply(&self, p: &Perm) -> Result<Perm> {
        let i = self
            .source
            .index_of(p)
            .ok_or_else(|| Error::NotMember(p.to_string()))?;
        Ok(self.target.element(self.image_index(i)).clone())
    }

    pub fn kernel_indices(&self) -> Vec<usize> {
        (0..self.source.order()).filter(|&i| self.map[i] == 0).collect()
    }

    pub fn kernel(&self) -> PermGroup {
        self.source
            .subgroup_from_elements(&self.kernel_indices())
            .expect("kernel is a subgroup")
    }

    pub fn image_indices(&self) -> Vec<usize> {
        let mut seen = vec![false; self.target.order()];
        for &j in &self.map {
            seen[j as usize] = true;
        }
        (0..self.target.order()).filter(|&j| seen[j]).collect()
    }

    pub fn image(&self) -> PermGroup {
        self.target
            .subgroup(self.gen_images.clone())
            .expect("images lie in the target")
    }

    pub fn is_injective(&self) -> bool {
        self.kernel_indices().len() == 1
    }

    pub fn is_surjective(&self) -> bool {
        self.image_indices().len() == self.target.order()
    }

    pub fn is_bijective(&self) -> bool {
        self.source.order() == self.target.order() && self.is_injective()
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &GroupHom) -> Result<GroupHom> {
        if !Arc::ptr_eq(&self.target, &other.source) && !self.target.same_elements(&other.source) {
            return Err(Error::NotHomomorphism("maps are not composable".into()));
        }
        let gens = self
            .gen_images
            .iter()
            .map(|p| other.apply(p))
            .collect::<Result<Vec<_>>>()?;
        GroupHom::new(self.source.clone(), other.target.clone(), gens)
    }

    /// The inverse of a bijective homomorphism.
    pub fn inverse(&self) -> Result<GroupHom> {
        if !self.is_bijective() {
            return Err(Error::NotHomomorphism("map is not bijective".into()));
        }
        let mut inv = vec![0usize; self.target.order()];
        for (i, &j) in self.map.iter().enumerate() {
            inv[j as usize] = i;
        }
        let gens = (0..self.target.generators().len())
            .map(|s| self.source.element(inv[self.target.generator_index(s)]).clone())
            .collect();
        GroupHom::new(self.target.clone(), self.source.clone(), gens)
    }
}

/// Extends generator images (target indices) along the source enumeration
/// tree and checks the result is multiplicative. Returns `None` when the
/// images do not define a homomorphism.
pub(crate) fn extend_on_tree(source: &PermGroup, target: &PermGroup, images: &[usize]) -> Option<Vec<u32>> {
    let n = source.order();
    let k = source.generators().len();
    let mut map = vec![0u32; n];
    for (i, &(parent, s)) in source.tree().iter().enumerate().skip(1) {
        map[i] = target.mul(map[parent as usize] as usize, images[s as usize]) as u32;
    }
    if n <= FULL_CHECK_LIMIT {
        for i in 0..n {
            for j in 0..n {
                if map[source.mul(i, j)] as usize != target.mul(map[i] as usize, map[j] as usize) {
                    return None;
                }
            }
        }
    } else {
        for i in 0..n {
            for s in 0..k {
                if map[source.mul_gen(i, s)] as usize != target.mul(map[i] as usize, images[s]) {
                    return None;
                }
            }
        }
    }
    Some(map)
}
