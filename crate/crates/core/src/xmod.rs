//! Crossed modules `mu: M -> P` with a right action of `P` on `M`.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{quotient, PermGroup};
use crate::hom::GroupHom;
use crate::iso::automorphism_group;
use crate::perm::Perm;

/// A right action of `P` on `M`, stored as a full table: row `p` is the
/// automorphism `m -> m^p` on `M`'s element indices.
#[derive(Debug, Clone)]
pub struct ActionMap {
    acting: Arc<PermGroup>,
    target: Arc<PermGroup>,
    table: Vec<u32>,
}

impl ActionMap {
    /// One automorphism per generator of `acting`, each a permutation of
    /// `target`'s element indices. The assignment must extend to `acting`.
    pub fn new(acting: Arc<PermGroup>, target: Arc<PermGroup>, generator_actions: Vec<Perm>) -> Result<Self> {
        let n = target.order();
        if generator_actions.len() != acting.generators().len() {
            return Err(Error::InvalidAction(format!(
                "{} actions for {} generators",
                generator_actions.len(),
                acting.generators().len()
            )));
        }
        for (s, a) in generator_actions.iter().enumerate() {
            if a.degree() != n {
                return Err(Error::InvalidAction(format!(
                    "action of generator {} has degree {}, expected {}",
                    s,
                    a.degree(),
                    n
                )));
            }
            if !is_automorphism(&target, a.images()) {
                return Err(Error::InvalidAction(format!("action of generator {} is not an automorphism", s)));
            }
        }
        let mut table = vec![0u32; acting.order() * n];
        for (m, slot) in table[..n].iter_mut().enumerate() {
            *slot = m as u32;
        }
        let tree = acting.tree();
        for j in 1..acting.order() {
            let (parent, s) = tree[j];
            let g = generator_actions[s as usize].images();
            for m in 0..n {
                let x = table[parent as usize * n + m];
                table[j * n + m] = g[x as usize];
            }
        }
        for j in 0..acting.order() {
            for (s, a) in generator_actions.iter().enumerate() {
                let k = acting.mul_gen(j, s);
                for m in 0..n {
                    if table[k * n + m] != a.images()[table[j * n + m] as usize] {
                        return Err(Error::InvalidAction(
                            "generator actions do not respect the relations of the acting group".into(),
                        ));
                    }
                }
            }
        }
        Ok(ActionMap { acting, target, table })
    }

    /// Each generator of `acting` given by the images of `target`'s generators.
    pub fn from_generator_images(
        acting: Arc<PermGroup>,
        target: Arc<PermGroup>,
        images: Vec<Vec<Perm>>,
    ) -> Result<Self> {
        let mut actions = Vec::with_capacity(images.len());
        for (s, imgs) in images.into_iter().enumerate() {
            let h = GroupHom::new(target.clone(), target.clone(), imgs)
                .map_err(|e| Error::InvalidAction(format!("generator {}: {}", s, e)))?;
            if !h.is_bijective() {
                return Err(Error::InvalidAction(format!("generator {} does not act bijectively", s)));
            }
            actions.push(Perm::from_images(h.map().to_vec())?);
        }
        Self::new(acting, target, actions)
    }

    /// A full table supplied directly, with no checks.
    pub fn from_table_unchecked(acting: Arc<PermGroup>, target: Arc<PermGroup>, table: Vec<u32>) -> Self {
        assert_eq!(table.len(), acting.order() * target.order());
        ActionMap { acting, target, table }
    }

    pub fn trivial(acting: Arc<PermGroup>, target: Arc<PermGroup>) -> Self {
        let n = target.order();
        let table = (0..acting.order()).flat_map(|_| 0..n as u32).collect();
        ActionMap { acting, target, table }
    }

    /// `m^p = p^-1 m p` for `target` a normal subgroup of `acting`.
    pub fn conjugation(acting: Arc<PermGroup>, target: Arc<PermGroup>) -> Result<Self> {
        if !acting.has_normal_subgroup(&target) {
            return Err(Error::NotNormal("conjugation action needs a normal subgroup".into()));
        }
        let actions = acting
            .generators()
            .iter()
            .map(|g| {
                let images = target
                    .elements()
                    .iter()
                    .map(|m| target.index_of(&m.conjugate_by(g)).expect("normal subgroup") as u32)
                    .collect();
                Perm::from_images(images)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(acting, target, actions)
    }

    pub fn acting(&self) -> &Arc<PermGroup> {
        &self.acting
    }

    pub fn target(&self) -> &Arc<PermGroup> {
        &self.target
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    /// Index of `m^p`.
    #[inline]
    pub fn act(&self, m: usize, p: usize) -> usize {
        self.table[p * self.target.order() + m] as usize
    }

    pub fn row(&self, p: usize) -> &[u32] {
        let n = self.target.order();
        &self.table[p * n..(p + 1) * n]
    }

    /// The action of each generator of the acting group.
    pub fn generator_actions(&self) -> Vec<Perm> {
        (0..self.acting.generators().len())
            .map(|s| Perm::from_images(self.row(self.acting.generator_index(s)).to_vec()).expect("bijective row"))
            .collect()
    }

    pub fn is_trivial(&self) -> bool {
        (0..self.acting.order()).all(|p| self.row(p).iter().enumerate().all(|(m, &x)| x as usize == m))
    }

    /// Elements of the acting group whose row is not an automorphism, and
    /// pairs `(p, q)` with `m^(pq) != (m^p)^q` for some `m`.
    fn defects(&self) -> (Vec<usize>, Vec<(usize, usize)>) {
        let n = self.target.order();
        let bad_rows = (0..self.acting.order())
            .filter(|&p| !is_automorphism(&self.target, self.row(p)))
            .collect();
        let mut bad_pairs = Vec::new();
        for p in 0..self.acting.order() {
            for q in 0..self.acting.order() {
                let pq = self.acting.mul(p, q);
                if (0..n).any(|m| self.act(m, pq) != self.act(self.act(m, p), q)) {
                    bad_pairs.push((p, q));
                }
            }
        }
        (bad_rows, bad_pairs)
    }
}

fn is_automorphism(g: &PermGroup, map: &[u32]) -> bool {
    let n = g.order();
    if map.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &x in map {
        if x as usize >= n || std::mem::replace(&mut seen[x as usize], true) {
            return false;
        }
    }
    // a map respecting right multiplication by each generator respects all products
    let gens: Vec<usize> = (0..g.generators().len()).map(|s| g.generator_index(s)).collect();
    (0..n).all(|a| {
        (0..gens.len()).all(|s| map[g.mul_gen(a, s)] as usize == g.mul(map[a] as usize, map[gens[s]] as usize))
    })
}

/// Outcome of an exhaustive axiom check. All entries are element indices.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    /// `(m, p)` with `mu(m^p) != p^-1 mu(m) p`.
    pub cm1_violations: Vec<(usize, usize)>,
    /// `(m, n)` with `n^-1 m n != m^(mu n)`.
    pub cm2_violations: Vec<(usize, usize)>,
    /// Elements of `P` acting by a non-automorphism.
    pub non_automorphisms: Vec<usize>,
    /// `(p, q)` where the action of `pq` differs from `p` then `q`.
    pub non_homomorphic_pairs: Vec<(usize, usize)>,
    pub cm1_checked: usize,
    pub cm2_checked: usize,
}

impl VerificationReport {
    pub fn is_valid(&self) -> bool {
        self.cm1_violations.is_empty()
            && self.cm2_violations.is_empty()
            && self.non_automorphisms.is_empty()
            && self.non_homomorphic_pairs.is_empty()
    }

    pub fn summary(&self) -> String {
        format!(
            "{} CM1 violations, {} CM2 violations, {} non-automorphic actions, {} non-homomorphic pairs",
            self.cm1_violations.len(),
            self.cm2_violations.len(),
            self.non_automorphisms.len(),
            self.non_homomorphic_pairs.len()
        )
    }
}

#[derive(Debug, Clone)]
pub struct CrossedModule {
    mu: GroupHom,
    action: ActionMap,
    verified: bool,
}

impl CrossedModule {
    /// Builds and verifies; fails with `AxiomsFail` if either axiom breaks.
    pub fn new(mu: GroupHom, action: ActionMap) -> Result<Self> {
        let mut xm = Self::new_unchecked(mu, action)?;
        let report = xm.verify();
        if !report.is_valid() {
            return Err(Error::AxiomsFail(report.summary()));
        }
        xm.verified = true;
        Ok(xm)
    }

    /// Checks only that the pieces fit together (same groups on both sides).
    pub fn new_unchecked(mu: GroupHom, action: ActionMap) -> Result<Self> {
        if !Arc::ptr_eq(mu.source(), action.target()) && !mu.source().same_elements(action.target()) {
            return Err(Error::InvalidAction("action does not act on the source of mu".into()));
        }
        if !Arc::ptr_eq(mu.target(), action.acting()) && !mu.target().same_elements(action.acting()) {
            return Err(Error::InvalidAction("acting group is not the target of mu".into()));
        }
        if mu.source().elements() != action.target().elements() || mu.target().elements() != action.acting().elements() {
            return Err(Error::InvalidAction("element orders of mu and the action disagree".into()));
        }
        Ok(CrossedModule {
            mu,
            action,
            verified: false,
        })
    }

    pub fn m(&self) -> &Arc<PermGroup> {
        self.mu.source()
    }

    pub fn p(&self) -> &Arc<PermGroup> {
        self.mu.target()
    }

    pub fn mu(&self) -> &GroupHom {
        &self.mu
    }

    pub fn action(&self) -> &ActionMap {
        &self.action
    }

    /// Exhaustive over `M x P` (CM1), `M x M` (CM2) and `P x P` (action).
    pub fn verify(&self) -> VerificationReport {
        let m = self.m();
        let p = self.p();
        let mu = self.mu.map();
        let mut report = VerificationReport::default();
        for x in 0..m.order() {
            for g in 0..p.order() {
                let lhs = mu[self.action.act(x, g)] as usize;
                let rhs = p.conj(mu[x] as usize, g);
                if lhs != rhs {
                    report.cm1_violations.push((x, g));
                }
            }
        }
        report.cm1_checked = m.order() * p.order();
        for x in 0..m.order() {
            for n in 0..m.order() {
                if m.conj(x, n) != self.action.act(x, mu[n] as usize) {
                    report.cm2_violations.push((x, n));
                }
            }
        }
        report.cm2_checked = m.order() * m.order();
        let (rows, pairs) = self.action.defects();
        report.non_automorphisms = rows;
        report.non_homomorphic_pairs = pairs;
        report
    }

    fn require_valid(&self) -> Result<()> {
        if self.verified {
            return Ok(());
        }
        let report = self.verify();
        if report.is_valid() {
            Ok(())
        } else {
            Err(Error::AxiomsFail(report.summary()))
        }
    }

    /// Direct scans of the consequences of the axioms.
    pub fn check_consequences(&self) -> Consequences {
        let m = self.m();
        let p = self.p();
        let image = self.mu.image_indices();
        let in_image = membership(p.order(), &image);
        let kernel = self.mu.kernel_indices();
        Consequences {
            image_normal: image.iter().all(|&x| (0..p.order()).all(|g| in_image[p.conj(x, g)])),
            kernel_central: kernel
                .iter()
                .all(|&k| (0..m.order()).all(|x| m.mul(k, x) == m.mul(x, k))),
            image_acts_trivially_on_kernel: image
                .iter()
                .all(|&g| kernel.iter().all(|&k| self.action.act(k, g) == k)),
        }
    }

    /// `Ker mu`, central in `M`, with the action of `P / Im mu` on it.
    pub fn kernel_module(&self) -> Result<KernelModule> {
        self.require_valid()?;
        let c = self.check_consequences();
        if !c.kernel_central || !c.image_acts_trivially_on_kernel {
            return Err(Error::AxiomsFail(format!("consequence check failed: {:?}", c)));
        }
        let m = self.m();
        let kernel_idx = self.mu.kernel_indices();
        let kernel = Arc::new(m.subgroup_from_elements(&kernel_idx)?);
        let ImageCokernel {
            cokernel,
            projection,
            ..
        } = self.image_and_cokernel()?;
        // first element of each coset, in P's element order
        let mut rep = vec![usize::MAX; cokernel.order()];
        for g in 0..self.p().order() {
            let c = projection.image_index(g);
            if rep[c] == usize::MAX {
                rep[c] = g;
            }
        }
        let to_kernel = |x: usize| kernel.index_of(m.element(x)).expect("kernel member") as u32;
        let actions = (0..cokernel.generators().len())
            .map(|s| {
                let g = rep[cokernel.generator_index(s)];
                let images = kernel
                    .elements()
                    .iter()
                    .map(|k| to_kernel(self.action.act(m.index_of(k).expect("member"), g)))
                    .collect();
                Perm::from_images(images)
            })
            .collect::<Result<Vec<_>>>()?;
        let action = ActionMap::new(cokernel.clone(), kernel.clone(), actions)?;
        Ok(KernelModule {
            kernel,
            cokernel,
            action,
            representatives: rep,
        })
    }

    /// `Im mu` (certified normal in `P`) and the quotient `P / Im mu`.
    pub fn image_and_cokernel(&self) -> Result<ImageCokernel> {
        self.require_valid()?;
        let image = Arc::new(self.mu.image());
        if !self.p().has_normal_subgroup(&image) {
            return Err(Error::AxiomsFail("image of mu is not normal".into()));
        }
        let (cokernel, projection) = quotient(self.p(), &image)?;
        Ok(ImageCokernel {
            image,
            cokernel,
            projection,
        })
    }
}

fn membership(n: usize, members: &[usize]) -> Vec<bool> {
    let mut v = vec![false; n];
    for &x in members {
        v[x] = true;
    }
    v
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Consequences {
    pub image_normal: bool,
    pub kernel_central: bool,
    pub image_acts_trivially_on_kernel: bool,
}

impl Consequences {
    pub fn all_hold(&self) -> bool {
        self.image_normal && self.kernel_central && self.image_acts_trivially_on_kernel
    }
}

#[derive(Debug, Clone)]
pub struct KernelModule {
    pub kernel: Arc<PermGroup>,
    pub cokernel: Arc<PermGroup>,
    /// Action of the cokernel on the kernel through coset representatives.
    pub action: ActionMap,
    /// For each cokernel element, the first element of `P` in its coset.
    pub representatives: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct ImageCokernel {
    pub image: Arc<PermGroup>,
    pub cokernel: Arc<PermGroup>,
    pub projection: GroupHom,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StandardKind {
    NormalInclusion,
    Inner,
    ModuleZero,
    CentralEpi,
}

/// Input for the four standard constructions.
#[derive(Debug, Clone)]
pub enum StandardData {
    /// `M` normal in `P`, acting by conjugation.
    NormalInclusion { m: Arc<PermGroup>, p: Arc<PermGroup> },
    /// `M -> Aut(M)`, `m` mapped to conjugation by `m`.
    Inner { m: Arc<PermGroup>, aut_cap: usize },
    /// The zero map from a `P`-module.
    ModuleZero { action: ActionMap },
    /// An epimorphism with central kernel; `P` acts through preimages.
    CentralEpi { mu: GroupHom },
}

impl StandardData {
    pub fn kind(&self) -> StandardKind {
        match self {
            StandardData::NormalInclusion { .. } => StandardKind::NormalInclusion,
            StandardData::Inner { .. } => StandardKind::Inner,
            StandardData::ModuleZero { .. } => StandardKind::ModuleZero,
            StandardData::CentralEpi { .. } => StandardKind::CentralEpi,
        }
    }
}

pub fn make_standard(data: StandardData) -> Result<CrossedModule> {
    match data {
        StandardData::NormalInclusion { m, p } => {
            if !p.has_normal_subgroup(&m) {
                return Err(Error::NotNormal(format!(
                    "subgroup of order {} is not normal in group of order {}",
                    m.order(),
                    p.order()
                )));
            }
            let mu = GroupHom::inclusion(m.clone(), p.clone())?;
            let action = ActionMap::conjugation(p, m)?;
            CrossedModule::new(mu, action)
        }
        StandardData::Inner { m, aut_cap } => {
            let aut = Arc::new(automorphism_group(&m, aut_cap)?.group);
            let chi: Vec<Perm> = m
                .generators()
                .iter()
                .map(|g| {
                    let gi = m.index_of(g).expect("generator");
                    let images = (0..m.order()).map(|x| m.conj(x, gi) as u32).collect();
                    Perm::from_images(images)
                })
                .collect::<Result<_>>()?;
            let mu = GroupHom::new(m.clone(), aut.clone(), chi)?;
            let actions = aut.generators().to_vec();
            let action = ActionMap::new(aut, m, actions)?;
            CrossedModule::new(mu, action)
        }
        StandardData::ModuleZero { action } => {
            if !action.target().is_abelian() {
                return Err(Error::NotAbelianModule(format!(
                    "group of order {} is not abelian",
                    action.target().order()
                )));
            }
            let mu = GroupHom::trivial(action.target().clone(), action.acting().clone());
            CrossedModule::new(mu, action)
        }
        StandardData::CentralEpi { mu } => {
            if !mu.is_surjective() {
                return Err(Error::NotSurjective(format!(
                    "image has order {} in a group of order {}",
                    mu.image_indices().len(),
                    mu.target().order()
                )));
            }
            let m = mu.source().clone();
            let kernel = mu.kernel_indices();
            if !kernel.iter().all(|&k| (0..m.order()).all(|x| m.mul(k, x) == m.mul(x, k))) {
                return Err(Error::KernelNotCentral(format!("kernel of order {}", kernel.len())));
            }
            let p = mu.target().clone();
            let mut preimage = vec![usize::MAX; p.order()];
            for x in 0..m.order() {
                let y = mu.image_index(x);
                if preimage[y] == usize::MAX {
                    preimage[y] = x;
                }
            }
            let actions = (0..p.generators().len())
                .map(|s| {
                    let n = preimage[p.generator_index(s)];
                    Perm::from_images((0..m.order()).map(|x| m.conj(x, n) as u32).collect())
                })
                .collect::<Result<Vec<_>>>()?;
            let action = ActionMap::new(p, m, actions)?;
            CrossedModule::new(mu, action)
        }
    }
}
