//! Induced crossed modules `f_*(M)` along `f: P -> Q`, from the
//! presentation on symbols `(m, q)`.
//!
//! Relations, for `m, n` in `M`, `p` in `P`, `q, t, u` in `Q`:
//!
//! * A: `(m, t)(n, t) = (mn, t)`
//! * B: `(m^p, q) = (m, f(p) q)`
//! * C: `(n, u)^-1 (m, t) (n, u) = (m, t d(n, u))`, where `d(m, q) = q^-1 f(mu m) q`
//!
//! `Q` acts by `(m, t)^q = (m, tq)`. In transversal mode (`f` injective)
//! only symbols `(m, t)` with `t` in a right transversal of `f(P)` are kept,
//! and `(m, f(p) t)` is rewritten as `(m^p, t)`.

use std::collections::HashSet;
use std::sync::Arc;

use serde::Serialize;

use crate::catalog::{fingerprint, identify, Fingerprint, Identification};
use crate::error::{Error, Result};
use crate::fpres::{perm_image, todd_coxeter, CosetConfig, FpGroup, Word};
use crate::group::{normal_closure, PermGroup};
use crate::hom::GroupHom;
use crate::iso::{automorphism_group, for_each_homomorphism};
use crate::perm::Perm;
use crate::xmod::{ActionMap, CrossedModule};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Full,
    #[default]
    Transversal,
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "full" => Ok(Mode::Full),
            "transversal" => Ok(Mode::Transversal),
            _ => Err(format!("unknown mode {:?} (expected full or transversal)", s)),
        }
    }
}

#[derive(Debug, Clone)]
pub struct InducedPresentation {
    pub base: CrossedModule,
    pub f: GroupHom,
    pub mode: Mode,
    /// Element indices of `Q` used as the second coordinate of symbols.
    pub index_set: Vec<usize>,
    /// `(m, t)` for each generator, as element indices of `M` and `Q`.
    pub symbols: Vec<(usize, usize)>,
    pub multiplicativity: Vec<Word>,
    pub action_transport: Vec<Word>,
    pub peiffer: Vec<Word>,
    /// For each `q` in `Q`: `(p, k)` with `q = f(p) index_set[k]`.
    normal_form: Vec<(usize, usize)>,
}

impl InducedPresentation {
    /// Generator for `(m, q)` after normalization, or `None` when `m = 1`.
    pub fn symbol(&self, m: usize, q: usize) -> Option<usize> {
        if m == 0 {
            return None;
        }
        let (p, k) = self.normal_form[q];
        let m = self.base.action().act(m, p);
        let nt = self.index_set.len();
        Some((m - 1) * nt + k)
    }

    fn letter(&self, m: usize, q: usize) -> Word {
        match self.symbol(m, q) {
            Some(s) => Word::generator(s),
            None => Word::empty(),
        }
    }

    pub fn relators(&self) -> impl Iterator<Item = &Word> {
        self.multiplicativity
            .iter()
            .chain(&self.action_transport)
            .chain(&self.peiffer)
    }

    pub fn fp_group(&self) -> FpGroup {
        let names = (0..self.symbols.len()).map(|i| format!("s{}", i + 1)).collect();
        FpGroup::new(names, self.relators().cloned().collect()).expect("symbols are in range")
    }

    /// `d(m, q) = q^-1 f(mu m) q` as an element index of `Q`.
    pub fn boundary(&self, m: usize, q: usize) -> usize {
        let fm = self.f.image_index(self.base.mu().image_index(m));
        self.f.target().conj(fm, q)
    }
}

/// Builds the presentation of `f_*(M)`.
pub fn induced_presentation(xm: &CrossedModule, f: &GroupHom, mode: Mode) -> Result<InducedPresentation> {
    if !Arc::ptr_eq(f.source(), xm.p()) && f.source().elements() != xm.p().elements() {
        return Err(Error::NotCompatible("f must start at the base of the crossed module".into()));
    }
    let m = xm.m();
    let q = f.target();
    let (index_set, normal_form) = match mode {
        Mode::Full => ((0..q.order()).collect::<Vec<_>>(), (0..q.order()).map(|x| (0, x)).collect()),
        Mode::Transversal => {
            if !f.is_injective() {
                return Err(Error::TransversalModeInvalid);
            }
            transversal(f)
        }
    };
    let nt = index_set.len();
    let symbols: Vec<(usize, usize)> = (1..m.order())
        .flat_map(|x| index_set.iter().map(move |&t| (x, t)))
        .collect();
    let mut pres = InducedPresentation {
        base: xm.clone(),
        f: f.clone(),
        mode,
        index_set,
        symbols,
        multiplicativity: Vec::new(),
        action_transport: Vec::new(),
        peiffer: Vec::new(),
        normal_form,
    };
    let mut seen: HashSet<Word> = HashSet::new();
    let keep = |w: Word, seen: &mut HashSet<Word>| -> Option<Word> {
        let w = w.cyclic_reduce();
        (!w.is_empty() && seen.insert(w.clone())).then_some(w)
    };

    let mut family = Vec::new();
    for k in 0..nt {
        let t = pres.index_set[k];
        for a in 1..m.order() {
            for b in 1..m.order() {
                let w = pres
                    .letter(a, t)
                    .concat(&pres.letter(b, t))
                    .concat(&pres.letter(m.mul(a, b), t).inverse());
                family.extend(keep(w, &mut seen));
            }
        }
    }
    pres.multiplicativity = family;

    let mut family = Vec::new();
    let p = xm.p();
    for a in 1..m.order() {
        for g in 1..p.order() {
            let fg = f.image_index(g);
            for x in 0..q.order() {
                let w = pres
                    .letter(xm.action().act(a, g), x)
                    .concat(&pres.letter(a, q.mul(fg, x)).inverse());
                family.extend(keep(w, &mut seen));
            }
        }
    }
    pres.action_transport = family;

    let mut family = Vec::new();
    for &(n, u) in &pres.symbols {
        let d = pres.boundary(n, u);
        let s = pres.letter(n, u);
        for &(a, t) in &pres.symbols {
            let w = s
                .inverse()
                .concat(&pres.letter(a, t))
                .concat(&s)
                .concat(&pres.letter(a, q.mul(t, d)).inverse());
            family.extend(keep(w, &mut seen));
        }
    }
    pres.peiffer = family;
    Ok(pres)
}

/// Minimal right coset representatives of `f(P)` and, for each `q`, the
/// factorization `q = f(p) t`.
fn transversal(f: &GroupHom) -> (Vec<usize>, Vec<(usize, usize)>) {
    let q = f.target();
    let p = f.source();
    let mut reps = Vec::new();
    let mut normal_form = vec![(usize::MAX, usize::MAX); q.order()];
    for x in 0..q.order() {
        if normal_form[x].1 != usize::MAX {
            continue;
        }
        let k = reps.len();
        reps.push(x);
        for g in 0..p.order() {
            normal_form[q.mul(f.image_index(g), x)] = (g, k);
        }
    }
    (reps, normal_form)
}

#[derive(Debug, Clone)]
pub struct InduceConfig {
    pub mode: Mode,
    pub coset: CosetConfig,
    /// Compute `Aut(f_*M)` when its order is at most this cap.
    pub aut_cap: Option<usize>,
}

impl Default for InduceConfig {
    fn default() -> Self {
        InduceConfig {
            mode: Mode::Transversal,
            coset: CosetConfig::default(),
            aut_cap: None,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RelatorCounts {
    pub multiplicativity: usize,
    pub action_transport: usize,
    pub peiffer: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct GroupSummary {
    pub order: usize,
    pub identification: Identification,
    pub fingerprint: Fingerprint,
}

impl GroupSummary {
    pub fn of(g: &Arc<PermGroup>) -> Result<Self> {
        Ok(GroupSummary {
            order: g.order(),
            identification: identify(g)?,
            fingerprint: fingerprint(g),
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct InducedReport {
    pub mode: Mode,
    pub symbols: usize,
    pub relators: RelatorCounts,
    pub cosets_defined: usize,
    pub induced: GroupSummary,
    pub kernel: GroupSummary,
    /// Whether the cokernel acts trivially on the kernel.
    pub kernel_action_trivial: bool,
    pub image_order: usize,
    pub cokernel_order: usize,
    pub normal_closure_order: usize,
    /// `|f_*M| = |ker d| * |normal closure of f(mu M)|`.
    pub order_factorization: bool,
    /// `Im d` equals the normal closure of `f(mu M)` in `Q`.
    pub image_is_normal_closure: bool,
    pub automorphisms: Option<GroupSummary>,
}

#[derive(Debug, Clone)]
pub struct Induced {
    pub xmod: CrossedModule,
    pub presentation: InducedPresentation,
    pub report: InducedReport,
    /// Image of each symbol in the realized group.
    pub symbol_images: Vec<Perm>,
    /// `m -> (m, 1)`.
    pub canonical: GroupHom,
}

/// Computes `f_*(M)` as a crossed module over `Q`, certified by `verify`.
pub fn induce(xm: &CrossedModule, f: &GroupHom, config: &InduceConfig) -> Result<Induced> {
    let pres = induced_presentation(xm, f, config.mode)?;
    let fp = pres.fp_group();
    let table = todd_coxeter(&fp, &[], &config.coset)?;
    let image = perm_image(&table)?;
    let g = Arc::new(image.group);
    let symbol_images = image.generator_images;
    let q = f.target().clone();

    let boundary_images: Vec<Perm> = pres
        .symbols
        .iter()
        .map(|&(m, t)| q.element(pres.boundary(m, t)).clone())
        .collect();
    let boundary = GroupHom::new(g.clone(), q.clone(), boundary_images)
        .map_err(|e| Error::AxiomsFail(format!("boundary is not well defined: {}", e)))?;

    let word_image = |s: Option<usize>| match s {
        Some(s) => symbol_images[s].clone(),
        None => Perm::identity(g.degree()),
    };
    let mut actions = Vec::with_capacity(q.generators().len());
    for s in 0..q.generators().len() {
        let qs = q.generator_index(s);
        let images = pres
            .symbols
            .iter()
            .map(|&(m, t)| word_image(pres.symbol(m, q.mul(t, qs))))
            .collect();
        let h = GroupHom::new(g.clone(), g.clone(), images)
            .map_err(|e| Error::AxiomsFail(format!("action of a generator of Q is not well defined: {}", e)))?;
        if !h.is_bijective() {
            return Err(Error::AxiomsFail("action of a generator of Q is not bijective".into()));
        }
        actions.push(Perm::from_images(h.map().to_vec())?);
    }
    let action = ActionMap::new(q.clone(), g.clone(), actions)
        .map_err(|e| Error::AxiomsFail(format!("Q-action: {}", e)))?;
    let induced = CrossedModule::new(boundary, action)?;

    let one = pres.f.target().index_of(&Perm::identity(q.degree())).expect("identity");
    let canonical_images = xm
        .m()
        .generators()
        .iter()
        .map(|x| word_image(pres.symbol(xm.m().index_of(x).expect("generator"), one)))
        .collect();
    let canonical = GroupHom::new(xm.m().clone(), g.clone(), canonical_images)
        .map_err(|e| Error::AxiomsFail(format!("canonical map: {}", e)))?;

    let km = induced.kernel_module()?;
    let ic = induced.image_and_cokernel()?;
    let fmu: Vec<Perm> = xm
        .m()
        .elements()
        .iter()
        .map(|x| f.apply(&xm.mu().apply(x)?))
        .collect::<Result<_>>()?;
    let closure = normal_closure(&q, &fmu)?;
    let automorphisms = match config.aut_cap {
        Some(cap) => Some(GroupSummary::of(&Arc::new(automorphism_group(&g, cap)?.group))?),
        None => None,
    };
    let report = InducedReport {
        mode: config.mode,
        symbols: pres.symbols.len(),
        relators: RelatorCounts {
            multiplicativity: pres.multiplicativity.len(),
            action_transport: pres.action_transport.len(),
            peiffer: pres.peiffer.len(),
        },
        cosets_defined: table.total_defined,
        induced: GroupSummary::of(&g)?,
        kernel: GroupSummary::of(&km.kernel)?,
        kernel_action_trivial: km.action.is_trivial(),
        image_order: ic.image.order(),
        cokernel_order: ic.cokernel.order(),
        normal_closure_order: closure.order(),
        order_factorization: g.order() == km.kernel.order() * closure.order(),
        image_is_normal_closure: ic.image.same_elements(&closure),
        automorphisms,
    };
    Ok(Induced {
        xmod: induced,
        presentation: pres,
        report,
        symbol_images,
        canonical,
    })
}

/// Result of checking the universal property against one target.
#[derive(Debug, Clone)]
pub struct UniversalCheck {
    /// `(m, q) -> phi(m)^q`.
    pub morphism: GroupHom,
    /// Number of morphisms found by the exhaustive sweep (when run).
    pub sweep_count: Option<usize>,
}

pub const DEFAULT_SWEEP_CAP: usize = 64;

/// Checks that `phi: M -> N` factors uniquely through `f_*(M)` as a
/// morphism of crossed `Q`-modules into `target` (`d': N -> Q`).
/// With `sweep_cap` set, every homomorphism `f_*M -> N` is examined.
pub fn universal_check(
    induced: &Induced,
    target: &CrossedModule,
    phi: &GroupHom,
    sweep_cap: Option<usize>,
) -> Result<UniversalCheck> {
    let base = &induced.presentation.base;
    let f = &induced.presentation.f;
    let q = f.target();
    let n = target.m();
    let g = induced.xmod.m();
    if target.p().elements() != q.elements() {
        return Err(Error::NotCompatible("target is not a crossed module over Q".into()));
    }
    if phi.source().elements() != base.m().elements() || phi.target().elements() != n.elements() {
        return Err(Error::NotCompatible("phi must map M to the target group".into()));
    }
    for x in 0..base.m().order() {
        let lhs = target.mu().image_index(phi.image_index(x));
        let rhs = f.image_index(base.mu().image_index(x));
        if lhs != rhs {
            return Err(Error::NotCompatible(format!("boundary square fails at {}", base.m().element(x))));
        }
        for p in 0..base.p().order() {
            let lhs = phi.image_index(base.action().act(x, p));
            let rhs = target.action().act(phi.image_index(x), f.image_index(p));
            if lhs != rhs {
                return Err(Error::NotCompatible(format!(
                    "phi does not respect the action at ({}, {})",
                    base.m().element(x),
                    base.p().element(p)
                )));
            }
        }
    }
    let images = induced
        .presentation
        .symbols
        .iter()
        .map(|&(m, t)| n.element(target.action().act(phi.image_index(m), t)).clone())
        .collect();
    let psi = GroupHom::new(g.clone(), n.clone(), images)
        .map_err(|e| Error::AxiomsFail(format!("factoring map is not a homomorphism: {}", e)))?;
    if !is_morphism_over(induced, target, phi, psi.map()) {
        return Err(Error::AxiomsFail("factoring map is not a morphism of crossed modules".into()));
    }
    let sweep_count = match sweep_cap {
        None => None,
        Some(cap) => {
            if g.order() > cap || n.order() > cap {
                return Err(Error::CapExceeded { cap });
            }
            let mut count = 0;
            for_each_homomorphism(g, n, &mut |map| {
                if is_morphism_over(induced, target, phi, map) {
                    count += 1;
                }
                true
            });
            Some(count)
        }
    };
    Ok(UniversalCheck {
        morphism: psi,
        sweep_count,
    })
}

/// `map: f_*M -> N` commutes with boundaries, is `Q`-equivariant and
/// restricts to `phi` along the canonical map.
fn is_morphism_over(induced: &Induced, target: &CrossedModule, phi: &GroupHom, map: &[u32]) -> bool {
    let xm = &induced.xmod;
    let g = xm.m();
    let q = xm.p();
    (0..g.order()).all(|x| target.mu().image_index(map[x] as usize) == xm.mu().image_index(x))
        && (0..g.order()).all(|x| {
            (0..q.order()).all(|p| map[xm.action().act(x, p)] as usize == target.action().act(map[x] as usize, p))
        })
        && (0..induced.canonical.source().order())
            .all(|m| map[induced.canonical.image_index(m)] as usize == phi.image_index(m))
}
