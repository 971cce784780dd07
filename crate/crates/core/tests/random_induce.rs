mod common;

use std::collections::BTreeSet;
use std::sync::Arc;

use common::{embed, inclusion_xmod, s4};
use proptest::prelude::*;
use xmod_core::iso::all_homomorphisms;
use xmod_core::{induce, is_isomorphic, GroupHom, InduceConfig, Induced, Mode, PermGroup};

/// Normal closure of `seeds` in `q`, as element indices, by saturating
/// under products and conjugation.
fn closure_indices(q: &PermGroup, seeds: &[usize]) -> BTreeSet<usize> {
    let mut set: BTreeSet<usize> = seeds.iter().copied().collect();
    set.insert(0);
    loop {
        let mut next = set.clone();
        for &a in &set {
            for &b in &set {
                next.insert(q.mul(a, b));
            }
            for g in 0..q.order() {
                next.insert(q.conj(a, g));
            }
        }
        if next.len() == set.len() {
            return set;
        }
        set = next;
    }
}

fn check(out: &Induced, f: &GroupHom) {
    let base = &out.presentation.base;
    let q = f.target();
    let g = out.xmod.m();
    let d = out.xmod.mu();
    assert!(out.xmod.verify().is_valid());

    let seeds: Vec<usize> = (0..base.m().order())
        .map(|m| f.image_index(base.mu().image_index(m)))
        .collect();
    let closure = closure_indices(q, &seeds);
    let image: BTreeSet<usize> = (0..g.order()).map(|x| d.image_index(x)).collect();
    assert_eq!(image, closure);

    let kernel: Vec<usize> = (0..g.order()).filter(|&x| d.image_index(x) == 0).collect();
    assert_eq!(g.order(), kernel.len() * closure.len());
    for &k in &kernel {
        assert!((0..g.order()).all(|x| g.mul(k, x) == g.mul(x, k)));
        for &p in &closure {
            assert_eq!(out.xmod.action().act(k, p), k);
        }
    }
    assert_eq!(out.report.kernel.order, kernel.len());

    // the canonical map is a morphism over f
    for m in 0..base.m().order() {
        let c = out.canonical.image_index(m);
        assert_eq!(d.image_index(c), f.image_index(base.mu().image_index(m)));
        for p in 0..base.p().order() {
            assert_eq!(
                out.canonical.image_index(base.action().act(m, p)),
                out.xmod.action().act(c, f.image_index(p))
            );
        }
    }
}

/// Keeps the enumerations small: skips cases whose induced group could be
/// larger than `|M|^[Q : f(P)] <= 1024`.
fn small_enough(m_order: usize, index: usize) -> bool {
    (m_order as f64).powi(index as i32) <= 1024.0
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn induced_inclusions_in_s4(a in 0usize..24, b in 0usize..24, c in 0usize..24) {
        let q = s4();
        let p = Arc::new(q.subgroup(vec![q.element(a).clone(), q.element(b).clone()]).unwrap());
        prop_assume!(p.contains(q.element(c)));
        let m = Arc::new(xmod_core::normal_closure(&p, &[q.element(c).clone()]).unwrap());
        prop_assume!(small_enough(m.order(), q.order() / p.order()));
        let xm = inclusion_xmod(&m, &p);
        let f = embed(&p, &q);
        let full = induce(&xm, &f, &InduceConfig { mode: Mode::Full, ..Default::default() }).unwrap();
        let fast = induce(&xm, &f, &InduceConfig::default()).unwrap();
        check(&full, &f);
        check(&fast, &f);
        prop_assert_eq!(full.xmod.m().order(), fast.xmod.m().order());
        if full.xmod.m().order() <= 64 {
            prop_assert!(is_isomorphic(full.xmod.m(), fast.xmod.m()).unwrap().is_some());
        }
    }

    #[test]
    fn induced_along_arbitrary_homomorphisms(a in 0usize..24, b in 0usize..24, pick in 0usize..10_000) {
        let q = s4();
        let p = Arc::new(q.subgroup(vec![q.element(a).clone(), q.element(b).clone()]).unwrap());
        let homs = all_homomorphisms(&p, &q);
        let f = &homs[pick % homs.len()];
        let index = q.order() / f.image().order();
        prop_assume!(small_enough(p.order(), index));
        let xm = inclusion_xmod(&p, &p);
        let out = induce(&xm, f, &InduceConfig { mode: Mode::Full, ..Default::default() }).unwrap();
        check(&out, f);
    }
}
