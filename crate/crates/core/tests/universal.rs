mod common;

use std::sync::Arc;

use common::{embed, group, inclusion_xmod};
use xmod_core::catalog::catalog;
use xmod_core::induce::universal_check;
use xmod_core::iso::all_homomorphisms;
use xmod_core::{
    automorphism_group, induce, ActionMap, CrossedModule, Error, GroupHom, InduceConfig, Induced, PermGroup,
    DEFAULT_AUT_CAP,
};

/// Every crossed `Q`-module structure on each catalog group of order at most `max_order`.
fn crossed_modules_over(q: &Arc<PermGroup>, max_order: usize) -> Vec<CrossedModule> {
    let mut out = Vec::new();
    for entry in catalog().iter().filter(|e| e.realization.order() <= max_order) {
        let n = entry.realization.clone();
        let aut = Arc::new(automorphism_group(&n, DEFAULT_AUT_CAP).unwrap().group);
        let actions: Vec<ActionMap> = all_homomorphisms(q, &aut)
            .into_iter()
            .map(|h| ActionMap::new(q.clone(), n.clone(), h.generator_images().to_vec()).unwrap())
            .collect();
        for boundary in all_homomorphisms(&n, q) {
            for action in &actions {
                if let Ok(xm) = CrossedModule::new(boundary.clone(), action.clone()) {
                    out.push(xm);
                }
            }
        }
    }
    out
}

/// Direct reading of the compatibility conditions on `phi: M -> N`.
fn compatible(induced: &Induced, target: &CrossedModule, phi: &GroupHom) -> bool {
    let base = &induced.presentation.base;
    let f = &induced.presentation.f;
    let m = base.m();
    (0..m.order()).all(|x| {
        let n = phi.image_index(x);
        target.mu().image_index(n) == f.image_index(base.mu().image_index(x))
            && (0..base.p().order())
                .all(|p| phi.image_index(base.action().act(x, p)) == target.action().act(n, f.image_index(p)))
    })
}

/// Counts maps `f_*M -> N` satisfying every condition by trying all
/// assignments of the elements of `f_*M`, one by one.
fn brute_force_factorizations(induced: &Induced, target: &CrossedModule, phi: &GroupHom) -> usize {
    let g = induced.xmod.m();
    let n = target.m();
    let q = induced.xmod.p();
    let ok = |map: &[usize]| {
        (0..g.order()).all(|x| (0..g.order()).all(|y| map[g.mul(x, y)] == n.mul(map[x], map[y])))
            && (0..g.order()).all(|x| target.mu().image_index(map[x]) == induced.xmod.mu().image_index(x))
            && (0..g.order()).all(|x| {
                (0..q.order()).all(|p| map[induced.xmod.action().act(x, p)] == target.action().act(map[x], p))
            })
            && (0..phi.source().order()).all(|m| map[induced.canonical.image_index(m)] == phi.image_index(m))
    };
    let total = n.order().pow(g.order() as u32);
    let mut count = 0;
    let mut map = vec![0usize; g.order()];
    for code in 0..total {
        let mut c = code;
        for slot in map.iter_mut() {
            *slot = c % n.order();
            c /= n.order();
        }
        if ok(&map) {
            count += 1;
        }
    }
    count
}

fn sweep(induced: &Induced, q: &Arc<PermGroup>, max_order: usize) -> (usize, usize) {
    let m = induced.presentation.base.m().clone();
    let mut triples = 0;
    let mut rejected = 0;
    for target in crossed_modules_over(q, max_order) {
        for phi in all_homomorphisms(&m, target.m()) {
            let result = universal_check(induced, &target, &phi, Some(64));
            if !compatible(induced, &target, &phi) {
                assert!(matches!(result, Err(Error::NotCompatible(_))));
                rejected += 1;
                continue;
            }
            let check = result.unwrap();
            assert_eq!(check.sweep_count, Some(1));
            if induced.xmod.m().order() <= 4 {
                assert_eq!(brute_force_factorizations(induced, &target, &phi), 1);
            }
            triples += 1;
        }
    }
    (triples, rejected)
}

#[test]
fn unique_factorization_over_klein_four() {
    let p = group(4, &["(1,2)"]);
    let q = group(4, &["(1,2)", "(3,4)"]);
    let induced = induce(&inclusion_xmod(&p, &p), &embed(&p, &q), &InduceConfig::default()).unwrap();
    assert_eq!(induced.xmod.m().order(), 4);
    let (triples, rejected) = sweep(&induced, &q, 8);
    assert!(triples > 10 && rejected > 0, "{} triples, {} rejected", triples, rejected);
}

#[test]
fn unique_factorization_over_s3_and_c4() {
    let p = group(3, &["(1,2)"]);
    let q = group(3, &["(1,2,3)", "(1,2)"]);
    let induced = induce(&inclusion_xmod(&p, &p), &embed(&p, &q), &InduceConfig::default()).unwrap();
    let (triples, _) = sweep(&induced, &q, 8);
    assert!(triples > 0);

    let p = group(4, &["(1,3)(2,4)"]);
    let q = group(4, &["(1,2,3,4)"]);
    let induced = induce(&inclusion_xmod(&p, &p), &embed(&p, &q), &InduceConfig::default()).unwrap();
    let (triples, _) = sweep(&induced, &q, 8);
    assert!(triples > 0);
}

#[test]
fn sweep_respects_its_cap() {
    let p = group(4, &["(1,2)"]);
    let q = Arc::new(xmod_core::catalog::symmetric(4));
    let induced = induce(&inclusion_xmod(&p, &p), &embed(&p, &q), &InduceConfig::default()).unwrap();
    let err = universal_check(&induced, &induced.xmod, &induced.canonical, Some(32)).unwrap_err();
    assert_eq!(err, Error::CapExceeded { cap: 32 });
}
