#![allow(dead_code)]

use std::sync::Arc;

use xmod_core::catalog::symmetric;
use xmod_core::xmod::{make_standard, StandardData};
use xmod_core::{CrossedModule, GroupHom, Perm, PermGroup};

/// Parses `(1,2)(3,4)` style cycle notation at the given degree.
pub fn perm(degree: usize, text: &str) -> Perm {
    if text == "()" {
        return Perm::identity(degree);
    }
    let cycles: Vec<Vec<usize>> = text
        .trim_matches(|c| c == '(' || c == ')')
        .split(")(")
        .map(|c| c.split(',').map(|x| x.trim().parse().unwrap()).collect())
        .collect();
    Perm::from_cycles(degree, &cycles).unwrap()
}

pub fn group(degree: usize, gens: &[&str]) -> Arc<PermGroup> {
    Arc::new(PermGroup::new(degree, gens.iter().map(|g| perm(degree, g)).collect()).unwrap())
}

pub fn s4() -> Arc<PermGroup> {
    Arc::new(symmetric(4))
}

pub fn inclusion_xmod(m: &Arc<PermGroup>, p: &Arc<PermGroup>) -> CrossedModule {
    make_standard(StandardData::NormalInclusion {
        m: m.clone(),
        p: p.clone(),
    })
    .unwrap()
}

pub struct Row {
    pub m: Arc<PermGroup>,
    pub p: Arc<PermGroup>,
    pub induced: &'static str,
    pub kernel: &'static str,
    pub aut: &'static str,
}

/// The twelve rows (row 6 twice, once per choice of `P`), with expected
/// labels as produced by the catalog; `Unknown(n)` cells are order-only.
pub fn rows() -> Vec<Row> {
    let c2 = group(4, &["(1,2)"]);
    let c2p = group(4, &["(1,2)(3,4)"]);
    let c22 = group(4, &["(1,2)", "(3,4)"]);
    let c3 = group(4, &["(1,2,3)"]);
    let s3 = group(4, &["(1,2,3)", "(1,2)"]);
    let c4 = group(4, &["(1,3,2,4)"]);
    let d8 = group(4, &["(1,3,2,4)", "(1,2)"]);
    let row = |m: &Arc<PermGroup>, p: &Arc<PermGroup>, induced, kernel, aut| Row {
        m: m.clone(),
        p: p.clone(),
        induced,
        kernel,
        aut,
    };
    vec![
        row(&c2, &c2, "GL(2,3)", "C2", "S4 x C2"),
        row(&c3, &c3, "C3 x SL(2,3)", "C6", "Unknown(144)"),
        row(&c3, &s3, "SL(2,3)", "C2", "S4"),
        row(&s3, &s3, "GL(2,3)", "C2", "S4 x C2"),
        row(&c2p, &c2p, "Unknown(128)", "C4 x C2^3", ""),
        row(&c2p, &c22, "Unknown(16)", "C4", "S4 x C2"),
        row(&c2p, &c4, "Unknown(16)", "C4", "S4 x C2"),
        row(&c2p, &d8, "C2^3", "C2", "SL(3,2)"),
        row(&c22, &c22, "S4 x C2", "C2", "S4 x C2"),
        row(&c22, &d8, "S4", "1", "S4"),
        row(&c4, &c4, "Unknown(96)", "C4", "Unknown(96)"),
        row(&c4, &d8, "S4", "1", "S4"),
        row(&d8, &d8, "S4 x C2", "C2", "S4 x C2"),
    ]
}

pub fn embed(p: &Arc<PermGroup>, q: &Arc<PermGroup>) -> GroupHom {
    GroupHom::inclusion(p.clone(), q.clone()).unwrap()
}

/// Every subgroup of `g` generated by at most two elements, deduplicated,
/// smallest first. For subgroups of S4 this is all of them.
pub fn two_generated_subgroups(g: &PermGroup) -> Vec<Arc<PermGroup>> {
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for a in g.elements() {
        for b in g.elements() {
            let h = PermGroup::new(g.degree(), vec![a.clone(), b.clone()]).unwrap();
            let mut key: Vec<Perm> = h.elements().to_vec();
            key.sort();
            if seen.insert(key) {
                out.push(Arc::new(h));
            }
        }
    }
    out.sort_by_key(|h| h.order());
    out
}
