//! Todd–Coxeter coset enumeration.
//!
//! Two strategies share one table and one coincidence routine:
//! HLT scans every relator at every live coset, defining cosets to fill
//! gaps; Felsch defines one entry at a time in row order and only deduces
//! consequences of each new entry. Coincidences are resolved with a
//! union-find over coset numbers, always keeping the smaller number.
//!
//! Column `2i` is generator `i`, column `2i + 1` its inverse.

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Perm;

use super::word::Word;
use super::FpGroup;

pub const DEFAULT_MAX_COSETS: usize = 1_000_000;

const UNDEF: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    #[default]
    Hlt,
    Felsch,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CosetConfig {
    /// Upper bound on the number of cosets ever defined.
    pub max_cosets: usize,
    pub strategy: Strategy,
}

impl Default for CosetConfig {
    fn default() -> Self {
        CosetConfig {
            max_cosets: DEFAULT_MAX_COSETS,
            strategy: Strategy::Hlt,
        }
    }
}

/// A completed coset table; row 0 is the subgroup coset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetTable {
    ngens: usize,
    index: usize,
    table: Vec<u32>,
    /// Primary coincidences found while scanning, in the numbering at the
    /// time they were found.
    pub coincidences: Vec<(usize, usize)>,
    /// Total number of cosets defined during the run.
    pub total_defined: usize,
}

impl CosetTable {
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn ngens(&self) -> usize {
        self.ngens
    }

    /// Coset reached from `coset` by column `col` (`2i` or `2i + 1`).
    pub fn entry(&self, coset: usize, col: usize) -> Option<usize> {
        let v = self.table[coset * 2 * self.ngens + col];
        (v != UNDEF).then_some(v as usize)
    }

    pub fn is_complete(&self) -> bool {
        self.table.iter().all(|&v| v != UNDEF)
    }

    /// Follows `word` from `coset`; `None` if an entry is missing.
    pub fn trace(&self, coset: usize, word: &Word) -> Option<usize> {
        word.letters()
            .iter()
            .try_fold(coset, |c, &l| self.entry(c, column(l)))
    }

    /// The permutation of cosets induced by generator `i`.
    pub fn generator_perm(&self, i: usize) -> Result<Perm> {
        let images = (0..self.index)
            .map(|c| self.entry(c, 2 * i).map(|d| d as u32).ok_or(Error::IncompleteTable))
            .collect::<Result<Vec<_>>>()?;
        Perm::from_images(images).map_err(|_| Error::IncompleteTable)
    }
}

#[inline]
fn column(letter: i32) -> usize {
    let g = letter.unsigned_abs() as usize - 1;
    if letter > 0 {
        2 * g
    } else {
        2 * g + 1
    }
}

struct Enumerator {
    ncols: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    max_cosets: usize,
    queue: Vec<u32>,
    deductions: Vec<(u32, u32)>,
    track_deductions: bool,
    coincidences: Vec<(usize, usize)>,
}

impl Enumerator {
    fn new(ncols: usize, max_cosets: usize, track_deductions: bool) -> Self {
        Enumerator {
            ncols,
            table: vec![UNDEF; ncols],
            parent: vec![0],
            max_cosets,
            queue: Vec::new(),
            deductions: Vec::new(),
            track_deductions,
            coincidences: Vec::new(),
        }
    }

    #[inline]
    fn n(&self) -> usize {
        self.parent.len()
    }

    #[inline]
    fn get(&self, c: u32, col: usize) -> u32 {
        self.table[c as usize * self.ncols + col]
    }

    #[inline]
    fn set(&mut self, c: u32, col: usize, v: u32) {
        self.table[c as usize * self.ncols + col] = v;
    }

    #[inline]
    fn is_live(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn define(&mut self, c: u32, col: usize) -> Result<u32> {
        if self.n() >= self.max_cosets {
            return Err(Error::CosetLimitExceeded {
                max_cosets: self.max_cosets,
            });
        }
        let d = self.n() as u32;
        self.parent.push(d);
        self.table.extend(std::iter::repeat_n(UNDEF, self.ncols));
        self.set(c, col, d);
        self.set(d, col ^ 1, c);
        if self.track_deductions {
            self.deductions.push((c, col as u32));
        }
        Ok(d)
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut k = c;
        while self.parent[k as usize] != r {
            let next = self.parent[k as usize];
            self.parent[k as usize] = r;
            k = next;
        }
        r
    }

    fn merge(&mut self, a: u32, b: u32) {
        let ra = self.rep(a);
        let rb = self.rep(b);
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi as usize] = lo;
            self.queue.push(hi);
        }
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.coincidences.push((a as usize, b as usize));
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let g = self.queue[i];
            i += 1;
            for col in 0..self.ncols {
                let d = self.get(g, col);
                if d == UNDEF {
                    continue;
                }
                self.set(d, col ^ 1, UNDEF);
                let mu = self.rep(g);
                let nu = self.rep(d);
                let mu_x = self.get(mu, col);
                if mu_x != UNDEF {
                    self.merge(nu, mu_x);
                } else {
                    let nu_xi = self.get(nu, col ^ 1);
                    if nu_xi != UNDEF {
                        self.merge(mu, nu_xi);
                    } else {
                        self.set(mu, col, nu);
                        self.set(nu, col ^ 1, mu);
                        if self.track_deductions {
                            self.deductions.push((mu, col as u32));
                        }
                    }
                }
            }
        }
    }

    /// Scans `word` (as columns) at `c`; fills gaps by defining new cosets
    /// when `fill` is set, otherwise only deduces single missing entries.
    fn scan(&mut self, c: u32, word: &[u32], fill: bool) -> Result<()> {
        if word.is_empty() {
            return Ok(());
        }
        let mut f = c;
        let mut i = 0usize;
        let mut b = c;
        let mut j = word.len() as isize - 1;
        loop {
            while (i as isize) <= j {
                let next = self.get(f, word[i] as usize);
                if next == UNDEF {
                    break;
                }
                f = next;
                i += 1;
            }
            if (i as isize) > j {
                if f != c {
                    self.coincidence(f, c);
                }
                return Ok(());
            }
            while j >= i as isize {
                let next = self.get(b, word[j as usize] as usize ^ 1);
                if next == UNDEF {
                    break;
                }
                b = next;
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i as isize {
                let col = word[i] as usize;
                self.set(f, col, b);
                self.set(b, col ^ 1, f);
                if self.track_deductions {
                    self.deductions.push((f, col as u32));
                }
                return Ok(());
            }
            if !fill {
                return Ok(());
            }
            self.define(f, word[i] as usize)?;
        }
    }

    fn finish(self, ngens: usize) -> CosetTable {
        let n = self.n();
        let mut renumber = vec![UNDEF; n];
        let mut live = 0u32;
        for c in 0..n {
            if self.parent[c] == c as u32 {
                renumber[c] = live;
                live += 1;
            }
        }
        let mut table = Vec::with_capacity(live as usize * self.ncols);
        for c in 0..n {
            if self.parent[c] == c as u32 {
                for col in 0..self.ncols {
                    let v = self.get(c as u32, col);
                    table.push(if v == UNDEF { UNDEF } else { renumber[v as usize] });
                }
            }
        }
        CosetTable {
            ngens,
            index: live as usize,
            table,
            coincidences: self.coincidences,
            total_defined: n,
        }
    }
}

fn to_columns(w: &Word) -> Vec<u32> {
    w.letters().iter().map(|&l| column(l) as u32).collect()
}

/// Enumerates the cosets of `<subgroup>` in `g`.
pub fn todd_coxeter(g: &FpGroup, subgroup: &[Word], config: &CosetConfig) -> Result<CosetTable> {
    let ngens = g.generators().len();
    for w in g.relators().iter().chain(subgroup) {
        w.validate(ngens)?;
    }
    let ncols = 2 * ngens;
    let relators: Vec<Vec<u32>> = g
        .relators()
        .iter()
        .map(|w| to_columns(&w.cyclic_reduce()))
        .filter(|w| !w.is_empty())
        .collect();
    let subgroup: Vec<Vec<u32>> = subgroup.iter().map(|w| to_columns(&w.free_reduce())).collect();
    let felsch = config.strategy == Strategy::Felsch;
    let mut e = Enumerator::new(ncols, config.max_cosets.max(1), felsch);
    if ngens == 0 {
        return Ok(e.finish(0));
    }
    if felsch {
        felsch_run(&mut e, &relators, &subgroup)?;
    } else {
        hlt_run(&mut e, &relators, &subgroup)?;
    }
    Ok(e.finish(ngens))
}

fn hlt_run(e: &mut Enumerator, relators: &[Vec<u32>], subgroup: &[Vec<u32>]) -> Result<()> {
    for w in subgroup {
        e.scan(0, w, true)?;
    }
    let mut a = 0u32;
    while (a as usize) < e.n() {
        for r in relators {
            if !e.is_live(a) {
                break;
            }
            e.scan(a, r, true)?;
        }
        if e.is_live(a) {
            for col in 0..e.ncols {
                if e.get(a, col) == UNDEF {
                    e.define(a, col)?;
                }
            }
        }
        a += 1;
    }
    Ok(())
}

fn felsch_run(e: &mut Enumerator, relators: &[Vec<u32>], subgroup: &[Vec<u32>]) -> Result<()> {
    // every cyclic conjugate of every relator and its inverse, bucketed by first column
    let mut by_first: Vec<Vec<Vec<u32>>> = vec![Vec::new(); e.ncols];
    let mut seen = std::collections::HashSet::new();
    for r in relators {
        let inv: Vec<u32> = r.iter().rev().map(|&c| c ^ 1).collect();
        for base in [r, &inv] {
            for k in 0..base.len() {
                let mut rot = base[k..].to_vec();
                rot.extend_from_slice(&base[..k]);
                if seen.insert(rot.clone()) {
                    by_first[rot[0] as usize].push(rot);
                }
            }
        }
    }
    for w in subgroup {
        e.scan(0, w, true)?;
    }
    process_deductions(e, &by_first)?;
    loop {
        let mut a = 0u32;
        while (a as usize) < e.n() {
            for col in 0..e.ncols {
                if e.is_live(a) && e.get(a, col) == UNDEF {
                    e.define(a, col)?;
                    process_deductions(e, &by_first)?;
                }
            }
            a += 1;
        }
        // closing pass: any relator that fails to close is scanned with
        // filling, and definition resumes from the first coset
        let mut clean = true;
        for c in 0..e.n() as u32 {
            for r in relators {
                if !e.is_live(c) {
                    break;
                }
                if !closes(e, c, r) {
                    clean = false;
                    e.scan(c, r, true)?;
                    process_deductions(e, &by_first)?;
                }
            }
        }
        if clean {
            return Ok(());
        }
    }
}

fn closes(e: &Enumerator, c: u32, word: &[u32]) -> bool {
    let mut f = c;
    for &col in word {
        f = e.get(f, col as usize);
        if f == UNDEF {
            return false;
        }
    }
    f == c
}

fn process_deductions(e: &mut Enumerator, by_first: &[Vec<Vec<u32>>]) -> Result<()> {
    while let Some((c, col)) = e.deductions.pop() {
        if !e.is_live(c) {
            continue;
        }
        for w in &by_first[col as usize] {
            if !e.is_live(c) {
                break;
            }
            e.scan(c, w, false)?;
        }
        let d = e.get(c, col as usize);
        if d != UNDEF && e.is_live(d) {
            for w in &by_first[col as usize ^ 1] {
                if !e.is_live(d) {
                    break;
                }
                e.scan(d, w, false)?;
            }
        }
    }
    Ok(())
}

/// Permutation action of the generators on the cosets.
#[derive(Debug, Clone)]
pub struct PermImage {
    pub group: PermGroup,
    /// Image of each presentation generator, in order.
    pub generator_images: Vec<Perm>,
}

pub fn perm_image(t: &CosetTable) -> Result<PermImage> {
    if !t.is_complete() {
        return Err(Error::IncompleteTable);
    }
    let generator_images = (0..t.ngens())
        .map(|i| t.generator_perm(i))
        .collect::<Result<Vec<_>>>()?;
    let degree = t.index().max(1);
    let group = PermGroup::new(degree, generator_images.clone())?;
    Ok(PermImage {
        group,
        generator_images,
    })
}
