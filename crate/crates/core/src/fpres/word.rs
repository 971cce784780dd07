use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::perm::Perm;

/// A word in the free group: letters are `±(index + 1)`, negative for inverses.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<i32>);

impl Word {
    pub fn new(letters: Vec<i32>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// The generator with 0-based index `i`.
    pub fn generator(i: usize) -> Self {
        Word(vec![i as i32 + 1])
    }

    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|&l| -l).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn pow(&self, e: i64) -> Word {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut v = Vec::with_capacity(base.len() * e.unsigned_abs() as usize);
        for _ in 0..e.unsigned_abs() {
            v.extend_from_slice(&base.0);
        }
        Word(v)
    }

    /// Cancels adjacent `x x^-1` pairs.
    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<i32> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    /// Free reduction followed by cancelling matching letters at both ends.
    pub fn cyclic_reduce(&self) -> Word {
        let mut v = self.free_reduce().0;
        while v.len() >= 2 && v[0] == -v[v.len() - 1] {
            v.pop();
            v.remove(0);
        }
        Word(v)
    }

    pub fn validate(&self, ngens: usize) -> Result<()> {
        for &l in &self.0 {
            if l == 0 || l.unsigned_abs() as usize > ngens {
                return Err(Error::InvalidWord(format!(
                    "letter {} outside {} generators",
                    l, ngens
                )));
            }
        }
        Ok(())
    }

    /// Exponent sum of each generator.
    pub fn exponent_sums(&self, ngens: usize) -> Vec<i64> {
        let mut v = vec![0i64; ngens];
        for &l in &self.0 {
            let i = l.unsigned_abs() as usize - 1;
            v[i] += l.signum() as i64;
        }
        v
    }

    /// Evaluates the word with `images[i]` substituted for generator `i`.
    pub fn eval(&self, images: &[Perm], degree: usize) -> Perm {
        let mut acc = Perm::identity(degree);
        for &l in &self.0 {
            let p = &images[l.unsigned_abs() as usize - 1];
            acc = if l > 0 { acc.mul(p) } else { acc.mul(&p.inverse()) };
        }
        acc
    }

    /// Renders with generator names, collapsing runs into powers, e.g. `x^3*y^-2`.
    pub fn render(&self, names: &[String]) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        let mut out = String::new();
        let mut k = 0;
        while k < self.0.len() {
            let l = self.0[k];
            let mut run = 1;
            while k + run < self.0.len() && self.0[k + run] == l {
                run += 1;
            }
            if !out.is_empty() {
                out.push('*');
            }
            out.push_str(&names[l.unsigned_abs() as usize - 1]);
            let e = run as i64 * l.signum() as i64;
            if e != 1 {
                let _ = write!(out, "^{}", e);
            }
            k += run;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_is_idempotent() {
        let w = Word::new(vec![1, 2, -2, -1, 1, 3, -1]);
        let r = w.free_reduce();
        assert_eq!(r, Word::new(vec![1, 3, -1]));
        assert_eq!(r.free_reduce(), r);
        assert_eq!(r.cyclic_reduce(), Word::new(vec![3]));
    }

    #[test]
    fn render_collapses_runs() {
        let names = vec!["x".to_string(), "y".to_string()];
        assert_eq!(Word::new(vec![1, 1, 1, -2, -2]).render(&names), "x^3*y^-2");
        assert_eq!(Word::empty().render(&names), "1");
    }
}
