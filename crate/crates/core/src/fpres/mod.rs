//! Finitely presented groups: words, coset enumeration and abelianization.

pub mod coset;
pub mod parse;
pub mod snf;
pub mod word;

use std::fmt;

pub use coset::{perm_image, todd_coxeter, CosetConfig, CosetTable, PermImage, Strategy};
pub use parse::{parse_presentation, parse_word, parse_word_list};
pub use snf::{smith_normal_form, SmithForm};
pub use word::Word;

use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpGroup {
    generators: Vec<String>,
    relators: Vec<Word>,
}

impl FpGroup {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        for r in &relators {
            r.validate(generators.len())?;
        }
        Ok(FpGroup {
            generators,
            relators,
        })
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// Invariant factors of the abelianization, `0` marking each free
    /// factor: nontrivial finite factors first (each dividing the next),
    /// then the zeros.
    pub fn abelianization(&self) -> Result<Vec<i64>> {
        let n = self.generators.len();
        let matrix: Vec<Vec<i64>> = self.relators.iter().map(|r| r.exponent_sums(n)).collect();
        let diag = if matrix.is_empty() {
            Vec::new()
        } else {
            smith_normal_form(&matrix)?.diagonal()
        };
        let mut finite: Vec<i64> = diag.iter().copied().filter(|&d| d > 1).collect();
        finite.sort_unstable();
        let rank = diag.iter().filter(|&&d| d != 0).count();
        finite.extend(std::iter::repeat_n(0, n - rank));
        Ok(finite)
    }
}

impl fmt::Display for FpGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(|r| r.render(&self.generators)).collect();
        write!(f, "fp<{}| {}>", self.generators.join(","), rels.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn abelianization_examples() {
        let trefoil = parse_presentation("fp<x,y| x^3*y^-2>").unwrap();
        assert_eq!(trefoil.abelianization().unwrap(), vec![0]);
        let c7 = parse_presentation("fp<a| a^7>").unwrap();
        assert_eq!(c7.abelianization().unwrap(), vec![7]);
        let klein = parse_presentation("fp<a,b| a^2, b^2, a*b*a^-1*b^-1>").unwrap();
        assert_eq!(klein.abelianization().unwrap(), vec![2, 2]);
        let free = parse_presentation("fp<a,b|>").unwrap();
        assert_eq!(free.abelianization().unwrap(), vec![0, 0]);
        let s3 = parse_presentation("fp<a,b| a^2, b^2, (ab)^3>").unwrap();
        assert_eq!(s3.abelianization().unwrap(), vec![2]);
    }

    #[test]
    fn display_round_trips() {
        let g = parse_presentation("fp<x,y| x^3*y^-2, (xy)^2>").unwrap();
        let again = parse_presentation(&g.to_string()).unwrap();
        assert_eq!(g, again);
    }
}
