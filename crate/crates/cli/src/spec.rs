//! Group specifications.
//!
//! ```text
//! spec    := factor ("*" factor)*          products split at nesting depth 0
//! factor  := "named:" name | presentation | cycles
//! cycles  := perm ("," perm)*              commas at nesting depth 0
//! perm    := "()" | cycle+
//! cycle   := "(" point ("," point)* ")"    points are 1-based
//! ```
//!
//! Cycles need not be disjoint: `(1,2)(2,3)` is the product, read left to
//! right like every product here.
//!
//! Presentations use the `fp<x,y| x^3*y^-2>` grammar of the core crate.
//! Positions in errors are 0-based character offsets into the whole input.

use std::fmt;

use xmod_core::catalog::{direct_product, lookup};
use xmod_core::fpres::{parse_presentation, perm_image, todd_coxeter, CosetConfig};
use xmod_core::{FpGroup, ParseError, Perm, PermGroup};

use crate::CliError;

/// A list of permutations given in cycle notation, degree = largest point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermList {
    pub degree: usize,
    pub perms: Vec<Perm>,
}

impl PermList {
    /// The permutations on `degree` points.
    pub fn at_degree(&self, degree: usize) -> Result<Vec<Perm>, CliError> {
        if degree < self.degree {
            return Err(CliError::Domain(xmod_core::Error::DegreeMismatch {
                expected: degree,
                found: self.degree,
            }));
        }
        Ok(self.perms.iter().map(|p| p.extend(degree)).collect::<Result<_, _>>()?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Cycles(PermList),
    Named(String),
    Presentation(FpGroup),
    Product(Vec<GroupSpec>),
}

/// What a specification denotes before any computation.
#[derive(Debug, Clone)]
pub enum Parsed {
    Perm(PermGroup),
    Fp(FpGroup),
}

impl GroupSpec {
    /// A concrete permutation group. Presentations are realized by their
    /// regular representation, so they must be finite within `cosets`.
    pub fn realize(&self, element_cap: usize, cosets: &CosetConfig) -> Result<PermGroup, CliError> {
        Ok(match self {
            GroupSpec::Cycles(list) => PermGroup::with_cap(list.degree, list.perms.clone(), element_cap)?,
            GroupSpec::Named(name) => lookup(name)?,
            GroupSpec::Presentation(fp) => {
                let table = todd_coxeter(fp, &[], cosets)?;
                perm_image(&table)?.group
            }
            GroupSpec::Product(factors) => {
                let mut groups = factors.iter().map(|f| f.realize(element_cap, cosets));
                let first = groups.next().expect("products have at least two factors")?;
                groups.try_fold(first, |acc, g| Ok::<_, CliError>(direct_product(&acc, &g?)))?
            }
        })
    }

    /// A presentation stays a presentation; everything else is realized.
    pub fn parse_object(&self, element_cap: usize, cosets: &CosetConfig) -> Result<Parsed, CliError> {
        match self {
            GroupSpec::Presentation(fp) => Ok(Parsed::Fp(fp.clone())),
            _ => Ok(Parsed::Perm(self.realize(element_cap, cosets)?)),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cycles(list) => f.write_str(&render_perms(&list.perms)),
            GroupSpec::Named(name) => write!(f, "named:{}", name),
            GroupSpec::Presentation(fp) => write!(f, "{}", fp),
            GroupSpec::Product(parts) => {
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" * ")?;
                    }
                    write!(f, "{}", p)?;
                }
                Ok(())
            }
        }
    }
}

/// Cycle notation for a generator list, reparsable by [`parse_group_spec`].
pub fn render_perms(perms: &[Perm]) -> String {
    if perms.is_empty() {
        return "()".to_string();
    }
    perms.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")
}

/// The spec text of a permutation group: its generators in cycle notation.
pub fn spec_of(g: &PermGroup) -> String {
    render_perms(g.generators())
}

fn opener(c: char) -> Option<char> {
    match c {
        '(' => Some(')'),
        '[' => Some(']'),
        '<' => Some('>'),
        '⟨' => Some('⟩'),
        _ => None,
    }
}

fn is_closer(c: char) -> bool {
    matches!(c, ')' | ']' | '>' | '⟩')
}

/// Splits `chars[start..end]` at `sep` wherever the nesting depth is zero.
/// Unbalanced text is left for the factor parsers to report.
fn split_top(chars: &[char], start: usize, end: usize, sep: char) -> Vec<(usize, usize)> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut from = start;
    for (i, &c) in chars.iter().enumerate().take(end).skip(start) {
        if opener(c).is_some() {
            depth += 1;
        } else if is_closer(c) {
            depth = depth.saturating_sub(1);
        } else if c == sep && depth == 0 {
            parts.push((from, i));
            from = i + 1;
        }
    }
    parts.push((from, end));
    parts
}

/// Shrinks `[start, end)` past surrounding whitespace.
fn trim(chars: &[char], mut start: usize, mut end: usize) -> (usize, usize) {
    while start < end && chars[start].is_whitespace() {
        start += 1;
    }
    while end > start && chars[end - 1].is_whitespace() {
        end -= 1;
    }
    (start, end)
}

fn text(chars: &[char], start: usize, end: usize) -> String {
    chars[start..end].iter().collect()
}

pub fn parse_group_spec(input: &str) -> Result<GroupSpec, ParseError> {
    let chars: Vec<char> = input.chars().collect();
    let parts = split_top(&chars, 0, chars.len(), '*');
    let mut factors = Vec::with_capacity(parts.len());
    for (start, end) in parts {
        factors.push(parse_factor(&chars, start, end)?);
    }
    if factors.len() == 1 {
        Ok(factors.pop().unwrap())
    } else {
        Ok(GroupSpec::Product(factors))
    }
}

fn parse_factor(chars: &[char], start: usize, end: usize) -> Result<GroupSpec, ParseError> {
    let (start, end) = trim(chars, start, end);
    if start == end {
        return Err(ParseError::new(start, "empty group specification").expecting(&["(", "named:", "fp<"]));
    }
    let body = text(chars, start, end);
    if let Some(name) = body.strip_prefix("named:") {
        let name = name.trim();
        return match lookup(name) {
            Ok(_) => Ok(GroupSpec::Named(name.to_string())),
            Err(_) => Err(ParseError::new(start + 6, format!("unknown group name {:?}", name))),
        };
    }
    if body.starts_with("fp") {
        return parse_presentation(&body)
            .map(GroupSpec::Presentation)
            .map_err(|e| ParseError {
                position: e.position + start,
                ..e
            });
    }
    parse_perm_list(chars, start, end).map(GroupSpec::Cycles)
}

/// Parses `perm ("," perm)*` in `chars[start..end]`.
pub fn parse_perm_list_text(input: &str) -> Result<PermList, ParseError> {
    let chars: Vec<char> = input.chars().collect();
    let (start, end) = trim(&chars, 0, chars.len());
    if start == end {
        return Ok(PermList {
            degree: 1,
            perms: Vec::new(),
        });
    }
    parse_perm_list(&chars, start, end)
}

fn parse_perm_list(chars: &[char], start: usize, end: usize) -> Result<PermList, ParseError> {
    let mut cycle_lists = Vec::new();
    let mut degree = 1;
    for (s, e) in split_top(chars, start, end, ',') {
        let (s, e) = trim(chars, s, e);
        let cycles = parse_perm(chars, s, e)?;
        for c in &cycles {
            degree = degree.max(c.iter().copied().max().unwrap_or(1));
        }
        cycle_lists.push((s, cycles));
    }
    let mut perms = Vec::with_capacity(cycle_lists.len());
    for (at, cycles) in cycle_lists {
        let p = Perm::from_cycles(degree, &cycles)
            .map_err(|e| ParseError::new(at, format!("not a permutation: {}", e)))?;
        perms.push(p);
    }
    Ok(PermList { degree, perms })
}

/// One permutation as a product of cycles.
fn parse_perm(chars: &[char], start: usize, end: usize) -> Result<Vec<Vec<usize>>, ParseError> {
    if start == end {
        return Err(ParseError::new(start, "expected a permutation").expecting(&["("]));
    }
    let mut cycles = Vec::new();
    let mut i = start;
    while i < end {
        if chars[i].is_whitespace() {
            i += 1;
            continue;
        }
        if chars[i] != '(' {
            return Err(ParseError::new(i, format!("unexpected {:?}", chars[i])).expecting(&["("]));
        }
        let open = i;
        i += 1;
        let mut cycle: Vec<usize> = Vec::new();
        loop {
            while i < end && chars[i].is_whitespace() {
                i += 1;
            }
            if i == end {
                return Err(ParseError::new(open, "unclosed '('").expecting(&[")", ","]));
            }
            if chars[i] == ')' && cycle.is_empty() {
                i += 1;
                break;
            }
            let digits_at = i;
            while i < end && chars[i].is_ascii_digit() {
                i += 1;
            }
            if digits_at == i {
                return Err(ParseError::new(i, "expected a point").expecting(&["positive integer"]));
            }
            let point: usize = text(chars, digits_at, i)
                .parse()
                .map_err(|_| ParseError::new(digits_at, "point out of range"))?;
            if point == 0 {
                return Err(ParseError::new(digits_at, "points are numbered from 1"));
            }
            if cycle.contains(&point) {
                return Err(ParseError::new(digits_at, format!("point {} repeated in a cycle", point)));
            }
            cycle.push(point);
            while i < end && chars[i].is_whitespace() {
                i += 1;
            }
            if i == end {
                return Err(ParseError::new(open, "unclosed '('").expecting(&[")", ","]));
            }
            match chars[i] {
                ',' => i += 1,
                ')' => {
                    i += 1;
                    break;
                }
                c => return Err(ParseError::new(i, format!("unexpected {:?}", c)).expecting(&[")", ","])),
            }
        }
        if !cycle.is_empty() {
            cycles.push(cycle);
        }
    }
    Ok(cycles)
}

/// Lifts every group to the largest degree among them.
pub fn common_degree(groups: &mut [&mut PermGroup]) -> Result<usize, CliError> {
    let degree = groups.iter().map(|g| g.degree()).max().unwrap_or(1);
    for g in groups.iter_mut() {
        if g.degree() != degree {
            **g = g.with_degree(degree)?;
        }
    }
    Ok(degree)
}
