//! Crossed-module inputs: the `--mu`/`--act`/`--f` shortcuts and the
//! crossed-module file format.
//!
//! ```text
//! # comments run to the end of the line
//! M:   (1,2)(3,4)
//! P:   (1,3,2,4), (1,2)
//! mu:  incl                      or images of M's generators in P
//! act: conj                      or trivial, or per P-generator blocks
//!                                separated by ';', each listing the images
//!                                of M's generators in M
//! ```
//!
//! `id` is accepted for `incl`: with `M = P` it is the identity crossed
//! module. Keys are case-insensitive; `M` and `P` are group specifications.

use std::sync::Arc;

use xmod_core::fpres::CosetConfig;
use xmod_core::{ActionMap, CrossedModule, GroupHom, ParseError, PermGroup};

use crate::spec::{common_degree, parse_group_spec, parse_perm_list_text, GroupSpec, PermList};
use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MuSpec {
    Inclusion,
    Images(PermList),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ActSpec {
    Conjugation,
    Trivial,
    Images(Vec<PermList>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FSpec {
    Embed,
    Images(PermList),
}

fn shift(e: ParseError, by: usize) -> ParseError {
    ParseError {
        position: e.position + by,
        ..e
    }
}

pub fn parse_mu(text: &str) -> Result<MuSpec, ParseError> {
    match text.trim() {
        "id" | "incl" => Ok(MuSpec::Inclusion),
        _ => parse_perm_list_text(text).map(MuSpec::Images),
    }
}

pub fn parse_act(text: &str) -> Result<ActSpec, ParseError> {
    match text.trim() {
        "conj" => Ok(ActSpec::Conjugation),
        "trivial" => Ok(ActSpec::Trivial),
        _ => {
            let mut blocks = Vec::new();
            let mut offset = 0;
            for block in text.split(';') {
                blocks.push(parse_perm_list_text(block).map_err(|e| shift(e, offset))?);
                offset += block.chars().count() + 1;
            }
            Ok(ActSpec::Images(blocks))
        }
    }
}

pub fn parse_f(text: &str) -> Result<FSpec, ParseError> {
    match text.trim() {
        "embed" => Ok(FSpec::Embed),
        _ => parse_perm_list_text(text).map(FSpec::Images),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XmodSpec {
    pub m: GroupSpec,
    pub p: GroupSpec,
    pub mu: MuSpec,
    pub act: ActSpec,
}

pub fn parse_xmod_file(text: &str) -> Result<XmodSpec, ParseError> {
    let (mut m, mut p, mut mu, mut act) = (None, None, None, None);
    let mut offset = 0;
    for line in text.split('\n') {
        let start = offset;
        offset += line.chars().count() + 1;
        let content = line.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let Some((key, value)) = content.split_once(':') else {
            return Err(ParseError::new(start, "expected `key: value`").expecting(&["M:", "P:", "mu:", "act:"]));
        };
        let at = start + key.chars().count() + 1;
        let duplicate = || ParseError::new(start, format!("duplicate section {:?}", key.trim()));
        match key.trim().to_ascii_lowercase().as_str() {
            "m" if m.is_none() => m = Some(parse_group_spec(value).map_err(|e| shift(e, at))?),
            "p" if p.is_none() => p = Some(parse_group_spec(value).map_err(|e| shift(e, at))?),
            "mu" if mu.is_none() => mu = Some(parse_mu(value).map_err(|e| shift(e, at))?),
            "act" if act.is_none() => act = Some(parse_act(value).map_err(|e| shift(e, at))?),
            "m" | "p" | "mu" | "act" => return Err(duplicate()),
            other => {
                return Err(ParseError::new(start, format!("unknown section {:?}", other))
                    .expecting(&["M:", "P:", "mu:", "act:"]))
            }
        }
    }
    let end = text.chars().count();
    let missing = |name: &str| ParseError::new(end, format!("missing section {}", name));
    let mu = mu.ok_or_else(|| missing("mu"))?;
    let act = match act {
        Some(a) => a,
        None if mu == MuSpec::Inclusion => ActSpec::Conjugation,
        None => return Err(missing("act")),
    };
    Ok(XmodSpec {
        m: m.ok_or_else(|| missing("M"))?,
        p: p.ok_or_else(|| missing("P"))?,
        mu,
        act,
    })
}

#[derive(Debug, Clone, Copy)]
pub struct Caps {
    pub elements: usize,
    pub cosets: CosetConfig,
    pub aut: usize,
}

/// The structure map and action, unverified. `m` and `p` must already share
/// a degree when a shortcut needs it.
pub fn build_parts(
    m: Arc<PermGroup>,
    p: Arc<PermGroup>,
    mu: &MuSpec,
    act: &ActSpec,
) -> Result<(GroupHom, ActionMap), CliError> {
    let mu = match mu {
        MuSpec::Inclusion => GroupHom::inclusion(m.clone(), p.clone())?,
        MuSpec::Images(list) => GroupHom::new(m.clone(), p.clone(), list.at_degree(p.degree())?)?,
    };
    let action = match act {
        ActSpec::Conjugation => ActionMap::conjugation(p, m)?,
        ActSpec::Trivial => ActionMap::trivial(p, m),
        ActSpec::Images(blocks) => {
            let images = blocks
                .iter()
                .map(|b| b.at_degree(m.degree()))
                .collect::<Result<Vec<_>, _>>()?;
            ActionMap::from_generator_images(p, m, images)?
        }
    };
    Ok((mu, action))
}

/// Realizes `M` and `P` on a common degree.
pub fn realize_pair(m: &GroupSpec, p: &GroupSpec, caps: &Caps) -> Result<(Arc<PermGroup>, Arc<PermGroup>), CliError> {
    let mut gm = m.realize(caps.elements, &caps.cosets)?;
    let mut gp = p.realize(caps.elements, &caps.cosets)?;
    common_degree(&mut [&mut gm, &mut gp])?;
    Ok((Arc::new(gm), Arc::new(gp)))
}

/// The crossed module described by `spec`, verified.
pub fn build_xmod(spec: &XmodSpec, caps: &Caps) -> Result<CrossedModule, CliError> {
    let (m, p) = realize_pair(&spec.m, &spec.p, caps)?;
    let (mu, action) = build_parts(m, p, &spec.mu, &spec.act)?;
    Ok(CrossedModule::new(mu, action)?)
}
