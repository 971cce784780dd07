//! The bundled table of induced crossed modules along `P <= S4`.

use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use xmod_core::{
    automorphism_group, identify, induce, is_isomorphic, CrossedModule, GroupHom, InduceConfig, Mode, PermGroup,
};

use crate::input::{build_parts, ActSpec, Caps, MuSpec};
use crate::spec::{common_degree, parse_group_spec};
use crate::CliError;

pub const BUNDLED: &str = include_str!("../data/table.toml");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Level {
    Name,
    Order,
    Skip,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
pub struct Expected {
    pub level: Level,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct Row {
    pub row: u32,
    #[serde(default)]
    pub variant: Option<String>,
    pub m: String,
    pub p: String,
    pub induced: Expected,
    pub kernel: Expected,
    pub aut: Expected,
}

impl Row {
    pub fn label(&self) -> String {
        format!("{}{}", self.row, self.variant.as_deref().unwrap_or(""))
    }
}

#[derive(Debug, Clone, Deserialize)]
pub struct Table {
    pub q: String,
    pub row: Vec<Row>,
}

pub fn bundled() -> Table {
    toml::from_str(BUNDLED).expect("bundled table parses")
}

#[derive(Debug, Clone, Serialize)]
pub struct Cell {
    pub expected: Expected,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub computed_name: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub computed_order: Option<usize>,
    pub matches: bool,
}

impl Cell {
    fn judge(expected: &Expected, g: &Arc<PermGroup>) -> Result<Cell, CliError> {
        let id = identify(g)?;
        let order_ok = expected.order.is_none_or(|o| o == g.order());
        let matches = match expected.level {
            Level::Name => order_ok && id.name() == expected.name.as_deref(),
            Level::Order => order_ok,
            Level::Skip => true,
        };
        Ok(Cell {
            expected: expected.clone(),
            computed_name: Some(id.label()),
            computed_order: Some(g.order()),
            matches,
        })
    }

    fn skipped(expected: &Expected) -> Cell {
        Cell {
            expected: expected.clone(),
            computed_name: None,
            computed_order: None,
            matches: true,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ModeResult {
    pub mode: Mode,
    pub induced: Cell,
    pub kernel: Cell,
    pub order_factorization: bool,
    pub image_is_normal_closure: bool,
    pub verified: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct RowResult {
    pub row: String,
    pub m: String,
    pub p: String,
    pub modes: Vec<ModeResult>,
    pub aut: Option<Cell>,
    /// Present when more than one mode ran: isomorphic `f_*M` and kernels.
    pub modes_agree: Option<bool>,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// The base crossed module `M -> P` (inclusion, conjugation) and `P <= Q`.
pub fn row_input(row: &Row, q: &str, caps: &Caps) -> Result<(CrossedModule, GroupHom), CliError> {
    let mut gm = parse_group_spec(&row.m)?.realize(caps.elements, &caps.cosets)?;
    let mut gp = parse_group_spec(&row.p)?.realize(caps.elements, &caps.cosets)?;
    let mut gq = parse_group_spec(q)?.realize(caps.elements, &caps.cosets)?;
    common_degree(&mut [&mut gm, &mut gp, &mut gq])?;
    let (gm, gp, gq) = (Arc::new(gm), Arc::new(gp), Arc::new(gq));
    let (mu, action) = build_parts(gm, gp.clone(), &MuSpec::Inclusion, &ActSpec::Conjugation)?;
    let xm = CrossedModule::new(mu, action)?;
    let f = GroupHom::inclusion(gp, gq)?;
    Ok((xm, f))
}

fn run_row(row: &Row, q: &str, modes: &[Mode], with_aut: bool, caps: &Caps) -> Result<RowResult, CliError> {
    let (xm, f) = row_input(row, q, caps)?;
    let mut results = Vec::new();
    let mut outputs = Vec::new();
    for &mode in modes {
        let config = InduceConfig {
            mode,
            coset: caps.cosets,
            aut_cap: None,
        };
        let out = induce(&xm, &f, &config)?;
        let kernel = Arc::new(out.xmod.kernel_module()?.kernel);
        results.push(ModeResult {
            mode,
            induced: Cell::judge(&row.induced, out.xmod.m())?,
            kernel: Cell::judge(&row.kernel, &kernel)?,
            order_factorization: out.report.order_factorization,
            image_is_normal_closure: out.report.image_is_normal_closure,
            verified: out.xmod.verify().is_valid(),
        });
        outputs.push((out.xmod.m().clone(), kernel));
    }
    let modes_agree = if outputs.len() > 1 {
        let (g0, k0) = &outputs[0];
        let mut agree = true;
        for (g, k) in &outputs[1..] {
            agree &= is_isomorphic(g0, g)?.is_some() && is_isomorphic(k0, k)?.is_some();
        }
        Some(agree)
    } else {
        None
    };
    let aut = match (row.aut.level, outputs.first()) {
        (Level::Skip, _) | (_, None) => None,
        _ if !with_aut => None,
        (_, Some((g, _))) => {
            let aut = Arc::new(automorphism_group(g, caps.aut)?.group);
            Some(Cell::judge(&row.aut, &aut)?)
        }
    };
    let ok = results
        .iter()
        .all(|r| r.induced.matches && r.kernel.matches && r.order_factorization && r.image_is_normal_closure && r.verified)
        && modes_agree != Some(false)
        && aut.as_ref().is_none_or(|c| c.matches);
    Ok(RowResult {
        row: row.label(),
        m: row.m.clone(),
        p: row.p.clone(),
        modes: results,
        aut: if row.aut.level == Level::Skip { Some(Cell::skipped(&row.aut)) } else { aut },
        modes_agree,
        ok,
        error: None,
    })
}

/// Runs the selected rows concurrently; results keep the table's order. A
/// failing computation fails its row only.
pub fn run_table(table: &Table, rows: Option<&[u32]>, modes: &[Mode], with_aut: bool, caps: &Caps) -> Vec<RowResult> {
    table
        .row
        .par_iter()
        .filter(|r| rows.is_none_or(|sel| sel.contains(&r.row)))
        .map(|row| {
            run_row(row, &table.q, modes, with_aut, caps).unwrap_or_else(|e| RowResult {
                row: row.label(),
                m: row.m.clone(),
                p: row.p.clone(),
                modes: Vec::new(),
                aut: None,
                modes_agree: None,
                ok: false,
                error: Some(e.to_string()),
            })
        })
        .collect()
}

/// One line per failed assertion.
pub fn mismatches(results: &[RowResult]) -> Vec<String> {
    let mut out = Vec::new();
    let describe = |c: &Cell| {
        let want = match c.expected.level {
            Level::Name => c.expected.name.clone().unwrap_or_default(),
            _ => format!("order {}", c.expected.order.unwrap_or(0)),
        };
        format!(
            "expected {}, computed {} (order {})",
            want,
            c.computed_name.as_deref().unwrap_or("-"),
            c.computed_order.unwrap_or(0)
        )
    };
    for r in results {
        if let Some(e) = &r.error {
            out.push(format!("row {}: {}", r.row, e));
        }
        for m in &r.modes {
            let mode = serde_json::to_value(m.mode).unwrap_or_default();
            let mode = mode.as_str().unwrap_or("");
            if !m.induced.matches {
                out.push(format!("row {} ({}) induced: {}", r.row, mode, describe(&m.induced)));
            }
            if !m.kernel.matches {
                out.push(format!("row {} ({}) kernel: {}", r.row, mode, describe(&m.kernel)));
            }
            if !m.order_factorization || !m.image_is_normal_closure || !m.verified {
                out.push(format!("row {} ({}): invariant check failed", r.row, mode));
            }
        }
        if r.modes_agree == Some(false) {
            out.push(format!("row {}: full and transversal results differ", r.row));
        }
        if let Some(c) = r.aut.as_ref().filter(|c| !c.matches) {
            out.push(format!("row {} aut: {}", r.row, describe(c)));
        }
    }
    out
}
