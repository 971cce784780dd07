//! The `xmod` command-line tool.
//!
//! Every command prints one JSON document (or, with `--pretty`, a short
//! text summary) on standard output. Exit codes: 0 success, 1 domain error
//! or table mismatch, 2 usage or parse error. Errors are reported as a JSON
//! object `{"schema", "error": {"kind", "message", "position"?}}`.

pub mod input;
pub mod spec;
pub mod table;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use xmod_core::catalog::{catalog, Fingerprint};
use xmod_core::extend::solve_relator_extension;
use xmod_core::fpres::{parse_presentation, parse_word, parse_word_list, todd_coxeter, CosetConfig, Strategy};
use xmod_core::xmod::Consequences;
use xmod_core::{
    identify, induce, CrossedModule, GroupHom, InduceConfig, InducedReport, Mode, ParseError,
    PermGroup, VerificationReport,
};

use input::{build_parts, parse_act, parse_f, parse_mu, parse_xmod_file, ActSpec, Caps, FSpec, MuSpec};
use spec::{common_degree, parse_group_spec, render_perms, spec_of, GroupSpec};

/// Version tag carried by every report.
pub const SCHEMA: &str = "xmod/1";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Domain(xmod_core::Error),
    #[error("{0}")]
    Usage(String),
}

impl From<xmod_core::Error> for CliError {
    fn from(e: xmod_core::Error) -> Self {
        match e {
            xmod_core::Error::Parse(p) => CliError::Parse(p),
            other => CliError::Domain(other),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(_) => 1,
            CliError::Parse(_) | CliError::Usage(_) => 2,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Parse(_) => "parse",
            CliError::Usage(_) => "usage",
            CliError::Domain(e) => match e {
                xmod_core::Error::CapExceeded { .. } | xmod_core::Error::CosetLimitExceeded { .. } => "cap_exceeded",
                xmod_core::Error::AxiomsFail(_) => "axioms_fail",
                _ => "domain",
            },
        }
    }
}

#[derive(Serialize)]
struct ErrorBody {
    kind: &'static str,
    message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    position: Option<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    expected: Vec<String>,
}

#[derive(Serialize)]
struct ErrorReport {
    schema: &'static str,
    error: ErrorBody,
}

#[derive(Debug, Parser)]
#[command(name = "xmod", version, about = "Crossed modules over finite permutation groups")]
pub struct Cli {
    /// Human-readable summary instead of JSON.
    #[arg(long, global = true)]
    pub pretty: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Hlt,
    Felsch,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Full,
    Transversal,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Full => Mode::Full,
            ModeArg::Transversal => Mode::Transversal,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableMode {
    Both,
    Full,
    Transversal,
}

#[derive(Debug, Clone, Args)]
pub struct CapArgs {
    /// Largest group enumerated element by element.
    #[arg(long, default_value_t = xmod_core::DEFAULT_ELEMENT_CAP)]
    pub cap_elements: usize,
    /// Largest number of cosets defined during enumeration.
    #[arg(long, default_value_t = xmod_core::fpres::coset::DEFAULT_MAX_COSETS)]
    pub cap_cosets: usize,
    /// Largest group whose automorphism group is computed.
    #[arg(long, default_value_t = xmod_core::DEFAULT_AUT_CAP)]
    pub cap_aut: usize,
    #[arg(long, value_enum, default_value_t = StrategyArg::Hlt)]
    pub strategy: StrategyArg,
}

impl CapArgs {
    pub fn caps(&self) -> Caps {
        Caps {
            elements: self.cap_elements,
            cosets: CosetConfig {
                max_cosets: self.cap_cosets,
                strategy: match self.strategy {
                    StrategyArg::Hlt => Strategy::Hlt,
                    StrategyArg::Felsch => Strategy::Felsch,
                },
            },
            aut: self.cap_aut,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Verify the crossed module axioms for a crossed-module file.
    Check {
        file: PathBuf,
        #[command(flatten)]
        caps: CapArgs,
    },
    /// Compute the induced crossed module f_*M over Q.
    Induce {
        #[arg(long = "M")]
        m: Option<String>,
        #[arg(long = "P")]
        p: Option<String>,
        #[arg(long = "Q")]
        q: String,
        /// `id` (inclusion of M in P) or images of M's generators in P.
        #[arg(long, default_value = "id")]
        mu: String,
        /// `conj`, `trivial`, or `;`-separated images of M's generators per P-generator.
        #[arg(long, default_value = "conj")]
        act: String,
        /// `embed` (inclusion of P in Q) or images of P's generators in Q.
        #[arg(long, default_value = "embed")]
        f: String,
        /// Read M, P, mu and act from a crossed-module file instead.
        #[arg(long, conflicts_with_all = ["m", "p"])]
        xmod: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = ModeArg::Transversal)]
        mode: ModeArg,
        /// Also compute Aut(f_*M).
        #[arg(long)]
        aut: bool,
        #[command(flatten)]
        caps: CapArgs,
    },
    /// Name a group from the catalog, up to explicit isomorphism.
    Identify {
        group: String,
        #[command(flatten)]
        caps: CapArgs,
    },
    /// Solve r(a_x, a_y) = inn(a) for a two-generator relator r.
    Extensions {
        #[arg(long = "A")]
        a: String,
        /// Letters are sorted; the first plays the role of x.
        #[arg(long)]
        relator: String,
        /// Group solutions into orbits under Aut(A).
        #[arg(long)]
        orbits: bool,
        #[command(flatten)]
        caps: CapArgs,
    },
    /// Todd-Coxeter enumeration of the cosets of a subgroup.
    CosetEnum {
        presentation: String,
        /// Subgroup generators as comma-separated words; trivial if omitted.
        #[arg(long)]
        subgroup: Option<String>,
        #[command(flatten)]
        caps: CapArgs,
    },
    /// Recompute the bundled table and compare it against the expected cells.
    Table {
        /// Comma-separated row numbers; all rows if omitted.
        #[arg(long, value_delimiter = ',')]
        rows: Option<Vec<u32>>,
        #[arg(long, value_enum, default_value_t = TableMode::Both)]
        mode: TableMode,
        /// Skip the automorphism column.
        #[arg(long)]
        no_aut: bool,
        #[command(flatten)]
        caps: CapArgs,
    },
    /// Names, orders and fingerprints of the catalog groups.
    CatalogDump,
}

/// A finished command: the JSON document, its text rendering and exit code.
pub struct Output {
    pub json: String,
    pub text: String,
    pub code: i32,
    pub is_error: bool,
}

impl Output {
    fn new<T: Serialize>(value: &T, text: String, code: i32) -> Output {
        Output {
            json: serde_json::to_string(value).expect("reports serialize"),
            text,
            code,
            is_error: false,
        }
    }

    fn error(e: &CliError) -> Output {
        let (position, expected) = match e {
            CliError::Parse(p) => (Some(p.position), p.expected.clone()),
            _ => (None, Vec::new()),
        };
        let report = ErrorReport {
            schema: SCHEMA,
            error: ErrorBody {
                kind: e.kind(),
                message: e.to_string(),
                position,
                expected,
            },
        };
        Output {
            is_error: true,
            ..Output::new(&report, format!("error: {}", e), e.exit_code())
        }
    }
}

/// Parses `args` (program name first), runs the command and writes its
/// output. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 {
                write!(out, "{}", e)
            } else {
                write!(err, "{}", e)
            };
            return code;
        }
    };
    let output = execute(&cli.command).unwrap_or_else(|e| Output::error(&e));
    if output.is_error {
        let _ = writeln!(err, "{}", output.text);
    }
    let _ = if cli.pretty {
        writeln!(out, "{}", output.text)
    } else {
        writeln!(out, "{}", output.json)
    };
    output.code
}

pub fn execute(command: &Command) -> Result<Output, CliError> {
    match command {
        Command::Check { file, caps } => cmd_check(file, &caps.caps()),
        Command::Induce {
            m,
            p,
            q,
            mu,
            act,
            f,
            xmod,
            mode,
            aut,
            caps,
        } => {
            let base = match xmod {
                Some(path) => {
                    let x = parse_xmod_file(&read(path)?)?;
                    (x.m, x.p, x.mu, x.act)
                }
                None => {
                    fn need<'a>(v: &'a Option<String>, flag: &str) -> Result<&'a str, CliError> {
                        v.as_deref()
                            .ok_or_else(|| CliError::Usage(format!("{} is required without --xmod", flag)))
                    }
                    (
                        parse_group_spec(need(m, "--M")?)?,
                        parse_group_spec(need(p, "--P")?)?,
                        parse_mu(mu)?,
                        parse_act(act)?,
                    )
                }
            };
            let request = InduceRequest {
                m: base.0,
                p: base.1,
                q: parse_group_spec(q)?,
                mu: base.2,
                act: base.3,
                f: parse_f(f)?,
                mode: (*mode).into(),
                aut: *aut,
            };
            cmd_induce(&request, &caps.caps())
        }
        Command::Identify { group, caps } => cmd_identify(group, &caps.caps()),
        Command::Extensions {
            a,
            relator,
            orbits,
            caps,
        } => cmd_extensions(a, relator, *orbits, &caps.caps()),
        Command::CosetEnum {
            presentation,
            subgroup,
            caps,
        } => cmd_coset(presentation, subgroup.as_deref(), &caps.caps()),
        Command::Table {
            rows,
            mode,
            no_aut,
            caps,
        } => {
            let modes = match mode {
                TableMode::Both => vec![Mode::Full, Mode::Transversal],
                TableMode::Full => vec![Mode::Full],
                TableMode::Transversal => vec![Mode::Transversal],
            };
            Ok(cmd_table(rows.as_deref(), &modes, !no_aut, &caps.caps()))
        }
        Command::CatalogDump => Ok(cmd_catalog_dump()),
    }
}

fn read(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {}", path.display(), e)))
}

#[derive(Serialize)]
struct CheckReport<'a> {
    schema: &'static str,
    valid: bool,
    m_order: usize,
    p_order: usize,
    verification: &'a VerificationReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    consequences: Option<Consequences>,
}

pub fn cmd_check(file: &PathBuf, caps: &Caps) -> Result<Output, CliError> {
    let spec = parse_xmod_file(&read(file)?)?;
    let (m, p) = input::realize_pair(&spec.m, &spec.p, caps)?;
    let (mu, action) = build_parts(m, p, &spec.mu, &spec.act)?;
    let xm = CrossedModule::new_unchecked(mu, action)?;
    let verification = xm.verify();
    let valid = verification.is_valid();
    let report = CheckReport {
        schema: SCHEMA,
        valid,
        m_order: xm.m().order(),
        p_order: xm.p().order(),
        verification: &verification,
        consequences: valid.then(|| xm.check_consequences()),
    };
    let text = if valid {
        format!("valid crossed module, |M| = {}, |P| = {}", xm.m().order(), xm.p().order())
    } else {
        format!("not a crossed module: {}", verification.summary())
    };
    Ok(Output::new(&report, text, if valid { 0 } else { 1 }))
}

pub struct InduceRequest {
    pub m: GroupSpec,
    pub p: GroupSpec,
    pub q: GroupSpec,
    pub mu: MuSpec,
    pub act: ActSpec,
    pub f: FSpec,
    pub mode: Mode,
    pub aut: bool,
}

#[derive(Serialize)]
struct InputEcho {
    m: String,
    p: String,
    q: String,
}

#[derive(Serialize)]
struct InduceOutput {
    schema: &'static str,
    input: InputEcho,
    report: InducedReport,
    /// Generators of `f_*M` in cycle notation; reparses as a group spec.
    generators: String,
    /// `d` of each generator, in `Q`.
    boundary: String,
    verified: bool,
}

pub fn cmd_induce(req: &InduceRequest, caps: &Caps) -> Result<Output, CliError> {
    let mut gm = req.m.realize(caps.elements, &caps.cosets)?;
    let mut gp = req.p.realize(caps.elements, &caps.cosets)?;
    let mut gq = req.q.realize(caps.elements, &caps.cosets)?;
    common_degree(&mut [&mut gm, &mut gp, &mut gq])?;
    let (gm, gp, gq) = (Arc::new(gm), Arc::new(gp), Arc::new(gq));
    let (mu, action) = build_parts(gm, gp.clone(), &req.mu, &req.act)?;
    let xm = CrossedModule::new(mu, action)?;
    let f = match &req.f {
        FSpec::Embed => GroupHom::inclusion(gp, gq.clone())?,
        FSpec::Images(list) => GroupHom::new(gp, gq.clone(), list.at_degree(gq.degree())?)?,
    };
    let config = InduceConfig {
        mode: req.mode,
        coset: caps.cosets,
        aut_cap: req.aut.then_some(caps.aut),
    };
    let out = induce(&xm, &f, &config)?;
    let g = out.xmod.m();
    let boundary: Vec<_> = g.generators().iter().map(|x| out.xmod.mu().apply(x)).collect::<Result<_, _>>()?;
    let r = &out.report;
    let mut text = format!(
        "f_*M: order {}, {}\nker d: order {}, {}\nIm d: order {}, cokernel order {}\nrelators: {} + {} + {} over {} symbols",
        r.induced.order,
        r.induced.identification.label(),
        r.kernel.order,
        r.kernel.identification.label(),
        r.image_order,
        r.cokernel_order,
        r.relators.multiplicativity,
        r.relators.action_transport,
        r.relators.peiffer,
        r.symbols,
    );
    if let Some(a) = &r.automorphisms {
        text.push_str(&format!("\nAut(f_*M): order {}, {}", a.order, a.identification.label()));
    }
    let output = InduceOutput {
        schema: SCHEMA,
        input: InputEcho {
            m: req.m.to_string(),
            p: req.p.to_string(),
            q: req.q.to_string(),
        },
        report: out.report.clone(),
        generators: spec_of(g),
        boundary: render_perms(&boundary),
        verified: out.xmod.verify().is_valid(),
    };
    Ok(Output::new(&output, text, 0))
}

#[derive(Serialize)]
struct IdentifyOutput {
    schema: &'static str,
    name: Option<String>,
    order: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    fingerprint: Option<Fingerprint>,
}

pub fn cmd_identify(group: &str, caps: &Caps) -> Result<Output, CliError> {
    let g = Arc::new(parse_group_spec(group)?.realize(caps.elements, &caps.cosets)?);
    let id = identify(&g)?;
    let fingerprint = match &id {
        xmod_core::Identification::Named { .. } => None,
        xmod_core::Identification::Unknown { fingerprint, .. } => Some(fingerprint.clone()),
    };
    let text = format!("{} (order {})", id.label(), g.order());
    let output = IdentifyOutput {
        schema: SCHEMA,
        name: id.name().map(str::to_string),
        order: g.order(),
        fingerprint,
    };
    Ok(Output::new(&output, text, 0))
}

/// Generator names in a relator, sorted, padded to two.
fn relator_letters(relator: &str) -> Result<Vec<String>, CliError> {
    let chars: Vec<char> = relator.chars().collect();
    let mut names = std::collections::BTreeSet::new();
    let mut i = 0;
    while i < chars.len() {
        if chars[i].is_alphabetic() {
            let start = i;
            i += 1;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '_' || chars[i] == '\'') {
                i += 1;
            }
            names.insert(chars[start..i].iter().collect::<String>());
        } else {
            i += 1;
        }
    }
    let mut names: Vec<String> = names.into_iter().collect();
    if names.len() > 2 {
        return Err(CliError::Usage(format!(
            "relator uses {} generators ({}); at most two are allowed",
            names.len(),
            names.join(", ")
        )));
    }
    for fresh in ["x", "y", "z"] {
        if names.len() < 2 && !names.iter().any(|n| n == fresh) {
            names.push(fresh.to_string());
        }
    }
    Ok(names)
}

#[derive(Serialize)]
struct ExtensionsOutput {
    schema: &'static str,
    group_order: usize,
    aut_order: usize,
    /// Generator names; the first is `x`.
    letters: Vec<String>,
    relator: String,
    count: usize,
    /// `[a, a_x, a_y]`: element index in `A`, element indices in `Aut(A)`.
    solutions: Vec<[usize; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    orbits: Option<Vec<Vec<usize>>>,
}

pub fn cmd_extensions(a: &str, relator: &str, orbits: bool, caps: &Caps) -> Result<Output, CliError> {
    let letters = relator_letters(relator)?;
    let word = parse_word(relator, &letters)?;
    let group = parse_group_spec(a)?.realize(caps.elements, &caps.cosets)?;
    let sols = solve_relator_extension(&group, &word, caps.aut)?;
    let orbit_list = orbits.then(|| sols.orbits());
    let mut text = format!(
        "{} solutions over A of order {} (|Aut A| = {})",
        sols.solutions.len(),
        group.order(),
        sols.aut.order()
    );
    if let Some(o) = &orbit_list {
        text.push_str(&format!(", {} orbits", o.len()));
    }
    let output = ExtensionsOutput {
        schema: SCHEMA,
        group_order: group.order(),
        aut_order: sols.aut.order(),
        relator: word.render(&letters),
        letters,
        count: sols.solutions.len(),
        solutions: sols.solutions.iter().map(|d| [d.a, d.ax, d.ay]).collect(),
        orbits: orbit_list,
    };
    Ok(Output::new(&output, text, 0))
}

#[derive(Serialize)]
struct CosetOutput {
    schema: &'static str,
    presentation: String,
    subgroup: Vec<String>,
    index: usize,
    cosets_defined: usize,
    coincidences: usize,
    /// Order of the permutation group induced on the cosets.
    image_order: usize,
    /// Action of each generator on the cosets, numbered from 1.
    action: Vec<String>,
}

pub fn cmd_coset(presentation: &str, subgroup: Option<&str>, caps: &Caps) -> Result<Output, CliError> {
    let fp = parse_presentation(presentation)?;
    let sub = match subgroup {
        Some(text) => parse_word_list(text, fp.generators())?,
        None => Vec::new(),
    };
    let table = todd_coxeter(&fp, &sub, &caps.cosets)?;
    let perms = (0..fp.generators().len())
        .map(|i| table.generator_perm(i))
        .collect::<Result<Vec<_>, _>>()?;
    let image = PermGroup::with_cap(table.index(), perms.clone(), caps.elements)?;
    let text = format!(
        "{} cosets ({} defined, {} coincidences), image of order {}",
        table.index(),
        table.total_defined,
        table.coincidences.len(),
        image.order()
    );
    let output = CosetOutput {
        schema: SCHEMA,
        presentation: fp.to_string(),
        subgroup: sub.iter().map(|w| w.render(fp.generators())).collect(),
        index: table.index(),
        cosets_defined: table.total_defined,
        coincidences: table.coincidences.len(),
        image_order: image.order(),
        action: perms.iter().map(|p| p.to_string()).collect(),
    };
    Ok(Output::new(&output, text, 0))
}

#[derive(Serialize)]
pub struct TableOutput {
    pub schema: &'static str,
    pub q: String,
    pub rows: Vec<table::RowResult>,
    pub mismatches: Vec<String>,
    pub all_match: bool,
}

pub fn table_output(rows: Option<&[u32]>, modes: &[Mode], with_aut: bool, caps: &Caps) -> TableOutput {
    let t = table::bundled();
    let results = table::run_table(&t, rows, modes, with_aut, caps);
    let mismatches = table::mismatches(&results);
    TableOutput {
        schema: SCHEMA,
        q: t.q,
        all_match: mismatches.is_empty() && results.iter().all(|r| r.ok),
        rows: results,
        mismatches,
    }
}

pub fn cmd_table(rows: Option<&[u32]>, modes: &[Mode], with_aut: bool, caps: &Caps) -> Output {
    let out = table_output(rows, modes, with_aut, caps);
    let mut text = String::new();
    for r in &out.rows {
        let first = r.modes.first();
        let cell = |c: Option<&table::Cell>| {
            c.and_then(|c| c.computed_name.clone())
                .unwrap_or_else(|| "-".to_string())
        };
        text.push_str(&format!(
            "{:<4} {:<20} {:<20} {:<14} {:<10} {:<14} {}\n",
            r.row,
            r.m,
            r.p,
            cell(first.map(|m| &m.induced)),
            cell(first.map(|m| &m.kernel)),
            cell(r.aut.as_ref()),
            if r.ok { "ok" } else { "MISMATCH" }
        ));
    }
    for m in &out.mismatches {
        text.push_str(&format!("mismatch: {}\n", m));
    }
    text.push_str(if out.all_match { "all asserted cells match" } else { "table mismatch" });
    let code = if out.all_match { 0 } else { 1 };
    Output::new(&out, text, code)
}

#[derive(Serialize)]
struct CatalogItem<'a> {
    name: &'a str,
    order: usize,
    fingerprint: &'a Fingerprint,
}

#[derive(Serialize)]
struct CatalogOutput<'a> {
    schema: &'static str,
    groups: Vec<CatalogItem<'a>>,
}

pub fn cmd_catalog_dump() -> Output {
    let groups: Vec<CatalogItem> = catalog()
        .iter()
        .map(|e| CatalogItem {
            name: &e.name,
            order: e.realization.order(),
            fingerprint: &e.fingerprint,
        })
        .collect();
    let text = groups
        .iter()
        .map(|g| format!("{:<14} {}", g.name, g.order))
        .collect::<Vec<_>>()
        .join("\n");
    Output::new(&CatalogOutput { schema: SCHEMA, groups }, text, 0)
}
