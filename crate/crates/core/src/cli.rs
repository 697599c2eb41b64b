//! The `psg` command line.
//!
//! Exit codes: 0 success, 1 a check came out negative, 2 usage error,
//! 3 parse or validation error, 4 cap exceeded.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::central;
use crate::dynamics::PartialDynSystem;
use crate::error::{Error, Limits};
use crate::families::{FamilySpec, Generated};
use crate::format;
use crate::largeness::{self, Witness};
use crate::semigroup::PartialSemigroup;
use crate::structure;
use crate::subset::SubsetMask;
use crate::verify::{self, Suite};

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;
pub const EXIT_CAP: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "psg", version, about = "Analyze finite partial semigroups and their dynamical systems")]
pub struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Override the enumeration caps (subset sweeps and enveloping closures).
    #[arg(long, global = true, value_name = "N")]
    cap: Option<usize>,
    /// Seed for randomized families.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Accept tables that fail weak associativity.
    #[arg(long, global = true)]
    no_validate: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check weak associativity of a .psg file, or the axioms of a .pds file.
    Validate { file: PathBuf },
    /// Composability sets, adequacy, idempotents and ideals.
    Analyze { file: PathBuf },
    /// Split S as G∙Y around a left identity with right inverses.
    Decompose { file: PathBuf },
    /// The six largeness verdicts for one subset.
    Classify {
        file: PathBuf,
        #[arg(long)]
        set: String,
    },
    /// Centrality of a subset, with a dynamical witness when central.
    Central {
        file: PathBuf,
        #[arg(long)]
        set: String,
    },
    /// Orbits, recurrence, proximality and the enveloping semigroup.
    Dynamics {
        file: PathBuf,
        #[command(flatten)]
        views: DynamicsViews,
    },
    /// Write a named family to a file.
    Family {
        name: String,
        params: Vec<String>,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Run a suite of property checks on one instance.
    Verify {
        file: PathBuf,
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

#[derive(Args, Debug, Default)]
struct DynamicsViews {
    #[arg(long)]
    orbits: bool,
    #[arg(long)]
    recurrent: bool,
    #[arg(long)]
    proximal: bool,
    #[arg(long)]
    enveloping: bool,
}

impl DynamicsViews {
    fn any(&self) -> bool {
        self.orbits || self.recurrent || self.proximal || self.enveloping
    }
}

/// What a run produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Lib(Error),
    /// The input was read but rejected; `detail` goes into the report.
    Invalid { msg: String, detail: Value },
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Invalid { .. } => EXIT_INPUT,
            Failure::Lib(e) => match e {
                Error::CapExceeded { .. } => EXIT_CAP,
                Error::Family(_) | Error::IndexOutOfRange { .. } | Error::WidthMismatch { .. } => {
                    EXIT_USAGE
                }
                Error::Hypothesis(_) | Error::Verification(_) | Error::Precondition(_) => {
                    EXIT_NEGATIVE
                }
                _ => EXIT_INPUT,
            },
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) => m.clone(),
            Failure::Invalid { msg, .. } => msg.clone(),
            Failure::Lib(e) => e.to_string(),
        }
    }

    fn kind(&self) -> &'static str {
        match self.code() {
            EXIT_USAGE => "usage",
            EXIT_CAP => "cap-exceeded",
            EXIT_NEGATIVE => "negative",
            _ => "input",
        }
    }
}

/// A finished command: its JSON result, its text rendering, and the exit
/// code.
struct Report {
    code: i32,
    result: Value,
    text: String,
}

struct Input {
    path: String,
    sha256: String,
}

#[derive(Default)]
struct Ctx {
    inputs: Vec<Input>,
}

impl Ctx {
    fn read(&mut self, path: &Path) -> Result<String, Failure> {
        let bytes = std::fs::read(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        self.inputs.push(Input {
            path: path.display().to_string(),
            sha256: hex_digest(&bytes),
        });
        String::from_utf8(bytes)
            .map_err(|_| Error::Parse {
                line: 0,
                msg: format!("{} is not UTF-8", path.display()),
            })
            .map_err(Failure::from)
    }
}

fn hex_digest(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

enum Loaded {
    Semigroup(PartialSemigroup),
    System(PartialDynSystem),
}

impl Loaded {
    fn semigroup(&self) -> &PartialSemigroup {
        match self {
            Loaded::Semigroup(s) => s,
            Loaded::System(d) => d.semigroup(),
        }
    }
}

fn is_pds(text: &str) -> bool {
    text.lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .is_some_and(|l| l.split_whitespace().next() == Some("pds"))
}

fn invalid_table(s: &PartialSemigroup) -> Failure {
    let report = s.validate();
    let triples: Vec<String> = report
        .violations
        .iter()
        .map(|v| format!("({},{},{})", v.triple.0, v.triple.1, v.triple.2))
        .collect();
    Failure::Invalid {
        msg: format!("weak associativity fails at {}", triples.join(" ")),
        detail: to_value(&report),
    }
}

fn invalid_system(d: &PartialDynSystem) -> Failure {
    let report = d.validate();
    Failure::Invalid {
        msg: format!("{} composition-law violation(s)", report.violations.len()),
        detail: to_value(&report),
    }
}

struct Runner {
    ctx: Ctx,
    limits: Limits,
    validate: bool,
    seed: u64,
}

impl Runner {
    fn load_semigroup_text(&mut self, path: &Path) -> Result<PartialSemigroup, Failure> {
        let text = self.ctx.read(path)?;
        let s = format::parse_psg(&text)?;
        if self.validate && !s.validate().ok {
            return Err(invalid_table(&s));
        }
        Ok(s)
    }

    /// Loads a `.psg` or `.pds` file, detected by its header.
    fn load(&mut self, path: &Path) -> Result<Loaded, Failure> {
        let text = self.ctx.read(path)?;
        if !is_pds(&text) {
            let s = format::parse_psg(&text)?;
            if self.validate && !s.validate().ok {
                return Err(invalid_table(&s));
            }
            return Ok(Loaded::Semigroup(s));
        }
        let file = format::parse_pds(&text)?;
        let psg_path = path.parent().unwrap_or(Path::new(".")).join(&file.semigroup);
        let s = self.load_semigroup_text(&psg_path)?;
        let d = file.into_system(s)?;
        if self.validate && !d.validate().ok {
            return Err(invalid_system(&d));
        }
        Ok(Loaded::System(d))
    }

    fn load_semigroup(&mut self, path: &Path) -> Result<PartialSemigroup, Failure> {
        match self.load(path)? {
            Loaded::Semigroup(s) => Ok(s),
            Loaded::System(d) => Ok(d.semigroup().clone()),
        }
    }

    fn load_system(&mut self, path: &Path) -> Result<PartialDynSystem, Failure> {
        match self.load(path)? {
            Loaded::Semigroup(s) => Ok(PartialDynSystem::translation(&s)),
            Loaded::System(d) => Ok(d),
        }
    }

    fn dispatch(&mut self, command: &Command) -> Result<Report, Failure> {
        match command {
            Command::Validate { file } => self.validate_cmd(file),
            Command::Analyze { file } => {
                let s = self.load_semigroup(file)?;
                Ok(analyze(&s))
            }
            Command::Decompose { file } => {
                let s = self.load_semigroup(file)?;
                Ok(decompose(&s))
            }
            Command::Classify { file, set } => {
                let s = self.load_semigroup(file)?;
                let a = parse_set(&s, set).map_err(Failure::Usage)?;
                Ok(classify(&s, &a))
            }
            Command::Central { file, set } => {
                let s = self.load_semigroup(file)?;
                let a = parse_set(&s, set).map_err(Failure::Usage)?;
                central_cmd(&s, &a, &self.limits)
            }
            Command::Dynamics { file, views } => {
                let d = self.load_system(file)?;
                dynamics_cmd(&d, views, &self.limits)
            }
            Command::Family {
                name,
                params,
                output,
            } => family(name, params, output, self.seed),
            Command::Verify { file, suite } => {
                let suite = Suite::parse(suite).ok_or_else(|| {
                    Failure::Usage(format!(
                        "unknown suite {suite:?}; expected one of {}",
                        Suite::NAMES.join(", ")
                    ))
                })?;
                let report = match self.load(file)? {
                    Loaded::Semigroup(s) => verify::run_semigroup(suite, &s, &self.limits)?,
                    Loaded::System(d) => verify::run_system(suite, &d, &self.limits)?,
                };
                Ok(verify_report(&report))
            }
        }
    }

    fn validate_cmd(&mut self, file: &Path) -> Result<Report, Failure> {
        // validation is the point of this command, so never reject early
        self.validate = false;
        let loaded = self.load(file)?;
        let s = loaded.semigroup();
        let table = s.validate();
        let mut text = String::new();
        let mut result = json!({ "semigroup": to_value(&table) });
        let mut ok = table.ok;
        if table.ok {
            let _ = writeln!(text, "semigroup: weakly associative ({} elements)", s.size());
        } else {
            let _ = writeln!(text, "semigroup: {} violation(s)", table.violations.len());
            for v in &table.violations {
                let _ = writeln!(
                    text,
                    "  ({},{},{}) {:?}: (x∙y)∙z = {}, x∙(y∙z) = {}",
                    v.triple.0,
                    v.triple.1,
                    v.triple.2,
                    v.kind,
                    cell(v.left),
                    cell(v.right)
                );
            }
        }
        if let Loaded::System(d) = &loaded {
            let r = d.validate();
            ok &= r.ok;
            let _ = writeln!(
                text,
                "system: composition law {}, {} violation(s), {} coverage gap(s)",
                if r.ok { "holds" } else { "fails" },
                r.violations.len(),
                r.coverage_gaps.len()
            );
            for v in &r.violations {
                let _ = writeln!(text, "  {v:?}");
            }
            result["system"] = to_value(&r);
        }
        Ok(Report {
            code: if ok { EXIT_OK } else { EXIT_INPUT },
            result,
            text,
        })
    }
}

fn cell(v: Option<usize>) -> String {
    v.map_or_else(|| ".".into(), |v| v.to_string())
}

fn named(s: &PartialSemigroup, set: &SubsetMask) -> String {
    let names: Vec<String> = set.iter().map(|x| s.name(x)).collect();
    format!("{{{}}}", names.join(","))
}

/// Parses a subset: `0xHEX`, or comma-separated element names or indices.
/// Names take precedence over indices when the table has names. `{}` and
/// the empty string denote the empty set.
pub fn parse_set(s: &PartialSemigroup, spec: &str) -> Result<SubsetMask, String> {
    let n = s.size();
    let spec = spec.trim();
    if let Some(hex) = spec.strip_prefix("0x").or_else(|| spec.strip_prefix("0X")) {
        let bits = u64::from_str_radix(hex, 16)
            .map_err(|_| format!("bad hex subset {spec:?}"))?;
        if n < 64 && bits >> n != 0 {
            return Err(format!("{spec} has bits beyond {n} elements"));
        }
        return Ok(SubsetMask::from_bits(n, bits));
    }
    // Element names may themselves carry braces, so the bare list is tried
    // before the braced form.
    let braced = spec.strip_prefix('{').and_then(|r| r.strip_suffix('}'));
    match (parse_list(s, spec), braced) {
        (Ok(a), _) => Ok(a),
        (Err(_), Some(inner)) => parse_list(s, inner),
        (Err(e), None) => Err(e),
    }
}

fn parse_list(s: &PartialSemigroup, list: &str) -> Result<SubsetMask, String> {
    let n = s.size();
    let mut out = SubsetMask::empty(n);
    for tok in list.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let by_name = s.names().and_then(|names| names.iter().position(|x| x == tok));
        let idx = match by_name {
            Some(i) => i,
            None => tok
                .parse::<usize>()
                .map_err(|_| format!("unknown element {tok:?}"))?,
        };
        if idx >= n {
            return Err(format!("element {idx} is out of range for {n} elements"));
        }
        out.insert(idx);
    }
    Ok(out)
}

fn analyze(s: &PartialSemigroup) -> Report {
    let n = s.size();
    let right: Vec<SubsetMask> = (0..n).map(|x| s.right_set(x).clone()).collect();
    let left: Vec<SubsetMask> = (0..n).map(|x| s.left_set(x).clone()).collect();
    let mins = s.minimal_left_ideals();
    let min_right = s.minimal_right_ideals();
    let kernel = s.smallest_ideal();
    let result = json!({
        "size": n,
        "names": s.names(),
        "total": s.is_total(),
        "defined_products": s.defined_count(),
        "right_sets": to_value(&right),
        "left_sets": to_value(&left),
        "right_adequate": s.is_right_adequate(),
        "left_adequate": s.is_left_adequate(),
        "delta_r": to_value(&s.delta_r()),
        "idempotents": to_value(&s.idempotents()),
        "minimal_left_ideals": to_value(&mins),
        "minimal_right_ideals": to_value(&min_right),
        "smallest_ideal": to_value(&kernel),
        "minimal_idempotents": to_value(&s.minimal_idempotents()),
    });
    let mut text = String::new();
    let _ = writeln!(
        text,
        "size {n}, {} defined product(s){}",
        s.defined_count(),
        if s.is_total() { ", total" } else { "" }
    );
    let _ = writeln!(text, "element  R(x)  L(x)");
    for x in 0..n {
        let _ = writeln!(text, "  {}  {}  {}", s.name(x), named(s, &right[x]), named(s, &left[x]));
    }
    let _ = writeln!(
        text,
        "right adequate: {}, left adequate: {}",
        s.is_right_adequate(),
        s.is_left_adequate()
    );
    let _ = writeln!(text, "δ_R S: {}", named(s, &s.delta_r()));
    let _ = writeln!(text, "idempotents: {}", named(s, &s.idempotents()));
    let list = |sets: &[SubsetMask]| sets.iter().map(|m| named(s, m)).collect::<Vec<_>>().join(" ");
    let _ = writeln!(text, "minimal left ideals: {}", list(&mins));
    let _ = writeln!(text, "minimal right ideals: {}", list(&min_right));
    let _ = writeln!(
        text,
        "smallest ideal: {}",
        kernel.as_ref().map_or_else(|| "none".into(), |k| named(s, k))
    );
    let _ = writeln!(text, "minimal idempotents: {}", named(s, &s.minimal_idempotents()));
    Report {
        code: EXIT_OK,
        result,
        text,
    }
}

fn decompose(s: &PartialSemigroup) -> Report {
    let cert = structure::partial_group_check(s);
    let equivalence = structure::partial_group_equivalence(s);
    let mut text = String::new();
    let _ = writeln!(
        text,
        "partial group: {:?}{}",
        cert.kind,
        cert.identity.map_or_else(String::new, |e| format!(" (identity {})", s.name(e)))
    );
    let (code, decomposition, failure) = match structure::decompose(s) {
        Ok(d) => {
            let _ = writeln!(
                text,
                "decomposition around left identity {}: G = {}, Y = {}",
                s.name(d.identity),
                named(s, &d.g),
                named(s, &d.y)
            );
            for ((g, y), p) in &d.phi {
                let _ = writeln!(text, "  φ({}, {}) = {}", s.name(*g), s.name(*y), s.name(*p));
            }
            (EXIT_OK, to_value(&d), Value::Null)
        }
        Err(e) => {
            let _ = writeln!(text, "no decomposition: {e}");
            (Failure::Lib(e.clone()).code(), Value::Null, Value::String(e.to_string()))
        }
    };
    Report {
        code,
        result: json!({
            "certificate": to_value(&cert),
            "clause_agreement": to_value(&equivalence),
            "decomposition": decomposition,
            "failure": failure,
        }),
        text,
    }
}

fn witness_text(s: &PartialSemigroup, w: &Witness) -> String {
    match w {
        Witness::Covered { skipped } => format!("every L(u) covers R(L(u)); skipped {}", named(s, skipped)),
        Witness::Uncovered { u, h, point } => format!(
            "u = {}: {} ∈ R({}) lies in no t⁻¹A",
            s.name(*u),
            s.name(*point),
            named(s, h)
        ),
        Witness::DeltaCovered { h } => format!("δ_R S ⊆ ⋃ t⁻¹A over H = {}", named(s, h)),
        Witness::Vacuous => "δ_R S is empty".into(),
        Witness::DeltaGap { point } => format!("{} ∈ δ_R S lies in no t⁻¹A", s.name(*point)),
        Witness::Thick { u, f, t } => format!(
            "u = {}: {}∙{} ⊆ A",
            s.name(*u),
            named(s, f),
            s.name(*t)
        ),
        Witness::CThick { p } => format!("p = {}: L(p)∙p ⊆ A", s.name(*p)),
        Witness::Refuted { candidates, escapes } => format!(
            "all candidates in {} escape ({} escape(s) recorded)",
            named(s, candidates),
            escapes.len()
        ),
        Witness::PiecewiseAll { skipped, choices } => format!(
            "every s has a working x ({} choice(s)); skipped {}",
            choices.len(),
            named(s, skipped)
        ),
        Witness::PiecewiseFails { s: e, h, w, .. } => format!(
            "s = {}, H = {}, W = R(H) = {}: no x ∈ R(W) has W∙x ⊆ ⋃ t⁻¹A",
            s.name(*e),
            named(s, h),
            named(s, w)
        ),
        Witness::CPiecewise { s: e, h, x } => format!(
            "s = {}, H = {}, x = {}",
            s.name(*e),
            named(s, h),
            s.name(*x)
        ),
    }
}

fn classify(s: &PartialSemigroup, a: &SubsetMask) -> Report {
    let r = largeness::classify(s, a);
    let mut text = format!("A = {}\n", named(s, a));
    for v in &r.verdicts {
        let _ = writeln!(
            text,
            "  {:<30} {:<5}  {}",
            v.notion.name(),
            v.holds,
            witness_text(s, &v.witness)
        );
    }
    let _ = writeln!(
        text,
        "duality: thick vs complement syndetic {}, syndetic vs complement thick {}",
        ok_word(r.duality.thick_vs_complement_syndetic),
        ok_word(r.duality.syndetic_vs_complement_thick)
    );
    Report {
        code: EXIT_OK,
        result: to_value(&r),
        text,
    }
}

fn ok_word(b: bool) -> &'static str {
    if b {
        "holds"
    } else {
        "fails"
    }
}

fn central_cmd(s: &PartialSemigroup, b: &SubsetMask, limits: &Limits) -> Result<Report, Failure> {
    let minimal = s.minimal_idempotents();
    let mut text = format!("B = {}\nminimal idempotents: {}\n", named(s, b), named(s, &minimal));
    if central::is_central(s, b) {
        let w = central::build_omega_witness(s, b, limits)?;
        let check = central::check_witness(&w);
        let omega = &w.omega;
        let _ = writeln!(text, "central: true");
        let _ = writeln!(
            text,
            "witness: u = {}, x = {}, y = {}, |Ω orbit closure| = {}, |U| = {}",
            s.name(w.u),
            omega.points[w.x].label(),
            omega.points[w.y].label(),
            omega.points.len(),
            w.neighborhood.count()
        );
        let _ = writeln!(text, "recovered set: {}", named(s, &w.recovered_set));
        let result = json!({
            "subset": to_value(b),
            "central": true,
            "minimal_idempotents": to_value(&minimal),
            "witness": {
                "u": w.u,
                "x": omega.points[w.x].label(),
                "y": omega.points[w.y].label(),
                "points": omega.points.len(),
                "neighborhood": omega.points.iter().enumerate()
                    .filter(|(i, _)| w.neighborhood.contains(*i))
                    .map(|(_, p)| p.label()).collect::<Vec<_>>(),
                "recovered_set": to_value(&w.recovered_set),
                "check": to_value(&check),
            },
        });
        return Ok(Report {
            code: EXIT_OK,
            result,
            text,
        });
    }
    let action = central::OmegaAction::new(s)?;
    let verdict = central::centrality_verdict(s, &action, b, limits)?;
    let _ = writeln!(text, "central: false");
    let _ = writeln!(
        text,
        "candidate witnesses recovering B: {}",
        verdict.contradictions.len()
    );
    Ok(Report {
        code: EXIT_NEGATIVE,
        result: json!({
            "subset": to_value(b),
            "central": false,
            "minimal_idempotents": to_value(&minimal),
            "verdict": to_value(&verdict),
        }),
        text,
    })
}

fn dynamics_cmd(d: &PartialDynSystem, views: &DynamicsViews, limits: &Limits) -> Result<Report, Failure> {
    let all = !views.any();
    let pts = |set: &SubsetMask| {
        let names: Vec<String> = set.iter().map(|x| d.point_name(x)).collect();
        format!("{{{}}}", names.join(","))
    };
    let names = |set: &SubsetMask| set.iter().map(|x| d.point_name(x)).collect::<Vec<_>>();
    let validation = d.validate();
    let mut text = format!(
        "{} point(s), {} acting element(s); composition law {}, {} coverage gap(s)\n",
        d.points(),
        d.semigroup().size(),
        ok_word(validation.ok),
        validation.coverage_gaps.len()
    );
    let mut result = json!({
        "points": d.points(),
        "validation": to_value(&validation),
    });
    if all || views.orbits {
        let orbits: Vec<SubsetMask> = (0..d.points()).map(|x| d.orbit(x)).collect();
        let minimal = d.minimal_subsystems();
        let _ = writeln!(text, "orbits:");
        for (x, o) in orbits.iter().enumerate() {
            let _ = writeln!(text, "  {} -> {}", d.point_name(x), pts(o));
        }
        let _ = writeln!(
            text,
            "minimal subsystems: {}",
            minimal.iter().map(&pts).collect::<Vec<_>>().join(" ")
        );
        result["orbits"] = json!(orbits.iter().map(&names).collect::<Vec<_>>());
        result["minimal_subsystems"] = json!(minimal.iter().map(&names).collect::<Vec<_>>());
    }
    if all || views.recurrent {
        let ur = d.uniformly_recurrent_points();
        let _ = writeln!(text, "uniformly recurrent: {}", pts(&ur));
        result["uniformly_recurrent"] = json!(names(&ur));
    }
    if all || views.proximal {
        let pairs: Vec<(usize, usize, usize)> = d
            .proximal_pairs()
            .into_iter()
            .filter(|(x, y)| x < y)
            .map(|(x, y)| (x, y, d.proximity_witness(x, y).unwrap()))
            .collect();
        let _ = writeln!(text, "proximal pairs (x < y): {}", pairs.len());
        for (x, y, s) in &pairs {
            let _ = writeln!(
                text,
                "  {} {} via {}",
                d.point_name(*x),
                d.point_name(*y),
                d.semigroup().name(*s)
            );
        }
        result["proximal_pairs"] = json!(pairs
            .iter()
            .map(|(x, y, s)| json!({"x": d.point_name(*x), "y": d.point_name(*y), "via": s}))
            .collect::<Vec<_>>());
    }
    if views.enveloping {
        let env = d.enveloping(limits)?;
        let idem = env.idempotents();
        let _ = writeln!(
            text,
            "enveloping semigroup: {} map(s), {} idempotent(s), composition-closed {}",
            env.len(),
            idem.len(),
            env.is_composition_closed()
        );
        for (i, m) in env.elements().iter().enumerate() {
            let imgs: Vec<String> = m
                .images()
                .into_iter()
                .take(d.points())
                .map(|v| if v == m.infinity() { "∞".into() } else { v.to_string() })
                .collect();
            let _ = writeln!(text, "  e{i}: {}", imgs.join(" "));
        }
        result["enveloping"] = json!({
            "size": env.len(),
            "idempotents": idem,
            "generator_index": env.generator_index(),
            "maps": env.elements().iter().map(|m| m.images()).collect::<Vec<_>>(),
        });
    }
    Ok(Report {
        code: EXIT_OK,
        result,
        text,
    })
}

fn family(name: &str, params: &[String], output: &Path, seed: u64) -> Result<Report, Failure> {
    let spec = FamilySpec::parse(name, params, seed)?;
    let write = |path: &Path, text: &str| {
        std::fs::write(path, text).map_err(|e| Failure::Lib(Error::Io(format!("{}: {e}", path.display()))))
    };
    let mut written = Vec::new();
    match spec.generate()? {
        Generated::Semigroup(s) => {
            write(output, &format::emit_psg(&s))?;
            written.push(output.to_path_buf());
        }
        Generated::System(d) => {
            let psg = output.with_extension("psg");
            if psg == output {
                return Err(Failure::Usage(
                    "a system needs an output path whose extension is not .psg".into(),
                ));
            }
            let rel = psg.file_name().unwrap().to_string_lossy().into_owned();
            write(&psg, &format::emit_psg(d.semigroup()))?;
            write(output, &format::emit_pds(&d, &rel))?;
            written.push(output.to_path_buf());
            written.push(psg);
        }
    }
    let shown: Vec<String> = written.iter().map(|p| p.display().to_string()).collect();
    Ok(Report {
        code: EXIT_OK,
        text: format!("wrote {}\n", shown.join(", ")),
        result: json!({ "family": name, "params": params, "written": shown }),
    })
}

fn verify_report(r: &verify::SuiteReport) -> Report {
    let mut text = String::new();
    for c in &r.checks {
        let status = match (c.passed(), c.in_scope) {
            (true, _) => "pass",
            (false, true) => "FAIL",
            (false, false) => "fail (outside hypotheses)",
        };
        let _ = writeln!(
            text,
            "{:<34} {:<26} {} case(s), {} failure(s)",
            c.name, status, c.cases, c.failures
        );
        if let Some(e) = &c.example {
            let _ = writeln!(text, "    first failure: {e}");
        }
    }
    Report {
        code: if r.passed() { EXIT_OK } else { EXIT_NEGATIVE },
        result: to_value(r),
        text,
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Validate { .. } => "validate",
        Command::Analyze { .. } => "analyze",
        Command::Decompose { .. } => "decompose",
        Command::Classify { .. } => "classify",
        Command::Central { .. } => "central",
        Command::Dynamics { .. } => "dynamics",
        Command::Family { .. } => "family",
        Command::Verify { .. } => "verify",
    }
}

/// Runs the command line, with limits taken from `PSG_CAP` unless `--cap`
/// is given.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with_limits(args, Limits::from_env())
}

pub fn run_with_limits<I, T>(args: I, base: Limits) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: rendered,
                }
            } else {
                Outcome {
                    code,
                    stdout: rendered,
                    stderr: String::new(),
                }
            };
        }
    };
    let mut limits = base;
    if let Some(cap) = cli.cap {
        limits.subset_cap = cap;
        limits.enveloping_cap = cap;
    }
    let mut runner = Runner {
        ctx: Ctx::default(),
        limits,
        validate: !cli.no_validate,
        seed: cli.seed,
    };
    let outcome = runner.dispatch(&cli.command);
    let inputs: Vec<Value> = runner
        .ctx
        .inputs
        .iter()
        .map(|i| json!({ "path": i.path, "sha256": i.sha256 }))
        .collect();
    let name = command_name(&cli.command);
    let (code, body, text, stderr) = match outcome {
        Ok(r) => (r.code, json!({ "result": r.result }), r.text, String::new()),
        Err(f) => {
            let mut error = json!({ "kind": f.kind(), "message": f.message() });
            if let Failure::Invalid { detail, .. } = &f {
                error["detail"] = detail.clone();
            }
            (
                f.code(),
                json!({ "error": error }),
                String::new(),
                format!("error: {}\n", f.message()),
            )
        }
    };
    if cli.json {
        let mut envelope = json!({
            "schema_version": SCHEMA_VERSION,
            "command": name,
            "inputs": inputs,
            "exit_code": code,
        });
        let obj = envelope.as_object_mut().unwrap();
        for (k, v) in body.as_object().unwrap() {
            obj.insert(k.clone(), v.clone());
        }
        let mut stdout = serde_json::to_string_pretty(&envelope).unwrap();
        stdout.push('\n');
        Outcome {
            code,
            stdout,
            stderr,
        }
    } else {
        Outcome {
            code,
            stdout: text,
            stderr,
        }
    }
}
