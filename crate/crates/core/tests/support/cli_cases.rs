//! Golden-file cases for the `psg` command line, shared by the CLI test
//! target and the acceptance harness.
//!
//! Set `PSG_UPDATE_GOLDEN=1` to rewrite the golden files.

use std::path::{Path, PathBuf};

use psgkit::cli::{self, Outcome};
use psgkit::format;
use psgkit::Limits;

pub struct Case {
    pub name: &'static str,
    pub args: Vec<String>,
    pub code: i32,
}

fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

pub fn fixtures() -> PathBuf {
    crate_dir().join("tests/fixtures")
}

fn golden_dir() -> PathBuf {
    crate_dir().join("tests/golden")
}

fn case(name: &'static str, code: i32, args: &[&str]) -> Case {
    Case {
        name,
        args: args.iter().map(|a| a.to_string()).collect(),
        code,
    }
}

/// Every case runs with the crate directory as the base for relative
/// fixture paths; `@TMP` is replaced by a scratch directory.
pub fn cases() -> Vec<Case> {
    vec![
        case("validate-ok", 0, &["validate", "F/z2.psg"]),
        case("validate-broken", 3, &["validate", "F/broken.psg"]),
        case("validate-broken-json", 3, &["--json", "validate", "F/broken.psg"]),
        case("validate-pds", 0, &["validate", "F/shift.pds"]),
        case("analyze-z2", 0, &["analyze", "F/z2.psg"]),
        case("analyze-pf2-json", 0, &["--json", "analyze", "F/pf2.psg"]),
        case("analyze-broken", 3, &["analyze", "F/broken.psg"]),
        case("analyze-broken-no-validate", 0, &["--no-validate", "analyze", "F/broken.psg"]),
        case("analyze-truncated", 3, &["analyze", "F/truncated.psg"]),
        case("analyze-missing", 3, &["analyze", "F/missing.psg"]),
        case("decompose-left-group", 0, &["decompose", "F/lg22.psg"]),
        case("decompose-zero", 1, &["decompose", "F/zero3.psg"]),
        case("decompose-zero-json", 1, &["--json", "decompose", "F/zero3.psg"]),
        case("classify-z2", 0, &["classify", "F/z2.psg", "--set", "0"]),
        case("classify-z2-json", 0, &["--json", "classify", "F/z2.psg", "--set", "0"]),
        case("classify-names", 0, &["classify", "F/pf2.psg", "--set", "{1},{2}"]),
        case("classify-hex", 0, &["classify", "F/rz3.psg", "--set", "0x5"]),
        case("classify-bad-set", 2, &["classify", "F/z2.psg", "--set", "7"]),
        case("central-z2", 0, &["central", "F/z2.psg", "--set", "0"]),
        case("central-z2-json", 0, &["--json", "central", "F/z2.psg", "--set", "0"]),
        case("central-empty", 1, &["central", "F/z2.psg", "--set", "{}"]),
        case("dynamics-shift", 0, &["dynamics", "F/shift.pds"]),
        case("dynamics-shift-enveloping", 0, &["dynamics", "F/shift.pds", "--enveloping"]),
        case("dynamics-translation-json", 0, &["--json", "dynamics", "F/rz3.psg", "--proximal"]),
        case("family-cyclic", 0, &["family", "cyclic-group", "2", "-o", "@TMP/z2.psg"]),
        case("family-random", 0, &["--seed", "3", "family", "random-partial", "4", "0.6", "-o", "@TMP/r.psg"]),
        case("family-unknown", 2, &["family", "nope", "1", "-o", "@TMP/x.psg"]),
        case("verify-z2", 0, &["verify", "F/z2.psg"]),
        case("verify-shift-json", 0, &["--json", "verify", "F/shift.pds", "--suite", "dynamics"]),
        case("verify-bad-suite", 2, &["verify", "F/z2.psg", "--suite", "nope"]),
        case("verify-cap", 4, &["--cap", "1", "verify", "F/z2.psg", "--suite", "largeness"]),
        case("verify-cap-json", 4, &["--json", "--cap", "1", "verify", "F/z2.psg", "--suite", "largeness"]),
        case("classify-bad-set-json", 2, &["--json", "classify", "F/z2.psg", "--set", "7"]),
        case("unknown-subcommand", 2, &["bogus"]),
        case("missing-argument", 2, &["classify", "F/z2.psg"]),
    ]
}

pub struct Run {
    pub outcome: Outcome,
    pub rendered: String,
}

/// Runs one case. Paths are made relative to the crate directory so that
/// reports are stable across machines.
pub fn run(c: &Case, tmp: &Path) -> Run {
    std::env::set_current_dir(crate_dir()).expect("crate dir exists");
    let tmp_s = tmp.display().to_string();
    let args: Vec<String> = std::iter::once("psg".to_string())
        .chain(c.args.iter().map(|a| {
            a.replacen("F/", "tests/fixtures/", 1)
                .replace("@TMP", &tmp_s)
        }))
        .collect();
    let outcome = cli::run_with_limits(&args, Limits::default());
    let mut rendered = format!(
        "$ {}\nexit {}\n--- stdout\n{}--- stderr\n{}",
        c.args.join(" "),
        outcome.code,
        outcome.stdout,
        outcome.stderr
    );
    rendered = rendered.replace(&tmp_s, "@TMP");
    Run { outcome, rendered }
}

pub fn golden_path(name: &str) -> PathBuf {
    golden_dir().join(format!("{name}.txt"))
}

/// Compares every case against its golden file. Returns the mismatches.
pub fn check_all() -> Vec<String> {
    let tmp = tempfile::tempdir().expect("tempdir");
    let update = std::env::var_os("PSG_UPDATE_GOLDEN").is_some();
    let mut problems = Vec::new();
    for c in cases() {
        let r = run(&c, tmp.path());
        if r.outcome.code != c.code {
            problems.push(format!("{}: exit {} (expected {})", c.name, r.outcome.code, c.code));
        }
        let path = golden_path(c.name);
        if update {
            std::fs::write(&path, &r.rendered).expect("golden dir writable");
            continue;
        }
        match std::fs::read_to_string(&path) {
            Ok(want) if want == r.rendered => {}
            Ok(_) => problems.push(format!("{}: output differs from {}", c.name, path.display())),
            Err(_) => problems.push(format!("{}: no golden file", c.name)),
        }
    }
    problems
}

/// Every fixture file parses and re-emits byte for byte.
pub fn round_trip_problems() -> Vec<String> {
    let mut problems = Vec::new();
    let mut entries: Vec<PathBuf> = std::fs::read_dir(fixtures())
        .expect("fixtures dir")
        .map(|e| e.unwrap().path())
        .collect();
    entries.sort();
    for path in entries {
        let text = std::fs::read_to_string(&path).unwrap();
        let name = path.file_name().unwrap().to_string_lossy().to_string();
        let emitted = match path.extension().and_then(|e| e.to_str()) {
            Some("psg") => match format::parse_psg(&text) {
                Ok(s) => format::emit_psg(&s),
                Err(_) if name == "truncated.psg" => continue,
                Err(e) => {
                    problems.push(format!("{name}: {e}"));
                    continue;
                }
            },
            Some("pds") => match format::load_pds(&path) {
                Ok((d, _)) => {
                    let rel = format::parse_pds(&text).unwrap();
                    format::emit_pds(&d, &rel.semigroup)
                }
                Err(e) => {
                    problems.push(format!("{name}: {e}"));
                    continue;
                }
            },
            _ => continue,
        };
        if emitted != text {
            problems.push(format!("{name}: emitted text differs"));
        }
    }
    problems
}
