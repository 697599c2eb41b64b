mod support {
    pub mod cli_cases;
}

use psgkit::cli;
use support::cli_cases;

#[test]
fn golden_outputs_and_exit_codes() {
    let problems = cli_cases::check_all();
    assert!(problems.is_empty(), "{}", problems.join("\n"));
}

#[test]
fn fixtures_round_trip_byte_exact() {
    let problems = cli_cases::round_trip_problems();
    assert!(problems.is_empty(), "{}", problems.join("\n"));
}

#[test]
fn every_documented_exit_code_is_exercised() {
    let codes: std::collections::BTreeSet<i32> = cli_cases::cases().iter().map(|c| c.code).collect();
    let documented = [
        cli::EXIT_OK,
        cli::EXIT_NEGATIVE,
        cli::EXIT_USAGE,
        cli::EXIT_INPUT,
        cli::EXIT_CAP,
    ];
    assert_eq!(codes.into_iter().collect::<Vec<_>>(), documented);
}

#[test]
fn family_then_central_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("z2.psg");
    let file = file.to_str().unwrap();
    let out = cli::run(["psg", "family", "cyclic-group", "2", "-o", file]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let out = cli::run(["psg", "--json", "central", file, "--set", "0"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["result"]["central"], true);
    assert_eq!(v["schema_version"], cli::SCHEMA_VERSION);
    assert_eq!(v["inputs"][0]["path"], file);
}

#[test]
fn classify_reports_not_thick() {
    let out = cli::run(["psg", "--json", "classify", "tests/fixtures/z2.psg", "--set", "0"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    let text = cli::run(["psg", "classify", "tests/fixtures/z2.psg", "--set", "0"]).stdout;
    assert!(text.contains("partially-thick                false"));
    assert!(v["result"].to_string().contains("\"partially-thick\""));
}

#[test]
fn validate_lists_the_violating_triples() {
    let out = cli::run(["psg", "validate", "tests/fixtures/broken.psg"]);
    assert_eq!(out.code, cli::EXIT_INPUT);
    for t in ["(0,0,1)", "(0,1,0)", "(1,0,1)", "(1,1,0)"] {
        assert!(out.stdout.contains(t) || out.stderr.contains(t), "{t}");
    }
}

#[test]
fn json_envelopes_follow_the_published_schema() {
    let schema: serde_json::Value =
        serde_json::from_str(include_str!("../docs/report-schema.json")).unwrap();
    let props = &schema["properties"];
    let commands = props["command"]["enum"].as_array().unwrap();
    let kinds = props["error"]["properties"]["kind"]["enum"].as_array().unwrap();
    let tmp = tempfile::tempdir().unwrap();
    let mut seen = 0;
    for c in cli_cases::cases() {
        if !c.args.iter().any(|a| a == "--json") {
            continue;
        }
        let run = cli_cases::run(&c, tmp.path());
        let Ok(v) = serde_json::from_str::<serde_json::Value>(&run.outcome.stdout) else {
            continue;
        };
        seen += 1;
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(&keys[..4], ["schema_version", "command", "inputs", "exit_code"], "{}", c.name);
        assert_eq!(keys.len(), 5, "{}", c.name);
        assert!(keys[4] == "result" || keys[4] == "error", "{}", c.name);
        assert_eq!(v["schema_version"], props["schema_version"]["const"]);
        assert!(commands.contains(&v["command"]), "{}", c.name);
        assert_eq!(v["exit_code"], run.outcome.code);
        for input in v["inputs"].as_array().unwrap() {
            assert_eq!(input["sha256"].as_str().unwrap().len(), 64);
        }
        if keys[4] == "error" {
            assert!(kinds.contains(&v["error"]["kind"]), "{}", c.name);
        }
    }
    assert!(seen >= 8);
}
