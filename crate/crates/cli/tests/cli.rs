use std::path::Path;
use std::process::Command;

use obstrukt::{load_algebra_spec, run_command_with, LoadError, Report, Status};
use obstrukt_core::bockstein::e2_dimensions;
use obstrukt_core::models::{bo_algebra, em_algebra};
use obstrukt_core::spec::SpecError;
use serde_json::Value;

fn schema(name: &str) -> jsonschema::Validator {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("schemas")
        .join(name);
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&schema).unwrap()
}

fn run(args: &[&str]) -> Report {
    let argv = std::iter::once("obstrukt").chain(args.iter().copied());
    run_command_with(argv, None)
}

fn json(args: &[&str]) -> (Report, Value) {
    let mut all = args.to_vec();
    all.push("--json");
    let report = run(&all);
    let value: Value = serde_json::from_str(&report.rendered).expect("valid JSON output");
    (report, value)
}

fn assert_valid(validator: &jsonschema::Validator, value: &Value) {
    let errors: Vec<String> = validator
        .iter_errors(value)
        .map(|e| format!("{} at {}", e, e.instance_path()))
        .collect();
    assert!(errors.is_empty(), "{errors:#?}\n{value:#}");
}

#[test]
fn json_reports_match_the_schema() {
    let validator = schema("report.schema.json");
    let cases: &[&[&str]] = &[
        &["adem", "Sq1 Sq2"],
        &["adem", "Sq2 Sq3"],
        &["serre-gens", "--k", "3", "--max-degree", "12"],
        &["em", "--k", "2", "--max-degree", "10"],
        &["bo", "--k", "3", "--max-degree", "8"],
        &["mo-check", "--k", "2", "--dim-bound", "12"],
        &["mo-check", "--k", "3", "--dim-bound", "14"],
        &["e2", "--k", "2", "--max-degree", "10", "--representatives"],
        &["certify", "--k", "2", "--tail", ""],
        &["certify", "--k", "3", "--tail", "Sq[2,1]"],
        &["certify", "--k", "3", "--tail", "Sq[1]"],
        &["growth", "--k", "2", "--max-degree", "30"],
        &[
            "growth",
            "--k",
            "2",
            "--against",
            "degrees",
            "--degrees",
            "1,2",
            "--max-degree",
            "20",
        ],
        &["oracle", "--vars", "3", "--word", "Sq2 Sq2"],
        &["oracle", "--vars", "3", "--wu", "1", "--j", "2"],
        &[
            "oracle",
            "--vars",
            "2",
            "--word",
            "Sq1",
            "--input",
            "t1 + t2^3",
        ],
        &["adem", "Sq["],
    ];
    for args in cases {
        let (_, value) = json(args);
        assert_valid(&validator, &value);
    }
}

#[test]
fn big_series_coefficients_validate() {
    let degrees: Vec<String> = (1..=100).map(|d| d.to_string()).collect();
    let degrees = degrees.join(",");
    let (report, value) = json(&[
        "growth",
        "--k",
        "3",
        "--against",
        "degrees",
        "--degrees",
        &degrees,
        "--max-degree",
        "500",
    ]);
    assert_eq!(report.status, Status::Ok);
    assert!(value["payload"]["series_b"]
        .as_array()
        .unwrap()
        .iter()
        .any(Value::is_string));
    assert_valid(&schema("report.schema.json"), &value);
}

#[test]
fn documented_examples() {
    assert!(run(&["adem", "Sq1 Sq2"]).rendered.starts_with("Sq[3]\n"));
    assert!(run(&["adem", "Sq1 Sq1"]).rendered.starts_with("0\n"));
    let (r, v) = json(&["certify", "--k", "2", "--tail", ""]);
    assert_eq!(r.exit_code(), 0);
    assert_eq!(v["payload"]["obstruction_degree"], 5);
    assert_eq!(v["payload"]["ambient_bound"], 11);
    assert_eq!(v["payload"]["tail"], serde_json::json!([]));
    let human = run(&["certify", "--k", "3", "--tail", "Sq[2,1]"]).rendered;
    assert!(human.contains("β Sq⁶Sq²Sq¹(ι₃)"), "{human}");
    assert!(human.contains("closed 27-manifold"));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["adem", "Sq2"]).exit_code(), 0);
    let rejected = run(&["certify", "--k", "3", "--tail", "Sq[1]"]);
    assert_eq!(
        (rejected.status, rejected.exit_code()),
        (Status::Rejected, 1)
    );
    assert!(rejected.reasons[0].contains("starts with 1"));
    assert_eq!(run(&["certify", "--k", "1"]).exit_code(), 1);
    assert_eq!(run(&["mo-check", "--k", "1"]).exit_code(), 1);
    assert_eq!(run(&["frobnicate"]).exit_code(), 3);
    assert_eq!(run(&["adem"]).exit_code(), 3);
    assert_eq!(run(&["em", "--k", "2", "--bogus"]).exit_code(), 3);
    assert_eq!(run(&["e2", "--k", "2", "--spec", "x.json"]).exit_code(), 3);
    assert_eq!(run(&["--help"]).exit_code(), 0);

    // Sq^1 Sq^1 x = z, so Sq^1 is not a differential: a verification failure.
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(
        &path,
        r#"{ "truncation": 8, "generators": [
            { "name": "x", "degree": 2, "sq": { "1": "y" } },
            { "name": "y", "degree": 3, "sq": { "1": "z" } },
            { "name": "z", "degree": 4 } ] }"#,
    )
    .unwrap();
    let failed = run(&["e2", "--spec", path.to_str().unwrap()]);
    assert_eq!(
        (failed.status, failed.exit_code()),
        (Status::Failed, 2),
        "{}",
        failed.rendered
    );
}

#[test]
fn binary_exit_codes_and_environment_default() {
    let bin = env!("CARGO_BIN_EXE_obstrukt");
    let status = |args: &[&str]| {
        Command::new(bin)
            .args(args)
            .env_remove("OBSTRUKT_MAX_DEGREE")
            .output()
            .unwrap()
            .status
            .code()
    };
    assert_eq!(status(&["adem", "Sq1 Sq2"]), Some(0));
    assert_eq!(status(&["certify", "--k", "3", "--tail", "Sq[1]"]), Some(1));
    assert_eq!(status(&["nope"]), Some(3));

    let out = Command::new(bin)
        .args(["em", "--k", "2", "--json"])
        .env("OBSTRUKT_MAX_DEGREE", "9")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["payload"]["max_degree"], 9);
    let out = Command::new(bin)
        .args(["em", "--k", "2", "--json"])
        .env_remove("OBSTRUKT_MAX_DEGREE")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["payload"]["max_degree"], 24);
}

#[test]
fn default_truncations() {
    let (_, v) = json(&["e2", "--k", "1"]);
    assert_eq!(v["payload"]["max_degree"], 23);
    let (_, v) = json(&["growth", "--k", "2"]);
    assert_eq!(v["payload"]["max_degree"], 60);
    assert_eq!(v["payload"]["crossing"], 14);
    let r = run_command_with(["obstrukt", "growth", "--k", "2", "--json"], Some(20));
    let v: Value = serde_json::from_str(&r.rendered).unwrap();
    assert_eq!(v["payload"]["max_degree"], 20);
}

#[test]
fn output_is_deterministic() {
    for args in [
        &[
            "e2",
            "--k",
            "3",
            "--max-degree",
            "14",
            "--representatives",
            "--json",
        ][..],
        &["certify", "--k", "3", "--tail", "Sq[2,1]"][..],
        &["em", "--k", "3", "--max-degree", "12"][..],
    ] {
        assert_eq!(run(args).rendered, run(args).rendered);
    }
}

#[test]
fn export_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let spec_schema = schema("algebra-spec.schema.json");
    for (cmd, k, d) in [("em", 2, 12), ("em", 3, 14), ("bo", 4, 10)] {
        let path = dir.path().join(format!("{cmd}{k}.json"));
        let (k_s, d_s) = (k.to_string(), d.to_string());
        let r = run(&[
            cmd,
            "--k",
            &k_s,
            "--max-degree",
            &d_s,
            "--export",
            path.to_str().unwrap(),
        ]);
        assert_eq!(r.status, Status::Ok, "{}", r.rendered);
        let exported: Value =
            serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        assert_valid(&spec_schema, &exported);
        let loaded = load_algebra_spec(&path).unwrap();
        let built = if cmd == "em" {
            em_algebra(k, d).unwrap()
        } else {
            bo_algebra(k, d).unwrap()
        };
        assert_eq!(loaded, built);
        for n in 0..=d {
            assert_eq!(
                loaded.monomial_basis(n).unwrap().monomials(),
                built.monomial_basis(n).unwrap().monomials()
            );
        }
        assert_eq!(
            e2_dimensions(&loaded, d - 1).unwrap(),
            e2_dimensions(&built, d - 1).unwrap()
        );
        if cmd == "em" {
            let (_, from_file) = json(&["e2", "--spec", path.to_str().unwrap()]);
            let (_, from_model) = json(&["e2", "--k", &k_s, "--max-degree", &d_s]);
            assert_eq!(
                from_file["payload"]["records"],
                from_model["payload"]["records"]
            );
        }
    }
}

#[test]
fn loading_specs() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, text: &str| {
        let p = dir.path().join(name);
        std::fs::write(&p, text).unwrap();
        p
    };
    let ok = write(
        "z2.json",
        r#"{ "truncation": 10, "generators": [ { "name": "i", "degree": 1, "sq": { "1": "i^2" } } ] }"#,
    );
    let alg = load_algebra_spec(&ok).unwrap();
    assert_eq!(alg.monomial_basis(7).unwrap().len(), 1);

    let bad = write(
        "bad.json",
        r#"{ "truncation": 10, "generators": [ { "name": "i", "degree": 1, "sq": { "1": "0" } } ] }"#,
    );
    match load_algebra_spec(&bad) {
        Err(LoadError::Spec(SpecError::Algebra { location, source })) => {
            assert_eq!(location, "generators[0].sq[\"1\"]");
            assert!(
                source.to_string().contains("instab") || source.to_string().contains("square"),
                "{source}"
            );
        }
        other => panic!("unexpected {other:?}"),
    }
    let garbage = write("garbage.json", "{ not json");
    assert!(matches!(
        load_algebra_spec(&garbage),
        Err(LoadError::Spec(SpecError::Json(_)))
    ));
    assert!(matches!(
        load_algebra_spec(dir.path().join("missing.json")),
        Err(LoadError::Io { .. })
    ));
    let unknown = write(
        "unknown.json",
        r#"{ "truncation": 4, "generators": [], "extra": 1 }"#,
    );
    assert!(load_algebra_spec(&unknown).is_err());
    let r = run(&["e2", "--spec", bad.to_str().unwrap()]);
    assert_eq!(r.status, Status::Rejected);
    assert!(r.reasons[0].contains("generators[0]"));
}
