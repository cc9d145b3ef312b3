use std::path::PathBuf;
use std::process::{Command, Output};

use hopfbench::satellite::catalog;
use hopfbench_cli::{
    cmd_h2, CentraliseReport, ClassifyReport, CoverReport, FiveTermOutput, H2Report, Method, TrivialiseReport,
};
use serde::de::DeserializeOwned;
use serde::Serialize;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hopfbench"))
        .args(args)
        .env_remove("HOPFBENCH_CAP_ORDER")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn path(name: &str) -> String {
    data(name).to_string_lossy().into_owned()
}

/// Parses a JSON report and checks it serializes back to the same value.
fn round_trip<T: Serialize + DeserializeOwned>(args: &[&str]) -> T {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let text = stdout(&full);
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    let report: T = serde_json::from_value(value.clone()).unwrap();
    assert_eq!(serde_json::to_value(&report).unwrap(), value);
    report
}

#[test]
fn h2_text_reports() {
    assert_eq!(stdout(&["h2", &path("cyclic5.json")]), "H2 = 0\n");
    assert_eq!(stdout(&["h2", &path("klein4.json")]), "H2 = Z/2\n");
    assert_eq!(stdout(&["h2", "--method", "dual", &path("klein4.json")]), "H2 = Z/2\n");
}

#[test]
fn h2_fixed_point_certificate() {
    let text = stdout(&[
        "h2",
        "--method",
        "fp",
        "--presentation",
        &path("klein4.pres"),
        "--lattice",
        &path("klein4.lattice"),
        &path("klein4.json"),
    ]);
    assert!(text.starts_with("H2 = Z/2\n"), "{text}");
    assert!(text.contains("fixed by 6 elementary endomorphisms: Z/2"));
    assert!(text.contains("agrees with bar resolution: true"));

    let r: H2Report = round_trip(&[
        "h2",
        "--method",
        "fp",
        "--presentation",
        &path("cyclic5.pres"),
        "--lattice",
        &path("cyclic5.lattice"),
    ]);
    assert_eq!(r.h2, "0");
    assert_eq!(r.certificate.unwrap().endomorphisms[0].action, vec![vec![6]]);
}

#[test]
fn fp_needs_a_presentation() {
    let out = run(&["h2", "--method", "fp", &path("klein4.json")]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["h2", "--method", "fp", "--lattice", &path("klein4.lattice")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bar_and_fixed_point_agree_on_the_catalog() {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    for entry in catalog::catalog() {
        let stem = entry.name.replace(' ', "_");
        let (pres, lat) = (dir.join(format!("{stem}.pres")), dir.join(format!("{stem}.lattice")));
        std::fs::write(&pres, entry.presentation.to_string()).unwrap();
        std::fs::write(&lat, entry.lattice.to_string()).unwrap();
        let fp: H2Report = round_trip(&[
            "h2",
            "--method",
            "fp",
            "--presentation",
            &pres.to_string_lossy(),
            "--lattice",
            &lat.to_string_lossy(),
        ]);
        let g = entry.group.build().unwrap();
        let bar = cmd_h2(Some(&g), Method::Bar, None).unwrap();
        assert_eq!(fp.invariants, bar.invariants, "{}", entry.name);
    }
}

#[test]
fn five_term_reports() {
    let r: FiveTermOutput = round_trip(&["five-term", &path("q8_to_v4.json")]);
    let groups = [&r.report.h2b, &r.report.h2a, &r.report.ki1f, &r.report.h1b, &r.report.h1a];
    let expected: [&[&str]; 5] = [&[], &["2"], &["2"], &["2", "2"], &["2", "2"]];
    for (g, e) in groups.iter().zip(expected) {
        assert_eq!(g.as_slice(), e);
    }
    assert_eq!(r.report.exact, [true; 3]);
    assert_eq!(r.maps.delta2, vec![vec![1]]);

    for file in ["s3_to_c2.json", "c3_identity.json", "c6_to_c3.json"] {
        let r: FiveTermOutput = round_trip(&["five-term", &path(file)]);
        assert!(r.report.exact.iter().all(|&e| e) && r.report.surjective_end, "{file}");
    }
    let text = stdout(&["five-term", &path("q8_to_v4.json")]);
    assert!(text.starts_with("H2 B = 0 -> H2 A = Z/2 -> K/[K,B] = Z/2"), "{text}");
}

#[test]
fn extension_commands() {
    let c: CentraliseReport = round_trip(&["centralise", &path("s3_to_c2.json")]);
    assert_eq!((c.centralised_order, c.cod_order), (2, 2));
    assert!(c.routes_agree);
    for file in ["q8_to_v4.json", "c6_to_c3.json", "c3_identity.json"] {
        for r in ["abelianization", "identity", "zero"] {
            let c: CentraliseReport = round_trip(&["centralise", "--reflector", r, &path(file)]);
            assert!(c.routes_agree, "{file} {r}");
        }
    }

    let kind = |file: &str| stdout(&["classify", &path(file)]);
    assert_eq!(kind("s3_to_c2.json"), "non-central (abelianization)\n");
    assert_eq!(kind("c6_to_c3.json"), "trivial (abelianization)\n");
    assert_eq!(kind("q8_to_v4.json"), "central-not-trivial (abelianization)\n");
    let k: ClassifyReport = round_trip(&["classify", &path("q8_to_v4.json")]);
    assert_eq!(serde_json::to_value(k.kind).unwrap(), "central-not-trivial");

    let t: TrivialiseReport = round_trip(&["trivialise", &path("q8_to_v4.json")]);
    assert_eq!(t.trivialisation_order, 4);
    assert!(!t.trivial && t.comparison_surjective);
    let t: TrivialiseReport = round_trip(&["trivialise", &path("c6_to_c3.json")]);
    assert!(t.trivial);
}

#[test]
fn covers() {
    let s: CoverReport = round_trip(&["stem", &path("klein4.json")]);
    assert_eq!((s.middle_order, s.kernel.as_slice()), (8, ["2".to_string()].as_slice()));
    assert!(s.kernel_in_derived && s.kernel_in_center);
    let s: CoverReport = round_trip(&["stem", "--cocycle", &path("cyclic6.json")]);
    assert!(s.identity_extension && s.middle_order == 6);
    assert_eq!(s.cocycle.unwrap().len(), 6);

    let out = run(&["uce", &path("a5.json")]);
    assert_eq!(out.status.code(), Some(3));
    let u: CoverReport = round_trip(&["uce", "--slow", &path("a5.json")]);
    assert_eq!((u.middle_order, u.kernel.as_slice()), (120, ["2".to_string()].as_slice()));
    assert!(u.middle_perfect && u.kernel_in_derived);
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| run(args).status.code();
    assert_eq!(code(&["h2", &path("truncated.json")]), Some(2));
    assert_eq!(code(&["h2", &path("missing.json")]), Some(2));
    assert_eq!(code(&["five-term", &path("c2_into_c4.json")]), Some(2));
    assert_eq!(code(&["--cap-order", "10", "h2", &path("a5.json")]), Some(3));
    assert_eq!(code(&["uce", &path("s3.json")]), Some(4));
    assert_eq!(code(&["uce", &path("a4.json")]), Some(4));
    let out = Command::new(env!("CARGO_BIN_EXE_hopfbench"))
        .args(["h2", &path("klein4.json")])
        .env("HOPFBENCH_CAP_ORDER", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn reports_are_reproducible() {
    let args = ["--json", "five-term", &path("q8_to_v4.json")];
    assert_eq!(stdout(&args), stdout(&args));
}
