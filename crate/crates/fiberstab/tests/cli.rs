use std::path::Path;
use std::process::Command;

use fiberstab::json::{
    BetaJson, DecompositionJson, ErrorJson, GitJson, HirzebruchJson, LctJson, MapDegreeJson, MmpJson, ModelJson,
    ModuliDegreeJson, QuasimapsJson, SInvariantJson, SuiteJson, WallScanJson,
};
use fiberstab_core::basecurve::total_degree;
use fiberstab_core::models;
use fiberstab_core::{parse_scalar, Scalar};
use serde::de::DeserializeOwned;
use serde::Serialize;

fn bin(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_fiberstab")).args(args).output().expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).expect("utf8"),
        String::from_utf8(out.stderr).expect("utf8"),
    )
}

fn ok(args: &[&str]) -> String {
    let (code, out, err) = bin(args);
    assert_eq!(code, 0, "{:?}: {}{}", args, out, err);
    out
}

/// Parse, then re-serialize: the reader must accept the output unchanged.
fn round_trip<T: DeserializeOwned + Serialize>(out: &str) -> T {
    let v: T = serde_json::from_str(out).expect("reader accepts output");
    let again = serde_json::to_string_pretty(&v).unwrap() + "\n";
    assert_eq!(again, out);
    v
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(bin(&["no-such-command"]).0, 2);
    assert_eq!(bin(&[]).0, 2);
    assert_eq!(bin(&["cbf"]).0, 2);
    assert_eq!(bin(&["lct", "--germ", "g.json", "--fiber", "z"]).0, 2);
    assert_eq!(bin(&["zariski", "--start", "1,1"]).0, 2);
    assert_eq!(bin(&["paper-suite", "--criterion", "99"]).0, 2);
    assert_eq!(bin(&["--help"]).0, 0);
}

#[test]
fn domain_errors_exit_1_with_json() {
    let dir = tempfile::tempdir().unwrap();
    let cases: Vec<(Vec<String>, &str)> = vec![
        (vec!["cbf".into(), "--deg-f".into(), "7".into()], "cbf"),
        (
            vec![
                "beta".into(),
                "--config".into(),
                "nope".into(),
                "--divisor".into(),
                "E".into(),
                "--c".into(),
                "1/4".into(),
            ],
            "unknown-config",
        ),
        (
            vec![
                "beta".into(),
                "--config".into(),
                "blowup-1-4".into(),
                "--divisor".into(),
                "E".into(),
                "--c".into(),
                "x".into(),
            ],
            "invalid-input",
        ),
        (vec!["mmp-base".into(), "--graph".into(), "/nonexistent/g.json".into()], "io"),
        (vec!["enumerate-quasimaps".into(), "--degree".into(), "0".into()], "basecurve"),
        (
            vec![
                "lct".into(),
                "--germ".into(),
                write(dir.path(), "c.json", r#"[{"alpha":0,"beta":0,"num":1,"den":1}]"#),
            ],
            "lct",
        ),
        (
            vec![
                "git-check".into(),
                "--d1".into(),
                "4".into(),
                "--d2".into(),
                "1".into(),
                "--coeffs".into(),
                write(dir.path(), "bad.json", "{"),
            ],
            "invalid-input",
        ),
    ];
    for (args, kind) in cases {
        let a: Vec<&str> = args.iter().map(String::as_str).collect();
        let (code, out, _) = bin(&a);
        assert_eq!(code, 1, "{:?}", a);
        let e: ErrorJson = round_trip(&out);
        assert_eq!(e.error, kind, "{:?}: {}", a, e.detail);
        assert!(!e.detail.is_empty());
    }
}

#[test]
fn wall_scan_reports_the_quadratic_root() {
    for (config, divisor) in [("f2-degeneration", "f1"), ("p1xp1-4-6", "Q")] {
        let out = ok(&["wall-scan", "--config", config, "--divisor", divisor]);
        let w: WallScanJson = round_trip(&out);
        assert_eq!(w.walls.len(), 1);
        assert_eq!(w.walls[0].symbolic, "(9-sqrt(21))/30");
        assert_eq!(w.walls[0].exact, "3/10 + -1/30*sqrt(21)");
        assert!(w.walls[0].decimal.starts_with("0.147"));
        let scan = w.to_wall_scan().unwrap();
        assert_eq!(WallScanJson::new(config, divisor, &scan), w);
    }
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["wall-scan", "--config", "f2-degeneration", "--divisor", "f1"],
        vec!["enumerate-quasimaps", "--degree", "6"],
        vec!["s-invariant", "--config", "p1xp1-1-4", "--divisor", "D", "--c", "1/10"],
    ] {
        assert_eq!(ok(&args), ok(&args));
    }
}

#[test]
fn models_round_trip() {
    let cases = [
        (vec!["model", "p1xp1"], models::p1xp1()),
        (vec!["model", "hirzebruch", "--m", "2"], models::hirzebruch(2).unwrap()),
        (vec!["model", "wblowup", "--a", "1", "--b", "4"], models::weighted_blowup_p1xp1(1, 4).unwrap()),
    ];
    for (args, model) in cases {
        let m: ModelJson = round_trip(&ok(&args));
        assert_eq!(m.to_model().unwrap(), model);
    }
}

#[test]
fn zariski_from_model_file_matches_builtin() {
    let dir = tempfile::tempdir().unwrap();
    let model = write(dir.path(), "m.json", &ok(&["model", "wblowup", "--a", "1", "--b", "4"]));
    let from_cfg = ok(&["zariski", "--config", "blowup-1-4", "--c", "1/4", "--divisor", "E"]);
    let d: DecompositionJson = round_trip(&from_cfg);
    let dec = d.to_decomposition().unwrap();
    let bps: Vec<Scalar> = ["0", "1", "7", "8"].iter().map(|s| parse_scalar(s).unwrap()).collect();
    assert_eq!(dec.breakpoints, bps);
    assert_eq!(DecompositionJson::from(&dec), d);
    // the same ray given by explicit classes
    let cfg = fiberstab_core::fujita::blowup_config();
    let c = Scalar::ratio(1, 4);
    let class = |v: &fiberstab_core::lattice::DivisorClass| {
        v.coeffs.iter().map(|x| x.to_sum_form()).collect::<Vec<_>>().join(",")
    };
    let start = class(&cfg.family.at(&c));
    let dir_class = class(cfg.divisor("E").unwrap().class());
    let explicit = ok(&["zariski", "--model", &model, "--start", &start, "--direction", &dir_class]);
    assert_eq!(explicit, from_cfg);
}

#[test]
fn invariants_round_trip() {
    let s: SInvariantJson = round_trip(&ok(&["s-invariant", "--config", "p1xp1-1-4", "--divisor", "D", "--c", "1/10"]));
    assert_eq!(s.s.exact, "53/285");
    s.decomposition.to_decomposition().unwrap();
    let b: BetaJson = round_trip(&ok(&["beta", "--config", "blowup-1-4", "--divisor", "E", "--c", "1/4"]));
    assert_eq!(b.beta.to_scalar().unwrap(), Scalar::zero());
    assert_eq!(b.s.to_scalar().unwrap(), Scalar::int(4));
    let f: fiberstab::json::FlagJson = round_trip(&ok(&["s-invariant", "--flag", "--c", "1/4"]));
    assert_eq!(f.s.exact, "7/16");
}

#[test]
fn git_check_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let c0 = write(dir.path(), "c0.json", r#"[{"i":4,"j":1,"num":1,"den":1},{"i":0,"j":0,"num":-1,"den":1}]"#);
    let g: GitJson = round_trip(&ok(&["git-check", "--d1", "4", "--d2", "1", "--coeffs", &c0]));
    assert_eq!(g.status, "strictly-semistable");
    assert!(g.certificate.segment_through_barycenter);
    assert_eq!(g.smooth, Some(true));
    let r = g.to_report().unwrap();
    assert_eq!(GitJson::new(&fiberstab_core::git::c0(), &r, Some(true)), g);
    let mono = write(dir.path(), "m.json", r#"[{"i":4,"j":1,"num":1}]"#);
    let g: GitJson = round_trip(&ok(&["git-check", "--d1", "4", "--d2", "1", "--coeffs", &mono]));
    assert_eq!(g.status, "unstable");
}

#[test]
fn lct_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    // y^2 - x^3: the cusp
    let germ =
        write(dir.path(), "g.json", r#"[{"alpha":0,"beta":2,"num":1,"den":1},{"alpha":3,"beta":0,"num":-1,"den":1}]"#);
    let l: LctJson = round_trip(&ok(&["lct", "--germ", &germ, "--fiber", "y", "--a", "1/2"]));
    let r = l.to_result().unwrap();
    assert_eq!(&r.lct + &r.b, fiberstab_core::Rational::one());
    assert!(l.nondegenerate);
}

#[test]
fn mmp_and_quasimaps_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let graph = r#"{
        "components": [
            {"id": 0, "genus": 1, "moduli_degree": "0"},
            {"id": 1, "moduli_degree": "1/2"},
            {"id": 2, "moduli_degree": "1", "boundary": [{"coefficient": "1/3", "location": "p"}]}
        ],
        "edges": [{"a": 0, "b": 1, "stabilizer": 3}, {"a": 0, "b": 2}]
    }"#;
    let path = write(dir.path(), "g.json", graph);
    let m: MmpJson = round_trip(&ok(&["mmp-base", "--graph", &path]));
    assert_eq!(m.contracted, vec![1]);
    let (g, _) = m.graph.to_graph().unwrap();
    assert_eq!(m.total_degree.to_scalar().unwrap(), Scalar::from(total_degree(&g)));
    // the output graph is itself valid input
    let again = write(dir.path(), "g2.json", &serde_json::to_string(&m.graph).unwrap());
    let m2: MmpJson = round_trip(&ok(&["mmp-base", "--graph", &again]));
    assert!(m2.contracted.is_empty());
    assert_eq!(m2.graph, m.graph);

    let q: QuasimapsJson = round_trip(&ok(&["enumerate-quasimaps", "--degree", "6"]));
    assert_eq!(q.count, 6);
    assert_eq!(QuasimapsJson::new(6, &q.to_types().unwrap()), q);
}

#[test]
fn cbf_commands() {
    let m: ModuliDegreeJson = round_trip(&ok(&["cbf", "--deg-f", "12"]));
    assert_eq!(m.moduli_degree.exact, "1");
    let h: HirzebruchJson = round_trip(&ok(&["cbf", "hirzebruch-bound", "--n", "2", "--deg-f", "6"]));
    assert_eq!(h.verdict, "contradiction");
    assert_eq!(h.d_dot_e.exact, "-3");
    let h: HirzebruchJson = round_trip(&ok(&["cbf", "hirzebruch-bound", "--n", "1", "--deg-f", "6"]));
    assert_eq!(h.verdict, "consistent");
    let d: MapDegreeJson = round_trip(&ok(&["cbf", "map-degree", "--n", "3"]));
    assert_eq!((d.map_degree, d.moduli_degree.exact.as_str()), (18, "3/2"));
}

#[test]
fn paper_suite_single_criterion() {
    let s: SuiteJson = round_trip(&ok(&["paper-suite", "--criterion", "9"]));
    assert!(s.all_passed);
    assert_eq!(s.criteria.len(), 1);
    let table = ok(&["paper-suite", "--criterion", "10", "--table"]);
    assert!(table.starts_with("10  PASS"));
}
