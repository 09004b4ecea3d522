use std::io::Write;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_toric-betti"))
        .args(args)
        .env_remove("TORIC_BETTI_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout(o)).expect("valid JSON")
}

#[test]
fn complete_graph_report() {
    let o = run(&["invariants", "--family", "complete:4"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["sa_poly"], serde_json::json!(["5", "0", "-6", "0", "1"]));
    assert_eq!(v["snum"], "5");
    assert_eq!(v["betti"], serde_json::json!(["1", "6", "5"]));
}

#[test]
fn multipartite_report_in_text() {
    let o = run(&[
        "invariants",
        "--family",
        "multipartite:2,2",
        "--format",
        "text",
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("1 + 4z + 3z^2"), "{}", stdout(&o));
}

#[test]
fn null_graph_from_graph6() {
    let v = json(&run(&["invariants", "--graph6", "?"]));
    for key in ["snum", "anum", "bnum", "euler"] {
        assert_eq!(v[key], "1");
    }
    assert_eq!(v["poincare"], serde_json::json!(["1"]));
}

#[test]
fn edge_list_file() {
    let mut f = tempfile();
    f.1.write_all(b"# the example graph\nA B\nA C\nA D\nB C\nB D\n")
        .unwrap();
    let o = run(&[
        "invariants",
        "--edges",
        f.0.to_str().unwrap(),
        "--format",
        "csv",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(
        lines.next().unwrap(),
        "n,snum,anum,bnum,euler,c,sa_poly,betti,poincare"
    );
    assert_eq!(
        lines.next().unwrap(),
        "4,4,4,0,0,1;0;5;0;4,4;0;-5;0;1,1;5;4,1;5;4"
    );
}

fn tempfile() -> (std::path::PathBuf, std::fs::File) {
    let path = std::env::temp_dir().join(format!("toric-betti-test-{}.txt", std::process::id()));
    let file = std::fs::File::create(&path).unwrap();
    (path, file)
}

#[test]
fn json_output_round_trips() {
    for args in [
        vec!["invariants", "--family", "cycle:6"],
        vec!["table5"],
        vec!["verify", "--identity", "zigzag_egf"],
        vec!["catalog"],
    ] {
        let o = run(&args);
        assert!(o.status.success(), "{args:?}");
        let text = stdout(&o);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        let again = if text.trim_end().contains('\n') {
            serde_json::to_string_pretty(&v).unwrap()
        } else {
            serde_json::to_string(&v).unwrap()
        };
        assert_eq!(again, text.trim_end(), "{args:?}");
    }
}

#[test]
fn table_defaults_and_entries() {
    let v = json(&run(&["table5"]));
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 7);
    assert!(rows.iter().all(|r| r.as_array().unwrap().len() == 4));
    assert_eq!(
        v["rows"][6][2],
        serde_json::json!(["1", "12", "125", "597", "483"])
    );

    let v = json(&run(&["table5", "--pmax", "5", "--qmax", "1"]));
    assert_eq!(v["rows"][5][1], serde_json::json!(["1", "5", "20", "16"]));

    let o = run(&["table5", "--pmax", "0", "--qmax", "0", "--format", "csv"]);
    assert_eq!(stdout(&o), "p\\q,0\n0,1\n");
}

#[test]
fn verify_identities() {
    let o = run(&["verify", "--identity", "complete_sa_egf", "--order", "10"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v[0]["passed"], true);
    assert_eq!(v[0]["order"], 10);

    let o = run(&[
        "verify",
        "--identity",
        "all",
        "--order",
        "8",
        "--format",
        "text",
    ]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("33/33 identities passed"));
}

#[test]
fn unknown_identity_exits_2() {
    let o = run(&["verify", "--identity", "bogus"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).is_empty());
    assert!(stderr(&o).contains("bogus"));
}

#[test]
fn sequences() {
    let seq = |what: &str, fam: &str, n: &str| {
        let o = run(&["sequence", "--what", what, "--family", fam, "--upto", n]);
        assert!(o.status.success(), "{}", stderr(&o));
        stdout(&o).trim().to_string()
    };
    assert_eq!(seq("snum", "path", "8"), "1,0,-1,0,2,0,-5,0,14");
    assert_eq!(seq("bnum", "complete", "6"), "1,1,0,-2,0,16,0");
    assert_eq!(seq("anum", "cycle", "6"), "1,0,1,0,3,0,10");
    assert_eq!(seq("snum", "bipartite-row:2", "4"), "0,0,3,0,-27");
    let o = run(&[
        "sequence", "--what", "snum", "--family", "wheel", "--upto", "3",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn parse_errors_exit_2() {
    for args in [
        vec!["invariants", "--family", "cycle:2"],
        vec!["invariants", "--graph6", "A~~"],
        vec!["invariants", "--edges", "/nonexistent/file"],
        vec!["invariants"],
        vec!["invariants", "--family", "path:3", "--graph6", "?"],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(stdout(&o).is_empty(), "{args:?}");
    }
}

#[test]
fn cap_exceeded_exits_3() {
    let o = run(&["invariants", "--family", "path:21"]);
    assert_eq!(o.status.code(), Some(3));
    let err = stderr(&o);
    assert!(err.contains("20") && err.contains("--cap"), "{err}");
    assert!(stdout(&o).is_empty());
}

#[test]
fn cap_override() {
    let o = run(&["invariants", "--family", "path:5", "--cap", "4"]);
    assert_eq!(o.status.code(), Some(3));

    let o = Command::new(env!("CARGO_BIN_EXE_toric-betti"))
        .args(["invariants", "--family", "path:4"])
        .env("TORIC_BETTI_CAP", "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));

    let o = run(&["invariants", "--family", "star:2", "--cap", "21"]);
    assert!(o.status.success());
    assert!(stderr(&o).contains("warning"));

    let o = run(&["invariants", "--family", "star:2", "--cap", "99"]);
    assert_eq!(o.status.code(), Some(2));
}
