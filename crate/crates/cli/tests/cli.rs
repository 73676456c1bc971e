use std::io::Write;
use std::process::{Command, Output};

fn fsig(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fsig")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn temp_file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::Builder::new().suffix(".toml").tempfile().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn fsig_rows_for_the_quadric_cone() {
    let out = fsig(&["fsig", "a1_p3", "--emax", "2", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "e,q,a_q,s_e_num,s_e_den,s_e_approx\n1,3,5,5,9,0.5556\n2,9,41,41,81,0.5062\n"
    );
}

#[test]
fn classify_node() {
    let out = fsig(&["classify", "node_p3", "--emax", "3", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["command"], "classify");
    assert_eq!(v["config"]["emax"], 3);
    assert_eq!(v["config"]["order"], "grevlex");
    assert_eq!(v["result"]["fpure"], true);
    assert_eq!(v["result"]["sfr"], "unknown");
    assert_eq!(v["result"]["sdim"], 0);
    assert_eq!(v["result"]["verdict"], "CONSISTENT");
    assert_eq!(v["input"]["sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn hk_of_the_plane_is_one() {
    let out = fsig(&["hk", "regular2_p5", "--emax", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let rows = v["result"]["rows"].as_array().unwrap();
    for row in rows {
        assert_eq!(row["ratio"]["num"], row["ratio"]["den"]);
    }
    assert_eq!(rows.len(), 2);
}

#[test]
fn table_output_lists_every_row() {
    let out = fsig(&["aq", "a1_p3", "--emax", "2"]);
    let text = stdout(&out);
    assert!(text.starts_with("aq a1_p3 "));
    assert!(text.contains("1:5 2:5"), "{text}");
    assert!(text.contains("1:41 2:41"), "{text}");
}

#[test]
fn exit_codes() {
    let bad_syntax = temp_file("p = 3\nvariables = [\"x\", \"y\"]\nrelations = [\"x*y -\"]\n");
    let out = fsig(&["aq", bad_syntax.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("3:20"));

    let bad_sop = temp_file("p = 3\nvariables = [\"x\", \"y\", \"z\"]\nrelations = [\"x*y - z^2\"]\nsop = [\"x\", \"x\"]\n");
    assert_eq!(fsig(&["aq", bad_sop.path().to_str().unwrap()]).status.code(), Some(3));

    let no_c = temp_file("p = 3\nvariables = [\"x\", \"y\", \"z\"]\nrelations = [\"x*y - z^2\"]\nsop = [\"x\", \"y\"]\n");
    assert_eq!(fsig(&["sfr", no_c.path().to_str().unwrap()]).status.code(), Some(3));

    let type_two = temp_file("p = 3\nvariables = [\"x\", \"y\", \"z\"]\nrelations = [\"x*y\", \"x*z\", \"y*z\"]\nsop = [\"x + y + z\"]\n");
    assert_eq!(fsig(&["aq", type_two.path().to_str().unwrap()]).status.code(), Some(3));

    assert_eq!(fsig(&["oracle-aq", "a1_p3", "--term-budget", "2"]).status.code(), Some(4));

    let out = fsig(&["aq", "a1_p3", "--tmax", "1"]);
    assert_eq!(out.status.code(), Some(5));
    assert!(stdout(&out).contains("did not stabilize"));

    assert_eq!(fsig(&["aq", "no_such_input"]).status.code(), Some(2));
    assert_eq!(fsig(&["sdim", "a1_p3", "--emax", "1"]).status.code(), Some(3));
}

#[test]
fn output_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = fsig(&["hk", "a1_p3", "--format", "json", "-o", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let direct = fsig(&["hk", "a1_p3", "--format", "json"]);
    assert_eq!(std::fs::read(&path).unwrap(), direct.stdout);
}
