use std::process::{Command, Output};

use schubert_core::Polynomial;
use serde_json::Value;

fn schubert(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_schubert"))
        .args(args)
        .env_remove("SCHUBERT_JOBS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn poly(v: &Value) -> Polynomial {
    serde_json::from_value(v.clone()).unwrap()
}

#[test]
fn poincare_examples() {
    for (k, l, text) in [("1", "2", "1 + t^2"), ("2", "4", "1 + t^2 + 2*t^4 + t^6 + t^8"), ("3", "2", "0")] {
        let o = schubert(&["poincare", "--k", k, "--l", l]);
        assert_eq!(code(&o), 0);
        assert_eq!(stdout(&o).trim_end(), text);
    }
    assert_eq!(code(&schubert(&["poincare", "--k", "1"])), 2);
    assert_eq!(code(&schubert(&["poincare", "--k", "one", "--l", "2"])), 2);
    assert_eq!(code(&schubert(&[])), 2);
    assert_eq!(code(&schubert(&["--help"])), 0);
}

#[test]
fn ih_table() {
    let o = schubert(&["ih", "--i", "2", "--j", "4", "--k", "4", "--l", "7"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let lines: Vec<_> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[0].starts_with("I_1 = 1  "));
    assert!(lines.iter().all(|l| l.contains("matches closed form")));

    let o = schubert(&["ih", "--i", "2", "--j", "4", "--k", "4", "--l", "7", "--p", "3", "--json"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let expected = &schubert_core::qfactor::gauss(2, 3) * &schubert_core::qfactor::gauss(4, 6);
    assert_eq!(poly(&v["entries"][0]["ih"]), expected);
    assert_eq!(v["entries"][0]["closed_form_match"], true);

    assert_eq!(code(&schubert(&["ih", "--i", "3", "--j", "2", "--k", "4", "--l", "9"])), 2);
    assert_eq!(code(&schubert(&["ih", "--i", "2", "--j", "4", "--k", "4", "--l", "7", "--p", "4"])), 2);
}

#[test]
fn verify_commands() {
    let o = schubert(&["verify-global", "--i", "2", "--j", "4", "--k", "4", "--l", "7"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("holds = true"));

    let o = schubert(&["verify-local", "--i", "2", "--j", "4", "--k", "4", "--l", "7", "--all-pairs"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).matches("holds = true").count(), 3);

    let o = schubert(&["verify-local", "--i", "2", "--j", "4", "--k", "4", "--l", "7", "--p", "3", "--q", "1"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("(p,q)=(3,1)"));
    assert_eq!(code(&schubert(&["verify-local", "--i", "2", "--j", "4", "--k", "4", "--l", "7"])), 2);

    assert_eq!(code(&schubert(&["verify-appendix-ki2", "--i", "2", "--j", "5", "--c", "3"])), 0);
    assert_eq!(code(&schubert(&["verify-appendix-kc2", "--i", "3", "--j", "5", "--r", "0"])), 0);
    // outside the proven range the identity fails
    assert_eq!(code(&schubert(&["verify-appendix-ki2", "--i", "1", "--j", "3", "--c", "4"])), 1);
    assert_eq!(code(&schubert(&["verify-appendix-ki2", "--i", "1", "--j", "3", "--c", "1"])), 2);
    assert_eq!(code(&schubert(&["verify-global", "--i", "3", "--j", "2", "--k", "4", "--l", "9"])), 2);
}

#[test]
fn json_round_trips_to_text() {
    let args = ["verify-local", "--i", "2", "--j", "4", "--k", "4", "--l", "7", "--all-pairs"];
    let text = stdout(&schubert(&args));
    let mut json_args = args.to_vec();
    json_args.push("--json");
    let v: Value = serde_json::from_str(&stdout(&schubert(&json_args))).unwrap();
    let mut rendered = Vec::new();
    for verdict in v.as_array().unwrap() {
        rendered.push(format!("  lhs = {}", poly(&verdict["lhs"])));
        rendered.push(format!("  rhs = {}", poly(&verdict["rhs"])));
    }
    let from_text: Vec<_> = text
        .lines()
        .filter(|l| l.starts_with("  lhs") || l.starts_with("  rhs"))
        .map(str::to_string)
        .collect();
    assert_eq!(rendered, from_text);

    let text = stdout(&schubert(&["poincare", "--k", "3", "--l", "7"]));
    let v: Value = serde_json::from_str(&stdout(&schubert(&["poincare", "--k", "3", "--l", "7", "--json"]))).unwrap();
    assert_eq!(format!("{}\n", poly(&v)), text);
}

#[test]
fn sweep_commands() {
    let o = schubert(&["sweep", "--identity", "global", "--i", "1:4", "--r", "2:4", "--j-max", "10", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["summary"]["failed"], 0);
    assert!(v["summary"]["examined"].as_u64().unwrap() > 0);

    let o = schubert(&["sweep", "--identity", "appendix-ki2", "--c", "2:6", "--i", "1:8", "--j", "1:12"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("identity,i,j,k,l,r,c,p,q,class,holds,"));

    let o = schubert(&["sweep", "--identity", "appendix-ki2", "--c", "2:6", "--i", "1:8", "--j", "1:12", "--constraint", "defined"]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("counterexample"));

    assert_eq!(code(&schubert(&["sweep", "--identity", "global", "--i", "3:2", "--r", "2:4", "--j-max", "10"])), 2);
    assert_eq!(code(&schubert(&["sweep", "--identity", "global", "--i", "1-4", "--r", "2:4", "--j-max", "10"])), 2);
}

#[test]
fn sweep_writes_to_file_and_honours_job_env() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let args = ["sweep", "--identity", "global", "--i", "1:3", "--r", "2:3", "--j-max", "9", "--c-equals-r", "--format", "json"];
    let mut with_out = args.to_vec();
    with_out.extend(["--out", path.to_str().unwrap()]);
    let o = Command::new(env!("CARGO_BIN_EXE_schubert"))
        .args(&with_out)
        .env("SCHUBERT_JOBS", "2")
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let from_file = std::fs::read(&path).unwrap();
    let mut single = args.to_vec();
    single.extend(["--jobs", "1"]);
    assert_eq!(schubert(&single).stdout, from_file);

    let bad = dir.path().join("missing").join("report.csv");
    let o = schubert(&["sweep", "--identity", "global", "--i", "1:2", "--r", "2:2", "--j-max", "6", "--out", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
}
