use std::process::{Command, Output};

fn jf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jf")).args(args).env_remove("JF_DEFAULT_PREC").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn cohen() {
    let o = jf(&["cohen", "--r", "3", "--N", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "-2/9\n");
    assert_eq!(stdout(&jf(&["cohen", "--r", "1", "--N", "0"])), "-1/12\n");
    assert_eq!(stdout(&jf(&["cohen", "--r", "3", "--N", "7/4"])), "0\n");
    assert_eq!(jf(&["cohen", "--r", "3", "--N", "-1"]).status.code(), Some(3));
    assert_eq!(jf(&["cohen", "--r", "3", "--N", "x"]).status.code(), Some(2));
}

#[test]
fn tau() {
    assert_eq!(stdout(&jf(&["tau", "--n", "1"])), "1\n");
    assert_eq!(stdout(&jf(&["tau", "--n", "2", "--route", "via_f6_n"])), "-24\n");
    let o = jf(&["tau", "--n", "3", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["value"], "252");
    assert_eq!(v["routes"].as_object().unwrap().len(), 8);
    assert_eq!(jf(&["tau", "--n", "2", "--route", "nowhere"]).status.code(), Some(2));
    assert_eq!(jf(&["tau", "--n", "4", "--route", "via_h3_closed"]).status.code(), Some(3));
}

#[test]
fn verify() {
    let o = jf(&["verify", "--id", "T31-theta8", "--prec", "8"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("PASS T31-theta8"));
    assert_eq!(jf(&["verify", "--id", "T31"]).status.code(), Some(2));
    assert_eq!(jf(&["verify", "Q*"]).status.code(), Some(2));
    assert_eq!(jf(&["verify", "--id", "T31-theta8", "--prec", "0"]).status.code(), Some(3));
    let o = jf(&["verify", "P4*", "--prec", "4", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let ids: Vec<_> = v.as_array().unwrap().iter().map(|r| r["id"].as_str().unwrap().to_string()).collect();
    assert_eq!(ids, ["P41", "P42", "P43"]);
}

#[test]
fn default_precision_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_jf"))
        .args(["verify", "S41-eta", "--json"])
        .env("JF_DEFAULT_PREC", "5")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v[0]["prec"], "5");
    let o = Command::new(env!("CARGO_BIN_EXE_jf"))
        .args(["expand", "--form", "eta"])
        .env("JF_DEFAULT_PREC", "many")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn expand() {
    let o = jf(&["expand", "--form", "ek:4", "--prec", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("240q"));
    let a = stdout(&jf(&["expand", "--form", "jacobi_eis:4,1", "--prec", "3", "--json"]));
    let b = stdout(&jf(&["expand", "--form", "jacobi_eis:4,1", "--prec", "3", "--json"]));
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert!(v["series"]["terms"].as_array().unwrap().iter().any(|t| t[0] == 1 && t[1] == 1 && t[2] == "56"));
    assert_eq!(jf(&["expand", "--form", "nonsense"]).status.code(), Some(2));
}

#[test]
fn count() {
    assert_eq!(stdout(&jf(&["count", "r8", "--n", "1"])), "16\n");
    assert_eq!(stdout(&jf(&["count", "delta8", "--n", "1"])), "8\n");
    let o = jf(&["count", "figurate", "--a", "3", "--odd", "--n", "12", "--oracle", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["value"], v["oracle"]);
    assert_eq!(jf(&["count", "figurate", "--n", "3"]).status.code(), Some(3));
    assert_eq!(jf(&["count", "r8", "--n", "0"]).status.code(), Some(3));
}

#[test]
fn lattice() {
    let o = jf(&["lattice", "A7", "--max-norm", "2"]);
    assert_eq!(stdout(&o), "{\n  \"0\": \"1\",\n  \"2\": \"56\"\n}\n");
    let v: serde_json::Value = serde_json::from_slice(&jf(&["lattice", "E7", "--max-norm", "2"]).stdout).unwrap();
    assert_eq!(v["2"], "126");
    assert_eq!(jf(&["lattice", "D4", "--max-norm", "2"]).status.code(), Some(2));
    assert_eq!(jf(&["lattice", "E8", "--max-norm", "3"]).status.code(), Some(3));
}
