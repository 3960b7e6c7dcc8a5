use std::path::PathBuf;
use std::process::{Command, Output};

fn qfano(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qfano")).args(args).output().expect("binary runs")
}

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name].iter().collect();
    p.display().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn wps_info_examples() {
    let o = qfano(&["wps-info", "--weights", "1,1,2,2,3", "--degrees", "8"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("A^3 = 2/3") && stdout(&o).contains("Fano index: 1"));
    assert!(stdout(&o).contains("1/3(1,1,2), terminal true"));
    let o = qfano(&["wps-info", "--weights", "1,1,2,3,4,4", "--degrees", "6,8"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("A^3 = 1/2"));
    let o = qfano(&["wps-info", "--weights", "2,2,2", "--degrees", "4"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("well-formed: false"));
    let o = qfano(&["wps-info", "--weights", "1,0,2", "--degrees", "4"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn qsmooth_general_reports_rules() {
    let o = qfano(&["qsmooth", &data("n_prime.json"), "--general"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("29 pass / 2 fail"));
    let failing: Vec<&str> = out.lines().filter(|l| l.contains(" fail ") || l.ends_with(" fail")).filter(|l| l.starts_with('{')).collect();
    assert_eq!(failing.len(), 2);
    assert!(failing[0].starts_with("{y0}") && failing[1].starts_with("{y1}"));
    let o = qfano(&["qsmooth", &data("n_prime.json"), "--general", "--allow", "y0,y1"]);
    assert_eq!(o.status.code(), Some(0));
    let o = qfano(&["qsmooth", &data("n6_n8.json"), "--general", "--allow", "y"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("rule 4") || stdout(&o).contains("rule 2") || stdout(&o).contains("rule 3"));
}

#[test]
fn qsmooth_member_with_allowed_point() {
    let o = qfano(&["qsmooth", &data("x1_sampled.json"), "--member", "--allow", "y"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("fields: Fp:"));
    // the y-point is a genuine singularity
    let o = qfano(&["qsmooth", &data("x1_sampled.json"), "--member"]);
    assert_eq!(o.status.code(), Some(1));
    let o = qfano(&["qsmooth", &data("x1_sampled.json"), "--member", "--allow", "w"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn input_errors_exit_2() {
    assert_eq!(qfano(&["qsmooth", "/nonexistent/spec.json"]).status.code(), Some(2));
    assert_eq!(qfano(&["replicate", "/nonexistent/triplet.json"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"field": "QQ", "a6": "z^2 + x0^5", "b6": "z^2", "c8": "0"}"#).unwrap();
    assert_eq!(qfano(&["replicate", bad.to_str().unwrap()]).status.code(), Some(2));
    std::fs::write(&bad, "{not json").unwrap();
    assert_eq!(qfano(&["replicate", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(qfano(&["replicate"]).status.code(), Some(2));
    assert_eq!(qfano(&["replicate", "--sample", "1", "--primes", "1008"]).status.code(), Some(2));
}

#[test]
fn failing_triplet_exits_1() {
    let o = qfano(&["replicate", &data("bad_no_z2.json")]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("item2: failed"));
    assert!(out.contains("summary: not replicated"));
}

#[test]
fn budget_exhaustion_is_inconclusive() {
    let o = qfano(&["replicate", &data("triplet_seed42.json"), "--budget", "1"]);
    assert_eq!(o.status.code(), Some(3), "{}", stdout(&o));
}

#[test]
fn replicate_reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let oa = qfano(&["replicate", "--sample", "42", "--json", a.to_str().unwrap()]);
    let ob = qfano(&["--jobs", "1", "replicate", "--sample", "42", "--json", b.to_str().unwrap()]);
    assert_eq!(oa.status.code(), Some(0));
    assert_eq!(ob.status.code(), Some(0));
    let (ja, jb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(ja, jb);
    assert_eq!(oa.stdout, ob.stdout);
    let doc: serde_json::Value = serde_json::from_slice(&ja).unwrap();
    assert_eq!(doc["summary"]["status"], "replicated");
    assert_eq!(doc["summary"]["structure_count_evidence"], "3 (no symmetry witness found)");
    assert_eq!(doc["input_digest"].as_str().unwrap().len(), 64);
    // every section verdict in the JSON also appears in the text output
    let text = stdout(&oa);
    for (name, sec) in doc["sections"].as_object().unwrap() {
        let label = name.replace('_', " ");
        let v = sec["verdict"].as_str().unwrap();
        assert!(text.contains(&format!("{label}: {v}")), "{label}");
    }
}

#[test]
fn file_input_matches_sample() {
    let o = qfano(&["replicate", &data("triplet_seed42.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("structure-count evidence: 3 (no symmetry witness found)"));
}
