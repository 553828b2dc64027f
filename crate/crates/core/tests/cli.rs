use std::io::Write;
use std::process::{Command, Output};

use hierarch::corpus::fixture;
use hierarch::covering::decide_separation;
use hierarch::deciders::member;
use hierarch::prevariety::Oracle;

fn hierarch(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hierarch")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).trim().to_string()
}

#[test]
fn golden_member_matrix_matches_cli_and_library() {
    let golden = include_str!("golden/member_matrix.txt");
    let mut batch = tempfile();
    let mut expected = Vec::new();
    for line in golden.lines() {
        let parts: Vec<&str> = line.split_whitespace().collect();
        let [lang, spec, verdict] = parts[..] else { panic!("bad golden line {line:?}") };
        let verdict: bool = verdict.parse().unwrap();
        let lib = member(&fixture(lang).unwrap(), spec).unwrap().member;
        assert_eq!(lib, verdict, "library {lang} {spec}");
        writeln!(batch.1, "--json member --class {spec} {lang}").unwrap();
        expected.push(verdict);
    }
    batch.1.flush().unwrap();
    let out = hierarch(&["--batch", batch.0.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let lines: Vec<String> = stdout(&out).lines().map(String::from).collect();
    assert_eq!(lines.len(), expected.len());
    for (line, want) in lines.iter().zip(expected) {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["member"], want, "{line}");
    }
    std::fs::remove_file(batch.0).ok();
}

fn tempfile() -> (std::path::PathBuf, std::fs::File) {
    let path = std::env::temp_dir().join(format!(
        "hierarch-batch-{}-{:?}.txt",
        std::process::id(),
        std::thread::current().id()
    ));
    let file = std::fs::File::create(&path).unwrap();
    (path, file)
}

#[test]
fn exit_codes() {
    let o = hierarch(&["member", "--class", "fo2:st", "F3"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).starts_with("false"));
    let o = hierarch(&["member", "--class", "fo2s:st", "F3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "true");
    let o = hierarch(&["--quiet", "separate", "--class", "upol:at", "F6", "coF6"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(o.stdout.is_empty());
    let o = hierarch(&["member", "--class", "upol:gr", "F1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = hierarch(&["member", "--class", "pol:st", "does-not-parse("]);
    assert_eq!(o.status.code(), Some(2));
    let o = hierarch(&["cover", "--class", "pol:at", "F1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn separation_json_matches_library() {
    for (l1, l2, class) in [("F6", "coF6", "at"), ("F1", "F2", "at"), ("F5", "F2", "st+"), ("F4", "coF4", "at+")] {
        let o = hierarch(&["--json", "separate", "--class", &format!("upol:{class}"), l1, l2]);
        let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        let lib =
            decide_separation(&fixture(l1).unwrap(), &fixture(l2).unwrap(), &Oracle::parse(class).unwrap()).unwrap();
        assert_eq!(v["coverable"], lib, "{l1} {l2} {class}");
        assert!(v["opt_size"].as_u64().unwrap() >= 1);
        assert_eq!(v.get("witness_f_element").is_some(), !lib);
        assert_eq!(o.status.code(), Some(if lib { 0 } else { 3 }));
    }
}

#[test]
fn cover_with_several_languages_and_synthesis() {
    let o = hierarch(&["--json", "cover", "--class", "upol:at", "--synthesize", "b*", "aA*", "A*aA*"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["coverable"], true);
    assert!(!v["blocks"].as_array().unwrap().is_empty());
}

#[test]
fn syntactic_and_green_reports() {
    let o = hierarch(&["--json", "syntactic", "F3"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["size"], 6);
    assert_eq!(v["green"]["J"].as_array().unwrap().len(), 3);
    let o = hierarch(&["--json", "syntactic", "F1"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["size"], 2);
    let o = hierarch(&["--json", "syntactic", "A*"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["size"], 1);
    let o = hierarch(&["green", "F3"]);
    assert!(stdout(&o).starts_with("J-classes (3)"));
}

#[test]
fn kernel_and_pairs() {
    let o = hierarch(&["--json", "kernel", "--class", "mod", "F1"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["kernel"].as_array().unwrap().len(), 2);
    let o = hierarch(&["--json", "pairs", "--class", "mod", "F1"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["pairs"].as_array().unwrap().len(), 4);
    let o = hierarch(&["--json", "kernel", "--strict", "--class", "st", "F6"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["kernel"].as_array().unwrap().len(), 2);
}

#[test]
fn temporal_logic_commands() {
    let o = hierarch(&["tl", "eval", "F[All](a)", "bba"]);
    assert_eq!((stdout(&o).as_str(), o.status.code()), ("true", Some(0)));
    let o = hierarch(&["tl", "eval", "P[All] min", "ab@0"]);
    assert_eq!(o.status.code(), Some(3));
    let o = hierarch(&["tl", "compile", "a"]);
    assert_eq!(stdout(&o), "(Ex. (x=min & a(x)))");
    let o = hierarch(&["tl", "equiv", "0", "a@1", "a@1"]);
    assert_eq!(stdout(&o), "true");
    let o = hierarch(&["tl", "equiv", "1", "aa@0", "aaa@0", "--eta", "regex:(AA)*"]);
    assert_eq!(stdout(&o), "false");
    let o = hierarch(&["tl", "xi", "Bst a All"]);
    assert_eq!(stdout(&o), "F[Bst] (a & F[All] max)");
    let o = hierarch(&["tl", "from-fo2", "Ex. a(x)"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn env_and_automaton_files() {
    let dir = std::env::temp_dir().join(format!("hierarch-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let env = dir.join("env.json");
    std::fs::write(&env, r#"{"Even": "(AA)*", "Any": "A*"}"#).unwrap();
    let o = hierarch(&["tl", "eval", "F[Even] max", "ab@0", "--env", env.to_str().unwrap()]);
    assert_eq!(stdout(&o), "true");
    let dfa = dir.join("l.json");
    std::fs::write(&dfa, fixture("F3").unwrap().to_json()).unwrap();
    let o = hierarch(&["member", "--class", "fo2s:st", dfa.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    std::fs::remove_dir_all(dir).ok();
}
