use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_inertia-lab")).args(args).output().expect("binary runs")
}

#[test]
fn json_output_is_deterministic() {
    let args = ["--format", "json", "realize-odd", "--p", "2", "--group", r#"{"kind":"perm","degree":7,"generators":[[1,2,3,4,5,6,0],[0,2,4,6,1,3,5]]}"#, "--inertia", "[[1,2,3,4,5,6,0]]"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["realize-abelian", "--p", "5", "--g", "4", "--i", "4"]).status.code(), Some(0));
    assert_eq!(run(&["realize-abelian", "--p", "5", "--g", "8", "--i", "8"]).status.code(), Some(1));
    assert_eq!(run(&["gl2-candidates", "--p", "15"]).status.code(), Some(2));
    assert_eq!(run(&["no-such-verb"]).status.code(), Some(2));
    assert_eq!(run(&["verify-example-6-2"]).status.code(), Some(0));
}

#[test]
fn emitted_witnesses_reverify() {
    let dir = std::env::temp_dir().join(format!("inertia-lab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cases: [&[&str]; 3] = [
        &["--format", "json", "curve-construct", "--p", "17", "--reduction", "supersingular"],
        &["--format", "json", "curve-construct", "--p", "17", "--reduction", "ordinary", "--diagonal", "false"],
        &["--format", "json", "realize-abelian", "--p", "7", "--g", "6,7", "--i", "6"],
    ];
    for (k, args) in cases.iter().enumerate() {
        let out = run(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        let path = dir.join(format!("w{k}.json"));
        std::fs::write(&path, &out.stdout).unwrap();
        let check = run(&["--verify-witness", path.to_str().unwrap()]);
        assert_eq!(check.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&check.stdout));
        // a corrupted copy is rejected
        let text = String::from_utf8(out.stdout).unwrap();
        let broken = text.replacen("\"17\"", "\"19\"", 1).replacen(": 17,", ": 19,", 1).replacen(": 7,", ": 11,", 1);
        std::fs::write(&path, broken).unwrap();
        assert_ne!(run(&["--verify-witness", path.to_str().unwrap()]).status.code(), Some(0), "{args:?}");
    }
    std::fs::remove_dir_all(&dir).ok();
}
