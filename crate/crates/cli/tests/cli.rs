use std::path::PathBuf;
use std::process::{Command, Output};

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../corpus")
        .join(name)
}

fn decomp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_decomp"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn path(p: &PathBuf) -> &str {
    p.to_str().unwrap()
}

#[test]
fn check_exit_codes() {
    let d12 = corpus("d12.poset");
    let o = decomp(&["check", "segal", path(&d12)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("PASS"));

    let o = decomp(&["check", "segal", path(&corpus("spine.sset"))]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));

    let o = decomp(&["check", "decomp", path(&corpus("broken.sset"))]);
    assert_eq!(o.status.code(), Some(2));

    assert_eq!(
        decomp(&["check", "decomp", path(&corpus("naturals6.monoid"))])
            .status
            .code(),
        Some(0)
    );
}

#[test]
fn mobius_table() {
    let o = decomp(&["mobius", path(&corpus("d30.poset")), "--arrow", "1-30"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "1-30\t-1/1");

    let o = decomp(&["mobius", path(&corpus("naturals6.monoid"))]);
    let rows: Vec<String> = stdout(&o).lines().map(str::to_string).collect();
    assert!(rows.contains(&"1\t-1/1".to_string()));
    assert!(rows.contains(&"2\t0/1".to_string()));
}

#[test]
fn coalgebra_table_rows() {
    let o = decomp(&["coalg-table", path(&corpus("chain3.poset"))]);
    assert_eq!(o.status.code(), Some(0));
    for line in stdout(&o).lines() {
        let cols: Vec<&str> = line.split('\t').collect();
        assert_eq!(cols.len(), 4, "{line}");
        assert!(cols[3].parse::<usize>().unwrap() > 0);
    }
}

#[test]
fn nerve_dec_interval_and_registry() {
    let dir = tempfile::tempdir().unwrap();
    let nerve = dir.path().join("d12.sset");
    assert!(
        decomp(&["nerve", path(&corpus("d12.poset")), "-o", path(&nerve)])
            .status
            .success()
    );
    assert!(decomp(&["check", "mobius", path(&nerve)]).status.success());

    let dec = dir.path().join("dec.sset");
    assert!(decomp(&["dec", "bot", path(&nerve), "-o", path(&dec)])
        .status
        .success());
    assert!(decomp(&["check", "decomp", path(&dec)]).status.success());

    let iv = dir.path().join("i.xiset");
    assert!(
        decomp(&["interval", path(&nerve), "--arrow", "1-12", "-o", path(&iv)])
            .status
            .success()
    );
    assert!(decomp(&["check", "flanked", path(&iv)]).status.success());

    let reg = dir.path().join("reg");
    std::fs::create_dir(&reg).unwrap();
    assert!(
        decomp(&["registry", "add", path(&reg), path(&corpus("d12.poset"))])
            .status
            .success()
    );
    assert!(decomp(&["registry", "close", path(&reg)]).status.success());
    let list = stdout(&decomp(&["registry", "list", path(&reg)]));
    assert!(list.lines().count() >= 3);
    assert!(list.lines().all(|l| l.split('\t').count() == 4));

    let o = decomp(&["classify", path(&nerve), "--registry", path(&reg)]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    assert!(stdout(&o).contains("I_triv"));
}

#[test]
fn missing_file_is_an_error() {
    let o = decomp(&["check", "segal", "/nonexistent.sset"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
}
