use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn ppm(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ppm"))
        .current_dir(dir)
        .env_remove("PPM_CENSUS_TIMEOUT_MS")
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn gen_then_analyze_petersen() {
    let dir = tempfile::tempdir().unwrap();
    let o = ppm(dir.path(), &["gen", "--family", "petersen", "--out", "p.g6"]);
    assert!(o.status.success());
    assert_eq!(fs::read_to_string(dir.path().join("p.ppm")).unwrap().lines().count(), 4);
    let o = ppm(dir.path(), &["analyze", "--graph", "p.g6", "--ppm", "p.ppm"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("planarizing; CCD found; CDC verified (5 cycles)"));
}

#[test]
fn analyze_without_ppm_finds_one() {
    let dir = tempfile::tempdir().unwrap();
    ppm(dir.path(), &["gen", "--family", "flower", "--k", "5", "--out", "j5.g6"]);
    let o = ppm(dir.path(), &["analyze", "--graph", "j5.g6"]);
    assert!(o.status.success());
    assert!(stdout(&o).lines().last().unwrap().starts_with("planarizing"));
}

#[test]
fn gen_needs_family_parameters() {
    let dir = tempfile::tempdir().unwrap();
    let o = ppm(dir.path(), &["gen", "--family", "goldberg", "--out", "g.g6"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn construct_emits_star_ppm_and_cover() {
    let dir = tempfile::tempdir().unwrap();
    ppm(dir.path(), &["gen", "--family", "petersen", "--out", "p.g6"]);
    let o = ppm(
        dir.path(),
        &[
            "construct", "--input", "p.g6", "--ppm", "p.ppm", "--emit-star", "s.g6", "--emit-ppm", "s.ppm",
            "--emit-cdc", "s.cyc",
        ],
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    let k: usize = out.split_whitespace().next().unwrap().parse().unwrap();
    assert!(k >= 2);
    assert!(out.contains(&format!("{} vertices", 10 + 8 * k)), "{out}");
    let o = ppm(dir.path(), &["analyze", "--graph", "s.g6", "--ppm", "s.ppm"]);
    assert!(stdout(&o).contains("snark: yes"));
    assert!(stdout(&o).lines().last().unwrap().starts_with("planarizing"));
    let cycles = fs::read_to_string(dir.path().join("s.cyc")).unwrap();
    assert_eq!(cycles.lines().count(), 5 + k);
}

#[test]
fn census_exit_codes_and_outputs() {
    let dir = tempfile::tempdir().unwrap();
    ppm(dir.path(), &["gen", "--family", "petersen", "--out", "p.g6"]);
    ppm(dir.path(), &["gen", "--family", "blanusa", "--n", "2", "--j", "1", "--out", "b1.g6"]);
    ppm(dir.path(), &["gen", "--family", "blanusa", "--n", "2", "--j", "2", "--out", "b2.g6"]);
    let all: String = ["p.g6", "b1.g6", "b2.g6"].iter().map(|f| fs::read_to_string(dir.path().join(f)).unwrap()).collect();
    fs::write(dir.path().join("all.g6"), all).unwrap();

    let o = ppm(dir.path(), &["census", "--input", "all.g6", "--workers", "2", "--out", "r.tsv", "--details", "det"]);
    assert_eq!(o.status.code(), Some(0));
    let report = fs::read_to_string(dir.path().join("r.tsv")).unwrap();
    assert_eq!(
        report,
        "n\ts\tno_planarizing_pm\tno_planarizing_ppm\tno_k5_free_pm\tno_k5_free_ppm\n10\t1\t1\t0\t1\t0\n18\t2\t1\t0\t1\t0\n"
    );
    assert!(String::from_utf8_lossy(&o.stderr).contains("girth >= 5"));
    assert_eq!(fs::read_to_string(dir.path().join("det/order_18.tsv")).unwrap().lines().count(), 3);

    let again = ppm(dir.path(), &["census", "--input", "all.g6", "--out", "r2.tsv"]);
    assert!(again.status.success());
    assert_eq!(fs::read(dir.path().join("r2.tsv")).unwrap(), report.as_bytes());

    let o = Command::new(env!("CARGO_BIN_EXE_ppm"))
        .current_dir(dir.path())
        .env("PPM_CENSUS_TIMEOUT_MS", "0")
        .args(["census", "--input", "all.g6"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));

    fs::write(dir.path().join("bad.g6"), "IheA@GUAo\n~~\n").unwrap();
    let o = ppm(dir.path(), &["census", "--input", "bad.g6"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}

#[test]
fn empty_census_succeeds() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("e.g6"), "").unwrap();
    let o = ppm(dir.path(), &["census", "--input", "e.g6"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 1);
}
