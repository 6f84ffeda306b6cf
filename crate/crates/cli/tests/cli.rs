use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn zacyclic(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zacyclic")).args(args).current_dir(dir).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn models_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../models")
}

#[test]
fn build_writes_complex_files() {
    let tmp = TempDir::new().unwrap();
    let o = zacyclic(&["build", "complex23", "-o", "c23"], tmp.path());
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "f-vector: 23 76 54");
    let text = fs::read_to_string(tmp.path().join("c23")).unwrap();
    assert!(text.starts_with("vertices: A B C"));
    assert_eq!(text.lines().filter(|l| l.starts_with("facet:")).count(), 54);

    let o = zacyclic(&["build", "shaded", "-o", "shaded"], tmp.path());
    assert_eq!(stdout(&o).trim(), "f-vector: 22 54 30");
}

#[test]
fn unknown_construction_is_a_usage_error() {
    let tmp = TempDir::new().unwrap();
    let o = zacyclic(&["build", "nosuch"], tmp.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("nosuch"));
    assert_eq!(zacyclic(&["frobnicate"], tmp.path()).status.code(), Some(2));
}

#[test]
fn analyze_reports_verdicts_as_data() {
    let tmp = TempDir::new().unwrap();
    let o = zacyclic(&["analyze", "complex23", "homology"], tmp.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("Z-acyclic: true"));

    let o = zacyclic(&["analyze", "complex23", "pi1"], tmp.path());
    let out = stdout(&o);
    assert!(out.contains("abelianization: 0"), "{out}");
    assert!(out.contains("A5 epimorphism: found"), "{out}");
    assert!(out.contains("order: 120"), "{out}");

    let o = zacyclic(&["analyze", "dunce-hat", "collapse"], tmp.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("free faces: 0; collapsed: false"));

    let o = zacyclic(&["analyze", "cone-K33", "collapse"], tmp.path());
    assert!(stdout(&o).contains("collapsed: true"));
}

#[test]
fn analyze_files_and_parse_errors() {
    let tmp = TempDir::new().unwrap();
    fs::write(tmp.path().join("circle"), "vertices: a b c\nfacet: a b\nfacet: b c\nfacet: a c\n").unwrap();
    let o = zacyclic(&["analyze", "circle", "homology"], tmp.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("reduced H1: Z\n"));
    assert!(stdout(&o).contains("Z-acyclic: false"));

    fs::write(tmp.path().join("broken"), "vertices: a b\nfacet: a z\n").unwrap();
    let o = zacyclic(&["analyze", "broken", "homology"], tmp.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}

#[test]
fn verify_stored_model_and_mutations() {
    let tmp = TempDir::new().unwrap();
    let models = models_dir();
    zacyclic(&["build", "shaded", "-o", "shaded"], tmp.path());
    zacyclic(&["build", "complex23", "-o", "c23"], tmp.path());

    let r3 = models.join("shaded-r3");
    let o = zacyclic(&["verify", "shaded", r3.to_str().unwrap()], tmp.path());
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("verdict: pass"));
    assert!(stdout(&o).contains("pairs checked: 5565"));

    let r4 = models.join("full-r4");
    let o = zacyclic(&["verify", "c23", r4.to_str().unwrap()], tmp.path());
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("dim: 4"));

    // swapping two coordinates of one vertex forces a crossing
    let text = fs::read_to_string(&r3).unwrap();
    let mutated: Vec<String> = text
        .lines()
        .map(|l| match l.strip_prefix("G: ") {
            Some(rest) => {
                let c: Vec<&str> = rest.split_whitespace().collect();
                format!("G: {} {} {}", c[2], c[1], c[0])
            }
            None => l.to_string(),
        })
        .collect();
    fs::write(tmp.path().join("mutated"), mutated.join("\n")).unwrap();
    let o = zacyclic(&["verify", "shaded", "mutated"], tmp.path());
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    assert!(stdout(&o).contains("verdict: fail"));

    let partial: Vec<&str> = text.lines().filter(|l| !l.starts_with("W:")).collect();
    fs::write(tmp.path().join("partial"), partial.join("\n")).unwrap();
    assert_eq!(zacyclic(&["verify", "shaded", "partial"], tmp.path()).status.code(), Some(2));
}

#[test]
fn search_finds_a_certified_model() {
    let tmp = TempDir::new().unwrap();
    let o = zacyclic(&["search", "shaded", "--box", "2", "-o", "found", "--off", "found.off"], tmp.path());
    assert_eq!(o.status.code(), Some(0));
    let off = fs::read_to_string(tmp.path().join("found.off")).unwrap();
    assert!(off.starts_with("OFF\n22 30 54\n"));
    let o = zacyclic(&["verify", "shaded", "found"], tmp.path());
    assert_eq!(o.status.code(), Some(0));

    let o = zacyclic(&["search", "shaded", "--box", "1"], tmp.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("no realization found"));
}

#[test]
fn link_of_hopf_and_split_curves() {
    let tmp = TempDir::new().unwrap();
    let write = |name: &str, text: &str| fs::write(tmp.path().join(name), text).unwrap();
    write("ring", "dim: 3\na: 2 0 0\nb: 0 2 0\nc: -2 0 0\nd: 0 -2 0\n");
    write("hook", "dim: 3\np: 0 1 1\nq: 0 1 -1\nr: 4 1 1\n");
    write("far", "dim: 3\np: 10 1 1\nq: 10 1 -1\nr: 14 1 1\n");
    write("touch", "dim: 3\np: 2 0 1\nq: 2 0 -1\nr: 5 0 0\n");
    let o = zacyclic(&["link", "ring", "hook"], tmp.path());
    assert_eq!(o.status.code(), Some(0));
    let lk: i64 = stdout(&o).trim().strip_prefix("linking number: ").unwrap().parse().unwrap();
    assert_eq!(lk.abs(), 1);
    assert_eq!(stdout(&zacyclic(&["link", "ring", "far"], tmp.path())).trim(), "linking number: 0");
    assert_eq!(zacyclic(&["link", "ring", "touch"], tmp.path()).status.code(), Some(1));
    write("flat", "dim: 2\na: 0 0\nb: 1 0\nc: 0 1\n");
    assert_eq!(zacyclic(&["link", "ring", "flat"], tmp.path()).status.code(), Some(2));
}

#[test]
fn report_is_reproducible_and_reverifiable() {
    let tmp = TempDir::new().unwrap();
    let models = models_dir();
    let models = models.to_str().unwrap();
    let a = zacyclic(&["report", "--models", models, "-o", "a.txt", "--emit", "out"], tmp.path());
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    let b = zacyclic(&["report", "--models", models, "-o", "b.txt"], tmp.path());
    assert_eq!(b.status.code(), Some(0));
    let report = fs::read_to_string(tmp.path().join("a.txt")).unwrap();
    assert_eq!(report, fs::read_to_string(tmp.path().join("b.txt")).unwrap());
    for expected in [
        "f-vector: 23 76 54\n",
        "acyclic: true\n",
        "  order: 120\n",
        "  source: stored model shaded-r3\n",
        "  equivariant: true\n",
        "  verdict: pass\n",
        "  apex: A at (0, 0, 0, 1)\n",
        "status: complete\n",
    ] {
        assert!(report.contains(expected), "missing {expected:?} in\n{report}");
    }
    assert!(report.contains("  a5 epimorphism: ("));
    assert!(report.contains("  shaded-r3: sha256:"));

    let out = tmp.path().join("out");
    for (complex, model) in [("shaded", "shaded-r3"), ("complex23", "full-r4")] {
        let o = zacyclic(&["verify", out.join(complex).to_str().unwrap(), out.join(model).to_str().unwrap()], tmp.path());
        assert_eq!(o.status.code(), Some(0), "{model}");
    }
}

#[test]
fn report_flags_a_failed_embedding_stage() {
    let tmp = TempDir::new().unwrap();
    let o = zacyclic(&["report", "--box", "0"], tmp.path());
    assert_eq!(o.status.code(), Some(1));
    let report = stdout(&o);
    assert!(report.contains("  verdict: no realization found\n"), "{report}");
    assert!(report.contains("status: incomplete (embedding failed)\n"), "{report}");
    assert!(report.contains("acyclic: true\n"));
}
