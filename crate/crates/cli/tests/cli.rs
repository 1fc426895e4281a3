use std::path::Path;
use std::process::{Command, Output};

fn profdiff(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_profdiff"))
        .args(args)
        .current_dir(dir)
        .env_remove("PROFDIFF_ARITY_BOUND")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn builtin_point_is_a_short_document() {
    let dir = tempfile::tempdir().unwrap();
    let o = profdiff(&["cat", "build", "one"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 5, "{text}");

    std::fs::write(dir.path().join("one.toml"), &text).unwrap();
    let again = profdiff(&["cat", "build", "one.toml"], dir.path());
    assert_eq!(stdout(&again), text);
}

#[test]
fn malformed_category_exits_2_and_names_the_entry() {
    let dir = tempfile::tempdir().unwrap();
    let bad = "format_version = 1\nkind = \"category\"\nobjects = [\"x\", \"y\"]\n\
               morphisms = [[\"id_x\", 0, 0], [\"id_y\", 1, 1], [\"f\", 0, 1]]\n\
               identities = [0, 1]\ncompose = [[2, 2, 2]]\n";
    std::fs::write(dir.path().join("bad.toml"), bad).unwrap();
    let o = profdiff(&["cat", "show", "bad.toml"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("(2,2)"), "{}", stderr(&o));
}

#[test]
fn usage_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(profdiff(&["prof"], dir.path()).status.code(), Some(2));
    assert_eq!(profdiff(&["struct", "nonsense", "-c", "one"], dir.path()).status.code(), Some(2));
    assert_eq!(profdiff(&["struct", "dereliction"], dir.path()).status.code(), Some(2));
    assert_eq!(profdiff(&["laws", "run", "--suite", "nope"], dir.path()).status.code(), Some(2));
}

#[test]
fn iso_check_of_a_map_with_itself() {
    let dir = tempfile::tempdir().unwrap();
    let o = profdiff(&["struct", "contraction", "-c", "bz2", "--arity-bound", "2", "--out", "c.toml"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = profdiff(&["prof", "iso-check", "c.toml", "c.toml"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("identity witness"), "{}", stdout(&o));
}

#[test]
fn compose_sum_and_a_failed_iso() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    for (name, file) in [("dereliction", "d.toml"), ("codereliction", "dbar.toml")] {
        let o = profdiff(&["struct", name, "-c", "walking_arrow", "--out", file], p);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    }
    // d ∘ d̄ is the hom of A
    let o = profdiff(&["prof", "compose", "d.toml", "dbar.toml", "--out", "dd.toml"], p);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = profdiff(&["prof", "show", "dd.toml"], p);
    assert!(stdout(&o).contains("3 elements"), "{}", stdout(&o));

    let o = profdiff(&["prof", "sum", "dd.toml", "dd.toml", "--out", "twice.toml"], p);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = profdiff(&["prof", "iso-check", "dd.toml", "twice.toml"], p);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("not isomorphic"));

    // d̄ ∘ d is not composable the wrong way round with a mismatched middle
    let o = profdiff(&["prof", "compose", "d.toml", "d.toml"], p);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn species_commands() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    let e = "format_version = 1\nkind = \"species\"\nlevels = [{ size = 1 }, { size = 1 }, { size = 1 }, { size = 1 }, { size = 1 }]\n";
    std::fs::write(p.join("E.species"), e).unwrap();
    let o = profdiff(&["species", "egf", "E.species", "--arity-bound", "4"], p);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o).trim(), "1, 1, 1/2, 1/6, 1/24");

    let o = profdiff(&["species", "derive", "E.species", "--arity-bound", "4", "--out", "dE.species"], p);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = profdiff(&["species", "egf", "dE.species"], p);
    assert_eq!(stdout(&o).trim(), "1, 1, 1/2, 1/6");

    let o = profdiff(&["species", "product", "X", "X"], p);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    std::fs::write(p.join("xx.species"), stdout(&o)).unwrap();
    let o = profdiff(&["species", "egf", "xx.species"], p);
    assert_eq!(stdout(&o).trim(), "0, 0, 1, 0");

    // E ∘ E₂ at arity 2 counts one structure
    let o = profdiff(&["species", "compose", "E", "E2", "--out", "ee.species"], p);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = profdiff(&["species", "egf", "ee.species"], p);
    assert_eq!(stdout(&o).trim(), "1, 0, 1/2, 0");
}

#[test]
fn kleisli_commands() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    let o = profdiff(&["catsym", "id", "-c", "one", "--out", "id.toml"], p);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = profdiff(&["catsym", "compose", "id.toml", "id.toml", "--out", "idid.toml"], p);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = profdiff(&["prof", "iso-check", "id.toml", "idid.toml"], p);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = profdiff(&["catsym", "derive", "id.toml"], p);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("kind = \"symseq\""));
}

#[test]
fn analytic_eval_of_the_identity() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    let o = profdiff(&["catsym", "id", "-c", "walking_arrow", "--out", "id.toml"], p);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let x = "format_version = 1\nkind = \"presheaf\"\nbase = { builtin = \"walking_arrow\" }\nsizes = [2, 3]\n\
             restrict = [{ mor = [0, 1, 0], table = [0, 1, 1] }]\n";
    std::fs::write(p.join("x.toml"), x).unwrap();
    let o = profdiff(&["analytic", "eval", "id.toml", "x.toml"], p);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("sizes = [2, 3]"), "{}", stdout(&o));
}

#[test]
fn law_runs_report_through_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    let o = profdiff(&["laws", "run", "--suite", "first_constraint", "--arity-bound", "2", "--out", "r.toml"], p);
    assert_eq!(o.status.code(), Some(0), "{}{}", stdout(&o), stderr(&o));
    let report = std::fs::read_to_string(p.join("r.toml")).unwrap();
    assert!(report.contains("kind = \"report\""));

    let o = profdiff(&["laws", "run", "--suite", "bialgebra", "--arity-bound", "2", "--mutate", "contraction:one:1"], p);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    assert!(stdout(&o).contains("failed:"));

    let o = profdiff(&["laws", "run", "--suite", "empty"], p);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn bound_comes_from_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_profdiff"))
        .args(["species", "egf", "E"])
        .env("PROFDIFF_ARITY_BOUND", "2")
        .current_dir(dir.path())
        .output()
        .unwrap();
    assert_eq!(stdout(&o).trim(), "1, 1, 1/2");
}
