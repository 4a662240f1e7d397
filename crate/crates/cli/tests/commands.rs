use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use vwspace::cnfspace::{check_concentration, Cnf};
use vwspace::graph::{is_expander, BipartiteGraph};
use vwspace::rational::rat;
use vwspace::Caps;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_vwspace"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const FEASIBLE: &str = "p cnf 12 5\n1 2 3 0\n-4 5 6 0\n7 -8 9 0\n10 11 -12 0\n1 5 9 0\n";

#[test]
fn gen_is_byte_identical_and_reparses() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.cnf");
    let b = dir.path().join("b.cnf");
    assert_eq!(code(&run(&["gen", "-n", "20", "-d", "6", "-s", "1", "-o", s(&a)])), 0);
    assert_eq!(code(&run(&["gen", "-n", "20", "-d", "6", "-s", "1", "-o", s(&b)])), 0);
    let ta = fs::read(&a).unwrap();
    assert_eq!(ta, fs::read(&b).unwrap());
    let phi = Cnf::parse_dimacs(&String::from_utf8(ta).unwrap()).unwrap();
    assert_eq!(phi, vwspace::cnfspace::gen_random_cnf(20, &rat(6, 1), 1).unwrap());
}

#[test]
fn gen_rejects_tiny_n() {
    assert_eq!(code(&run(&["gen", "-n", "2"])), 2);
}

#[test]
fn unknown_flag_is_usage_error() {
    assert_eq!(code(&run(&["gen", "--bogus"])), 2);
}

#[test]
fn provenance_header() {
    let o = run(&["--seed", "7", "hall", "gadget", "-n", "0"]);
    let first = stdout(&o).lines().next().unwrap().to_string();
    assert!(first.starts_with("# vwspace "), "{first}");
    assert!(first.contains("seed 7") && first.contains("config sha256:"), "{first}");
    let again = run(&["--seed", "7", "hall", "gadget", "-n", "0"]);
    assert_eq!(o.stdout, again.stdout);
}

#[test]
fn expander_star_and_duplicate() {
    let dir = tempfile::tempdir().unwrap();
    let star = write(dir.path(), "star.g", "p bigraph 1 3 3\ne 0 0\ne 0 1\ne 0 2\n");
    let o = run(&["expander", s(&star), "--s", "1"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("expander: yes"));
    let dup = write(dir.path(), "dup.g", "p bigraph 2 2 4\ne 0 0\ne 0 1\ne 1 0\ne 1 1\n");
    let o = run(&["expander", s(&dup), "--s", "2"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("witness: L 0 L 1"));
}

#[test]
fn expander_matches_library() {
    let dir = tempfile::tempdir().unwrap();
    let phi = vwspace::cnfspace::gen_random_cnf(14, &rat(6, 1), 3).unwrap();
    let g = vwspace::cnfspace::adjacency_graph(&phi);
    let p = write(dir.path(), "g.g", &g.to_text());
    let lib = is_expander(&g, 4, &rat(95, 48), &Caps::default()).unwrap();
    let o = run(&["expander", s(&p), "--s", "4"]);
    assert_eq!(code(&o) == 0, lib.holds);
}

#[test]
fn vwcover_found_and_none() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g.g", "p bigraph 2 2 4\ne 0 0\ne 0 1\ne 1 0\ne 1 1\n");
    let o = run(&["vwcover", s(&g), "--targets", "0"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("cover: found"));
    let o = run(&["vwcover", s(&g)]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("cover: none"));
}

#[test]
fn hall_gadget_sizes() {
    let o = run(&["hall", "gadget", "-n", "1"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("16 vertices, 10 edges"), "{}", stdout(&o));
}

#[test]
fn hall_verify_reports_zero() {
    let o = run(&["hall", "verify", "--max-left", "5", "--epsilon", "1/24"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    let line = out.lines().nth(1).unwrap();
    assert!(line.starts_with("0 counterexamples, ") && line.ends_with(" graphs checked"), "{line}");
}

#[test]
fn hall_counterexample_emits_witness() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("cx.hg");
    let o = run(&["hall", "counterexample", "--epsilon", "2/5", "-o", s(&out)]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.contains("full edge set coverable: no"));
    assert!(text.contains("every proper subset coverable: yes"));
    let h = vwspace::hall::Hypergraph::parse_text(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!((h.vertex_count(), h.edge_count()), (16, 10));
}

#[test]
fn hall_counterexample_needs_large_epsilon() {
    assert_eq!(code(&run(&["hall", "counterexample", "--epsilon", "1/24"])), 2);
}

#[test]
fn hall_audit_runs() {
    let dir = tempfile::tempdir().unwrap();
    let h = write(dir.path(), "h.hg", "p hgraph 4 2\nh 0 1 2\nh 2 3\n");
    let o = run(&["hall", "audit", s(&h)]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("total charge"));
}

#[test]
fn covergame_transcript_reverifies() {
    let dir = tempfile::tempdir().unwrap();
    let cnf = write(dir.path(), "f.cnf", FEASIBLE);
    let g = dir.path().join("f.g");
    assert_eq!(code(&run(&["graph", s(&cnf), "-o", s(&g)])), 0);
    let t = dir.path().join("t.txt");
    let o = run(&["--seed", "4", "covergame", "play", s(&g), "--mu", "2", "-o", s(&t)]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("mu: 2 (override)"));
    let o = run(&["covergame", "verify", s(&g), s(&t)]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("accepted"));
    let o = run(&["covergame", "verify", s(&g), s(&t), "--mu", "1"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn covergame_rejects_failing_hypotheses() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "dup.g", "p bigraph 2 3 6\ne 0 0\ne 0 1\ne 0 2\ne 1 0\ne 1 1\ne 1 2\n");
    let o = run(&["covergame", "play", s(&g)]);
    assert_eq!(code(&o), 1);
    let out = stdout(&o);
    assert!(out.contains("rejected: hypotheses not met") && out.contains("FAIL"), "{out}");
}

#[test]
fn covergame_exhaustive() {
    let dir = tempfile::tempdir().unwrap();
    let cnf = write(dir.path(), "f.cnf", FEASIBLE);
    let g = dir.path().join("f.g");
    run(&["graph", s(&cnf), "-o", s(&g)]);
    let o = run(&["covergame", "play", s(&g), "--mu", "2", "--adversary", "exhaustive"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("cover wins: yes"));
}

#[test]
fn covergame_interactive_echoes_f() {
    let dir = tempfile::tempdir().unwrap();
    let cnf = write(dir.path(), "f.cnf", FEASIBLE);
    let g = dir.path().join("f.g");
    run(&["graph", s(&cnf), "-o", s(&g)]);
    let mut child = bin()
        .args(["covergame", "play", s(&g), "--mu", "2", "--interactive"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"L 0\nR 11\nbogus\nremove 0\nquit\n").unwrap();
    let o = child.wait_with_output().unwrap();
    let out = stdout(&o);
    assert_eq!(code(&o), 0, "{out}");
    assert!(out.contains("F (1 components):"), "{out}");
    assert!(out.contains("F (2 components):"), "{out}");
    assert!(out.contains("rejected: "), "{out}");
    assert!(out.contains("transcript verified: yes"), "{out}");
}

#[test]
fn certify_and_tamper() {
    let dir = tempfile::tempdir().unwrap();
    let cnf = write(dir.path(), "f.cnf", FEASIBLE);
    let cert = dir.path().join("c.txt");
    let o = run(&["certify", s(&cnf), "-k", "2", "-o", s(&cert)]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("claimed: monomial space ≥ k/4"));
    let o = run(&["certify", s(&cnf), "--verify", s(&cert)]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("certificate         valid"));
    // drop one member bit string from the first table row with three members
    let text = fs::read_to_string(&cert).unwrap();
    let mut lines: Vec<String> = text.lines().map(str::to_string).collect();
    let row = lines
        .iter()
        .position(|l| l.starts_with("t ") && l.rsplit('|').next().unwrap().split_whitespace().count() == 3)
        .unwrap();
    let parts: Vec<&str> = lines[row].rsplitn(2, '|').collect();
    let bits: Vec<&str> = parts[0].split_whitespace().collect();
    lines[row] = format!("{}| {}", parts[1], bits[1..].join(" "));
    let bad = write(dir.path(), "bad.txt", &(lines.join("\n") + "\n"));
    let o = run(&["certify", s(&cnf), "--verify", s(&bad)]);
    assert_ne!(code(&o), 0, "{}", stdout(&o));
}

#[test]
fn certify_random_dense_is_rejected_with_items() {
    let dir = tempfile::tempdir().unwrap();
    let cnf = dir.path().join("r.cnf");
    run(&["gen", "-n", "12", "-d", "6", "-s", "0", "-o", s(&cnf)]);
    let o = run(&["certify", s(&cnf), "-k", "2"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("expansion       FAIL"));
}

#[test]
fn space_micro_refutation() {
    let dir = tempfile::tempdir().unwrap();
    let cnf = write(dir.path(), "x.cnf", "p cnf 1 2\n1 0\n-1 0\n");
    let tr = write(dir.path(), "r.tr", "A x1\nA ~x1\nI res 1 2 :\n");
    let o = run(&["space", s(&cnf), s(&tr)]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("max total space     2"));
    let a = run(&["space", s(&cnf), s(&tr), "--format", "csv"]);
    let b = run(&["space", s(&cnf), s(&tr), "--format", "csv"]);
    assert_eq!(a.stdout, b.stdout);
    let out = stdout(&a);
    assert_eq!(
        out.lines().nth(1).unwrap(),
        "steps,refuted,error_step,max_total_space,max_clause_count,max_width,max_monomial_space,wide_clause_metric,reductions"
    );
}

#[test]
fn space_parse_error_has_line() {
    let dir = tempfile::tempdir().unwrap();
    let cnf = write(dir.path(), "x.cnf", "p cnf 1 2\n1 0\n-1 0\n");
    let tr = write(dir.path(), "bad.tr", "A x1\nQ 1\n");
    let o = run(&["space", s(&cnf), s(&tr)]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}

#[test]
fn space_pcr_over_gf2() {
    let dir = tempfile::tempdir().unwrap();
    let cnf = write(dir.path(), "x.cnf", "p cnf 1 2\n1 0\n-1 0\n");
    // tr(x1) = ~x1, tr(~x1) = x1
    let tr = write(
        dir.path(),
        "p.tr",
        "A ~x1\nA x1\nA x1 + ~x1 - 1\nI lin 3 1 1 -1 : x1 - 1\nI lin 4 2 1 -1 : -1\n",
    );
    let o = run(&["space", s(&cnf), s(&tr), "--system", "pcr", "--field", "gf2"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let o = run(&["space", s(&cnf), s(&tr), "--system", "pcr"]);
    assert_eq!(code(&o), 1, "over Q the last step does not reach 1");
}

#[test]
fn stats_table_and_verdict() {
    let dir = tempfile::tempdir().unwrap();
    let text = "p cnf 4 2\n1 2 3 0\n1 -2 4 0\n";
    let cnf = write(dir.path(), "t.cnf", text);
    let o = run(&["stats", s(&cnf), "--format", "csv"]);
    let out = stdout(&o);
    assert!(out.contains("d,s_d\n1,4\n2,2\n"), "{out}");
    let phi = Cnf::parse_dimacs(text).unwrap();
    let lib = check_concentration(&phi, &rat(1, 24), &rat(1, 1));
    assert_eq!(code(&o) == 0, lib.is_some());
}

#[test]
fn caps_flag_is_honoured() {
    let dir = tempfile::tempdir().unwrap();
    let nb = (0..6).map(|i| vec![i, i + 1, i + 2]).collect();
    let g = BipartiteGraph::from_neighborhoods(8, nb).unwrap();
    let p = write(dir.path(), "g.g", &g.to_text());
    let o = run(&["--caps", "expander_size=2", "expander", s(&p), "--s", "6"]);
    assert_eq!(code(&o), 3);
    assert_eq!(code(&run(&["--caps", "nonsense=1", "expander", s(&p), "--s", "6"])), 2);
}
