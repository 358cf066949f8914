use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use scdes::parse;
use scdes_core::scenario::build_supervisor;
use scdes_core::{bounded_language, EventId};

fn scdes(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_scdes")).args(args).output().unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = scdes(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn emit_matches_golden_files() {
    let dir = tempfile::tempdir().unwrap();
    ok(&["scenario", "emit", "--dir", p(dir.path())]);
    let mut emitted: Vec<_> = fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    emitted.sort();
    assert_eq!(emitted.len(), 16);
    for name in emitted {
        let ours = fs::read(dir.path().join(&name)).unwrap();
        let golden = fs::read(golden_dir().join(&name)).unwrap();
        assert!(ours == golden, "{name:?} differs from the golden copy");
    }
}

#[test]
fn file_pipeline_matches_in_memory_build() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    ok(&["scenario", "emit", "--dir", p(d)]);

    let plant = d.join("plant2.aut");
    ok(&["sync", p(&d.join("m1.aut")), p(&d.join("m2.aut")), p(&d.join("m3.aut")), "-o", p(&plant)]);
    let info = ok(&["info", p(&plant)]);
    assert!(info.contains("states: 60\n"), "{info}");
    assert!(info.contains("transitions: 254\n"), "{info}");

    // lift every requirement to the plant alphabet and intersect them
    let plant_g = parse(&fs::read_to_string(&plant).unwrap()).unwrap();
    let rules = ["spec1", "spec2", "spec3", "spec4", "spec5", "spec6", "spec7a", "spec7b", "spec8"];
    let mut acc: Option<PathBuf> = None;
    for rule in rules {
        let src = d.join(format!("{rule}.aut"));
        let spec = parse(&fs::read_to_string(&src).unwrap()).unwrap();
        let extra: Vec<String> = plant_g
            .alphabet()
            .iter()
            .filter(|e| !spec.alphabet().contains(e.id))
            .map(|e| format!("{}:{}", e.id, if e.controllable { 'c' } else { 'u' }))
            .collect();
        let lifted = d.join(format!("{rule}.lifted.aut"));
        ok(&["selfloop", p(&src), "--events", &extra.join(","), "-o", p(&lifted)]);
        acc = Some(match acc {
            None => lifted,
            Some(prev) => {
                let out = d.join(format!("e_{rule}.aut"));
                ok(&["meet", p(&prev), p(&lifted), "-o", p(&out)]);
                out
            }
        });
    }
    let spec = acc.unwrap();

    let sup = d.join("sup.aut");
    let table = d.join("sup.condat");
    ok(&["supcon", p(&plant), p(&spec), "-o", p(&sup), "--condat", p(&table)]);
    assert!(ok(&["info", p(&sup)]).contains("nonblocking: yes"));
    assert!(ok(&["controllable", p(&plant), p(&sup)]).contains("controllable: yes"));

    let from_files = parse(&fs::read_to_string(&sup).unwrap()).unwrap();
    let (in_memory, _) = build_supervisor().unwrap();
    for k in 0..=8 {
        assert_eq!(
            bounded_language(&from_files, k).unwrap(),
            bounded_language(&in_memory, k).unwrap(),
            "k = {k}"
        );
    }

    // the pipeline's supervisor drives the simulator like the golden one
    let trace = d.join("trace.txt");
    ok(&["simulate", "--supervisor", p(&sup), "--condat", p(&table), "--trace", p(&trace)]);
    let text = fs::read_to_string(&trace).unwrap();
    let events: Vec<&str> = text
        .lines()
        .filter(|l| l.as_bytes()[0].is_ascii_digit())
        .map(|l| l.split(' ').nth(1).unwrap())
        .collect();
    assert_eq!(events, ["1", "3", "5", "19", "7", "21", "9", "11", "13"]);
}

#[test]
fn seeded_simulation_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let g = golden_dir();
    let (sup, table) = (g.join("supervisor.aut"), g.join("supervisor.condat"));
    let run = |file: &str| {
        let out = dir.path().join(file);
        let summary = ok(&[
            "simulate", "--supervisor", p(&sup), "--condat", p(&table), "--seed", "7",
            "--fail-0", "0.2", "--fail-2", "0.2", "--fail-4", "0.2", "--max-steps", "500",
            "--trace", p(&out),
        ]);
        assert!(summary.contains("delivered: true"));
        fs::read(out).unwrap()
    };
    let a = run("a.txt");
    let b = run("b.txt");
    assert_eq!(a, b);
    assert_eq!(a, fs::read(g.join("trace_seed7.txt")).unwrap());

    let stdout = ok(&["simulate", "--supervisor", p(&sup), "--condat", p(&table)]);
    assert_eq!(stdout, fs::read_to_string(g.join("trace_nominal.txt")).unwrap());
}

#[test]
fn drop_limited_run() {
    let g = golden_dir();
    let out = ok(&[
        "simulate", "--supervisor", p(&g.join("supervisor.aut")), "--condat",
        p(&g.join("supervisor.condat")), "--fail-2", "1", "--max-injections", "1",
    ]);
    let events: Vec<u32> = out
        .lines()
        .filter(|l| l.as_bytes()[0].is_ascii_digit())
        .map(|l| l.split(' ').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(events, [1, 3, 5, 19, 2, 15, 1, 3, 5, 19, 7, 21, 9, 11, 13]);
}

#[test]
fn dot_subcommand() {
    let dot = ok(&["dot", p(&golden_dir().join("m1.aut"))]);
    assert!(dot.starts_with("digraph \"m1\" {"));
    assert_eq!(dot.lines().filter(|l| l.contains(" -> ") && !l.contains("init")).count(), 6);
}

const BLOCKING: &str = "automaton b\nstates 3\ninitial 0\nmarked 0\n\
                        event 0 u\nevent 1 c\ntrans 0 1 1\ntrans 1 0 2\n";

#[test]
fn verdicts_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let plant = dir.path().join("b.aut");
    fs::write(&plant, BLOCKING).unwrap();
    let out = scdes(&["info", p(&plant)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("nonblocking: no (state 1"));

    let cand = dir.path().join("k.aut");
    fs::write(&cand, "automaton k\nstates 2\ninitial 0\nmarked 0\nevent 0 u\nevent 1 c\ntrans 0 1 1\n").unwrap();
    let out = scdes(&["controllable", p(&plant), p(&cand)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("witness: 1 then 0"));

    // every string through the plant is forced out by event 0
    let spec = dir.path().join("e.aut");
    fs::write(&spec, "automaton e\nstates 1\ninitial 0\nmarked\nevent 0 u\nevent 1 c\ntrans 0 1 0\n").unwrap();
    let sup = dir.path().join("s.aut");
    let out = scdes(&["supcon", p(&plant), p(&spec), "-o", p(&sup)]);
    assert_eq!(out.status.code(), Some(1));
    let written = parse(&fs::read_to_string(&sup).unwrap()).unwrap();
    assert!(written.is_empty());
}

#[test]
fn tool_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.aut");
    fs::write(&bad, "automaton t\nstates 2\ninitial 0\nmarked 0\ntrans 0 9 1\ntrans 1 9 0\n").unwrap();
    let out = scdes(&["info", p(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 5"), "{err}");
    assert!(out.stdout.is_empty());

    let info = ok(&["--implicit-events", "info", p(&bad)]);
    assert!(info.contains("events: 1 (1 controllable, 0 uncontrollable)"));

    for args in [
        &["frobnicate"][..],
        &["info"],
        &["info", "/nonexistent/x.aut"],
        &["selfloop", p(&bad), "--events", "3:z"],
        &["simulate", "--supervisor", p(&bad), "--condat", "/nonexistent"],
    ] {
        assert_eq!(scdes(args).status.code(), Some(2), "{args:?}");
    }

    let g = golden_dir();
    let out = scdes(&[
        "simulate", "--supervisor", p(&g.join("supervisor.aut")), "--condat",
        p(&g.join("supervisor.condat")), "--fail-0", "1.5",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let out = scdes(&[
        "simulate", "--supervisor", p(&g.join("m1.aut")), "--condat", p(&g.join("supervisor.condat")),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn selfloop_and_trim_subcommands() {
    let dir = tempfile::tempdir().unwrap();
    let plant = dir.path().join("b.aut");
    fs::write(&plant, BLOCKING).unwrap();
    let trimmed = parse(&ok(&["trim", p(&plant)])).unwrap();
    assert_eq!(trimmed.state_count(), 1);
    let looped = parse(&ok(&["selfloop", p(&plant), "--events", "3,4:c"])).unwrap();
    assert_eq!(looped.transition_count(), 2 + 3 * 2);
    assert_eq!(looped.alphabet().is_controllable(EventId(4)), Some(true));
    assert_eq!(looped.alphabet().is_controllable(EventId(3)), Some(true));
    assert_eq!(scdes(&["selfloop", p(&plant), "--events", "1"]).status.code(), Some(2));
}
