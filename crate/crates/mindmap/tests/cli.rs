//! End-to-end runs of the `mindmap` binary.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use mindmap::state::StateDump;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn mindmap(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_mindmap"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const FIRST_QUERY: &str = "select sub-concepts, concepts from mind-map with depth=1 where concept = \"Malcolm\"";

#[test]
fn batch_and_repl_agree() {
    let actors = fixture("malcolm_actors.tsv");
    let input = fixture("malcolm.conllu");
    let args = ["--actors", s(&actors), "query", FIRST_QUERY, "-i", s(&input)];
    let batch = mindmap(&args, None);
    assert!(batch.status.success(), "{}", String::from_utf8_lossy(&batch.stderr));
    assert_eq!(
        stdout(&batch),
        "sub-concepts (1)\n  side of garden / other\nconcepts (3)\n  Malcolm\n  bone\n  side of garden\n"
    );
    let repl = mindmap(&["--actors", s(&actors), "repl", "-i", s(&input)], Some(&format!("{FIRST_QUERY}\n.quit\n")));
    assert!(repl.status.success());
    assert_eq!(stdout(&repl), stdout(&batch));

    let json = mindmap(&["--actors", s(&actors), "query", FIRST_QUERY, "-i", s(&input), "--json"], None);
    let v: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(v["concepts"], serde_json::json!(["Malcolm", "bone", "side of garden"]));
}

#[test]
fn repl_summary_and_quit() {
    let actors = fixture("malcolm_actors.tsv");
    let input = fixture("malcolm.conllu");
    let out = mindmap(
        &["--actors", s(&actors), "repl", "-i", s(&input)],
        Some(".summary Malcolm\n.quit\nselect concepts from mind-map\n"),
    );
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "Malcolm picked up the bone\nMalcolm ran over the other side of garden\nMalcolm set down the bone\n\
         Malcolm looked around\nMalcolm could not wait to taste the bone\n"
    );
}

#[test]
fn exit_codes() {
    let missing = mindmap(&["stream", "/nonexistent/in.conllu"], None);
    assert_eq!(missing.status.code(), Some(1));

    let input = fixture("john.conllu");
    let bad_query = mindmap(&["query", "select from mind-map", "-i", s(&input)], None);
    assert_eq!(bad_query.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad_query.stderr).contains("byte 7"));

    let unknown_source = mindmap(&["query", "select concepts from elsewhere", "-i", s(&input)], None);
    assert_eq!(unknown_source.status.code(), Some(2));

    let bad_decay = mindmap(&["--decay", "0", "stream", s(&input)], None);
    assert_eq!(bad_decay.status.code(), Some(3));

    let bad_flag = mindmap(&["stream", "--bogus"], None);
    assert_eq!(bad_flag.status.code(), Some(3));

    let help = mindmap(&["--help"], None);
    assert_eq!(help.status.code(), Some(0));
}

#[test]
fn empty_input_gives_an_empty_map() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.conllu");
    std::fs::write(&empty, "").unwrap();
    let dot = dir.path().join("out.dot");
    let out = mindmap(&["stream", s(&empty), "--dot", s(&dot)], None);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "");
    assert_eq!(std::fs::read_to_string(&dot).unwrap(), "digraph mindmap {\n}\n");
}

#[test]
fn state_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let state = dir.path().join("state.json");
    let actors = fixture("story_actors.tsv");
    let input = fixture("story.conllu");
    let out =
        mindmap(&["--actors", s(&actors), "stream", s(&input), "--events", "/dev/null", "--state", s(&state)], None);
    assert!(out.status.success());

    let dump = StateDump::load(&state).unwrap();
    assert_eq!(StateDump::from_json(&dump.to_json()).unwrap(), dump);
    assert_eq!(dump.map.node_count(), 21);
    assert_eq!(dump.map.link_count(), 19);

    let q = "select associations, name from mind-map where name = \"malcolm\"";
    let from_state = mindmap(&["query", q, "--state", s(&state)], None);
    let from_input = mindmap(&["--actors", s(&actors), "query", q, "-i", s(&input)], None);
    assert!(from_state.status.success());
    assert_eq!(stdout(&from_state), stdout(&from_input));
}

#[test]
fn malcolm_state_matches_golden_file() {
    let out = mindmap(
        &[
            "--actors",
            s(&fixture("malcolm_actors.tsv")),
            "stream",
            s(&fixture("malcolm.conllu")),
            "--events",
            "/dev/null",
            "--state",
            "-",
        ],
        None,
    );
    assert!(out.status.success());
    assert_eq!(stdout(&out), std::fs::read_to_string(fixture("malcolm_state.json")).unwrap());
}

#[test]
fn export_neighbourhoods() {
    let state = fixture("malcolm_state.json");
    let d1 = stdout(&mindmap(&["export", "--state", s(&state), "--root", "Malcolm", "--depth", "1"], None));
    let d2 = stdout(&mindmap(&["export", "--state", s(&state), "--root", "Malcolm", "--depth", "2"], None));
    assert!(!d1.contains("delicious") && d2.contains("delicious [shape=diamond];"));
    let full = stdout(&mindmap(&["export", "--state", s(&state)], None));
    assert_eq!(full, std::fs::read_to_string(fixture("malcolm.dot")).unwrap());
    let missing = mindmap(&["export", "--state", s(&state), "--root", "Harry", "--depth", "1"], None);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn score_prints_the_table() {
    let case = fixture("pronouns/07-him-object.conllu");
    let gold = fixture("pronouns/07-him-object.gold.tsv");
    let out = mindmap(&["score", s(&case), "--gold", s(&gold)], None);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.lines().any(|l| l.split_whitespace().eq(["him", "100.00", "0.00", "0.00", "1"])), "{text}");
    assert!(text.lines().any(|l| l.split_whitespace().eq(["it", "-", "-", "-", "0"])), "{text}");

    let wrong_gold = fixture("pronouns/01-he-subject.gold.tsv");
    let misaligned = mindmap(&["score", s(&case), "--gold", s(&wrong_gold)], None);
    assert_eq!(misaligned.status.code(), Some(1));
}

#[test]
fn config_file_supplies_inputs_and_actors() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(
        &cfg,
        format!(
            "window = 3\nactors = {:?}\ninputs = [{:?}]\n",
            s(&fixture("john_actors.tsv")),
            s(&fixture("john.conllu"))
        ),
    )
    .unwrap();
    let dot = dir.path().join("john.dot");
    let out = mindmap(&["--config", s(&cfg), "stream", "--events", "/dev/null", "--dot", s(&dot)], None);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(std::fs::read_to_string(&dot).unwrap(), std::fs::read_to_string(fixture("john.dot")).unwrap());
}
