use std::fs;
use std::process::{Command, Output};

fn polyaxis(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polyaxis"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn count_prints_value_then_closed_forms() {
    let out = polyaxis(&["count", "--n", "14"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("9"));
    assert!(lines.next().unwrap().contains("p = 7"));

    let out = polyaxis(&["count", "--n", "64"]);
    assert_eq!(stdout(&out).lines().next(), Some("120"));
}

#[test]
fn count_warns_about_the_square() {
    let out = polyaxis(&["count", "--n", "4"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "0");
    assert!(stderr(&out).contains("crossed square"));
}

#[test]
fn bad_inputs_exit_with_two() {
    for args in [
        &["count", "--n", "7"][..],
        &["pairs", "--n", "2"],
        &["oracle", "--n", "13"],
        &["oracle", "--n", "15", "--allow-big"],
        &["table", "--format", "xml"],
        &["render", "--word", "1,1,2"],
        &["render", "--n", "8", "--pair", "2,4"],
        &["verify", "--max-n", "2"],
        &["frobnicate"],
    ] {
        let out = polyaxis(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", stderr(&out));
        assert!(!stderr(&out).is_empty());
    }
}

#[test]
fn census_and_oracle_agree() {
    let census = stdout(&polyaxis(&["census", "--n", "7"]));
    assert!(census.contains("equivalent: 54"));
    assert!(census.contains("similar: 39"));

    let out = polyaxis(&["oracle", "--n", "7", "--relation", "s", "--threads", "2"]);
    assert!(out.status.success());
    assert!(stdout(&out).lines().any(|l| l == "total\t39"));
}

#[test]
fn oracle_lists_classes() {
    let text = stdout(&polyaxis(&["oracle", "--n", "5", "--classes"]));
    let rows: Vec<&str> = text.lines().skip_while(|l| !l.starts_with("key")).skip(1).collect();
    assert_eq!(rows.len(), 4);
    let multiplicities: u64 = rows.iter().map(|r| r.rsplit('\t').next().unwrap().parse::<u64>().unwrap()).sum();
    assert_eq!(multiplicities, 12);
}

#[test]
fn pairs_lists_each_revolution_count() {
    let text = stdout(&polyaxis(&["pairs", "--n", "10"]));
    assert!(text.contains("(1,3)"));
    assert_eq!(text.lines().last(), Some("total: 4"));
}

#[test]
fn verify_passes_with_one_warning() {
    let out = polyaxis(&["verify", "--max-n", "8"]);
    assert!(out.status.success(), "{}", stdout(&out));
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| l.starts_with("WARN")).count(), 1);
    assert!(!text.lines().any(|l| l.starts_with("FAIL")));
}

#[test]
fn verify_fails_on_a_corrupted_fixture() {
    let dir = tempfile::tempdir().unwrap();
    let source = concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures");
    let table1 = fs::read_to_string(format!("{source}/table1_m_symmetric.bfile")).unwrap();
    fs::write(dir.path().join("table1_m_symmetric.bfile"), table1.replace("\n4 4\n", "\n4 5\n")).unwrap();
    fs::copy(
        format!("{source}/table3_power_of_two.bfile"),
        dir.path().join("table3_power_of_two.bfile"),
    )
    .unwrap();

    let out = polyaxis(&["verify", "--max-n", "5", "--fixtures", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).lines().any(|l| l.starts_with("FAIL") && l.contains("m-symmetric table")));
}

#[test]
fn table_writes_csv_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("t.csv");
    let out = polyaxis(&["table", "--from", "3", "--to", "16", "--out", csv_path.to_str().unwrap()]);
    assert!(out.status.success());
    let csv = fs::read_to_string(&csv_path).unwrap();
    assert_eq!(csv, "n,m,P_m_n\n4,2,1\n6,3,1\n8,4,1\n10,5,4\n12,6,2\n14,7,9\n16,8,6\n");

    let json = stdout(&polyaxis(&["table", "--from", "10", "--to", "12", "--format", "json", "--oracle-max", "0"]));
    assert!(json.contains("\"n\": 10"));
    assert!(json.contains("\"m_symmetric\": 4"));
    assert!(!json.contains("oracle"));
}

#[test]
fn render_word_and_pair() {
    let out = polyaxis(&["render", "--word", "1,1,1,2,5,2", "--axes", "--labels"]);
    assert!(out.status.success());
    let svg = stdout(&out);
    let doc = roxmltree::Document::parse(&svg).unwrap();
    let count = |class: &str| doc.descendants().filter(|n| n.attribute("class") == Some(class)).count();
    assert_eq!(count("edge"), 6);
    assert_eq!(count("axis"), 1);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.svg");
    let out = polyaxis(&["render", "--n", "30", "--pair", "1,3", "--axes", "--size", "200", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let svg = fs::read_to_string(path).unwrap();
    let doc = roxmltree::Document::parse(&svg).unwrap();
    assert_eq!(doc.root_element().attribute("width"), Some("200.000"));
    assert_eq!(doc.descendants().filter(|n| n.attribute("class") == Some("axis")).count(), 15);
}

#[test]
fn reps_writes_one_drawing_per_class() {
    let dir = tempfile::tempdir().unwrap();
    let out = polyaxis(&["reps", "--n", "10", "--render", dir.path().to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().count(), 5);
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 4);
}
