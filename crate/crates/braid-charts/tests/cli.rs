//! End-to-end runs of every subcommand through `cli_main`, with files on
//! disk and exit codes checked.

use braid_charts::chart::Sign;
use braid_charts::cli::cli_main;
use braid_charts::fixtures;
use braid_charts::format::{serialize_chart, ChartDocument};

struct Run {
    code: i32,
    stdout: String,
    #[allow(dead_code)]
    stderr: String,
}

fn run(args: &[&str]) -> Run {
    let args: Vec<String> = args.iter().map(|s| s.to_string()).collect();
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = cli_main(&args, &mut out, &mut err);
    Run {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn tsv_value<'a>(stdout: &'a str, key: &str) -> Option<&'a str> {
    stdout
        .lines()
        .find_map(|l| l.strip_prefix(&format!("{key}\t")))
}

fn write_fixture(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn validate_good_chart_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let doc = ChartDocument::new(fixtures::sw(2, Sign::Plus, 3));
    let path = write_fixture(&dir, "good.chart", &serialize_chart(&doc));
    let r = run(&["validate", &path]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(tsv_value(&r.stdout, "ok"), Some("true"));
}

#[test]
fn validate_invalid_chart_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    // adjacent labels at a crossing
    let doc = ChartDocument::new(fixtures::xg(1, 2, 3));
    let path = write_fixture(&dir, "bad.chart", &serialize_chart(&doc));
    let r = run(&["validate", &path]);
    assert_eq!(r.code, 1);
    assert_eq!(tsv_value(&r.stdout, "ok"), Some("false"));
    assert!(r.stdout.contains("crossing label gap"));
}

#[test]
fn validate_malformed_file_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_fixture(&dir, "broken.chart", "%chart 1\ndegree x\n");
    let r = run(&["validate", &path]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("invalid integer"));
}

#[test]
fn census_reports_counts() {
    let dir = tempfile::tempdir().unwrap();
    let doc = ChartDocument::new(fixtures::sw(2, Sign::Plus, 3));
    let path = write_fixture(&dir, "sw.chart", &serialize_chart(&doc));
    let r = run(&["census", &path]);
    assert_eq!(r.code, 0);
    assert_eq!(tsv_value(&r.stdout, "B 1 +"), Some("2"));
    assert_eq!(tsv_value(&r.stdout, "B 1 -"), Some("1"));
    assert_eq!(tsv_value(&r.stdout, "T 2 +"), Some("1"));
    assert_eq!(tsv_value(&r.stdout, "E 1"), Some("3"));

    let json = run(&["census", &path, "--json"]);
    assert_eq!(json.code, 0);
    let v: serde_json::Value = serde_json::from_str(&json.stdout).unwrap();
    assert_eq!(v["B 1 +"], serde_json::json!(2));
}

#[test]
fn verify_reports_weighted_total_zero() {
    let dir = tempfile::tempdir().unwrap();
    let doc = ChartDocument::new(fixtures::sw(2, Sign::Plus, 3));
    let path = write_fixture(&dir, "good.chart", &serialize_chart(&doc));
    let r = run(&["verify", &path, "--weights", "linear"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(tsv_value(&r.stdout, "weighted_total linear"), Some("0"));
    assert_eq!(tsv_value(&r.stdout, "star_ok"), Some("true"));
    assert_eq!(tsv_value(&r.stdout, "edge_count_ok"), Some("true"));
    assert_eq!(tsv_value(&r.stdout, "ok"), Some("true"));

    let r = run(&[
        "verify",
        &path,
        "--weights",
        "triangular",
        "--weights",
        "random:5:3",
        "--weights",
        "constant:7",
    ]);
    assert_eq!(r.code, 0);
    assert_eq!(tsv_value(&r.stdout, "weighted_total constant:7"), Some("0"));
    assert_eq!(tsv_value(&r.stdout, "weighted_total random:5:0"), Some("0"));
}

#[test]
fn verify_rejects_bad_weight_spec() {
    let dir = tempfile::tempdir().unwrap();
    let doc = ChartDocument::new(fixtures::fe(1, 2));
    let path = write_fixture(&dir, "fe.chart", &serialize_chart(&doc));
    let r = run(&["verify", &path, "--weights", "cubic"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("unknown weight spec"));
}

#[test]
fn plan_then_realize_then_census_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let targets = write_fixture(&dir, "targets.txt", "%targets 1\nT 2 + 2\n");
    let planned = dir.path().join("planned.txt");
    let planned_str = planned.to_string_lossy().into_owned();
    let r = run(&["plan", &targets, "-o", &planned_str]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let planned_text = std::fs::read_to_string(&planned).unwrap();
    assert_eq!(
        planned_text,
        "%targets 1\nB 1 + 2\nB 2 - 2\nT 2 + 2\n"
    );

    let chart_out = dir.path().join("out.chart");
    let chart_str = chart_out.to_string_lossy().into_owned();
    let r = run(&["realize", &planned_str, "-o", &chart_str]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(tsv_value(&r.stdout, "verified"), Some("true"));
    assert_eq!(tsv_value(&r.stdout, "shift"), Some("0"));

    let r = run(&["census", &chart_str]);
    assert_eq!(r.code, 0);
    assert_eq!(tsv_value(&r.stdout, "T 2 +"), Some("2"));
    assert_eq!(tsv_value(&r.stdout, "B 1 +"), Some("2"));
    assert_eq!(tsv_value(&r.stdout, "B 2 -"), Some("2"));

    let r = run(&["verify", &chart_str, "--weights", "random:1:5"]);
    assert_eq!(r.code, 0);
}

#[test]
fn plan_rejects_b_lines() {
    let dir = tempfile::tempdir().unwrap();
    let targets = write_fixture(&dir, "targets.txt", "%targets 1\nB 1 + 1\nT 2 + 1\n");
    let r = run(&["plan", &targets]);
    assert_eq!(r.code, 2);
}

#[test]
fn realize_star_violation_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let targets = write_fixture(&dir, "bad.txt", "%targets 1\nB 1 + 1\n");
    let out = dir.path().join("out.chart");
    let r = run(&["realize", &targets, "-o", &out.to_string_lossy()]);
    assert_eq!(r.code, 1);
    assert_eq!(tsv_value(&r.stdout, "realized"), Some("false"));
    assert!(tsv_value(&r.stdout, "error").unwrap().contains("balance"));
}

#[test]
fn gen_writes_valid_deterministic_charts() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.chart");
    let b = dir.path().join("b.chart");
    for path in [&a, &b] {
        let r = run(&[
            "gen",
            "--seed",
            "11",
            "--degree",
            "5",
            "--size",
            "18",
            "-o",
            &path.to_string_lossy(),
        ]);
        assert_eq!(r.code, 0, "{}", r.stderr);
        assert_eq!(tsv_value(&r.stdout, "valid"), Some("true"));
    }
    assert_eq!(
        std::fs::read_to_string(&a).unwrap(),
        std::fs::read_to_string(&b).unwrap()
    );
    let r = run(&["verify", &a.to_string_lossy(), "--weights", "random:3:5"]);
    assert_eq!(r.code, 0);
}

#[test]
fn gen_without_output_prints_the_chart() {
    let r = run(&["gen", "--seed", "3", "--degree", "3", "--size", "4"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.starts_with("%chart 1\n"));
}

#[test]
fn gen_infeasible_config_exits_two() {
    let r = run(&[
        "gen",
        "--seed",
        "1",
        "--degree",
        "2",
        "--size",
        "4",
        "--black-free",
        "--no-singular",
    ]);
    assert_eq!(r.code, 2);
}

#[test]
fn render_produces_svg() {
    let dir = tempfile::tempdir().unwrap();
    let doc = ChartDocument::new(fixtures::fe(3, 4));
    let path = write_fixture(&dir, "fe.chart", &serialize_chart(&doc));
    let svg = dir.path().join("fe.svg");
    let r = run(&["render", &path, "-o", &svg.to_string_lossy(), "--overlay"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let svg_text = std::fs::read_to_string(&svg).unwrap();
    assert!(svg_text.starts_with("<svg"));
    assert_eq!(svg_text.matches("class=\"edge\"").count(), 1);
}

#[test]
fn render_without_layout_needs_coords() {
    let dir = tempfile::tempdir().unwrap();
    let doc = ChartDocument::new(fixtures::fe(3, 4));
    let path = write_fixture(&dir, "fe.chart", &serialize_chart(&doc));
    let svg = dir.path().join("fe.svg");
    let r = run(&[
        "render",
        &path,
        "-o",
        &svg.to_string_lossy(),
        "--no-layout",
    ]);
    assert_eq!(r.code, 2);
}

#[test]
fn translate_shifts_labels_in_files() {
    let dir = tempfile::tempdir().unwrap();
    let doc = ChartDocument::new(fixtures::fe(3, 4));
    let path = write_fixture(&dir, "fe.chart", &serialize_chart(&doc));
    let r = run(&["translate", &path, "--shift", "-2", "--degree", "4"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("edge e1 1 bp bm"));

    let r = run(&["translate", &path, "--shift", "-3", "--degree", "4"]);
    assert_eq!(r.code, 1);
}

#[test]
fn classical_numbers_regions() {
    let dir = tempfile::tempdir().unwrap();
    let (pd, _) = braid_charts::classical::braid_closure(2, &[(1, true); 3]);
    let text: String = pd
        .crossings
        .iter()
        .map(|x| format!("X {} {} {} {}\n", x.arcs[0], x.arcs[1], x.arcs[2], x.arcs[3]))
        .collect();
    let path = write_fixture(&dir, "trefoil.pd", &text);
    let r = run(&["classical", &path]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(tsv_value(&r.stdout, "regions"), Some("5"));
    assert_eq!(tsv_value(&r.stdout, "verified"), Some("true"));

    let unknot = write_fixture(&dir, "unknot.pd", "A 1 cw\n");
    let r = run(&["classical", &unknot]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("-1"));
}

#[test]
fn verify_accepts_black_free_charts_with_unbalanced_singulars() {
    // with singular points present, unbalanced triple points are legal:
    // 2(D(p,+)-D(p,-)) = T-diff steps. The chart is valid and all
    // identities hold, so verify must exit 0 even though the immersed
    // corollary's conclusion fails.
    let mut targets = braid_charts::realize::TargetCounts::new();
    targets.add_d(1, Sign::Plus, 1);
    targets.add_d(3, Sign::Minus, 1);
    targets.add_t(2, Sign::Plus, 2);
    targets.add_t(3, Sign::Plus, 2);
    assert!(targets.star_holds());
    let result = braid_charts::realize::realize(&targets, 1_000_000).expect("realizable");
    let table = braid_charts::census::census(&result.chart);
    assert!(table.is_black_free());

    let dir = tempfile::tempdir().unwrap();
    let doc = ChartDocument::new(result.chart);
    let path = write_fixture(&dir, "singular.chart", &serialize_chart(&doc));
    let r = run(&["verify", &path, "--weights", "random:9:5"]);
    assert_eq!(r.code, 0, "{}\n{}", r.stdout, r.stderr);
    assert_eq!(tsv_value(&r.stdout, "immersed"), Some("fails"));
    assert_eq!(tsv_value(&r.stdout, "ok"), Some("true"));
}

#[test]
fn classical_malformed_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_fixture(&dir, "bad.pd", "X 1 2 3\n");
    let r = run(&["classical", &path]);
    assert_eq!(r.code, 2);
}
