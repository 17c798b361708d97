//! Command-line interface.
//!
//! One subcommand per operation; reports go to standard output as
//! `key<TAB>value` lines, or as a single JSON object with `--json`
//! (repeated keys become arrays). Exit codes: 0 when every requested check
//! passes, 1 when a chart is invalid or an identity fails, 2 for usage and
//! parse errors.

use std::collections::BTreeMap;
use std::io::Write;

use rand::{Rng, SeedableRng};

use crate::census::{census, check_edge_count};
use crate::chart::validate;
use crate::classical;
use crate::format;
use crate::generate::{generate, GenConfig};
use crate::identity::{
    check_star, corollary_branch_sum, corollary_immersed, corollary_partial_sums, weighted_sum,
    ImmersedCheck, WeightError, WeightSequence,
};
use crate::realize::{plan_targets, realize, verify_realization, RealizeError};
use crate::render::{render_svg, RenderOptions};

const USAGE: &str = "\
usage: braidchart <command> [options]

commands:
  validate <chart>                       check all chart invariants
  census <chart> [--json]                count tables B/T/D/E/L
  verify <chart> [--weights SPEC]...     identity suite (star, edge counts,
                                         corollaries, weighted totals)
  plan <targets> [-o FILE]               fill minimal B counts for T/D targets
  realize <targets> -o CHART [--budget N]   synthesize a chart with the counts
  gen --seed N --degree N --size N [-o FILE]
      [--black-free] [--no-singular] [--splices N]
  render <chart> -o SVG [--overlay] [--no-layout]
  translate <chart> --shift K --degree N [-o FILE]
  classical <pd-file> [--json]           Alexander numbering of a knot diagram

weight specs: constant:<c> | linear | triangular |
              explicit:<lo>:<v0,v1,...> | random:<seed>:<k>
";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Value {
    Int(i64),
    Bool(bool),
}

#[derive(Debug, Clone, PartialEq)]
enum Entry {
    Scalar(Value),
    Text(String),
}

#[derive(Debug, Default)]
struct Report {
    entries: Vec<(String, Entry)>,
}

impl Report {
    fn int(&mut self, key: impl Into<String>, v: i64) {
        self.entries.push((key.into(), Entry::Scalar(Value::Int(v))));
    }

    fn bool(&mut self, key: impl Into<String>, v: bool) {
        self.entries.push((key.into(), Entry::Scalar(Value::Bool(v))));
    }

    fn text(&mut self, key: impl Into<String>, v: impl Into<String>) {
        self.entries.push((key.into(), Entry::Text(v.into())));
    }

    fn tsv(&self) -> String {
        let mut out = String::new();
        for (k, e) in &self.entries {
            let v = match e {
                Entry::Scalar(Value::Int(i)) => i.to_string(),
                Entry::Scalar(Value::Bool(b)) => b.to_string(),
                Entry::Text(s) => s.clone(),
            };
            out.push_str(k);
            out.push('\t');
            out.push_str(&v);
            out.push('\n');
        }
        out
    }

    fn json(&self) -> String {
        use serde_json::{Map, Value as J};
        let jval = |e: &Entry| match e {
            Entry::Scalar(Value::Int(i)) => J::from(*i),
            Entry::Scalar(Value::Bool(b)) => J::from(*b),
            Entry::Text(s) => J::from(s.clone()),
        };
        let mut map: Map<String, J> = Map::new();
        for (k, e) in &self.entries {
            let v = jval(e);
            match map.get_mut(k) {
                None => {
                    map.insert(k.clone(), v);
                }
                Some(J::Array(items)) => items.push(v),
                Some(existing) => {
                    let prev = existing.take();
                    *existing = J::Array(vec![prev, v]);
                }
            }
        }
        let mut s = serde_json::to_string_pretty(&J::Object(map)).expect("report is valid json");
        s.push('\n');
        s
    }

    fn write(&self, json: bool, out: &mut dyn Write) {
        let text = if json { self.json() } else { self.tsv() };
        let _ = out.write_all(text.as_bytes());
    }
}

struct Args {
    positional: Vec<String>,
    flags: BTreeMap<String, Vec<String>>,
}

/// Flags that take a value.
const VALUED: &[&str] = &[
    "--weights",
    "-o",
    "--budget",
    "--seed",
    "--degree",
    "--size",
    "--splices",
    "--shift",
];
const BARE: &[&str] = &[
    "--json",
    "--black-free",
    "--no-singular",
    "--overlay",
    "--no-layout",
];

fn parse_args(args: &[String]) -> Result<Args, String> {
    let mut positional = Vec::new();
    let mut flags: BTreeMap<String, Vec<String>> = BTreeMap::new();
    let mut it = args.iter();
    while let Some(arg) = it.next() {
        if VALUED.contains(&arg.as_str()) {
            let value = it
                .next()
                .ok_or_else(|| format!("flag {arg} needs a value"))?;
            flags.entry(arg.clone()).or_default().push(value.clone());
        } else if BARE.contains(&arg.as_str()) {
            flags.entry(arg.clone()).or_default();
        } else if arg.starts_with('-') {
            return Err(format!("unknown flag {arg}"));
        } else {
            positional.push(arg.clone());
        }
    }
    Ok(Args { positional, flags })
}

impl Args {
    fn has(&self, flag: &str) -> bool {
        self.flags.contains_key(flag)
    }

    fn value(&self, flag: &str) -> Option<&str> {
        self.flags.get(flag)?.last().map(|s| s.as_str())
    }

    fn values(&self, flag: &str) -> impl Iterator<Item = &str> {
        self.flags.get(flag).into_iter().flatten().map(|s| s.as_str())
    }

    fn int(&self, flag: &str) -> Result<Option<i64>, String> {
        match self.value(flag) {
            None => Ok(None),
            Some(v) => v
                .parse()
                .map(Some)
                .map_err(|_| format!("flag {flag} expects an integer, got `{v}`")),
        }
    }
}

fn read_file(path: &str) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))
}

fn write_file(path: &str, content: &str) -> Result<(), String> {
    std::fs::write(path, content).map_err(|e| format!("cannot write {path}: {e}"))
}

fn load_chart(path: &str) -> Result<format::ChartDocument, String> {
    let text = read_file(path)?;
    format::parse_chart(&text).map_err(|e| format!("{path}: {e}"))
}

/// The weight window adequate for a census.
fn window_for(table: &crate::census::Census) -> (i64, i64) {
    match table.support_bounds() {
        Some((lo, hi)) => (lo - 1, hi),
        None => (0, 1),
    }
}

fn build_weights(
    spec: &str,
    table: &crate::census::Census,
) -> Result<Vec<(String, WeightSequence)>, String> {
    let (lo, hi) = window_for(table);
    let mk = |w: Result<WeightSequence, WeightError>| w.map_err(|e| e.to_string());
    match spec.split(':').collect::<Vec<_>>().as_slice() {
        ["linear"] => Ok(vec![("linear".into(), mk(WeightSequence::linear(lo, hi))?)]),
        ["triangular"] => Ok(vec![(
            "triangular".into(),
            mk(WeightSequence::triangular(lo, hi))?,
        )]),
        ["constant", c] => {
            let c: i64 = c.parse().map_err(|_| format!("bad constant `{c}`"))?;
            Ok(vec![(
                format!("constant:{c}"),
                mk(WeightSequence::constant(c, lo, hi))?,
            )])
        }
        ["explicit", start, values] => {
            let start: i64 = start.parse().map_err(|_| format!("bad window start `{start}`"))?;
            let values: Vec<i64> = values
                .split(',')
                .map(|v| v.parse().map_err(|_| format!("bad weight `{v}`")))
                .collect::<Result<_, String>>()?;
            Ok(vec![(
                spec.to_string(),
                mk(WeightSequence::from_values(start, values))?,
            )])
        }
        ["random", seed, count] => {
            let seed: u64 = seed.parse().map_err(|_| format!("bad seed `{seed}`"))?;
            let count: usize = count.parse().map_err(|_| format!("bad count `{count}`"))?;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            (0..count)
                .map(|i| {
                    Ok((
                        format!("random:{seed}:{i}"),
                        mk(WeightSequence::from_fn(lo, hi, |_| rng.gen_range(-99..=99)))?,
                    ))
                })
                .collect()
        }
        _ => Err(format!("unknown weight spec `{spec}`")),
    }
}

fn census_report(report: &mut Report, table: &crate::census::Census) {
    for (&p, &(plus, minus)) in table.b_map() {
        report.int(format!("B {p} +"), plus);
        report.int(format!("B {p} -"), minus);
    }
    for (&q, &(plus, minus)) in table.t_map() {
        report.int(format!("T {q} +"), plus);
        report.int(format!("T {q} -"), minus);
    }
    for (&r, &(plus, minus)) in table.d_map() {
        report.int(format!("D {r} +"), plus);
        report.int(format!("D {r} -"), minus);
    }
    for (&p, &n) in table.e_map() {
        report.int(format!("E {p}"), n);
    }
    for (&p, &n) in table.l_map() {
        report.int(format!("L {p}"), n);
    }
}

enum CmdError {
    Usage(String),
    Failure,
}

type CmdResult = Result<(), CmdError>;

fn usage(msg: impl Into<String>) -> CmdError {
    CmdError::Usage(msg.into())
}

fn cmd_validate(args: &Args, report: &mut Report) -> CmdResult {
    let path = args.positional.first().ok_or_else(|| usage("validate needs a chart file"))?;
    let doc = load_chart(path).map_err(usage)?;
    let result = validate(&doc.chart);
    report.bool("ok", result.ok());
    for v in &result.violations {
        report.text("violation", v.to_string());
    }
    if result.ok() {
        Ok(())
    } else {
        Err(CmdError::Failure)
    }
}

fn cmd_census(args: &Args, report: &mut Report) -> CmdResult {
    let path = args.positional.first().ok_or_else(|| usage("census needs a chart file"))?;
    let doc = load_chart(path).map_err(usage)?;
    let result = validate(&doc.chart);
    if !result.ok() {
        report.bool("ok", false);
        for v in &result.violations {
            report.text("violation", v.to_string());
        }
        return Err(CmdError::Failure);
    }
    report.int("degree", doc.chart.degree());
    census_report(report, &census(&doc.chart));
    Ok(())
}

fn cmd_verify(args: &Args, report: &mut Report) -> CmdResult {
    let path = args.positional.first().ok_or_else(|| usage("verify needs a chart file"))?;
    let doc = load_chart(path).map_err(usage)?;
    let validation = validate(&doc.chart);
    report.bool("valid", validation.ok());
    if !validation.ok() {
        for v in &validation.violations {
            report.text("violation", v.to_string());
        }
        return Err(CmdError::Failure);
    }
    let table = census(&doc.chart);
    let mut ok = true;

    let edge_ok = check_edge_count(&table);
    report.bool("edge_count_ok", edge_ok);
    ok &= edge_ok;

    let star = check_star(&table);
    for (p, star_ok) in &star {
        report.bool(format!("star {p}"), *star_ok);
    }
    let star_all = star.values().all(|&b| b);
    report.bool("star_ok", star_all);
    ok &= star_all;

    let bs = corollary_branch_sum(&table);
    report.int("branch_sum", bs.branch_total);
    report.int("singular_sum", bs.singular_total);
    report.bool("branch_sum_ok", bs.ok);
    ok &= bs.ok;

    let partial = corollary_partial_sums(&table);
    for (p, ps) in &partial {
        report.bool(format!("partial {p}"), ps.ok);
    }
    let partial_ok = partial.values().all(|ps| ps.ok);
    report.bool("partial_sums_ok", partial_ok);
    ok &= partial_ok;

    match corollary_immersed(&table) {
        ImmersedCheck::Vacuous => report.text("immersed", "vacuous"),
        ImmersedCheck::Applicable { holds } => {
            report.text("immersed", if holds { "holds" } else { "fails" });
            // balanced triple points are only guaranteed in the absence of
            // singular points; with D present an unbalanced T is legal
            if table.d_map().is_empty() {
                ok &= holds;
            }
        }
    }

    let mut specs: Vec<&str> = args.values("--weights").collect();
    if specs.is_empty() {
        specs.push("linear");
    }
    for spec in specs {
        for (name, w) in build_weights(spec, &table).map_err(usage)? {
            let total = weighted_sum(&table, &w).map_err(|e| usage(e.to_string()))?;
            report.int(format!("weighted_total {name}"), total);
            ok &= total == 0;
        }
    }

    report.bool("ok", ok);
    if ok {
        Ok(())
    } else {
        Err(CmdError::Failure)
    }
}

fn cmd_plan(args: &Args, out: &mut dyn Write, report: &mut Report) -> CmdResult {
    let path = args.positional.first().ok_or_else(|| usage("plan needs a targets file"))?;
    let text = read_file(path).map_err(usage)?;
    let targets = format::parse_targets(&text).map_err(|e| usage(format!("{path}: {e}")))?;
    if !targets.b_map().is_empty() {
        return Err(usage("plan fills B counts itself; the input must carry only T and D lines"));
    }
    let planned = plan_targets(targets.t_map(), targets.d_map());
    let serialized = format::serialize_targets(&planned);
    match args.value("-o") {
        Some(dest) => {
            write_file(dest, &serialized).map_err(usage)?;
            report.text("output", dest);
            report.bool("star_ok", planned.star_holds());
        }
        None => {
            let _ = out.write_all(serialized.as_bytes());
        }
    }
    Ok(())
}

fn cmd_realize(args: &Args, report: &mut Report) -> CmdResult {
    let path = args.positional.first().ok_or_else(|| usage("realize needs a targets file"))?;
    let dest = args.value("-o").ok_or_else(|| usage("realize needs -o <chart-file>"))?;
    let budget = args
        .int("--budget")
        .map_err(usage)?
        .unwrap_or(crate::realize::DEFAULT_BUDGET as i64);
    if budget <= 0 {
        return Err(usage("--budget must be positive"));
    }
    let text = read_file(path).map_err(usage)?;
    let targets = format::parse_targets(&text).map_err(|e| usage(format!("{path}: {e}")))?;
    match realize(&targets, budget as u64) {
        Ok(result) => {
            let verified = verify_realization(&targets.shifted(result.shift), &result.chart);
            report.bool("realized", true);
            report.int("shift", result.shift);
            report.int("degree", result.degree);
            report.int("vertices", result.chart.vertices().len() as i64);
            report.int("edges", result.chart.edges().len() as i64);
            report.int("crossings_inserted", result.crossings_inserted as i64);
            report.int("nodes", result.nodes as i64);
            report.bool("verified", verified);
            report.text("output", dest);
            let doc = format::ChartDocument::new(result.chart);
            write_file(dest, &format::serialize_chart(&doc)).map_err(usage)?;
            if verified {
                Ok(())
            } else {
                Err(CmdError::Failure)
            }
        }
        Err(e) => {
            report.bool("realized", false);
            report.text("error", e.to_string());
            if let RealizeError::BudgetExhausted {
                nodes,
                filled,
                total_slots,
            } = e
            {
                report.int("nodes", nodes as i64);
                report.int("ends_wired", filled as i64);
                report.int("ends_total", total_slots as i64);
            }
            Err(CmdError::Failure)
        }
    }
}

fn cmd_gen(args: &Args, out: &mut dyn Write, report: &mut Report) -> CmdResult {
    let seed = args.int("--seed").map_err(usage)?.unwrap_or(0) as u64;
    let degree = args.int("--degree").map_err(usage)?.unwrap_or(4);
    let size = args.int("--size").map_err(usage)?.unwrap_or(20);
    if size < 0 {
        return Err(usage("--size must be nonnegative"));
    }
    let mut config = GenConfig::new(seed, degree, size as usize);
    config.black_free = args.has("--black-free");
    config.allow_singular = !args.has("--no-singular");
    if let Some(splices) = args.int("--splices").map_err(usage)? {
        config.splice_attempts = splices.max(0) as usize;
    }
    let chart = generate(&config).map_err(|e| usage(e.to_string()))?;
    let doc = format::ChartDocument::new(chart);
    let serialized = format::serialize_chart(&doc);
    match args.value("-o") {
        Some(dest) => {
            write_file(dest, &serialized).map_err(usage)?;
            report.int("seed", seed as i64);
            report.int("degree", doc.chart.degree());
            report.int("vertices", doc.chart.vertices().len() as i64);
            report.int("edges", doc.chart.edges().len() as i64);
            report.bool("valid", validate(&doc.chart).ok());
            report.text("output", dest);
        }
        None => {
            let _ = out.write_all(serialized.as_bytes());
        }
    }
    Ok(())
}

fn cmd_render(args: &Args, report: &mut Report) -> CmdResult {
    let path = args.positional.first().ok_or_else(|| usage("render needs a chart file"))?;
    let dest = args.value("-o").ok_or_else(|| usage("render needs -o <svg-file>"))?;
    let doc = load_chart(path).map_err(usage)?;
    if !validate(&doc.chart).ok() {
        report.bool("ok", false);
        return Err(CmdError::Failure);
    }
    let options = RenderOptions {
        overlay_indices: args.has("--overlay"),
        auto_layout: !args.has("--no-layout"),
    };
    let svg = render_svg(&doc.chart, &options).map_err(|e| usage(e.to_string()))?;
    write_file(dest, &svg).map_err(usage)?;
    report.text("output", dest);
    report.int("vertices", doc.chart.vertices().len() as i64);
    report.int("edges", doc.chart.edges().len() as i64);
    Ok(())
}

fn cmd_translate(args: &Args, out: &mut dyn Write, report: &mut Report) -> CmdResult {
    let path = args.positional.first().ok_or_else(|| usage("translate needs a chart file"))?;
    let shift = args
        .int("--shift")
        .map_err(usage)?
        .ok_or_else(|| usage("translate needs --shift <k>"))?;
    let doc = load_chart(path).map_err(usage)?;
    let degree = args
        .int("--degree")
        .map_err(usage)?
        .unwrap_or(doc.chart.degree() + shift);
    match doc.chart.translate_labels(shift, degree) {
        Ok(chart) => {
            let out_doc = format::ChartDocument {
                chart,
                ..doc.clone()
            };
            let serialized = format::serialize_chart(&out_doc);
            match args.value("-o") {
                Some(dest) => {
                    write_file(dest, &serialized).map_err(usage)?;
                    report.int("shift", shift);
                    report.int("degree", degree);
                    report.text("output", dest);
                }
                None => {
                    let _ = out.write_all(serialized.as_bytes());
                }
            }
            Ok(())
        }
        Err(e) => {
            report.bool("ok", false);
            report.text("error", e.to_string());
            Err(CmdError::Failure)
        }
    }
}

fn cmd_classical(args: &Args, report: &mut Report) -> CmdResult {
    let path = args.positional.first().ok_or_else(|| usage("classical needs a PD file"))?;
    let text = read_file(path).map_err(usage)?;
    let pd = classical::parse_pd(&text).map_err(|e| usage(format!("{path}: {e}")))?;
    let numbering =
        classical::alexander_number(&pd).map_err(|e| usage(format!("{path}: {e}")))?;
    report.int("regions", numbering.regions.len() as i64);
    report.int("outer", numbering.outer as i64);
    for (i, number) in numbering.numbers.iter().enumerate() {
        report.int(format!("region {i}"), *number);
        let boundary: Vec<String> = numbering.regions[i]
            .iter()
            .map(|&(arc, side)| {
                format!(
                    "{arc}:{}",
                    match side {
                        classical::CurveSide::Left => "l",
                        classical::CurveSide::Right => "r",
                    }
                )
            })
            .collect();
        report.text(format!("boundary {i}"), boundary.join(" "));
    }
    let verified = classical::verify_numbering(&pd, &numbering);
    report.bool("verified", verified);
    if verified {
        Ok(())
    } else {
        Err(CmdError::Failure)
    }
}

/// Run one command. Streams are injected so tests can capture them.
pub fn cli_main(args: &[String], stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let Some(command) = args.first() else {
        let _ = stderr.write_all(USAGE.as_bytes());
        return 2;
    };
    if command == "help" || command == "--help" {
        let _ = stdout.write_all(USAGE.as_bytes());
        return 0;
    }
    let parsed = match parse_args(&args[1..]) {
        Ok(parsed) => parsed,
        Err(msg) => {
            let _ = writeln!(stderr, "error: {msg}");
            return 2;
        }
    };
    let mut report = Report::default();
    let outcome = match command.as_str() {
        "validate" => cmd_validate(&parsed, &mut report),
        "census" => cmd_census(&parsed, &mut report),
        "verify" => cmd_verify(&parsed, &mut report),
        "plan" => cmd_plan(&parsed, stdout, &mut report),
        "realize" => cmd_realize(&parsed, &mut report),
        "gen" => cmd_gen(&parsed, stdout, &mut report),
        "render" => cmd_render(&parsed, &mut report),
        "translate" => cmd_translate(&parsed, stdout, &mut report),
        "classical" => cmd_classical(&parsed, &mut report),
        other => {
            let _ = writeln!(stderr, "error: unknown command `{other}`");
            let _ = stderr.write_all(USAGE.as_bytes());
            return 2;
        }
    };
    match outcome {
        Ok(()) => {
            report.write(parsed.has("--json"), stdout);
            0
        }
        Err(CmdError::Failure) => {
            report.write(parsed.has("--json"), stdout);
            1
        }
        Err(CmdError::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            2
        }
    }
}

/// Entry point for the binary: argv in, exit code out.
pub fn run() -> i32 {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let mut stdout = std::io::stdout();
    let mut stderr = std::io::stderr();
    cli_main(&args, &mut stdout, &mut stderr)
}
