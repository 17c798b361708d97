//! The chart file format and the targets file format.
//!
//! Chart grammar, one directive per line, `#` starting comment lines,
//! identifiers `[A-Za-z0-9_]+`:
//!
//! ```text
//! %chart 1
//! degree <n>
//! vertex <id> black|white|crossing|singular
//! edge <id> <label> <tailVertexId> <headVertexId>
//! rot <vid> <eid>:t|h[,<eid>:t|h...]     counterclockwise
//! coord <vid> <x> <y>                    decimal rationals
//! ```
//!
//! The serializer emits the canonical form: header, leading comments,
//! degree, vertices sorted by id, edges sorted by id, one `rot` line per
//! vertex sorted by id with the cycle rotated to its lexicographically
//! least end token, coords last; LF line endings and no trailing
//! whitespace. Parsing accepts directives in any order, so
//! `serialize(parse(s))` canonicalizes `s` and is idempotent.
//!
//! Targets grammar:
//!
//! ```text
//! %targets 1
//! B <index> + <count>
//! B <index> - <count>
//! ```
//!
//! with `T` and `D` lines alike; omitted entries are zero.

use std::fmt::Write as _;

use crate::chart::{BuildError, Chart, ChartBuilder, EndSide, Sign};
use crate::dec::Dec;
use crate::realize::TargetCounts;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormatErrorKind {
    #[error("missing `%chart 1` header")]
    MissingHeader,
    #[error("unsupported format header `{0}`")]
    UnsupportedHeader(String),
    #[error("unknown directive `{0}`")]
    UnknownDirective(String),
    #[error("`{directive}` expects {expected}")]
    WrongArity {
        directive: &'static str,
        expected: &'static str,
    },
    #[error("invalid integer `{0}`")]
    BadInteger(String),
    #[error("invalid decimal `{0}`")]
    BadDecimal(String),
    #[error("invalid identifier `{0}`")]
    BadIdentifier(String),
    #[error("unknown vertex kind `{0}`")]
    UnknownVertexKind(String),
    #[error("unknown sign `{0}`")]
    BadSign(String),
    #[error("duplicate `degree` directive")]
    DuplicateDegree,
    #[error("missing `degree` directive")]
    MissingDegree,
    #[error("malformed rotation entry `{0}`, expected `<edge>:t` or `<edge>:h`")]
    RotationSyntax(String),
    #[error(transparent)]
    Build(BuildError),
    #[error("unknown table `{0}`, expected B, T, or D")]
    UnknownTable(String),
    #[error("negative count `{0}`")]
    NegativeCount(i64),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {kind}")]
pub struct FormatError {
    pub line: usize,
    pub kind: FormatErrorKind,
}

fn err(line: usize, kind: FormatErrorKind) -> FormatError {
    FormatError { line, kind }
}

/// A chart plus document metadata (an optional name and leading comments).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChartDocument {
    pub version: u32,
    pub name: Option<String>,
    pub comments: Vec<String>,
    pub chart: Chart,
}

impl ChartDocument {
    pub fn new(chart: Chart) -> Self {
        ChartDocument {
            version: 1,
            name: None,
            comments: Vec::new(),
            chart,
        }
    }

    /// Reorder the chart internals the way the serializer writes them, so
    /// that `parse(serialize(doc)) == doc.canonicalize()`.
    pub fn canonicalize(&self) -> Self {
        let chart = &self.chart;
        let mut vertex_order: Vec<usize> = (0..chart.vertices().len()).collect();
        vertex_order.sort_by(|&a, &b| chart.vertices()[a].name.cmp(&chart.vertices()[b].name));
        let mut edge_order: Vec<usize> = (0..chart.edges().len()).collect();
        edge_order.sort_by(|&a, &b| chart.edges()[a].name.cmp(&chart.edges()[b].name));

        let mut b = ChartBuilder::new(chart.degree());
        for &vi in &vertex_order {
            b.vertex(&chart.vertices()[vi].name, chart.vertices()[vi].kind);
        }
        for &ei in &edge_order {
            let e = &chart.edges()[ei];
            b.edge(
                &e.name,
                e.label,
                &chart.vertex(e.tail).name,
                &chart.vertex(e.head).name,
            );
        }
        for &vi in &vertex_order {
            let v = &chart.vertices()[vi];
            let ends: Vec<(String, EndSide)> = v
                .rotation
                .iter()
                .map(|&(e, s)| (chart.edge(e).name.clone(), s))
                .collect();
            let rotated = rotate_to_least(&ends);
            b.rotation(&v.name, rotated.iter().map(|(e, s)| (e.as_str(), *s)));
        }
        for (&vi, &(x, y)) in chart.coords() {
            b.coord(&chart.vertices()[vi].name, x, y);
        }
        ChartDocument {
            version: self.version,
            name: self.name.clone(),
            comments: self.comments.clone(),
            chart: b.finish().expect("canonical reordering is sound"),
        }
    }
}

fn end_token(name: &str, side: EndSide) -> String {
    let s = match side {
        EndSide::Tail => 't',
        EndSide::Head => 'h',
    };
    format!("{name}:{s}")
}

fn rotate_to_least(ends: &[(String, EndSide)]) -> Vec<(String, EndSide)> {
    if ends.is_empty() {
        return Vec::new();
    }
    let least = (0..ends.len())
        .min_by(|&a, &b| {
            end_token(&ends[a].0, ends[a].1).cmp(&end_token(&ends[b].0, ends[b].1))
        })
        .unwrap();
    let mut out = Vec::with_capacity(ends.len());
    for i in 0..ends.len() {
        out.push(ends[(least + i) % ends.len()].clone());
    }
    out
}

fn valid_id(s: &str) -> bool {
    !s.is_empty()
        && s.bytes()
            .all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

fn parse_id(tok: &str, line: usize) -> Result<&str, FormatError> {
    if valid_id(tok) {
        Ok(tok)
    } else {
        Err(err(line, FormatErrorKind::BadIdentifier(tok.to_string())))
    }
}

fn parse_int(tok: &str, line: usize) -> Result<i64, FormatError> {
    tok.parse()
        .map_err(|_| err(line, FormatErrorKind::BadInteger(tok.to_string())))
}

fn parse_dec(tok: &str, line: usize) -> Result<Dec, FormatError> {
    tok.parse()
        .map_err(|_| err(line, FormatErrorKind::BadDecimal(tok.to_string())))
}

struct Lines<'a> {
    /// (1-based line number, content with comments and blanks skipped)
    items: Vec<(usize, &'a str)>,
    /// leading comment lines, `#` stripped
    leading_comments: Vec<String>,
}

fn split_lines(text: &str) -> Lines<'_> {
    let mut items = Vec::new();
    let mut leading_comments = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            // comments up to the first directive after the header belong to
            // the document; later ones are dropped by canonicalization
            if items.len() <= 1 {
                leading_comments.push(comment.trim_start().to_string());
            }
            continue;
        }
        items.push((i + 1, line));
    }
    Lines {
        items,
        leading_comments,
    }
}

fn check_header(
    lines: &Lines<'_>,
    expected: &str,
) -> Result<(), FormatError> {
    match lines.items.first() {
        Some(&(line, content)) => {
            let mut parts = content.split_ascii_whitespace();
            let tag = parts.next().unwrap_or("");
            let version = parts.next();
            if !tag.starts_with('%') {
                return Err(err(line, FormatErrorKind::MissingHeader));
            }
            if tag != expected || version != Some("1") || parts.next().is_some() {
                return Err(err(
                    line,
                    FormatErrorKind::UnsupportedHeader(content.to_string()),
                ));
            }
            Ok(())
        }
        None => Err(err(1, FormatErrorKind::MissingHeader)),
    }
}

type PendingDirective = Box<dyn FnOnce(&mut ChartBuilder)>;

pub fn parse_chart(text: &str) -> Result<ChartDocument, FormatError> {
    let lines = split_lines(text);
    check_header(&lines, "%chart")?;

    let mut degree: Option<(usize, i64)> = None;
    let mut pending: Vec<PendingDirective> = Vec::new();
    let mut line_of_id: std::collections::BTreeMap<String, usize> =
        std::collections::BTreeMap::new();

    for &(line, content) in &lines.items[1..] {
        let toks: Vec<&str> = content.split_ascii_whitespace().collect();
        match toks[0] {
            "degree" => {
                if degree.is_some() {
                    return Err(err(line, FormatErrorKind::DuplicateDegree));
                }
                if toks.len() != 2 {
                    return Err(err(
                        line,
                        FormatErrorKind::WrongArity {
                            directive: "degree",
                            expected: "`degree <n>`",
                        },
                    ));
                }
                degree = Some((line, parse_int(toks[1], line)?));
            }
            "vertex" => {
                if toks.len() != 3 {
                    return Err(err(
                        line,
                        FormatErrorKind::WrongArity {
                            directive: "vertex",
                            expected: "`vertex <id> <kind>`",
                        },
                    ));
                }
                let id = parse_id(toks[1], line)?.to_string();
                let kind = crate::chart::VertexKind::from_name(toks[2]).ok_or_else(|| {
                    err(line, FormatErrorKind::UnknownVertexKind(toks[2].to_string()))
                })?;
                line_of_id.entry(id.clone()).or_insert(line);
                pending.push(Box::new(move |b| {
                    b.vertex(&id, kind);
                }));
            }
            "edge" => {
                if toks.len() != 5 {
                    return Err(err(
                        line,
                        FormatErrorKind::WrongArity {
                            directive: "edge",
                            expected: "`edge <id> <label> <tail> <head>`",
                        },
                    ));
                }
                let id = parse_id(toks[1], line)?.to_string();
                let label = parse_int(toks[2], line)?;
                let tail = parse_id(toks[3], line)?.to_string();
                let head = parse_id(toks[4], line)?.to_string();
                line_of_id.entry(id.clone()).or_insert(line);
                pending.push(Box::new(move |b| {
                    b.edge(&id, label, &tail, &head);
                }));
            }
            "rot" => {
                if toks.len() < 3 {
                    return Err(err(
                        line,
                        FormatErrorKind::WrongArity {
                            directive: "rot",
                            expected: "`rot <vertex> <edge>:t|h[,...]`",
                        },
                    ));
                }
                let vid = parse_id(toks[1], line)?.to_string();
                let spec = toks[2..].concat();
                let mut ends = Vec::new();
                for item in spec.split(',') {
                    let (ename, side) = item.split_once(':').ok_or_else(|| {
                        err(line, FormatErrorKind::RotationSyntax(item.to_string()))
                    })?;
                    let ename = parse_id(ename, line)?.to_string();
                    let side = match side {
                        "t" => EndSide::Tail,
                        "h" => EndSide::Head,
                        _ => {
                            return Err(err(
                                line,
                                FormatErrorKind::RotationSyntax(item.to_string()),
                            ))
                        }
                    };
                    ends.push((ename, side));
                }
                line_of_id.entry(format!("rotation of {vid}")).or_insert(line);
                pending.push(Box::new(move |b| {
                    b.rotation(&vid, ends.iter().map(|(e, s)| (e.as_str(), *s)));
                }));
            }
            "coord" => {
                if toks.len() != 4 {
                    return Err(err(
                        line,
                        FormatErrorKind::WrongArity {
                            directive: "coord",
                            expected: "`coord <vertex> <x> <y>`",
                        },
                    ));
                }
                let vid = parse_id(toks[1], line)?.to_string();
                let x = parse_dec(toks[2], line)?;
                let y = parse_dec(toks[3], line)?;
                pending.push(Box::new(move |b| {
                    b.coord(&vid, x, y);
                }));
            }
            other => {
                return Err(err(line, FormatErrorKind::UnknownDirective(other.to_string())));
            }
        }
    }

    let (degree_line, degree) = degree.ok_or_else(|| {
        let last = lines.items.last().map_or(1, |&(l, _)| l);
        err(last, FormatErrorKind::MissingDegree)
    })?;
    let mut b = ChartBuilder::new(degree);
    for apply in pending {
        apply(&mut b);
    }
    let chart = b.finish().map_err(|e| {
        let line = match &e {
            BuildError::DuplicateId(id) => line_of_id.get(id).copied(),
            BuildError::DanglingReference { subject, .. } => line_of_id.get(subject).copied(),
            BuildError::RotationArity { vertex, .. } => line_of_id
                .get(&format!("rotation of {vertex}"))
                .or_else(|| line_of_id.get(vertex))
                .copied(),
            BuildError::MisplacedEnd { vertex, .. } => line_of_id
                .get(&format!("rotation of {vertex}"))
                .copied(),
            BuildError::RepeatedEnd { edge, .. } => line_of_id.get(edge).copied(),
            BuildError::MissingRotation(id) => line_of_id.get(id).copied(),
            BuildError::BadDegree(_) => Some(degree_line),
        };
        err(line.unwrap_or(degree_line), FormatErrorKind::Build(e))
    })?;

    let mut name = None;
    let mut comments = Vec::new();
    for c in lines.leading_comments {
        match c.strip_prefix("name:") {
            Some(n) if name.is_none() => name = Some(n.trim().to_string()),
            _ => comments.push(c),
        }
    }
    Ok(ChartDocument {
        version: 1,
        name,
        comments,
        chart,
    })
}

/// Emit the canonical text form.
pub fn serialize_chart(doc: &ChartDocument) -> String {
    let doc = doc.canonicalize();
    let chart = &doc.chart;
    let mut out = String::new();
    out.push_str("%chart 1\n");
    if let Some(name) = &doc.name {
        let _ = writeln!(out, "# name: {name}");
    }
    for c in &doc.comments {
        let _ = writeln!(out, "# {c}");
    }
    let _ = writeln!(out, "degree {}", chart.degree());
    for v in chart.vertices() {
        let _ = writeln!(out, "vertex {} {}", v.name, v.kind.name());
    }
    for e in chart.edges() {
        let _ = writeln!(
            out,
            "edge {} {} {} {}",
            e.name,
            e.label,
            chart.vertex(e.tail).name,
            chart.vertex(e.head).name
        );
    }
    for v in chart.vertices() {
        let tokens: Vec<String> = v
            .rotation
            .iter()
            .map(|&(e, s)| end_token(&chart.edge(e).name, s))
            .collect();
        let _ = writeln!(out, "rot {} {}", v.name, tokens.join(","));
    }
    for (&vi, &(x, y)) in chart.coords() {
        let _ = writeln!(out, "coord {} {x} {y}", chart.vertices()[vi].name);
    }
    out
}

pub fn parse_targets(text: &str) -> Result<TargetCounts, FormatError> {
    let lines = split_lines(text);
    check_header(&lines, "%targets")?;
    let mut out = TargetCounts::new();
    for &(line, content) in &lines.items[1..] {
        let toks: Vec<&str> = content.split_ascii_whitespace().collect();
        if toks.len() != 4 {
            return Err(err(
                line,
                FormatErrorKind::WrongArity {
                    directive: "targets entry",
                    expected: "`B|T|D <index> +|- <count>`",
                },
            ));
        }
        let index = parse_int(toks[1], line)?;
        let sign = match toks[2] {
            "+" => Sign::Plus,
            "-" => Sign::Minus,
            other => return Err(err(line, FormatErrorKind::BadSign(other.to_string()))),
        };
        let count = parse_int(toks[3], line)?;
        if count < 0 {
            return Err(err(line, FormatErrorKind::NegativeCount(count)));
        }
        match toks[0] {
            "B" => out.add_b(index, sign, count),
            "T" => out.add_t(index, sign, count),
            "D" => out.add_d(index, sign, count),
            other => return Err(err(line, FormatErrorKind::UnknownTable(other.to_string()))),
        }
    }
    Ok(out)
}

pub fn serialize_targets(t: &TargetCounts) -> String {
    let mut out = String::from("%targets 1\n");
    let mut write_table = |tag: &str, map: &std::collections::BTreeMap<i64, (i64, i64)>| {
        for (&p, &(plus, minus)) in map {
            if plus > 0 {
                let _ = writeln!(out, "{tag} {p} + {plus}");
            }
            if minus > 0 {
                let _ = writeln!(out, "{tag} {p} - {minus}");
            }
        }
    };
    write_table("B", t.b_map());
    write_table("T", t.t_map());
    write_table("D", t.d_map());
    out
}
