//! Small gadget charts used as building blocks and test fixtures.
//!
//! * `fe(p)`: one label-`p` edge between a positive and a negative black
//!   vertex.
//! * `sw(q, sign)`: a white vertex of index `q` with all six ends capped by
//!   black vertices (incoming ends fed by positive blacks, outgoing ends
//!   capped by negative blacks).
//! * `xg(i, j)`: two arcs of labels `i`, `j` crossing once, capped by blacks.
//! * `sp(p)`: a positive singular vertex joined to a negative one by two
//!   parallel label-`p` edges.
//! * `sb(p)`: a positive singular vertex with both edges capped by negative
//!   blacks.
//! * `wp(q)`: two opposite-sign white vertices of index `q` joined by six
//!   edges, with no black vertices.

use crate::chart::{Chart, ChartBuilder, EdgeEnd, EndSide, Sign, VertexId, VertexKind};

/// The white-vertex rotation template: slot directions and labels in
/// counterclockwise order, for a vertex of index `q` and the given sign.
/// Incoming slots come first; the middle incoming slot carries the larger
/// label exactly for positive vertices.
pub fn white_slots(q: i64, sign: Sign) -> [(EndSide, i64); 6] {
    let (a, b) = match sign {
        Sign::Plus => (q - 1, q),
        Sign::Minus => (q, q - 1),
    };
    [
        (EndSide::Head, a),
        (EndSide::Head, b),
        (EndSide::Head, a),
        (EndSide::Tail, b),
        (EndSide::Tail, a),
        (EndSide::Tail, b),
    ]
}

pub fn fe(p: i64, degree: i64) -> Chart {
    let mut b = ChartBuilder::new(degree);
    b.vertex("bp", VertexKind::Black);
    b.vertex("bm", VertexKind::Black);
    b.edge("e1", p, "bp", "bm");
    b.finish().expect("fe fixture")
}

pub fn sw(q: i64, sign: Sign, degree: i64) -> Chart {
    let mut b = ChartBuilder::new(degree);
    b.vertex("w", VertexKind::White);
    let slots = white_slots(q, sign);
    let mut rotation: Vec<(String, EndSide)> = Vec::new();
    for (i, &(side, label)) in slots.iter().enumerate() {
        let bname = format!("b{i}");
        let ename = format!("e{i}");
        b.vertex(&bname, VertexKind::Black);
        match side {
            // incoming end of w: edge runs from a positive black into w
            EndSide::Head => b.edge(&ename, label, &bname, "w"),
            // outgoing end of w: edge runs from w to a negative black
            EndSide::Tail => b.edge(&ename, label, "w", &bname),
        };
        rotation.push((ename, side));
    }
    b.rotation("w", rotation.iter().map(|(e, s)| (e.as_str(), *s)));
    b.finish().expect("sw fixture")
}

pub fn xg(i: i64, j: i64, degree: i64) -> Chart {
    let mut b = ChartBuilder::new(degree);
    b.vertex("c", VertexKind::Crossing);
    for name in ["bi_in", "bj_in", "bi_out", "bj_out"] {
        b.vertex(name, VertexKind::Black);
    }
    b.edge("ai", i, "bi_in", "c");
    b.edge("aj", j, "bj_in", "c");
    b.edge("ci", i, "c", "bi_out");
    b.edge("cj", j, "c", "bj_out");
    b.rotation(
        "c",
        [
            ("ai", EndSide::Head),
            ("aj", EndSide::Head),
            ("ci", EndSide::Tail),
            ("cj", EndSide::Tail),
        ],
    );
    b.finish().expect("xg fixture")
}

pub fn sp(p: i64, degree: i64) -> Chart {
    let mut b = ChartBuilder::new(degree);
    b.vertex("sp", VertexKind::Singular);
    b.vertex("sm", VertexKind::Singular);
    b.edge("e1", p, "sp", "sm");
    b.edge("e2", p, "sp", "sm");
    b.rotation("sp", [("e1", EndSide::Tail), ("e2", EndSide::Tail)]);
    b.rotation("sm", [("e1", EndSide::Head), ("e2", EndSide::Head)]);
    b.finish().expect("sp fixture")
}

pub fn sb(p: i64, degree: i64) -> Chart {
    let mut b = ChartBuilder::new(degree);
    b.vertex("s", VertexKind::Singular);
    b.vertex("b1", VertexKind::Black);
    b.vertex("b2", VertexKind::Black);
    b.edge("e1", p, "s", "b1");
    b.edge("e2", p, "s", "b2");
    b.rotation("s", [("e1", EndSide::Tail), ("e2", EndSide::Tail)]);
    b.finish().expect("sb fixture")
}

/// The black-free two-white-vertex chart. Of the possible end matchings
/// between the two canonical rotations, exactly one is a sphere; it is
/// frozen here and re-discovered by exhaustive search in the tests.
pub fn wp(q: i64, degree: i64) -> Chart {
    let mut b = ChartBuilder::new(degree);
    b.vertex("w1", VertexKind::White);
    b.vertex("w2", VertexKind::White);
    b.edge("a", q, "w1", "w2");
    b.edge("b", q - 1, "w1", "w2");
    b.edge("c", q, "w1", "w2");
    b.edge("x", q - 1, "w2", "w1");
    b.edge("y", q, "w2", "w1");
    b.edge("z", q - 1, "w2", "w1");
    b.rotation(
        "w1",
        [
            ("z", EndSide::Head),
            ("y", EndSide::Head),
            ("x", EndSide::Head),
            ("a", EndSide::Tail),
            ("b", EndSide::Tail),
            ("c", EndSide::Tail),
        ],
    );
    b.rotation(
        "w2",
        [
            ("c", EndSide::Head),
            ("b", EndSide::Head),
            ("a", EndSide::Head),
            ("x", EndSide::Tail),
            ("y", EndSide::Tail),
            ("z", EndSide::Tail),
        ],
    );
    b.finish().expect("wp fixture")
}

/// The fixture set exercised by the identity test suites.
pub fn catalog() -> Vec<Chart> {
    vec![
        fe(1, 2),
        fe(3, 4),
        sw(2, Sign::Plus, 3),
        sw(2, Sign::Minus, 3),
        sw(3, Sign::Plus, 4),
        sw(3, Sign::Minus, 4),
        wp(2, 3),
        sp(2, 3),
        sb(2, 3),
        xg(1, 3, 4),
    ]
}

/// Rebuild a chart with one vertex rotation replaced. Intended for tests
/// that perturb a valid chart into an invalid one.
pub fn with_rotation(chart: &Chart, vertex: VertexId, rotation: Vec<EdgeEnd>) -> Chart {
    let mut b = ChartBuilder::new(chart.degree());
    for v in chart.vertices() {
        b.vertex(&v.name, v.kind);
    }
    for e in chart.edges() {
        b.edge(
            &e.name,
            e.label,
            &chart.vertex(e.tail).name,
            &chart.vertex(e.head).name,
        );
    }
    for (vi, v) in chart.vertices().iter().enumerate() {
        let rot = if VertexId(vi) == vertex {
            &rotation
        } else {
            &v.rotation
        };
        let ends: Vec<(&str, EndSide)> = rot
            .iter()
            .map(|&(e, s)| (chart.edge(e).name.as_str(), s))
            .collect();
        b.rotation(&v.name, ends);
    }
    b.finish().expect("rotation replacement")
}
