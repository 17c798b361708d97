//! Indices, signs, double-arc tracing, and exact count tables.
//!
//! The conventions, stated on the chart:
//!
//! * A black vertex's index is its edge's label. Its sign is positive when
//!   the edge leaves it (the double arc points away from the branch point).
//! * A white vertex's index is the larger of its two labels `p`, `p+1`. Its
//!   sign is positive when the middle incoming end carries `p+1`.
//! * A singular vertex's index is its common label; positive when both ends
//!   point away from it.
//!
//! Double arcs are maximal edge chains through crossing vertices; chains end
//! at black, white, or singular vertices, while closed curves that meet only
//! crossings are tracked separately as loops. `E(p)` counts chains of label
//! `p` and satisfies, on every valid chart, the double-count
//!
//! ```text
//! E(p) = B(p,+) + 2T(p,+) + T(p,-) + T(p+1,+) + 2T(p+1,-) + 2D(p,+)
//!      = B(p,-) + 2T(p,-) + T(p,+) + T(p+1,-) + 2T(p+1,+) + 2D(p,-)
//! ```
//!
//! which is re-checked by [`check_edge_count`].

use std::collections::BTreeMap;

use crate::chart::{Chart, EdgeEnd, EdgeId, EndSide, Sign, VertexId, VertexKind};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CensusError {
    #[error("no index for crossing vertex `{0}`")]
    NoIndexForCrossing(String),
    #[error("no sign for crossing vertex `{0}`")]
    NoSignForCrossing(String),
}

/// Exact count tables keyed by index. Absent keys mean zero; zero entries
/// are never stored, so equal tables compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Census {
    b: BTreeMap<i64, (i64, i64)>,
    t: BTreeMap<i64, (i64, i64)>,
    d: BTreeMap<i64, (i64, i64)>,
    e: BTreeMap<i64, i64>,
    l: BTreeMap<i64, i64>,
}

fn bump(map: &mut BTreeMap<i64, (i64, i64)>, p: i64, sign: Sign, count: i64) {
    if count == 0 {
        return;
    }
    let entry = map.entry(p).or_insert((0, 0));
    match sign {
        Sign::Plus => entry.0 += count,
        Sign::Minus => entry.1 += count,
    }
    if *entry == (0, 0) {
        map.remove(&p);
    }
}

impl Census {
    pub fn new() -> Census {
        Census::default()
    }

    pub fn add_b(&mut self, p: i64, sign: Sign, count: i64) {
        bump(&mut self.b, p, sign, count);
    }

    pub fn add_t(&mut self, q: i64, sign: Sign, count: i64) {
        bump(&mut self.t, q, sign, count);
    }

    pub fn add_d(&mut self, r: i64, sign: Sign, count: i64) {
        bump(&mut self.d, r, sign, count);
    }

    pub fn add_e(&mut self, p: i64, count: i64) {
        if count != 0 {
            let v = self.e.entry(p).or_insert(0);
            *v += count;
            if *v == 0 {
                self.e.remove(&p);
            }
        }
    }

    pub fn add_l(&mut self, p: i64, count: i64) {
        if count != 0 {
            let v = self.l.entry(p).or_insert(0);
            *v += count;
            if *v == 0 {
                self.l.remove(&p);
            }
        }
    }

    pub fn b(&self, p: i64) -> (i64, i64) {
        self.b.get(&p).copied().unwrap_or((0, 0))
    }

    pub fn t(&self, q: i64) -> (i64, i64) {
        self.t.get(&q).copied().unwrap_or((0, 0))
    }

    pub fn d(&self, r: i64) -> (i64, i64) {
        self.d.get(&r).copied().unwrap_or((0, 0))
    }

    pub fn e(&self, p: i64) -> i64 {
        self.e.get(&p).copied().unwrap_or(0)
    }

    pub fn l(&self, p: i64) -> i64 {
        self.l.get(&p).copied().unwrap_or(0)
    }

    pub fn b_diff(&self, p: i64) -> i64 {
        let (plus, minus) = self.b(p);
        plus - minus
    }

    pub fn t_diff(&self, q: i64) -> i64 {
        let (plus, minus) = self.t(q);
        plus - minus
    }

    pub fn d_diff(&self, r: i64) -> i64 {
        let (plus, minus) = self.d(r);
        plus - minus
    }

    pub fn b_map(&self) -> &BTreeMap<i64, (i64, i64)> {
        &self.b
    }

    pub fn t_map(&self) -> &BTreeMap<i64, (i64, i64)> {
        &self.t
    }

    pub fn d_map(&self) -> &BTreeMap<i64, (i64, i64)> {
        &self.d
    }

    pub fn e_map(&self) -> &BTreeMap<i64, i64> {
        &self.e
    }

    pub fn l_map(&self) -> &BTreeMap<i64, i64> {
        &self.l
    }

    pub fn is_black_free(&self) -> bool {
        self.b.is_empty()
    }

    /// Smallest and largest index carrying a B, T, or D count.
    pub fn support_bounds(&self) -> Option<(i64, i64)> {
        let keys = self
            .b
            .keys()
            .chain(self.t.keys())
            .chain(self.d.keys())
            .copied();
        let (mut lo, mut hi) = (None, None);
        for k in keys {
            lo = Some(lo.map_or(k, |v: i64| v.min(k)));
            hi = Some(hi.map_or(k, |v: i64| v.max(k)));
        }
        Some((lo?, hi?))
    }

    /// Census of a disjoint union: counts add.
    pub fn sum(&self, other: &Census) -> Census {
        let mut out = self.clone();
        for (&p, &(plus, minus)) in &other.b {
            out.add_b(p, Sign::Plus, plus);
            out.add_b(p, Sign::Minus, minus);
        }
        for (&q, &(plus, minus)) in &other.t {
            out.add_t(q, Sign::Plus, plus);
            out.add_t(q, Sign::Minus, minus);
        }
        for (&r, &(plus, minus)) in &other.d {
            out.add_d(r, Sign::Plus, plus);
            out.add_d(r, Sign::Minus, minus);
        }
        for (&p, &n) in &other.e {
            out.add_e(p, n);
        }
        for (&p, &n) in &other.l {
            out.add_l(p, n);
        }
        out
    }

    /// All indices shifted by `k`.
    pub fn shifted(&self, k: i64) -> Census {
        let shift_pair = |m: &BTreeMap<i64, (i64, i64)>| {
            m.iter().map(|(&p, &v)| (p + k, v)).collect()
        };
        Census {
            b: shift_pair(&self.b),
            t: shift_pair(&self.t),
            d: shift_pair(&self.d),
            e: self.e.iter().map(|(&p, &v)| (p + k, v)).collect(),
            l: self.l.iter().map(|(&p, &v)| (p + k, v)).collect(),
        }
    }

    /// Plus and minus counts exchanged everywhere; E and L are unaffected.
    pub fn sign_swapped(&self) -> Census {
        let swap = |m: &BTreeMap<i64, (i64, i64)>| {
            m.iter()
                .map(|(&p, &(plus, minus))| (p, (minus, plus)))
                .collect()
        };
        Census {
            b: swap(&self.b),
            t: swap(&self.t),
            d: swap(&self.d),
            e: self.e.clone(),
            l: self.l.clone(),
        }
    }
}

/// Index of a black, white, or singular vertex.
pub fn vertex_index(chart: &Chart, v: VertexId) -> Result<i64, CensusError> {
    let vertex = chart.vertex(v);
    let label = |end: &EdgeEnd| chart.edge(end.0).label;
    match vertex.kind {
        VertexKind::Black | VertexKind::Singular => Ok(label(&vertex.rotation[0])),
        VertexKind::White => Ok(vertex.rotation.iter().map(label).max().unwrap()),
        VertexKind::Crossing => Err(CensusError::NoIndexForCrossing(vertex.name.clone())),
    }
}

/// Sign of a black, white, or singular vertex.
pub fn vertex_sign(chart: &Chart, v: VertexId) -> Result<Sign, CensusError> {
    let vertex = chart.vertex(v);
    match vertex.kind {
        VertexKind::Black | VertexKind::Singular => Ok(match vertex.rotation[0].1 {
            EndSide::Tail => Sign::Plus,
            EndSide::Head => Sign::Minus,
        }),
        VertexKind::White => {
            let k = vertex.rotation.len();
            let incoming: Vec<bool> = vertex
                .rotation
                .iter()
                .map(|&end| Chart::end_is_incoming(end))
                .collect();
            // the middle incoming end is the one flanked by incoming ends
            let middle = (0..k)
                .find(|&i| incoming[i] && incoming[(i + 1) % k] && incoming[(i + k - 1) % k])
                .expect("white template");
            let middle_label = chart.edge(vertex.rotation[middle].0).label;
            let index = vertex_index(chart, v)?;
            Ok(if middle_label == index {
                Sign::Plus
            } else {
                Sign::Minus
            })
        }
        VertexKind::Crossing => Err(CensusError::NoSignForCrossing(vertex.name.clone())),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcEndpoint {
    pub vertex: VertexId,
    pub end: EdgeEnd,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ArcKind {
    Chain { start: ArcEndpoint, end: ArcEndpoint },
    Loop,
}

/// A maximal run of same-label edges through crossing vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arc {
    pub label: i64,
    pub edges: Vec<EdgeId>,
    pub kind: ArcKind,
}

impl Arc {
    pub fn is_loop(&self) -> bool {
        matches!(self.kind, ArcKind::Loop)
    }
}

/// The edge on the far side of a crossing, continuing the arc. Arrival is
/// along the head end of `e`; the continuation leaves along the cyclically
/// opposite end, which on a valid chart is a tail end of equal label.
fn continue_through_crossing(chart: &Chart, v: VertexId, e: EdgeId) -> Option<EdgeId> {
    let vertex = chart.vertex(v);
    if vertex.kind != VertexKind::Crossing {
        return None;
    }
    let pos = vertex
        .rotation
        .iter()
        .position(|&(eid, side)| eid == e && side == EndSide::Head)?;
    let (next_edge, side) = vertex.rotation[(pos + 2) % 4];
    (side == EndSide::Tail).then_some(next_edge)
}

/// Partition the edges into double arcs. Chains start at an outgoing end of
/// a non-crossing vertex; anything left over forms loops through crossings.
pub fn trace_arcs(chart: &Chart) -> Vec<Arc> {
    let mut used = vec![false; chart.edges().len()];
    let mut arcs = Vec::new();

    for v in chart.vertex_ids() {
        let vertex = chart.vertex(v);
        if vertex.kind == VertexKind::Crossing {
            continue;
        }
        for &(start_edge, side) in &vertex.rotation {
            if side != EndSide::Tail {
                continue;
            }
            let mut edges = vec![start_edge];
            used[start_edge.0] = true;
            let mut e = start_edge;
            loop {
                let target = chart.edge(e).head;
                match continue_through_crossing(chart, target, e) {
                    Some(next) => {
                        used[next.0] = true;
                        edges.push(next);
                        e = next;
                    }
                    None => {
                        let end_vertex = target;
                        arcs.push(Arc {
                            label: chart.edge(start_edge).label,
                            kind: ArcKind::Chain {
                                start: ArcEndpoint {
                                    vertex: v,
                                    end: (start_edge, EndSide::Tail),
                                },
                                end: ArcEndpoint {
                                    vertex: end_vertex,
                                    end: (e, EndSide::Head),
                                },
                            },
                            edges,
                        });
                        break;
                    }
                }
            }
        }
    }

    for start in chart.edge_ids() {
        if used[start.0] {
            continue;
        }
        let mut edges = vec![start];
        used[start.0] = true;
        let mut e = start;
        loop {
            let target = chart.edge(e).head;
            let next = match continue_through_crossing(chart, target, e) {
                Some(next) => next,
                // only reachable on invalid charts; close the loop here
                None => break,
            };
            if next == start {
                break;
            }
            used[next.0] = true;
            edges.push(next);
            e = next;
        }
        arcs.push(Arc {
            label: chart.edge(start).label,
            edges,
            kind: ArcKind::Loop,
        });
    }

    arcs
}

/// Tally every singularity and arc of the chart.
pub fn census(chart: &Chart) -> Census {
    let mut out = Census::new();
    for v in chart.vertex_ids() {
        let kind = chart.vertex(v).kind;
        if kind == VertexKind::Crossing {
            continue;
        }
        let index = vertex_index(chart, v).expect("non-crossing vertex");
        let sign = vertex_sign(chart, v).expect("non-crossing vertex");
        match kind {
            VertexKind::Black => out.add_b(index, sign, 1),
            VertexKind::White => out.add_t(index, sign, 1),
            VertexKind::Singular => out.add_d(index, sign, 1),
            VertexKind::Crossing => unreachable!(),
        }
    }
    for arc in trace_arcs(chart) {
        if arc.is_loop() {
            out.add_l(arc.label, 1);
        } else {
            out.add_e(arc.label, 1);
        }
    }
    out
}

/// Check the arc double-count: for every index, the number of chains equals
/// both the start-count and the end-count formulas.
pub fn check_edge_count(census: &Census) -> bool {
    let mut keys: Vec<i64> = census
        .b_map()
        .keys()
        .chain(census.t_map().keys())
        .chain(census.d_map().keys())
        .chain(census.e_map().keys())
        .copied()
        .collect();
    if keys.is_empty() {
        return true;
    }
    keys.sort_unstable();
    let (lo, hi) = (keys[0] - 2, keys[keys.len() - 1] + 2);
    for p in lo..=hi {
        let starts = census.b(p).0
            + 2 * census.t(p).0
            + census.t(p).1
            + census.t(p + 1).0
            + 2 * census.t(p + 1).1
            + 2 * census.d(p).0;
        let ends = census.b(p).1
            + 2 * census.t(p).1
            + census.t(p).0
            + census.t(p + 1).1
            + 2 * census.t(p + 1).0
            + 2 * census.d(p).1;
        if census.e(p) != starts || census.e(p) != ends {
            return false;
        }
    }
    true
}
