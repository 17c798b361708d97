//! Chart synthesis from prescribed count tables.
//!
//! Given target counts `B(p,±)`, `T(q,±)`, `D(r,±)` satisfying the extended
//! per-index balance (*), [`realize`] produces a valid chart whose census
//! matches the targets exactly. The pipeline:
//!
//! 1. instantiate the exact vertex multiset and check the per-label end
//!    ledger (balance per label is equivalent to (*) at that label);
//! 2. peel off known gadgets greedily to shrink the residual;
//! 3. wire the residual by backtracking over per-label end matchings,
//!    only ever joining two free ends on the same face or in different
//!    components, so every accepted state stays a sphere;
//! 4. if no sphere wiring exists, insert crossing vertices on label pairs
//!    with gap at least 2 and search again;
//! 5. attach band-layout coordinates for rendering.
//!
//! The search is deterministic: vertices are processed in index-sorted
//! order and candidate ends are ranked by distance in a sign-alternating
//! vertex sequence, mimicking chains of black vertices through whites.

use std::collections::BTreeMap;

use crate::census::{census, Census};
use crate::chart::{Chart, ChartBuilder, EndSide, Sign, VertexKind};
use crate::fixtures;
use crate::render::band_layout;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RealizeError {
    #[error("targets violate the balance equation at index {index}")]
    StarViolation { index: i64 },
    #[error(
        "search budget exhausted after {nodes} nodes ({filled} of {total_slots} ends wired)"
    )]
    BudgetExhausted {
        nodes: u64,
        filled: usize,
        total_slots: usize,
    },
    #[error("no sphere wiring found even with {crossings_tried} inserted crossings")]
    Unrealizable { crossings_tried: usize },
}

/// Prescribed counts for realization. Counts are nonnegative; absent keys
/// are zero.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TargetCounts {
    b: BTreeMap<i64, (i64, i64)>,
    t: BTreeMap<i64, (i64, i64)>,
    d: BTreeMap<i64, (i64, i64)>,
}

fn bump(map: &mut BTreeMap<i64, (i64, i64)>, p: i64, sign: Sign, count: i64) {
    assert!(count >= 0, "target counts are nonnegative");
    if count == 0 {
        return;
    }
    let entry = map.entry(p).or_insert((0, 0));
    match sign {
        Sign::Plus => entry.0 += count,
        Sign::Minus => entry.1 += count,
    }
}

fn take(map: &mut BTreeMap<i64, (i64, i64)>, p: i64, plus: i64, minus: i64) {
    let entry = map.get_mut(&p).expect("count present");
    entry.0 -= plus;
    entry.1 -= minus;
    assert!(entry.0 >= 0 && entry.1 >= 0);
    if *entry == (0, 0) {
        map.remove(&p);
    }
}

impl TargetCounts {
    pub fn new() -> Self {
        TargetCounts::default()
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

    pub fn b(&self, p: i64) -> (i64, i64) {
        self.b.get(&p).copied().unwrap_or((0, 0))
    }

    pub fn t(&self, q: i64) -> (i64, i64) {
        self.t.get(&q).copied().unwrap_or((0, 0))
    }

    pub fn d(&self, r: i64) -> (i64, i64) {
        self.d.get(&r).copied().unwrap_or((0, 0))
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

    pub fn is_empty(&self) -> bool {
        self.b.is_empty() && self.t.is_empty() && self.d.is_empty()
    }

    pub fn vertex_count(&self) -> i64 {
        let total = |m: &BTreeMap<i64, (i64, i64)>| {
            m.values().map(|&(p, n)| p + n).sum::<i64>()
        };
        total(&self.b) + total(&self.t) + total(&self.d)
    }

    /// B/T/D part of a census, for exact comparison.
    pub fn to_census(&self) -> Census {
        let mut out = Census::new();
        for (&p, &(plus, minus)) in &self.b {
            out.add_b(p, Sign::Plus, plus);
            out.add_b(p, Sign::Minus, minus);
        }
        for (&q, &(plus, minus)) in &self.t {
            out.add_t(q, Sign::Plus, plus);
            out.add_t(q, Sign::Minus, minus);
        }
        for (&r, &(plus, minus)) in &self.d {
            out.add_d(r, Sign::Plus, plus);
            out.add_d(r, Sign::Minus, minus);
        }
        out
    }

    pub fn from_census(census: &Census) -> Self {
        let mut out = TargetCounts::new();
        for (&p, &(plus, minus)) in census.b_map() {
            out.add_b(p, Sign::Plus, plus);
            out.add_b(p, Sign::Minus, minus);
        }
        for (&q, &(plus, minus)) in census.t_map() {
            out.add_t(q, Sign::Plus, plus);
            out.add_t(q, Sign::Minus, minus);
        }
        for (&r, &(plus, minus)) in census.d_map() {
            out.add_d(r, Sign::Plus, plus);
            out.add_d(r, Sign::Minus, minus);
        }
        out
    }

    pub fn sum(&self, other: &TargetCounts) -> TargetCounts {
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
        out
    }

    pub fn shifted(&self, k: i64) -> TargetCounts {
        let shift = |m: &BTreeMap<i64, (i64, i64)>| {
            m.iter().map(|(&p, &v)| (p + k, v)).collect()
        };
        TargetCounts {
            b: shift(&self.b),
            t: shift(&self.t),
            d: shift(&self.d),
        }
    }

    /// Smallest and largest edge label a chart with these counts must use:
    /// a white vertex of index `q` uses labels `q-1` and `q`.
    pub fn label_bounds(&self) -> Option<(i64, i64)> {
        let labels = self
            .b
            .keys()
            .copied()
            .chain(self.d.keys().copied())
            .chain(self.t.keys().flat_map(|&q| [q - 1, q]));
        let mut bounds = None;
        for l in labels {
            bounds = Some(match bounds {
                None => (l, l),
                Some((lo, hi)) => (l.min(lo), l.max(hi)),
            });
        }
        bounds
    }

    fn diff(m: &BTreeMap<i64, (i64, i64)>, p: i64) -> i64 {
        m.get(&p).map_or(0, |&(plus, minus)| plus - minus)
    }

    /// First index violating the extended balance equation, if any.
    pub fn star_violation(&self) -> Option<i64> {
        let keys: Vec<i64> = self
            .b
            .keys()
            .chain(self.t.keys())
            .chain(self.d.keys())
            .copied()
            .collect();
        let (&min, &max) = (keys.iter().min()?, keys.iter().max()?);
        (min - 1..=max).find(|&p| {
            let lhs = Self::diff(&self.b, p) + 2 * Self::diff(&self.d, p);
            let rhs = Self::diff(&self.t, p + 1) - Self::diff(&self.t, p);
            lhs != rhs
        })
    }

    pub fn star_holds(&self) -> bool {
        self.star_violation().is_none()
    }
}

/// Fill in the minimal branch-point counts that balance prescribed triple
/// and singular points: with `d_p` the required signed difference at `p`,
/// set `B(p,+) = max(0, d_p)` and `B(p,-) = max(0, -d_p)`.
pub fn plan_targets(
    t: &BTreeMap<i64, (i64, i64)>,
    d: &BTreeMap<i64, (i64, i64)>,
) -> TargetCounts {
    let mut out = TargetCounts::new();
    for (&q, &(plus, minus)) in t {
        out.add_t(q, Sign::Plus, plus);
        out.add_t(q, Sign::Minus, minus);
    }
    for (&r, &(plus, minus)) in d {
        out.add_d(r, Sign::Plus, plus);
        out.add_d(r, Sign::Minus, minus);
    }
    let keys: std::collections::BTreeSet<i64> = out
        .t
        .keys()
        .flat_map(|&q| [q - 1, q])
        .chain(out.d.keys().copied())
        .collect();
    for p in keys {
        let need = TargetCounts::diff(&out.t, p + 1)
            - TargetCounts::diff(&out.t, p)
            - 2 * TargetCounts::diff(&out.d, p);
        out.add_b(p, Sign::Plus, need.max(0));
        out.add_b(p, Sign::Minus, (-need).max(0));
    }
    debug_assert!(out.star_holds());
    out
}

/// Translate indices so all labels are positive (no-op when they already
/// are) and compute the chart degree. Returns the shift applied.
pub fn normalize_targets(t: &TargetCounts) -> (TargetCounts, i64, i64) {
    match t.label_bounds() {
        None => (t.clone(), 0, 1),
        Some((lo, hi)) => {
            let shift = if lo >= 1 { 0 } else { 1 - lo };
            (t.shifted(shift), shift, hi + shift + 1)
        }
    }
}

/// One vertex scheduled for wiring.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlannedVertex {
    Black(i64, Sign),
    White(i64, Sign),
    Singular(i64, Sign),
    Crossing(i64, i64),
}

impl PlannedVertex {
    /// Rotation slots in counterclockwise order: side at the vertex plus
    /// edge label.
    pub fn slots(&self) -> Vec<(EndSide, i64)> {
        match *self {
            PlannedVertex::Black(p, Sign::Plus) => vec![(EndSide::Tail, p)],
            PlannedVertex::Black(p, Sign::Minus) => vec![(EndSide::Head, p)],
            PlannedVertex::White(q, sign) => fixtures::white_slots(q, sign).to_vec(),
            PlannedVertex::Singular(r, Sign::Plus) => vec![(EndSide::Tail, r); 2],
            PlannedVertex::Singular(r, Sign::Minus) => vec![(EndSide::Head, r); 2],
            PlannedVertex::Crossing(i, j) => vec![
                (EndSide::Head, i),
                (EndSide::Head, j),
                (EndSide::Tail, i),
                (EndSide::Tail, j),
            ],
        }
    }

    pub fn kind(&self) -> VertexKind {
        match self {
            PlannedVertex::Black(..) => VertexKind::Black,
            PlannedVertex::White(..) => VertexKind::White,
            PlannedVertex::Singular(..) => VertexKind::Singular,
            PlannedVertex::Crossing(..) => VertexKind::Crossing,
        }
    }

    /// Key for the index-sorted, sign-alternating processing sequence.
    fn sort_key(&self) -> (i64, u8, u8) {
        match *self {
            PlannedVertex::Black(p, s) => (p, 0, (s == Sign::Minus) as u8),
            PlannedVertex::Singular(r, s) => (r, 1, (s == Sign::Minus) as u8),
            PlannedVertex::White(q, s) => (q, 2, (s == Sign::Minus) as u8),
            PlannedVertex::Crossing(i, j) => ((i + j) / 2, 3, (j - i) as u8),
        }
    }

    /// Fingerprint identifying interchangeable vertices, for symmetry
    /// breaking among still-untouched candidates.
    fn variant_key(&self) -> (u8, i64, i64) {
        match *self {
            PlannedVertex::Black(p, s) => (0, p, s.to_int()),
            PlannedVertex::White(q, s) => (1, q, s.to_int()),
            PlannedVertex::Singular(r, s) => (2, r, s.to_int()),
            PlannedVertex::Crossing(i, j) => (3, i, j),
        }
    }
}

/// The exact vertex multiset demanded by a target table, in deterministic
/// order.
pub fn planned_vertices(t: &TargetCounts) -> Vec<PlannedVertex> {
    let mut verts = Vec::new();
    for (&p, &(plus, minus)) in &t.b {
        verts.extend(std::iter::repeat_n(PlannedVertex::Black(p, Sign::Plus), plus as usize));
        verts.extend(std::iter::repeat_n(PlannedVertex::Black(p, Sign::Minus), minus as usize));
    }
    for (&q, &(plus, minus)) in &t.t {
        verts.extend(std::iter::repeat_n(PlannedVertex::White(q, Sign::Plus), plus as usize));
        verts.extend(std::iter::repeat_n(PlannedVertex::White(q, Sign::Minus), minus as usize));
    }
    for (&r, &(plus, minus)) in &t.d {
        verts
            .extend(std::iter::repeat_n(PlannedVertex::Singular(r, Sign::Plus), plus as usize));
        verts.extend(
            std::iter::repeat_n(PlannedVertex::Singular(r, Sign::Minus), minus as usize),
        );
    }
    verts
}

/// One end awaiting connection: a planned vertex and a slot position in its
/// rotation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SlotRef {
    pub vertex: usize,
    pub slot: usize,
}

#[derive(Debug, Clone, Default)]
pub struct LabelEnds {
    pub outgoing: Vec<SlotRef>,
    pub incoming: Vec<SlotRef>,
}

/// Per-label tally of the ends contributed by a vertex multiset. Balance
/// per label is equivalent to the extended balance equation there.
#[derive(Debug, Clone, Default)]
pub struct EndLedger {
    pub per_label: BTreeMap<i64, LabelEnds>,
}

impl EndLedger {
    pub fn from_vertices(verts: &[PlannedVertex]) -> EndLedger {
        let mut ledger = EndLedger::default();
        for (vi, v) in verts.iter().enumerate() {
            for (si, (side, label)) in v.slots().into_iter().enumerate() {
                let ends = ledger.per_label.entry(label).or_default();
                let slot = SlotRef {
                    vertex: vi,
                    slot: si,
                };
                match side {
                    EndSide::Tail => ends.outgoing.push(slot),
                    EndSide::Head => ends.incoming.push(slot),
                }
            }
        }
        ledger
    }

    pub fn balanced(&self) -> bool {
        self.per_label
            .values()
            .all(|ends| ends.outgoing.len() == ends.incoming.len())
    }

    /// Labels whose outgoing and incoming end counts differ.
    pub fn unbalanced_labels(&self) -> Vec<i64> {
        self.per_label
            .iter()
            .filter(|(_, ends)| ends.outgoing.len() != ends.incoming.len())
            .map(|(&l, _)| l)
            .collect()
    }
}

enum WireOutcome {
    Found(Chart),
    Unsat,
    Budget { filled: usize, total: usize },
}

/// Backtracking wiring of a vertex multiset into a sphere chart.
struct Wiring<'a> {
    verts: &'a [PlannedVertex],
    degree: i64,
    slot_vertex: Vec<usize>,
    slot_side: Vec<EndSide>,
    slot_label: Vec<i64>,
    slot_pos: Vec<usize>,
    vert_slots: Vec<Vec<usize>>,
    seq: Vec<usize>,
    out_order: Vec<usize>,
    assignment: Vec<Option<usize>>,
    edges: Vec<(usize, usize)>,
    vert_filled: Vec<usize>,
    nodes: &'a mut u64,
    budget: u64,
    budget_hit: bool,
}

impl<'a> Wiring<'a> {
    fn new(verts: &'a [PlannedVertex], degree: i64, budget: u64, nodes: &'a mut u64) -> Self {
        let mut slot_vertex = Vec::new();
        let mut slot_side = Vec::new();
        let mut slot_label = Vec::new();
        let mut slot_pos = Vec::new();
        let mut vert_slots = Vec::new();
        for (vi, v) in verts.iter().enumerate() {
            let mut mine = Vec::new();
            for (si, (side, label)) in v.slots().into_iter().enumerate() {
                mine.push(slot_vertex.len());
                slot_vertex.push(vi);
                slot_side.push(side);
                slot_label.push(label);
                slot_pos.push(si);
            }
            vert_slots.push(mine);
        }
        // rank vertices in the index-sorted, sign-alternating sequence
        let mut order: Vec<usize> = (0..verts.len()).collect();
        order.sort_by_key(|&v| (verts[v].sort_key(), v));
        let mut seq = vec![0usize; verts.len()];
        for (rank, &v) in order.iter().enumerate() {
            seq[v] = rank;
        }
        let mut out_order: Vec<usize> = (0..slot_label.len())
            .filter(|&s| slot_side[s] == EndSide::Tail)
            .collect();
        out_order.sort_by_key(|&s| (seq[slot_vertex[s]], slot_pos[s]));
        let n_slots = slot_label.len();
        Wiring {
            verts,
            degree,
            slot_vertex,
            slot_side,
            slot_label,
            slot_pos,
            vert_slots,
            seq,
            out_order,
            assignment: vec![None; n_slots],
            edges: Vec::new(),
            vert_filled: vec![0; verts.len()],
            nodes,
            budget,
            budget_hit: false,
        }
    }

    /// Components per vertex and the face of every free end, for the
    /// partial map with the current edges (free ends trace as zero-length
    /// detours inside their face).
    fn analyze(&self) -> (Vec<usize>, Vec<usize>) {
        let nv = self.verts.len();
        let mut parent: Vec<usize> = (0..nv).collect();
        fn find(parent: &mut [usize], mut i: usize) -> usize {
            while parent[i] != i {
                parent[i] = parent[parent[i]];
                i = parent[i];
            }
            i
        }
        for &(o, i) in &self.edges {
            let a = find(&mut parent, self.slot_vertex[o]);
            let b = find(&mut parent, self.slot_vertex[i]);
            parent[a] = b;
        }
        let comp: Vec<usize> = (0..nv).map(|v| find(&mut parent, v)).collect();

        let n_slots = self.slot_label.len();
        let mut slot_dart = vec![usize::MAX; n_slots];
        for (k, &(o, i)) in self.edges.iter().enumerate() {
            slot_dart[o] = 2 * k;
            slot_dart[i] = 2 * k + 1;
        }
        let dart_slot = |d: usize| {
            let (o, i) = self.edges[d / 2];
            if d.is_multiple_of(2) {
                o
            } else {
                i
            }
        };
        let mut stub_face = vec![usize::MAX; n_slots];
        let mut dart_face = vec![usize::MAX; 2 * self.edges.len()];
        let mut faces = 0usize;
        for seed in 0..dart_face.len() {
            if dart_face[seed] != usize::MAX {
                continue;
            }
            let face = faces;
            faces += 1;
            let mut d = seed;
            loop {
                dart_face[d] = face;
                let tw = d ^ 1;
                let tslot = dart_slot(tw);
                let rot = &self.vert_slots[self.slot_vertex[tslot]];
                let mut j = (self.slot_pos[tslot] + 1) % rot.len();
                loop {
                    let s = rot[j];
                    if slot_dart[s] == usize::MAX {
                        stub_face[s] = face;
                        j = (j + 1) % rot.len();
                    } else {
                        d = slot_dart[s];
                        break;
                    }
                }
                if d == seed {
                    break;
                }
            }
        }
        for v in 0..nv {
            if self.vert_filled[v] == 0 {
                let face = faces;
                faces += 1;
                for &s in &self.vert_slots[v] {
                    stub_face[s] = face;
                }
            }
        }
        (comp, stub_face)
    }

    fn search(&mut self) -> bool {
        let Some(&slot) = self
            .out_order
            .iter()
            .find(|&&s| self.assignment[s].is_none())
        else {
            return true;
        };
        let (comp, stub_face) = self.analyze();
        let label = self.slot_label[slot];
        let va = self.slot_vertex[slot];
        let mut cands: Vec<usize> = (0..self.slot_label.len())
            .filter(|&s| {
                self.assignment[s].is_none()
                    && self.slot_side[s] == EndSide::Head
                    && self.slot_label[s] == label
                    && (comp[self.slot_vertex[s]] != comp[va]
                        || stub_face[s] == stub_face[slot])
            })
            .collect();
        cands.sort_by_key(|&s| {
            let vb = self.slot_vertex[s];
            let dist = self.seq[vb].abs_diff(self.seq[va]);
            ((vb == va) as usize, dist, self.seq[vb], self.slot_pos[s])
        });
        // untouched identical vertices are interchangeable; try one of each
        let mut seen = Vec::new();
        cands.retain(|&s| {
            let vb = self.slot_vertex[s];
            let key = if self.vert_filled[vb] == 0 {
                (0usize, self.verts[vb].variant_key(), self.slot_pos[s])
            } else {
                (1usize, (0, s as i64, 0), 0)
            };
            if seen.contains(&key) {
                false
            } else {
                seen.push(key);
                true
            }
        });
        for cand in cands {
            if *self.nodes >= self.budget {
                self.budget_hit = true;
                return false;
            }
            *self.nodes += 1;
            self.assignment[slot] = Some(cand);
            self.assignment[cand] = Some(slot);
            self.edges.push((slot, cand));
            self.vert_filled[va] += 1;
            self.vert_filled[self.slot_vertex[cand]] += 1;
            if self.search() {
                return true;
            }
            self.vert_filled[self.slot_vertex[cand]] -= 1;
            self.vert_filled[va] -= 1;
            self.edges.pop();
            self.assignment[slot] = None;
            self.assignment[cand] = None;
            if self.budget_hit {
                return false;
            }
        }
        false
    }

    fn into_chart(self) -> Chart {
        let mut builder = ChartBuilder::new(self.degree);
        let mut names = Vec::with_capacity(self.verts.len());
        let mut counters = [0usize; 4];
        for v in self.verts {
            let (prefix, c) = match v.kind() {
                VertexKind::Black => ("rb", 0),
                VertexKind::White => ("rw", 1),
                VertexKind::Singular => ("rs", 2),
                VertexKind::Crossing => ("rx", 3),
            };
            let name = format!("{prefix}{}", counters[c]);
            counters[c] += 1;
            builder.vertex(&name, v.kind());
            names.push(name);
        }
        let mut edge_names = vec![String::new(); self.edges.len()];
        for (k, &(o, i)) in self.edges.iter().enumerate() {
            let name = format!("re{k}");
            builder.edge(
                &name,
                self.slot_label[o],
                &names[self.slot_vertex[o]],
                &names[self.slot_vertex[i]],
            );
            edge_names[k] = name;
        }
        let mut slot_edge = vec![usize::MAX; self.slot_label.len()];
        for (k, &(o, i)) in self.edges.iter().enumerate() {
            slot_edge[o] = k;
            slot_edge[i] = k;
        }
        for (vi, slots) in self.vert_slots.iter().enumerate() {
            let ends: Vec<(&str, EndSide)> = slots
                .iter()
                .map(|&s| (edge_names[slot_edge[s]].as_str(), self.slot_side[s]))
                .collect();
            builder.rotation(&names[vi], ends);
        }
        builder.finish().expect("wired chart is structurally sound")
    }
}

fn wire(
    verts: &[PlannedVertex],
    degree: i64,
    budget: u64,
    nodes: &mut u64,
) -> WireOutcome {
    let mut wiring = Wiring::new(verts, degree, budget, nodes);
    if wiring.search() {
        WireOutcome::Found(wiring.into_chart())
    } else if wiring.budget_hit {
        WireOutcome::Budget {
            filled: wiring.edges.len() * 2,
            total: wiring.slot_label.len(),
        }
    } else {
        WireOutcome::Unsat
    }
}

/// A peeled sub-target with a known chart.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gadget {
    Fe(i64),
    Sp(i64),
    /// positive singular point capped by two negative blacks
    SbPos(i64),
    /// negative singular point fed by two positive blacks
    SbNeg(i64),
    Sw(i64, Sign),
    Wp(i64),
}

impl Gadget {
    /// The counts this gadget realizes.
    pub fn targets(&self) -> TargetCounts {
        let mut t = TargetCounts::new();
        match *self {
            Gadget::Fe(p) => {
                t.add_b(p, Sign::Plus, 1);
                t.add_b(p, Sign::Minus, 1);
            }
            Gadget::Sp(r) => {
                t.add_d(r, Sign::Plus, 1);
                t.add_d(r, Sign::Minus, 1);
            }
            Gadget::SbPos(r) => {
                t.add_d(r, Sign::Plus, 1);
                t.add_b(r, Sign::Minus, 2);
            }
            Gadget::SbNeg(r) => {
                t.add_d(r, Sign::Minus, 1);
                t.add_b(r, Sign::Plus, 2);
            }
            Gadget::Sw(q, sign) => {
                t.add_t(q, sign, 1);
                let (fed, capped) = match sign {
                    Sign::Plus => (Sign::Plus, Sign::Minus),
                    Sign::Minus => (Sign::Minus, Sign::Plus),
                };
                // incoming labels (q-1, q, q-1) or (q, q-1, q) by sign
                let (two_in, one_in) = match sign {
                    Sign::Plus => (q - 1, q),
                    Sign::Minus => (q, q - 1),
                };
                t.add_b(two_in, fed, 2);
                t.add_b(one_in, fed, 1);
                t.add_b(two_in, capped, 1);
                t.add_b(one_in, capped, 2);
            }
            Gadget::Wp(q) => {
                t.add_t(q, Sign::Plus, 1);
                t.add_t(q, Sign::Minus, 1);
            }
        }
        t
    }

    pub fn chart(&self, degree: i64) -> Chart {
        match *self {
            Gadget::Fe(p) => fixtures::fe(p, degree),
            Gadget::Sp(r) => fixtures::sp(r, degree),
            Gadget::SbPos(r) => fixtures::sb(r, degree),
            Gadget::SbNeg(r) => fixtures::sb(r, degree).reverse_orientation(),
            Gadget::Sw(q, sign) => fixtures::sw(q, sign, degree),
            Gadget::Wp(q) => fixtures::wp(q, degree),
        }
    }
}

/// Greedily extract gadget sub-targets; the sum of the peeled targets and
/// the residual is the input at every stage.
pub fn peel_gadgets(targets: &TargetCounts) -> (Vec<Gadget>, TargetCounts) {
    let mut residual = targets.clone();
    let mut gadgets = Vec::new();
    let mut progress = true;
    while progress {
        progress = false;
        let t_keys: Vec<i64> = residual.t.keys().copied().collect();
        for q in t_keys {
            while residual.t(q).0 >= 1 && residual.t(q).1 >= 1 {
                take(&mut residual.t, q, 1, 1);
                gadgets.push(Gadget::Wp(q));
                progress = true;
            }
            for sign in [Sign::Plus, Sign::Minus] {
                loop {
                    let gadget = Gadget::Sw(q, sign);
                    let need = gadget.targets();
                    let have = |p: i64, s: Sign| match s {
                        Sign::Plus => residual.b(p).0,
                        Sign::Minus => residual.b(p).1,
                    };
                    let count = match sign {
                        Sign::Plus => residual.t(q).0,
                        Sign::Minus => residual.t(q).1,
                    };
                    let enough = count >= 1
                        && need.b_map().iter().all(|(&p, &(plus, minus))| {
                            have(p, Sign::Plus) >= plus && have(p, Sign::Minus) >= minus
                        });
                    if !enough {
                        break;
                    }
                    match sign {
                        Sign::Plus => take(&mut residual.t, q, 1, 0),
                        Sign::Minus => take(&mut residual.t, q, 0, 1),
                    }
                    for (&p, &(plus, minus)) in need.b_map() {
                        take(&mut residual.b, p, plus, minus);
                    }
                    gadgets.push(gadget);
                    progress = true;
                }
            }
        }
        let d_keys: Vec<i64> = residual.d.keys().copied().collect();
        for r in d_keys {
            while residual.d(r).0 >= 1 && residual.d(r).1 >= 1 {
                take(&mut residual.d, r, 1, 1);
                gadgets.push(Gadget::Sp(r));
                progress = true;
            }
            while residual.d(r).0 >= 1 && residual.b(r).1 >= 2 {
                take(&mut residual.d, r, 1, 0);
                take(&mut residual.b, r, 0, 2);
                gadgets.push(Gadget::SbPos(r));
                progress = true;
            }
            while residual.d(r).1 >= 1 && residual.b(r).0 >= 2 {
                take(&mut residual.d, r, 0, 1);
                take(&mut residual.b, r, 2, 0);
                gadgets.push(Gadget::SbNeg(r));
                progress = true;
            }
        }
        let b_keys: Vec<i64> = residual.b.keys().copied().collect();
        for p in b_keys {
            while residual.b(p).0 >= 1 && residual.b(p).1 >= 1 {
                take(&mut residual.b, p, 1, 1);
                gadgets.push(Gadget::Fe(p));
                progress = true;
            }
        }
    }
    (gadgets, residual)
}

#[derive(Debug, Clone)]
pub struct Realization {
    pub chart: Chart,
    /// Index shift applied by normalization (0 for already-positive targets).
    pub shift: i64,
    pub degree: i64,
    /// Backtracking nodes consumed.
    pub nodes: u64,
    pub crossings_inserted: usize,
    pub gadgets: Vec<Gadget>,
}

pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Label pairs available for crossing insertion, ordered by gap then index.
fn crossing_pairs(residual: &TargetCounts) -> Vec<(i64, i64)> {
    let Some((lo, hi)) = residual.label_bounds() else {
        return Vec::new();
    };
    let ledger = EndLedger::from_vertices(&planned_vertices(residual));
    let labels: Vec<i64> = (lo..=hi).filter(|l| ledger.per_label.contains_key(l)).collect();
    let mut pairs = Vec::new();
    for (ai, &a) in labels.iter().enumerate() {
        for &b in &labels[ai + 1..] {
            if b - a >= 2 {
                pairs.push((a, b));
            }
        }
    }
    pairs.sort_by_key(|&(a, b)| (b - a, a));
    pairs
}

/// Synthesize a valid chart realizing `targets` exactly (after index
/// normalization when some label would be nonpositive). The search budget
/// counts backtracking nodes.
pub fn realize(targets: &TargetCounts, budget: u64) -> Result<Realization, RealizeError> {
    if let Some(index) = targets.star_violation() {
        return Err(RealizeError::StarViolation { index });
    }
    let (normalized, shift, degree) = normalize_targets(targets);
    let mut nodes = 0u64;
    if normalized.is_empty() {
        return Ok(Realization {
            chart: Chart::empty(degree),
            shift,
            degree,
            nodes,
            crossings_inserted: 0,
            gadgets: Vec::new(),
        });
    }

    let (gadgets, residual) = peel_gadgets(&normalized);
    let mut parts: Vec<Chart> = gadgets
        .iter()
        .enumerate()
        .map(|(i, g)| g.chart(degree).with_prefixed_names(&format!("g{i}_")))
        .collect();

    let mut crossings_inserted = 0;
    if !residual.is_empty() {
        let base = planned_vertices(&residual);
        debug_assert!(EndLedger::from_vertices(&base).balanced());
        let mut wired = None;
        let mut attempts: Vec<Vec<PlannedVertex>> = vec![base.clone()];
        // crossing-insertion fallback: 1..=3 extra crossings per label pair
        for k in 1..=3usize {
            for &(i, j) in &crossing_pairs(&residual) {
                let mut verts = base.clone();
                verts.extend(std::iter::repeat_n(PlannedVertex::Crossing(i, j), k));
                attempts.push(verts);
            }
        }
        let total_attempts = attempts.len();
        for (ai, verts) in attempts.into_iter().enumerate() {
            match wire(&verts, degree, budget, &mut nodes) {
                WireOutcome::Found(chart) => {
                    crossings_inserted = verts.len() - base.len();
                    wired = Some(chart);
                    break;
                }
                WireOutcome::Unsat => {
                    if ai + 1 == total_attempts {
                        return Err(RealizeError::Unrealizable {
                            crossings_tried: verts.len() - base.len(),
                        });
                    }
                }
                WireOutcome::Budget { filled, total } => {
                    return Err(RealizeError::BudgetExhausted {
                        nodes,
                        filled,
                        total_slots: total,
                    });
                }
            }
        }
        parts.push(wired.expect("wiring outcome handled above"));
    }

    let chart = Chart::disjoint_union(&parts, degree).expect("parts carry unique ids");
    let coords = band_layout(&chart);
    let chart = chart.set_coords(coords);
    Ok(Realization {
        chart,
        shift,
        degree,
        nodes,
        crossings_inserted,
        gadgets,
    })
}

/// Round-trip oracle: the chart is valid and its census matches the targets
/// on B, T, and D (E and L are unconstrained).
pub fn verify_realization(targets: &TargetCounts, chart: &Chart) -> bool {
    if !crate::chart::validate(chart).ok() {
        return false;
    }
    let table = census(chart);
    table.b_map() == targets.b_map()
        && table.t_map() == targets.t_map()
        && table.d_map() == targets.d_map()
}
