//! The chart data model.
//!
//! A chart of degree `n` is a labeled oriented planar graph: edges carry
//! braid-generator labels in `[1, n-1]` and are oriented, and every vertex
//! stores the counterclockwise cyclic order of its incident edge ends. The
//! vertex kinds and their arities are
//!
//! * `black` (1 end): a branch point,
//! * `white` (6 ends): a triple point,
//! * `crossing` (4 ends): a crossing of two double-arc projections,
//! * `singular` (2 ends): an isolated transverse double point.
//!
//! Charts are closed (no boundary ends) and immutable after construction;
//! the structural transforms return new charts. Validity means the
//! per-vertex templates hold and every connected component is a sphere;
//! [`validate`] checks all of it and reports violations instead of failing.

use std::collections::BTreeMap;
use std::fmt;

use crate::dec::Dec;

/// Sign carried by branch, triple, and singular points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn to_int(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VertexKind {
    Black,
    White,
    Crossing,
    Singular,
}

impl VertexKind {
    /// Required number of incident edge ends.
    pub fn arity(self) -> usize {
        match self {
            VertexKind::Black => 1,
            VertexKind::White => 6,
            VertexKind::Crossing => 4,
            VertexKind::Singular => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            VertexKind::Black => "black",
            VertexKind::White => "white",
            VertexKind::Crossing => "crossing",
            VertexKind::Singular => "singular",
        }
    }

    pub fn from_name(s: &str) -> Option<VertexKind> {
        Some(match s {
            "black" => VertexKind::Black,
            "white" => VertexKind::White,
            "crossing" => VertexKind::Crossing,
            "singular" => VertexKind::Singular,
            _ => return None,
        })
    }
}

/// Which end of an edge a rotation entry refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EndSide {
    Tail,
    Head,
}

impl EndSide {
    pub fn flip(self) -> EndSide {
        match self {
            EndSide::Tail => EndSide::Head,
            EndSide::Head => EndSide::Tail,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub usize);

/// One edge end: an edge together with the side attached at the vertex.
pub type EdgeEnd = (EdgeId, EndSide);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub name: String,
    pub kind: VertexKind,
    /// Incident ends in counterclockwise order.
    pub rotation: Vec<EdgeEnd>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub name: String,
    pub label: i64,
    pub tail: VertexId,
    pub head: VertexId,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chart {
    degree: i64,
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    coords: BTreeMap<usize, (Dec, Dec)>,
}

/// A directed traversal of an edge: forward runs tail to head.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dart {
    pub edge: EdgeId,
    pub forward: bool,
}

impl Dart {
    fn index(self) -> usize {
        self.edge.0 * 2 + if self.forward { 0 } else { 1 }
    }

    fn from_index(i: usize) -> Dart {
        Dart {
            edge: EdgeId(i / 2),
            forward: i.is_multiple_of(2),
        }
    }

    pub fn twin(self) -> Dart {
        Dart {
            edge: self.edge,
            forward: !self.forward,
        }
    }
}

/// A face of the embedded chart, as the cyclic dart sequence along its
/// boundary (each dart has this face on its right).
pub type Face = Vec<Dart>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    /// Name of the offending vertex or edge.
    pub subject: String,
    pub rule: &'static str,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}]: {}", self.subject, self.rule, self.message)
    }
}

/// Outcome of [`validate`]; `ok()` holds exactly when no violation was found.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BuildError {
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("`{subject}` references undeclared {referenced}")]
    DanglingReference { subject: String, referenced: String },
    #[error("rotation of `{vertex}` has {got} entries, {kind} requires {expected}")]
    RotationArity {
        vertex: String,
        kind: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("rotation of `{vertex}` lists end {end} of `{edge}`, which attaches at `{attached}`")]
    MisplacedEnd {
        vertex: String,
        edge: String,
        end: &'static str,
        attached: String,
    },
    #[error("end {end} of `{edge}` appears in more than one rotation")]
    RepeatedEnd { edge: String, end: &'static str },
    #[error("vertex `{0}` has no rotation")]
    MissingRotation(String),
    #[error("degree must be at least 1, got {0}")]
    BadDegree(i64),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TranslateError {
    #[error("label {label} of `{edge}` falls outside [1, {max}] after shift")]
    LabelOutOfRange { edge: String, label: i64, max: i64 },
}

/// Incremental chart constructor. `finish` resolves all references and
/// checks arities; template validation is a separate step ([`validate`]).
#[derive(Debug, Clone)]
pub struct ChartBuilder {
    degree: i64,
    vertices: Vec<(String, VertexKind)>,
    edges: Vec<(String, i64, String, String)>,
    rotations: Vec<(String, Vec<(String, EndSide)>)>,
    coords: Vec<(String, Dec, Dec)>,
}

impl ChartBuilder {
    pub fn new(degree: i64) -> Self {
        ChartBuilder {
            degree,
            vertices: Vec::new(),
            edges: Vec::new(),
            rotations: Vec::new(),
            coords: Vec::new(),
        }
    }

    pub fn vertex(&mut self, name: &str, kind: VertexKind) -> &mut Self {
        self.vertices.push((name.to_string(), kind));
        self
    }

    pub fn edge(&mut self, name: &str, label: i64, tail: &str, head: &str) -> &mut Self {
        self.edges
            .push((name.to_string(), label, tail.to_string(), head.to_string()));
        self
    }

    pub fn rotation<'a>(
        &mut self,
        vertex: &str,
        ends: impl IntoIterator<Item = (&'a str, EndSide)>,
    ) -> &mut Self {
        self.rotations.push((
            vertex.to_string(),
            ends.into_iter().map(|(e, s)| (e.to_string(), s)).collect(),
        ));
        self
    }

    pub fn coord(&mut self, vertex: &str, x: Dec, y: Dec) -> &mut Self {
        self.coords.push((vertex.to_string(), x, y));
        self
    }

    pub fn finish(&self) -> Result<Chart, BuildError> {
        if self.degree < 1 {
            return Err(BuildError::BadDegree(self.degree));
        }
        let mut vertex_ids: BTreeMap<&str, usize> = BTreeMap::new();
        for (i, (name, _)) in self.vertices.iter().enumerate() {
            if vertex_ids.insert(name, i).is_some() {
                return Err(BuildError::DuplicateId(name.clone()));
            }
        }
        let mut edge_ids: BTreeMap<&str, usize> = BTreeMap::new();
        for (i, (name, _, _, _)) in self.edges.iter().enumerate() {
            if edge_ids.insert(name, i).is_some() || vertex_ids.contains_key(name.as_str()) {
                return Err(BuildError::DuplicateId(name.clone()));
            }
        }

        let mut edges = Vec::with_capacity(self.edges.len());
        for (name, label, tail, head) in &self.edges {
            let resolve = |v: &String| {
                vertex_ids
                    .get(v.as_str())
                    .copied()
                    .ok_or_else(|| BuildError::DanglingReference {
                        subject: name.clone(),
                        referenced: format!("vertex `{v}`"),
                    })
            };
            edges.push(Edge {
                name: name.clone(),
                label: *label,
                tail: VertexId(resolve(tail)?),
                head: VertexId(resolve(head)?),
            });
        }

        let mut rotations: Vec<Option<Vec<EdgeEnd>>> = vec![None; self.vertices.len()];
        for (vname, ends) in &self.rotations {
            let &vi = vertex_ids
                .get(vname.as_str())
                .ok_or_else(|| BuildError::DanglingReference {
                    subject: vname.clone(),
                    referenced: format!("vertex `{vname}`"),
                })?;
            if rotations[vi].is_some() {
                return Err(BuildError::DuplicateId(format!("rotation of {vname}")));
            }
            let mut rot = Vec::with_capacity(ends.len());
            for (ename, side) in ends {
                let &ei = edge_ids
                    .get(ename.as_str())
                    .ok_or_else(|| BuildError::DanglingReference {
                        subject: vname.clone(),
                        referenced: format!("edge `{ename}`"),
                    })?;
                rot.push((EdgeId(ei), *side));
            }
            rotations[vi] = Some(rot);
        }

        // Single-end vertices have a unique cyclic order; fill it in when the
        // rotation was omitted.
        let mut incident: Vec<Vec<EdgeEnd>> = vec![Vec::new(); self.vertices.len()];
        for (ei, e) in edges.iter().enumerate() {
            incident[e.tail.0].push((EdgeId(ei), EndSide::Tail));
            incident[e.head.0].push((EdgeId(ei), EndSide::Head));
        }
        for (vi, rot) in rotations.iter_mut().enumerate() {
            if rot.is_none() && incident[vi].len() == 1 {
                *rot = Some(incident[vi].clone());
            }
        }

        let mut vertices = Vec::with_capacity(self.vertices.len());
        for (vi, (name, kind)) in self.vertices.iter().enumerate() {
            let rotation = rotations[vi]
                .take()
                .ok_or_else(|| BuildError::MissingRotation(name.clone()))?;
            if rotation.len() != kind.arity() {
                return Err(BuildError::RotationArity {
                    vertex: name.clone(),
                    kind: kind.name(),
                    expected: kind.arity(),
                    got: rotation.len(),
                });
            }
            vertices.push(Vertex {
                name: name.clone(),
                kind: *kind,
                rotation,
            });
        }

        // Every edge end must sit in the rotation of exactly the vertex the
        // edge declares for that side.
        let mut seen: Vec<[bool; 2]> = vec![[false; 2]; edges.len()];
        for (vi, v) in vertices.iter().enumerate() {
            for &(eid, side) in &v.rotation {
                let e = &edges[eid.0];
                let attached = match side {
                    EndSide::Tail => e.tail,
                    EndSide::Head => e.head,
                };
                let end_name = match side {
                    EndSide::Tail => "tail",
                    EndSide::Head => "head",
                };
                if attached.0 != vi {
                    return Err(BuildError::MisplacedEnd {
                        vertex: v.name.clone(),
                        edge: e.name.clone(),
                        end: end_name,
                        attached: vertices[attached.0].name.clone(),
                    });
                }
                let slot = &mut seen[eid.0][(side == EndSide::Head) as usize];
                if *slot {
                    return Err(BuildError::RepeatedEnd {
                        edge: e.name.clone(),
                        end: end_name,
                    });
                }
                *slot = true;
            }
        }
        for (ei, s) in seen.iter().enumerate() {
            if !s[0] || !s[1] {
                // An unplaced end implies some rotation is short, which the
                // arity check reports first; this covers hand-built cases
                // where the counts accidentally balance.
                return Err(BuildError::MissingRotation(format!(
                    "end of `{}`",
                    edges[ei].name
                )));
            }
        }

        let mut coords = BTreeMap::new();
        for (vname, x, y) in &self.coords {
            let &vi = vertex_ids
                .get(vname.as_str())
                .ok_or_else(|| BuildError::DanglingReference {
                    subject: vname.clone(),
                    referenced: format!("vertex `{vname}`"),
                })?;
            if coords.insert(vi, (*x, *y)).is_some() {
                return Err(BuildError::DuplicateId(format!("coord of {vname}")));
            }
        }

        Ok(Chart {
            degree: self.degree,
            vertices,
            edges,
            coords,
        })
    }
}

impl Chart {
    /// Assemble a chart from raw parts without referential checks. Callers
    /// are transforms that preserve well-formedness by construction.
    pub(crate) fn from_parts_unchecked(
        degree: i64,
        vertices: Vec<Vertex>,
        edges: Vec<Edge>,
        coords: BTreeMap<usize, (Dec, Dec)>,
    ) -> Chart {
        Chart {
            degree,
            vertices,
            edges,
            coords,
        }
    }

    pub fn empty(degree: i64) -> Chart {
        Chart {
            degree: degree.max(1),
            vertices: Vec::new(),
            edges: Vec::new(),
            coords: BTreeMap::new(),
        }
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex(&self, id: VertexId) -> &Vertex {
        &self.vertices[id.0]
    }

    pub fn edge(&self, id: EdgeId) -> &Edge {
        &self.edges[id.0]
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> {
        (0..self.vertices.len()).map(VertexId)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> {
        (0..self.edges.len()).map(EdgeId)
    }

    pub fn coords(&self) -> &BTreeMap<usize, (Dec, Dec)> {
        &self.coords
    }

    pub fn set_coords(&self, coords: BTreeMap<usize, (Dec, Dec)>) -> Chart {
        let mut c = self.clone();
        c.coords = coords;
        c
    }

    pub fn find_vertex(&self, name: &str) -> Option<VertexId> {
        self.vertices
            .iter()
            .position(|v| v.name == name)
            .map(VertexId)
    }

    pub fn find_edge(&self, name: &str) -> Option<EdgeId> {
        self.edges.iter().position(|e| e.name == name).map(EdgeId)
    }

    /// Vertex a dart leaves from.
    pub fn dart_origin(&self, d: Dart) -> VertexId {
        let e = &self.edges[d.edge.0];
        if d.forward {
            e.tail
        } else {
            e.head
        }
    }

    /// Vertex a dart points at.
    pub fn dart_target(&self, d: Dart) -> VertexId {
        self.dart_origin(d.twin())
    }

    fn end_dart(end: EdgeEnd) -> Dart {
        Dart {
            edge: end.0,
            forward: end.1 == EndSide::Tail,
        }
    }

    /// Whether the rotation entry points into its vertex.
    pub fn end_is_incoming(end: EdgeEnd) -> bool {
        end.1 == EndSide::Head
    }

    /// Trace the faces of the rotation system. Every dart lies on exactly
    /// one face; `next` after a dart is the rotation successor of its twin,
    /// so each face keeps the traversed darts on its boundary once.
    pub fn trace_faces(&self) -> Vec<Face> {
        let n_darts = self.edges.len() * 2;
        // successor of each dart in the rotation at its origin
        let mut rot_next = vec![usize::MAX; n_darts];
        for v in &self.vertices {
            let k = v.rotation.len();
            for (i, &end) in v.rotation.iter().enumerate() {
                let d = Self::end_dart(end);
                let succ = Self::end_dart(v.rotation[(i + 1) % k]);
                rot_next[d.index()] = succ.index();
            }
        }
        let mut seen = vec![false; n_darts];
        let mut faces = Vec::new();
        for start in 0..n_darts {
            if seen[start] {
                continue;
            }
            let mut face = Vec::new();
            let mut d = start;
            loop {
                seen[d] = true;
                face.push(Dart::from_index(d));
                d = rot_next[Dart::from_index(d).twin().index()];
                if d == start {
                    break;
                }
            }
            faces.push(face);
        }
        faces
    }

    /// Connected components as vertex index sets, sorted.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertices.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut i: usize) -> usize {
            while parent[i] != i {
                parent[i] = parent[parent[i]];
                i = parent[i];
            }
            i
        }
        for e in &self.edges {
            let a = find(&mut parent, e.tail.0);
            let b = find(&mut parent, e.head.0);
            parent[a] = b;
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for i in 0..n {
            let r = find(&mut parent, i);
            groups.entry(r).or_default().push(i);
        }
        groups.into_values().collect()
    }

    /// Per-component Euler characteristic `V - E + F`; 2 everywhere exactly
    /// when every component embeds in the sphere.
    pub fn component_euler(&self) -> Vec<(Vec<usize>, i64)> {
        let comps = self.components();
        let mut comp_of = vec![usize::MAX; self.vertices.len()];
        for (ci, comp) in comps.iter().enumerate() {
            for &v in comp {
                comp_of[v] = ci;
            }
        }
        let mut e_count = vec![0i64; comps.len()];
        for e in &self.edges {
            e_count[comp_of[e.tail.0]] += 1;
        }
        let mut f_count = vec![0i64; comps.len()];
        for face in self.trace_faces() {
            let v = self.dart_origin(face[0]);
            f_count[comp_of[v.0]] += 1;
        }
        comps
            .into_iter()
            .enumerate()
            .map(|(ci, comp)| {
                let euler = comp.len() as i64 - e_count[ci] + f_count[ci];
                (comp, euler)
            })
            .collect()
    }

    /// Shift every label by `shift` and change the degree. Census tables of
    /// the result are the index-shifted tables of the input.
    pub fn translate_labels(&self, shift: i64, new_degree: i64) -> Result<Chart, TranslateError> {
        let max = new_degree - 1;
        let mut edges = self.edges.clone();
        for e in &mut edges {
            let label = e.label + shift;
            if label < 1 || label > max {
                return Err(TranslateError::LabelOutOfRange {
                    edge: e.name.clone(),
                    label,
                    max,
                });
            }
            e.label = label;
        }
        Ok(Chart {
            degree: new_degree,
            vertices: self.vertices.clone(),
            edges,
            coords: self.coords.clone(),
        })
    }

    /// Reverse the orientation of every edge. The embedding is untouched, so
    /// validity is preserved; all vertex signs flip.
    pub fn reverse_orientation(&self) -> Chart {
        let edges = self
            .edges
            .iter()
            .map(|e| Edge {
                name: e.name.clone(),
                label: e.label,
                tail: e.head,
                head: e.tail,
            })
            .collect();
        let vertices = self
            .vertices
            .iter()
            .map(|v| Vertex {
                name: v.name.clone(),
                kind: v.kind,
                rotation: v.rotation.iter().map(|&(e, s)| (e, s.flip())).collect(),
            })
            .collect();
        Chart {
            degree: self.degree,
            vertices,
            edges,
            coords: self.coords.clone(),
        }
    }

    /// Disjoint union. Ids must stay unique; callers prefix them as needed.
    pub fn disjoint_union(parts: &[Chart], degree: i64) -> Result<Chart, BuildError> {
        let mut b = ChartBuilder::new(degree);
        for part in parts {
            for v in &part.vertices {
                b.vertex(&v.name, v.kind);
            }
            for e in &part.edges {
                b.edge(
                    &e.name,
                    e.label,
                    &part.vertices[e.tail.0].name,
                    &part.vertices[e.head.0].name,
                );
            }
            for v in &part.vertices {
                let ends: Vec<(&str, EndSide)> = v
                    .rotation
                    .iter()
                    .map(|&(e, s)| (part.edges[e.0].name.as_str(), s))
                    .collect();
                b.rotation(&v.name, ends);
            }
            for (&vi, &(x, y)) in &part.coords {
                b.coord(&part.vertices[vi].name, x, y);
            }
        }
        b.finish()
    }

    /// Copy with every id prefixed, for building disjoint unions.
    pub fn with_prefixed_names(&self, prefix: &str) -> Chart {
        let mut c = self.clone();
        for v in &mut c.vertices {
            v.name = format!("{prefix}{}", v.name);
        }
        for e in &mut c.edges {
            e.name = format!("{prefix}{}", e.name);
        }
        c
    }
}

/// Check every chart invariant: label ranges, the white/crossing/singular
/// templates, and sphere planarity of each component.
pub fn validate(chart: &Chart) -> ValidationReport {
    let mut violations = Vec::new();
    let max_label = chart.degree() - 1;

    for e in chart.edges() {
        if e.label < 1 || e.label > max_label {
            violations.push(Violation {
                subject: e.name.clone(),
                rule: "label range",
                message: format!("label {} outside [1, {max_label}]", e.label),
            });
        }
    }

    for v in chart.vertices() {
        let dirs: Vec<bool> = v
            .rotation
            .iter()
            .map(|&end| Chart::end_is_incoming(end))
            .collect();
        let labels: Vec<i64> = v
            .rotation
            .iter()
            .map(|&(e, _)| chart.edge(e).label)
            .collect();
        match v.kind {
            VertexKind::Black => {}
            VertexKind::White => {
                let k = 6;
                let incoming = dirs.iter().filter(|&&d| d).count();
                let consecutive = (0..k).any(|s| {
                    (0..3).all(|i| dirs[(s + i) % k]) && (3..6).all(|i| !dirs[(s + i) % k])
                });
                let mut distinct = labels.clone();
                distinct.sort_unstable();
                distinct.dedup();
                let alternating = (0..k).all(|i| labels[i] != labels[(i + 1) % k]);
                let two_adjacent_labels =
                    distinct.len() == 2 && (distinct[1] - distinct[0]) == 1;
                if incoming != 3 || !consecutive {
                    violations.push(Violation {
                        subject: v.name.clone(),
                        rule: "white template",
                        message: "incoming ends are not 3 cyclically consecutive".into(),
                    });
                }
                if !(alternating && two_adjacent_labels) {
                    violations.push(Violation {
                        subject: v.name.clone(),
                        rule: "white template",
                        message: format!("labels {labels:?} do not alternate p, p+1"),
                    });
                }
            }
            VertexKind::Crossing => {
                let opposite_ok = labels[0] == labels[2]
                    && labels[1] == labels[3]
                    && dirs[0] != dirs[2]
                    && dirs[1] != dirs[3];
                if !opposite_ok {
                    violations.push(Violation {
                        subject: v.name.clone(),
                        rule: "crossing template",
                        message:
                            "opposite ends must carry equal labels with one incoming, one outgoing"
                                .into(),
                    });
                } else if (labels[0] - labels[1]).abs() < 2 {
                    violations.push(Violation {
                        subject: v.name.clone(),
                        rule: "crossing label gap",
                        message: format!(
                            "labels {} and {} must satisfy |i-j| >= 2",
                            labels[0], labels[1]
                        ),
                    });
                }
            }
            VertexKind::Singular => {
                if labels[0] != labels[1] || dirs[0] != dirs[1] {
                    violations.push(Violation {
                        subject: v.name.clone(),
                        rule: "singular template",
                        message: "ends must share one label and point the same way".into(),
                    });
                }
            }
        }
    }

    for (comp, euler) in chart.component_euler() {
        if euler != 2 {
            let rep = &chart.vertices()[comp[0]].name;
            violations.push(Violation {
                subject: rep.clone(),
                rule: "sphere planarity",
                message: format!(
                    "component of `{rep}` has V - E + F = {euler}, expected 2"
                ),
            });
        }
    }

    ValidationReport { violations }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn build_smallest_chart() {
        let c = fixtures::fe(3, 4);
        assert_eq!(c.degree(), 4);
        assert_eq!(c.vertices().len(), 2);
        assert_eq!(c.edges().len(), 1);
        assert!(validate(&c).ok());
        assert_eq!(c.trace_faces().len(), 1);
    }

    #[test]
    fn build_star_white() {
        let c = fixtures::sw(2, Sign::Plus, 3);
        assert_eq!(c.vertices().len(), 7);
        assert_eq!(c.edges().len(), 6);
        assert!(validate(&c).ok());
        // a tree: one face, V - E + F = 7 - 6 + 1 = 2
        assert_eq!(c.trace_faces().len(), 1);
    }

    #[test]
    fn build_rejects_duplicate_id() {
        let mut b = ChartBuilder::new(2);
        b.vertex("a", VertexKind::Black);
        b.vertex("a", VertexKind::Black);
        assert!(matches!(b.finish(), Err(BuildError::DuplicateId(_))));
    }

    #[test]
    fn build_rejects_dangling_reference() {
        let mut b = ChartBuilder::new(2);
        b.vertex("a", VertexKind::Black);
        b.edge("e", 1, "a", "nowhere");
        let err = b.finish().unwrap_err();
        assert!(matches!(err, BuildError::DanglingReference { .. }));
    }

    #[test]
    fn build_rejects_arity_mismatch() {
        let mut b = ChartBuilder::new(3);
        b.vertex("w", VertexKind::White);
        b.vertex("a", VertexKind::Black);
        b.vertex("bb", VertexKind::Black);
        b.edge("e1", 1, "a", "w");
        b.edge("e2", 2, "w", "bb");
        b.rotation("w", [("e1", EndSide::Head), ("e2", EndSide::Tail)]);
        let err = b.finish().unwrap_err();
        assert!(matches!(
            err,
            BuildError::RotationArity {
                expected: 6,
                got: 2,
                ..
            }
        ));
    }

    #[test]
    fn build_rejects_misplaced_end() {
        let mut b = ChartBuilder::new(3);
        b.vertex("s1", VertexKind::Singular);
        b.vertex("s2", VertexKind::Singular);
        b.edge("e1", 1, "s1", "s2");
        b.edge("e2", 1, "s1", "s2");
        // e2's tail attaches at s1, not s2
        b.rotation("s1", [("e1", EndSide::Tail), ("e2", EndSide::Tail)]);
        b.rotation("s2", [("e1", EndSide::Head), ("e2", EndSide::Tail)]);
        let err = b.finish().unwrap_err();
        assert!(matches!(err, BuildError::MisplacedEnd { .. }));
    }

    #[test]
    fn white_template_violation_when_incoming_not_consecutive() {
        let c = fixtures::sw(2, Sign::Plus, 3);
        let w = c.find_vertex("w").unwrap();
        let mut rot = c.vertex(w).rotation.clone();
        // swap an incoming end into the outgoing block
        rot.swap(1, 4);
        let mutated = fixtures::with_rotation(&c, w, rot);
        let report = validate(&mutated);
        assert!(!report.ok());
        assert!(report
            .violations
            .iter()
            .any(|v| v.rule == "white template"));
    }

    #[test]
    fn crossing_label_gap_enforced() {
        let bad = fixtures::xg(1, 2, 3);
        let report = validate(&bad);
        assert!(report
            .violations
            .iter()
            .any(|v| v.rule == "crossing label gap"));
        let good = fixtures::xg(1, 3, 4);
        assert!(validate(&good).ok());
    }

    #[test]
    fn face_partition_covers_every_dart_once() {
        for c in fixtures::catalog() {
            let faces = c.trace_faces();
            let total: usize = faces.iter().map(|f| f.len()).sum();
            assert_eq!(total, 2 * c.edges().len());
            let mut seen = std::collections::HashSet::new();
            for f in &faces {
                for d in f {
                    assert!(seen.insert(*d));
                }
            }
        }
    }

    #[test]
    fn every_fixture_is_a_sphere() {
        for c in fixtures::catalog() {
            let report = validate(&c);
            assert!(report.ok(), "{}: {:?}", c.degree(), report.violations);
            for (_, euler) in c.component_euler() {
                assert_eq!(euler, 2);
            }
        }
    }

    #[test]
    fn wp_has_six_faces() {
        let c = fixtures::wp(2, 3);
        assert_eq!(c.vertices().len(), 2);
        assert_eq!(c.edges().len(), 6);
        assert_eq!(c.trace_faces().len(), 6);
        assert!(validate(&c).ok());
    }

    #[test]
    fn translate_shifts_labels() {
        let c = fixtures::fe(3, 4);
        let shifted = c.translate_labels(-2, 4).unwrap();
        assert_eq!(shifted.edges()[0].label, 1);
        assert!(validate(&shifted).ok());
        let fe1 = fixtures::fe(1, 2);
        assert!(fe1.translate_labels(-1, 2).is_err());
    }

    #[test]
    fn translate_out_of_range_is_an_error() {
        let c = fixtures::sw(2, Sign::Plus, 3);
        assert!(matches!(
            c.translate_labels(7, 8),
            Err(TranslateError::LabelOutOfRange { .. })
        ));
        assert!(c.translate_labels(3, 8).is_ok());
    }

    #[test]
    fn reverse_is_an_involution_and_preserves_validity() {
        for c in fixtures::catalog() {
            let r = c.reverse_orientation();
            assert!(validate(&r).ok());
            assert_eq!(r.reverse_orientation(), c);
        }
    }

    #[test]
    fn empty_chart_is_valid() {
        let c = Chart::empty(1);
        assert!(validate(&c).ok());
        assert!(c.trace_faces().is_empty());
    }
}
