//! Alexander numbering of classical oriented knot and link diagrams.
//!
//! Diagrams come in as PD text: one `X a b c d` line per crossing listing
//! the four arcs counterclockwise from the incoming under-arc, and `A k`
//! lines declaring crossing-free closed components. Arcs are numbered along
//! the orientation. Two extensions keep plane data that a bare PD code
//! cannot carry:
//!
//! * `A k ccw|cw` gives the winding direction of a crossing-free component
//!   (`ccw` when omitted); such components sit in the unbounded region;
//! * `O k left|right` names the unbounded region as the one on that side of
//!   arc `k`. When omitted, the region to the right of the lowest-numbered
//!   crossing arc is unbounded, which matches braid closures transcribed
//!   starting on a leftmost downward strand.
//!
//! Regions are the faces of the 4-valent plane map; the numbering gives the
//! unbounded region 0 and increases by exactly 1 from the right side of an
//! arc to its left side (the normal is the counterclockwise rotation of the
//! tangent), so every region carries the winding number of the curve around
//! its points.

use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum CurveSide {
    Left,
    Right,
}

impl CurveSide {
    pub fn flip(self) -> CurveSide {
        match self {
            CurveSide::Left => CurveSide::Right,
            CurveSide::Right => CurveSide::Left,
        }
    }
}

/// One crossing: the four arc labels counterclockwise from the incoming
/// under-arc.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PdCrossing {
    pub arcs: [i64; 4],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FreeLoop {
    pub arc: i64,
    pub ccw: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OuterSpec {
    /// Right side of the lowest-numbered crossing arc (or the ambient plane
    /// when there are no crossings).
    Default,
    AtArc { arc: i64, side: CurveSide },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PDDiagram {
    pub crossings: Vec<PdCrossing>,
    pub free_loops: Vec<FreeLoop>,
    pub outer: OuterSpec,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClassicalError {
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("arc {arc} is used {count} times; crossing arcs must appear exactly twice")]
    ArcUsage { arc: i64, count: usize },
    #[error("no consistent orientation for arc {arc}")]
    InconsistentOrientation { arc: i64 },
    #[error("crossing part of the diagram is disconnected; split parts must be free loops")]
    Disconnected,
    #[error("numbering constraint violated at arc {arc}; the diagram is not planar as given")]
    InconsistentNumbering { arc: i64 },
    #[error("outer-region declaration references unknown arc {arc}")]
    UnknownOuterArc { arc: i64 },
}

impl PDDiagram {
    /// The same diagram with the curve orientation reversed: each quadruple
    /// starts at the old outgoing under-arc, loops flip their winding, and
    /// the outer-region declaration swaps sides.
    pub fn reverse(&self) -> PDDiagram {
        PDDiagram {
            crossings: self
                .crossings
                .iter()
                .map(|x| PdCrossing {
                    arcs: [x.arcs[2], x.arcs[3], x.arcs[0], x.arcs[1]],
                })
                .collect(),
            free_loops: self
                .free_loops
                .iter()
                .map(|l| FreeLoop {
                    arc: l.arc,
                    ccw: !l.ccw,
                })
                .collect(),
            outer: match self.outer {
                // the default names the right side of the lowest crossing
                // arc; reversal moves that region to its left side
                OuterSpec::Default => match self.crossings.iter().flat_map(|x| x.arcs).min() {
                    Some(arc) => OuterSpec::AtArc {
                        arc,
                        side: CurveSide::Left,
                    },
                    None => OuterSpec::Default,
                },
                OuterSpec::AtArc { arc, side } => OuterSpec::AtArc {
                    arc,
                    side: side.flip(),
                },
            },
        }
    }

    fn crossing_arcs(&self) -> BTreeMap<i64, Vec<(usize, usize)>> {
        let mut occ: BTreeMap<i64, Vec<(usize, usize)>> = BTreeMap::new();
        for (c, x) in self.crossings.iter().enumerate() {
            for (pos, &arc) in x.arcs.iter().enumerate() {
                occ.entry(arc).or_default().push((c, pos));
            }
        }
        occ
    }

    /// Structural checks shared by the parser and the numbering entry
    /// point: arc usage counts and orientability.
    pub fn check(&self) -> Result<(), ClassicalError> {
        let occ = self.crossing_arcs();
        for (&arc, places) in &occ {
            if places.len() != 2 {
                return Err(ClassicalError::ArcUsage {
                    arc,
                    count: places.len(),
                });
            }
        }
        let mut loop_seen = std::collections::BTreeSet::new();
        for l in &self.free_loops {
            if occ.contains_key(&l.arc) || !loop_seen.insert(l.arc) {
                return Err(ClassicalError::ArcUsage {
                    arc: l.arc,
                    count: occ.get(&l.arc).map_or(0, |v| v.len())
                        + self.free_loops.iter().filter(|f| f.arc == l.arc).count(),
                });
            }
        }
        if let OuterSpec::AtArc { arc, .. } = self.outer {
            if !occ.contains_key(&arc) && !loop_seen.contains(&arc) {
                return Err(ClassicalError::UnknownOuterArc { arc });
            }
        }
        self.orient()?;
        Ok(())
    }

    /// Assign a direction to every arc occurrence. Under-strands are fixed
    /// by the convention (in at position 0, out at position 2); over-strand
    /// directions propagate from the requirement that each arc has exactly
    /// one head and one tail, with consecutive arc numbering as the
    /// tiebreak for components that never pass under.
    fn orient(&self) -> Result<Orientation, ClassicalError> {
        let n = self.crossings.len();
        let mut head: BTreeMap<i64, (usize, usize)> = BTreeMap::new();
        let mut tail: BTreeMap<i64, (usize, usize)> = BTreeMap::new();
        let mut over_forward: Vec<Option<bool>> = vec![None; n];

        let set = |map: &mut BTreeMap<i64, (usize, usize)>, arc: i64, at: (usize, usize)| {
            match map.get(&arc) {
                None => {
                    map.insert(arc, at);
                    Ok(())
                }
                Some(&prev) if prev == at => Ok(()),
                Some(_) => Err(ClassicalError::InconsistentOrientation { arc }),
            }
        };

        for (c, x) in self.crossings.iter().enumerate() {
            set(&mut head, x.arcs[0], (c, 0))?;
            set(&mut tail, x.arcs[2], (c, 2))?;
        }

        loop {
            let mut progress = false;
            let mut stalled = None;
            #[allow(clippy::needless_range_loop)]
            for c in 0..n {
                if over_forward[c].is_some() {
                    continue;
                }
                let b = self.crossings[c].arcs[1];
                let d = self.crossings[c].arcs[3];
                // forward: strand enters at position 1 and leaves at 3
                let fwd_ok = head.get(&b).is_none_or(|&at| at == (c, 1))
                    && tail.get(&d).is_none_or(|&at| at == (c, 3));
                let bwd_ok = tail.get(&b).is_none_or(|&at| at == (c, 1))
                    && head.get(&d).is_none_or(|&at| at == (c, 3));
                match (fwd_ok, bwd_ok) {
                    (false, false) => {
                        return Err(ClassicalError::InconsistentOrientation { arc: b })
                    }
                    (true, false) => {
                        over_forward[c] = Some(true);
                        set(&mut head, b, (c, 1))?;
                        set(&mut tail, d, (c, 3))?;
                        progress = true;
                    }
                    (false, true) => {
                        over_forward[c] = Some(false);
                        set(&mut tail, b, (c, 1))?;
                        set(&mut head, d, (c, 3))?;
                        progress = true;
                    }
                    (true, true) => stalled = stalled.or(Some(c)),
                }
            }
            if progress {
                continue;
            }
            match stalled {
                None => break,
                Some(c) => {
                    // all-over component: fall back to arc numbering
                    let b = self.crossings[c].arcs[1];
                    let d = self.crossings[c].arcs[3];
                    let forward = if d == b + 1 {
                        true
                    } else if b == d + 1 {
                        false
                    } else {
                        // wrap within a contiguous component block
                        d < b
                    };
                    over_forward[c] = Some(forward);
                    if forward {
                        set(&mut head, b, (c, 1))?;
                        set(&mut tail, d, (c, 3))?;
                    } else {
                        set(&mut tail, b, (c, 1))?;
                        set(&mut head, d, (c, 3))?;
                    }
                }
            }
        }

        for (&arc, places) in &self.crossing_arcs() {
            if places.len() == 2 && (!head.contains_key(&arc) || !tail.contains_key(&arc)) {
                return Err(ClassicalError::InconsistentOrientation { arc });
            }
        }
        Ok(Orientation { head, tail })
    }
}

struct Orientation {
    /// arc -> (crossing, position) where the arc points into the crossing
    head: BTreeMap<i64, (usize, usize)>,
    /// arc -> (crossing, position) where the arc leaves the crossing
    tail: BTreeMap<i64, (usize, usize)>,
}

/// Parse the PD text format. Blank lines and `#` comments are ignored.
pub fn parse_pd(text: &str) -> Result<PDDiagram, ClassicalError> {
    let mut crossings = Vec::new();
    let mut free_loops = Vec::new();
    let mut outer = OuterSpec::Default;
    let mut outer_seen = false;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = content.split_ascii_whitespace().collect();
        let bad = |msg: String| ClassicalError::Malformed { line, msg };
        let int = |tok: &str| {
            tok.parse::<i64>()
                .map_err(|_| bad(format!("invalid arc number `{tok}`")))
        };
        match toks[0] {
            "X" => {
                if toks.len() != 5 {
                    return Err(bad("`X` expects four arc numbers".into()));
                }
                crossings.push(PdCrossing {
                    arcs: [int(toks[1])?, int(toks[2])?, int(toks[3])?, int(toks[4])?],
                });
            }
            "A" => {
                if toks.len() < 2 || toks.len() > 3 {
                    return Err(bad("`A` expects an arc number and optional ccw|cw".into()));
                }
                let ccw = match toks.get(2).copied() {
                    None | Some("ccw") => true,
                    Some("cw") => false,
                    Some(other) => return Err(bad(format!("unknown winding `{other}`"))),
                };
                free_loops.push(FreeLoop {
                    arc: int(toks[1])?,
                    ccw,
                });
            }
            "O" => {
                if outer_seen {
                    return Err(bad("duplicate `O` declaration".into()));
                }
                if toks.len() != 3 {
                    return Err(bad("`O` expects an arc number and left|right".into()));
                }
                let side = match toks[2] {
                    "left" => CurveSide::Left,
                    "right" => CurveSide::Right,
                    other => return Err(bad(format!("unknown side `{other}`"))),
                };
                outer = OuterSpec::AtArc {
                    arc: int(toks[1])?,
                    side,
                };
                outer_seen = true;
            }
            other => return Err(bad(format!("unknown directive `{other}`"))),
        }
    }
    let pd = PDDiagram {
        crossings,
        free_loops,
        outer,
    };
    pd.check()?;
    Ok(pd)
}

/// Region labels for a diagram: each region is a boundary cycle of
/// `(arc, side)` pairs, carrying one integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionNumbering {
    pub regions: Vec<Vec<(i64, CurveSide)>>,
    pub numbers: Vec<i64>,
    pub outer: usize,
}

struct RegionStructure {
    regions: Vec<Vec<(i64, CurveSide)>>,
    /// per arc: (region on its left, region on its right)
    sides: BTreeMap<i64, (usize, usize)>,
    outer: usize,
}

fn build_regions(pd: &PDDiagram) -> Result<RegionStructure, ClassicalError> {
    let orient = pd.orient()?;
    let arcs: Vec<i64> = orient.head.keys().copied().collect();
    let arc_index: BTreeMap<i64, usize> = arcs.iter().enumerate().map(|(i, &a)| (a, i)).collect();

    // darts: 2k = arc forward (tail crossing -> head crossing), 2k+1 back
    let end_of_dart = |d: usize| {
        let arc = arcs[d / 2];
        if d.is_multiple_of(2) {
            orient.head[&arc]
        } else {
            orient.tail[&arc]
        }
    };
    // dart originating at a given crossing end
    let mut dart_at: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (i, &arc) in arcs.iter().enumerate() {
        dart_at.insert(orient.tail[&arc], 2 * i);
        dart_at.insert(orient.head[&arc], 2 * i + 1);
    }

    let n_darts = 2 * arcs.len();
    let mut face_of = vec![usize::MAX; n_darts];
    let mut regions: Vec<Vec<(i64, CurveSide)>> = Vec::new();
    for seed in 0..n_darts {
        if face_of[seed] != usize::MAX {
            continue;
        }
        let face = regions.len();
        let mut boundary = Vec::new();
        let mut d = seed;
        loop {
            face_of[d] = face;
            let arc = arcs[d / 2];
            // the traced face lies to the right of each forward dart
            boundary.push((
                arc,
                if d % 2 == 0 {
                    CurveSide::Right
                } else {
                    CurveSide::Left
                },
            ));
            let (c, pos) = end_of_dart(d);
            let next_end = (c, (pos + 1) % 4);
            d = dart_at[&next_end];
            if d == seed {
                break;
            }
        }
        regions.push(boundary);
    }

    let mut sides: BTreeMap<i64, (usize, usize)> = BTreeMap::new();
    for (i, &arc) in arcs.iter().enumerate() {
        sides.insert(arc, (face_of[2 * i + 1], face_of[2 * i]));
    }

    // connectivity of the crossing map, via shared regions
    if !pd.crossings.is_empty() {
        let mut comp: BTreeMap<usize, usize> = BTreeMap::new();
        fn find(comp: &mut BTreeMap<usize, usize>, i: usize) -> usize {
            let p = *comp.entry(i).or_insert(i);
            if p == i {
                return i;
            }
            let r = find(comp, p);
            comp.insert(i, r);
            r
        }
        for x in &pd.crossings {
            for w in x.arcs.windows(2) {
                let a = find(&mut comp, arc_index[&w[0]]);
                let b = find(&mut comp, arc_index[&w[1]]);
                comp.insert(a, b);
            }
        }
        let root = find(&mut comp, 0);
        for i in 0..arcs.len() {
            if find(&mut comp, i) != root {
                return Err(ClassicalError::Disconnected);
            }
        }
    }

    // the ambient region when no crossings exist
    if regions.is_empty() {
        regions.push(Vec::new());
    }

    let outer = match pd.outer {
        OuterSpec::Default => match arcs.first() {
            Some(&a) => sides[&a].1,
            None => 0,
        },
        OuterSpec::AtArc { arc, side } => match sides.get(&arc) {
            Some(&(l, r)) => match side {
                CurveSide::Left => l,
                CurveSide::Right => r,
            },
            None => {
                // an O declaration on a free loop names the ambient region
                if pd.free_loops.iter().any(|l| l.arc == arc && side == outer_side_of(l)) {
                    match arcs.first() {
                        Some(&a) => sides[&a].1,
                        None => 0,
                    }
                } else {
                    return Err(ClassicalError::UnknownOuterArc { arc });
                }
            }
        },
    };

    // free loops sit in the unbounded region; each adds one inner region
    for l in &pd.free_loops {
        let inner = regions.len();
        let inner_side = outer_side_of(l).flip();
        regions.push(vec![(l.arc, inner_side)]);
        regions[outer].push((l.arc, inner_side.flip()));
        let lr = match inner_side {
            CurveSide::Left => (inner, outer),
            CurveSide::Right => (outer, inner),
        };
        sides.insert(l.arc, lr);
    }

    Ok(RegionStructure {
        regions,
        sides,
        outer,
    })
}

fn outer_side_of(l: &FreeLoop) -> CurveSide {
    // traveling counterclockwise keeps the unbounded region on the right
    if l.ccw {
        CurveSide::Right
    } else {
        CurveSide::Left
    }
}

/// Propagate the numbering: unbounded region 0, left of each arc one more
/// than its right. Fails only on non-planar or malformed input.
pub fn alexander_number(pd: &PDDiagram) -> Result<RegionNumbering, ClassicalError> {
    let structure = build_regions(pd)?;
    let n = structure.regions.len();
    let mut numbers: Vec<Option<i64>> = vec![None; n];
    numbers[structure.outer] = Some(0);
    let mut queue = std::collections::VecDeque::from([structure.outer]);
    let mut adj: Vec<Vec<(usize, i64, i64)>> = vec![Vec::new(); n];
    for (&arc, &(l, r)) in &structure.sides {
        adj[l].push((r, -1, arc));
        adj[r].push((l, 1, arc));
    }
    while let Some(region) = queue.pop_front() {
        let base = numbers[region].expect("queued regions are numbered");
        for &(next, delta, arc) in &adj[region] {
            match numbers[next] {
                None => {
                    numbers[next] = Some(base + delta);
                    queue.push_back(next);
                }
                Some(existing) => {
                    if existing != base + delta {
                        return Err(ClassicalError::InconsistentNumbering { arc });
                    }
                }
            }
        }
    }
    if numbers.iter().any(|n| n.is_none()) {
        return Err(ClassicalError::Disconnected);
    }
    Ok(RegionNumbering {
        regions: structure.regions,
        numbers: numbers.into_iter().map(|n| n.unwrap()).collect(),
        outer: structure.outer,
    })
}

/// Check a numbering against the diagram: regions must match the diagram's
/// face structure, the unbounded region must be 0, and every arc must step
/// by exactly 1 from right to left.
pub fn verify_numbering(pd: &PDDiagram, numbering: &RegionNumbering) -> bool {
    let Ok(structure) = build_regions(pd) else {
        return false;
    };
    if numbering.regions != structure.regions
        || numbering.numbers.len() != structure.regions.len()
        || numbering.outer != structure.outer
    {
        return false;
    }
    if numbering.numbers[structure.outer] != 0 {
        return false;
    }
    structure
        .sides
        .values()
        .all(|&(l, r)| numbering.numbers[l] == numbering.numbers[r] + 1)
}

pub type Point = (i64, i64);

/// Exact winding number of a set of closed integer polylines around a point
/// not on any segment, by signed ray crossings.
pub fn winding_number(loops: &[Vec<Point>], p: Point) -> i64 {
    let mut winding = 0;
    for poly in loops {
        for i in 0..poly.len() {
            let a = poly[i];
            let b = poly[(i + 1) % poly.len()];
            if a == b {
                continue;
            }
            let cross = (b.0 - a.0) * (p.1 - a.1) - (b.1 - a.1) * (p.0 - a.0);
            if a.1 <= p.1 && p.1 < b.1 && cross > 0 {
                winding += 1;
            } else if b.1 <= p.1 && p.1 < a.1 && cross < 0 {
                winding -= 1;
            }
        }
    }
    winding
}

/// Arc polylines and whole-component loops of a drawn braid closure.
#[derive(Debug, Clone)]
pub struct BraidDrawing {
    pub arc_paths: BTreeMap<i64, Vec<Point>>,
    pub component_loops: Vec<Vec<Point>>,
}

impl BraidDrawing {
    /// Integer sample points just left and just right of an arc, taken at
    /// the midpoint of its longest axis-aligned segment.
    pub fn side_points(&self, arc: i64) -> (Point, Point) {
        let path = &self.arc_paths[&arc];
        let mut best: Option<(i64, Point, Point)> = None;
        for w in path.windows(2) {
            let (a, b) = (w[0], w[1]);
            let (dx, dy) = (b.0 - a.0, b.1 - a.1);
            if dx != 0 && dy != 0 {
                continue;
            }
            let len = dx.abs() + dy.abs();
            if best.as_ref().is_some_and(|&(l, _, _)| l >= len) {
                continue;
            }
            let mid = ((a.0 + b.0) / 2, (a.1 + b.1) / 2);
            let (ux, uy) = (dx.signum(), dy.signum());
            // left of travel: rotate the direction counterclockwise
            let left = (mid.0 - uy, mid.1 + ux);
            let right = (mid.0 + uy, mid.1 - ux);
            best = Some((len, left, right));
        }
        let (_, left, right) = best.expect("arc has an axis-aligned segment");
        (left, right)
    }
}

/// Build the PD diagram and an embedded drawing of the closure of a braid
/// word on `strands` strands. Word letters are `(i, positive)` for the
/// generator crossing strand positions `i` and `i+1` (1-based); every
/// position must take part in at least one crossing. Arc 1 contains the top
/// of the leftmost strand, so the default outer region applies.
pub fn braid_closure(strands: usize, word: &[(usize, bool)]) -> (PDDiagram, BraidDrawing) {
    assert!(strands >= 2, "need at least two strands");
    assert!(
        word.iter().all(|&(i, _)| i >= 1 && i < strands),
        "generator index out of range"
    );
    for pos in 1..=strands {
        assert!(
            word.iter().any(|&(i, _)| i == pos || i + 1 == pos),
            "strand position {pos} never crosses; its component would be a free loop"
        );
    }
    let k = strands as i64;
    let rows = word.len();
    let col = |j: i64| 8 * j;
    let y_bot = 12 * rows as i64;

    #[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
    enum Corner {
        Tl,
        Tr,
        Bl,
        Br,
    }

    // walk each closed component, recording points and crossing passages;
    // the drawing flips to y-up so that visual counterclockwise matches the
    // mathematical orientation used by the winding formula
    let mut visited = vec![false; strands + 1];
    let mut arc_paths: BTreeMap<i64, Vec<Point>> = BTreeMap::new();
    let mut component_loops: Vec<Vec<Point>> = Vec::new();
    let mut corner_arc: BTreeMap<(usize, Corner), i64> = BTreeMap::new();
    let mut next_arc: i64 = 1;
    for start in 1..=k {
        if visited[start as usize] {
            continue;
        }
        let mut path: Vec<Point> = Vec::new();
        let mut cuts: Vec<(usize, usize, Corner, Corner)> = Vec::new();
        let mut pos = start;
        loop {
            visited[pos as usize] = true;
            path.push((col(pos), 0));
            for (r, &(i, _)) in word.iter().enumerate() {
                let i = i as i64;
                let y_top = 12 * r as i64 + 4;
                let y_mid = y_top + 2;
                let y_low = y_top + 4;
                let center = (col(i) + 4, y_mid);
                if pos == i {
                    path.push((col(pos), y_top));
                    path.push(center);
                    cuts.push((path.len() - 1, r, Corner::Tl, Corner::Br));
                    path.push((col(i + 1), y_low));
                    pos = i + 1;
                } else if pos == i + 1 {
                    path.push((col(pos), y_top));
                    path.push(center);
                    cuts.push((path.len() - 1, r, Corner::Tr, Corner::Bl));
                    path.push((col(i), y_low));
                    pos = i;
                }
            }
            // closure back to the top of the same position
            let m = 4 * (k - pos + 1);
            path.push((col(pos), y_bot));
            path.push((col(pos), y_bot + m));
            path.push((col(k) + m, y_bot + m));
            path.push((col(k) + m, -m));
            path.push((col(pos), -m));
            if pos == start {
                break;
            }
        }
        for p in &mut path {
            p.1 = -p.1;
        }

        // cut the closed path into arcs; the wrap arc (containing the walk
        // origin) gets the component's first number
        let n_arcs = cuts.len();
        assert!(n_arcs >= 1, "component never crosses");
        for a in 0..n_arcs {
            let arc = next_arc + a as i64;
            let (from_idx, from_row, _, from_out) = cuts[(a + n_arcs - 1) % n_arcs];
            let (to_idx, to_row, to_in, _) = cuts[a];
            corner_arc.insert((from_row, from_out), arc);
            corner_arc.insert((to_row, to_in), arc);
            let pts = if from_idx < to_idx {
                path[from_idx..=to_idx].to_vec()
            } else {
                let mut pts = path[from_idx..].to_vec();
                pts.extend_from_slice(&path[..=to_idx]);
                pts
            };
            arc_paths.insert(arc, pts);
        }
        next_arc += n_arcs as i64;
        component_loops.push(path);
    }
    assert_eq!(next_arc, 2 * rows as i64 + 1, "every passage is a cut");

    let crossings = word
        .iter()
        .enumerate()
        .map(|(r, &(_, positive))| {
            let at = |corner: Corner| corner_arc[&(r, corner)];
            // counterclockwise from the incoming under-arc
            let arcs = if positive {
                [at(Corner::Tr), at(Corner::Tl), at(Corner::Bl), at(Corner::Br)]
            } else {
                [at(Corner::Tl), at(Corner::Bl), at(Corner::Br), at(Corner::Tr)]
            };
            PdCrossing { arcs }
        })
        .collect();

    let pd = PDDiagram {
        crossings,
        free_loops: Vec::new(),
        outer: OuterSpec::Default,
    };
    let drawing = BraidDrawing {
        arc_paths,
        component_loops,
    };
    (pd, drawing)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn round_unknot(ccw: bool) -> PDDiagram {
        PDDiagram {
            crossings: Vec::new(),
            free_loops: vec![FreeLoop { arc: 1, ccw }],
            outer: OuterSpec::Default,
        }
    }

    #[test]
    fn parse_round_unknot() {
        let pd = parse_pd("A 1\n").unwrap();
        assert_eq!(pd, round_unknot(true));
        let pd = parse_pd("# a clockwise circle\nA 1 cw\n").unwrap();
        assert_eq!(pd, round_unknot(false));
    }

    #[test]
    fn parse_trefoil_braid_closure() {
        let (pd, _) = braid_closure(2, &[(1, true), (1, true), (1, true)]);
        assert_eq!(pd.crossings.len(), 3);
        let text: String = pd
            .crossings
            .iter()
            .map(|x| format!("X {} {} {} {}\n", x.arcs[0], x.arcs[1], x.arcs[2], x.arcs[3]))
            .collect();
        let reparsed = parse_pd(&text).unwrap();
        assert_eq!(reparsed.crossings, pd.crossings);
        let arcs: std::collections::BTreeSet<i64> = pd
            .crossings
            .iter()
            .flat_map(|x| x.arcs)
            .collect();
        assert_eq!(arcs.len(), 6);
    }

    #[test]
    fn parse_rejects_triple_use() {
        let err = parse_pd("X 1 2 2 1\nX 1 3 4 3\n").unwrap_err();
        assert!(matches!(err, ClassicalError::ArcUsage { arc: 1, count: 3 }));
    }

    #[test]
    fn parse_rejects_malformed_lines() {
        assert!(matches!(
            parse_pd("X 1 2 3\n"),
            Err(ClassicalError::Malformed { line: 1, .. })
        ));
        assert!(matches!(
            parse_pd("Y 1 2 3 4\n"),
            Err(ClassicalError::Malformed { .. })
        ));
        assert!(matches!(
            parse_pd("A 1 widdershins\n"),
            Err(ClassicalError::Malformed { .. })
        ));
        assert!(matches!(
            parse_pd("O 9 left\nA 1\n"),
            Err(ClassicalError::UnknownOuterArc { arc: 9 })
        ));
    }

    #[test]
    fn round_unknot_numbering_by_orientation() {
        let numbering = alexander_number(&round_unknot(true)).unwrap();
        assert_eq!(numbering.numbers.len(), 2);
        assert_eq!(numbering.numbers[numbering.outer], 0);
        let inner = 1 - numbering.outer;
        assert_eq!(numbering.numbers[inner], 1);

        let numbering = alexander_number(&round_unknot(false)).unwrap();
        let inner = 1 - numbering.outer;
        assert_eq!(numbering.numbers[inner], -1);
    }

    #[test]
    fn trefoil_numbering_matches_the_winding_oracle() {
        let (pd, drawing) = braid_closure(2, &[(1, true), (1, true), (1, true)]);
        let numbering = alexander_number(&pd).unwrap();
        assert_eq!(numbering.regions.len(), 5, "c + 2 regions");
        assert_eq!(numbering.numbers[numbering.outer], 0);

        let region_of = |arc: i64, side: CurveSide| {
            numbering
                .regions
                .iter()
                .position(|r| r.contains(&(arc, side)))
                .expect("every arc side bounds a region")
        };
        for &arc in drawing.arc_paths.keys() {
            let (left_pt, right_pt) = drawing.side_points(arc);
            let left_winding = winding_number(&drawing.component_loops, left_pt);
            let right_winding = winding_number(&drawing.component_loops, right_pt);
            assert_eq!(
                numbering.numbers[region_of(arc, CurveSide::Left)],
                left_winding,
                "arc {arc} left"
            );
            assert_eq!(
                numbering.numbers[region_of(arc, CurveSide::Right)],
                right_winding,
                "arc {arc} right"
            );
            assert_eq!(left_winding, right_winding + 1);
        }
        let mut sorted = numbering.numbers.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![0, 1, 1, 1, 2]);
    }

    #[test]
    fn random_braid_closures_match_the_winding_oracle() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2024);
        for _ in 0..25 {
            let strands = rng.gen_range(2..=4usize);
            let len = rng.gen_range(strands.max(3)..=8usize);
            let mut word: Vec<(usize, bool)> = (0..len)
                .map(|_| (rng.gen_range(1..strands), rng.gen::<bool>()))
                .collect();
            // make sure every position crosses at least once
            for i in 1..strands {
                word[i - 1].0 = i;
            }
            let (pd, drawing) = braid_closure(strands, &word);
            let numbering = alexander_number(&pd).expect("closed braids are planar");
            assert!(verify_numbering(&pd, &numbering));
            let region_of = |arc: i64, side: CurveSide| {
                numbering
                    .regions
                    .iter()
                    .position(|r| r.contains(&(arc, side)))
                    .unwrap()
            };
            for &arc in drawing.arc_paths.keys() {
                let (left_pt, right_pt) = drawing.side_points(arc);
                assert_eq!(
                    numbering.numbers[region_of(arc, CurveSide::Left)],
                    winding_number(&drawing.component_loops, left_pt),
                    "word {word:?} arc {arc}"
                );
                assert_eq!(
                    numbering.numbers[region_of(arc, CurveSide::Right)],
                    winding_number(&drawing.component_loops, right_pt),
                    "word {word:?} arc {arc}"
                );
            }
        }
    }

    #[test]
    fn reversal_negates_all_numbers() {
        let (pd, _) = braid_closure(3, &[(1, true), (2, true), (1, false), (2, true)]);
        let forward = alexander_number(&pd).unwrap();
        let backward = alexander_number(&pd.reverse()).unwrap();
        let mut forward_sorted = forward.numbers.clone();
        let mut negated: Vec<i64> = backward.numbers.iter().map(|&n| -n).collect();
        forward_sorted.sort_unstable();
        negated.sort_unstable();
        assert_eq!(forward_sorted, negated);
        assert_eq!(backward.numbers[backward.outer], 0);
    }

    #[test]
    fn region_count_is_crossings_plus_two() {
        for word in [
            vec![(1, true), (1, true), (1, true)],
            vec![(1, true), (1, false)],
            vec![(1, true), (2, true), (1, true), (2, false)],
        ] {
            let strands = word.iter().map(|&(i, _)| i).max().unwrap() + 1;
            let (pd, _) = braid_closure(strands, &word);
            let numbering = alexander_number(&pd).unwrap();
            assert_eq!(numbering.regions.len(), pd.crossings.len() + 2);
        }
    }

    #[test]
    fn verify_detects_tampering() {
        let (pd, _) = braid_closure(2, &[(1, true), (1, true), (1, true)]);
        let good = alexander_number(&pd).unwrap();
        assert!(verify_numbering(&pd, &good));

        let mut bumped = good.clone();
        let victim = (good.outer + 1) % good.numbers.len();
        bumped.numbers[victim] += 1;
        assert!(!verify_numbering(&pd, &bumped));

        // shifting everything keeps the +1 steps but moves the outer off 0
        let mut shifted = good.clone();
        for n in &mut shifted.numbers {
            *n += 1;
        }
        assert!(!verify_numbering(&pd, &shifted));
    }

    #[test]
    fn outer_override_changes_the_anchor() {
        let (mut pd, _) = braid_closure(2, &[(1, true), (1, true), (1, true)]);
        let default = alexander_number(&pd).unwrap();
        pd.outer = OuterSpec::AtArc {
            arc: 1,
            side: CurveSide::Left,
        };
        let shifted = alexander_number(&pd).unwrap();
        assert_ne!(default.outer, shifted.outer);
        assert_eq!(shifted.numbers[shifted.outer], 0);
        // same diagram, so the step structure is unchanged up to a constant
        let delta = shifted.numbers[default.outer];
        for (a, b) in default.numbers.iter().zip(&shifted.numbers) {
            assert_eq!(a + delta, *b);
        }
    }
}
