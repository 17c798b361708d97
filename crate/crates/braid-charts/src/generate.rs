//! Seeded random generation of valid charts.
//!
//! Charts are grown from a soup of fixture gadgets with uniformly sampled
//! indices and signs, then stirred by splice and black-merge passes that
//! preserve validity or reject atomically. Every chart this module returns
//! passes [`crate::chart::validate`] by construction.
//!
//! Generation is reproducible: the stream is ChaCha8 seeded with the
//! configured 64-bit seed, so equal configs produce identical charts.

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::chart::{Chart, EdgeId, EndSide, Sign, VertexId, VertexKind};
use crate::fixtures;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenConfig {
    pub seed: u64,
    pub degree: i64,
    pub target_vertices: usize,
    pub allow_singular: bool,
    pub black_free: bool,
    pub splice_attempts: usize,
}

impl GenConfig {
    pub fn new(seed: u64, degree: i64, target_vertices: usize) -> Self {
        GenConfig {
            seed,
            degree,
            target_vertices,
            allow_singular: true,
            black_free: false,
            splice_attempts: 2 * target_vertices,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GenError {
    #[error("no gadget fits the config: {0}")]
    InfeasibleConfig(String),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpliceError {
    #[error("cannot splice an edge with itself")]
    SameEdge,
    #[error("edges carry labels {0} and {1}; splicing needs equal labels")]
    LabelMismatch(i64, i64),
    #[error("splice would leave the sphere; rejected")]
    GenusRejected,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MergeError {
    #[error("`{0}` is not a black vertex of the required sign")]
    NotASignedBlack(String),
    #[error("blacks carry labels {0} and {1}; merging needs equal labels")]
    LabelMismatch(i64, i64),
    #[error("merging the two ends of one edge would leave a vertex-free loop")]
    SelfFuse,
    #[error("merge would leave the sphere; rejected")]
    GenusRejected,
}

fn sphere_everywhere(chart: &Chart) -> bool {
    chart.component_euler().iter().all(|&(_, euler)| euler == 2)
}

/// Cross-reconnect two same-label edges: `tail(e1) -> head(e2)` and
/// `tail(e2) -> head(e1)`. Vertex templates are untouched (the affected
/// rotation slots keep their side and label), so the census is unchanged;
/// the result is accepted only if every component is still a sphere.
pub fn splice(chart: &Chart, e1: EdgeId, e2: EdgeId) -> Result<Chart, SpliceError> {
    if e1 == e2 {
        return Err(SpliceError::SameEdge);
    }
    let (l1, l2) = (chart.edge(e1).label, chart.edge(e2).label);
    if l1 != l2 {
        return Err(SpliceError::LabelMismatch(l1, l2));
    }
    let mut vertices = chart.vertices().to_vec();
    let mut edges = chart.edges().to_vec();
    let (h1, h2) = (edges[e1.0].head, edges[e2.0].head);
    edges[e1.0].head = h2;
    edges[e2.0].head = h1;
    let p1 = vertices[h1.0]
        .rotation
        .iter()
        .position(|&end| end == (e1, EndSide::Head))
        .expect("head end placed");
    let p2 = vertices[h2.0]
        .rotation
        .iter()
        .position(|&end| end == (e2, EndSide::Head))
        .expect("head end placed");
    vertices[h1.0].rotation[p1] = (e2, EndSide::Head);
    vertices[h2.0].rotation[p2] = (e1, EndSide::Head);
    let result =
        Chart::from_parts_unchecked(chart.degree(), vertices, edges, chart.coords().clone());
    if sphere_everywhere(&result) {
        Ok(result)
    } else {
        Err(SpliceError::GenusRejected)
    }
}

/// Remove a positive and a negative black vertex of equal label, fusing
/// their edges into one. The arc that ended at the negative black continues
/// as the arc that left the positive one.
pub fn merge_blacks(
    chart: &Chart,
    positive: VertexId,
    negative: VertexId,
) -> Result<Chart, MergeError> {
    let vp = chart.vertex(positive);
    let vm = chart.vertex(negative);
    if vp.kind != VertexKind::Black || vp.rotation[0].1 != EndSide::Tail {
        return Err(MergeError::NotASignedBlack(vp.name.clone()));
    }
    if vm.kind != VertexKind::Black || vm.rotation[0].1 != EndSide::Head {
        return Err(MergeError::NotASignedBlack(vm.name.clone()));
    }
    let out_edge = vp.rotation[0].0; // positive -> v
    let in_edge = vm.rotation[0].0; // u -> negative
    if out_edge == in_edge {
        return Err(MergeError::SelfFuse);
    }
    let (lo, li) = (chart.edge(out_edge).label, chart.edge(in_edge).label);
    if lo != li {
        return Err(MergeError::LabelMismatch(lo, li));
    }

    // the fused edge keeps in_edge's identity and tail, and takes over
    // out_edge's head and its slot there
    let target = chart.edge(out_edge).head;
    let mut vertices = chart.vertices().to_vec();
    let mut edges = chart.edges().to_vec();
    edges[in_edge.0].head = target;
    let pos = vertices[target.0]
        .rotation
        .iter()
        .position(|&end| end == (out_edge, EndSide::Head))
        .expect("head end placed");
    vertices[target.0].rotation[pos] = (in_edge, EndSide::Head);

    // drop the two blacks and the absorbed edge, remapping indices
    let keep_vertex: Vec<bool> = (0..vertices.len())
        .map(|i| i != positive.0 && i != negative.0)
        .collect();
    let mut vertex_map = vec![usize::MAX; vertices.len()];
    let mut out_vertices = Vec::with_capacity(vertices.len() - 2);
    for (i, v) in vertices.into_iter().enumerate() {
        if keep_vertex[i] {
            vertex_map[i] = out_vertices.len();
            out_vertices.push(v);
        }
    }
    let mut edge_map = vec![usize::MAX; edges.len()];
    let mut out_edges = Vec::with_capacity(edges.len() - 1);
    for (i, e) in edges.into_iter().enumerate() {
        if i != out_edge.0 {
            edge_map[i] = out_edges.len();
            out_edges.push(e);
        }
    }
    for e in &mut out_edges {
        e.tail = VertexId(vertex_map[e.tail.0]);
        e.head = VertexId(vertex_map[e.head.0]);
    }
    for v in &mut out_vertices {
        for end in &mut v.rotation {
            end.0 = EdgeId(edge_map[end.0 .0]);
        }
    }
    let coords = chart
        .coords()
        .iter()
        .filter(|&(&v, _)| keep_vertex[v])
        .map(|(&v, &c)| (vertex_map[v], c))
        .collect();

    let result = Chart::from_parts_unchecked(chart.degree(), out_vertices, out_edges, coords);
    if sphere_everywhere(&result) {
        Ok(result)
    } else {
        Err(MergeError::GenusRejected)
    }
}

#[derive(Debug, Clone, Copy)]
enum GadgetKind {
    Fe,
    Sw,
    Wp,
    Xg,
    Sp,
    Sb,
}

fn gadget_pool(config: &GenConfig) -> Vec<GadgetKind> {
    let n = config.degree;
    let mut pool = Vec::new();
    if !config.black_free {
        if n >= 2 {
            pool.push(GadgetKind::Fe);
        }
        if n >= 3 {
            pool.push(GadgetKind::Sw);
        }
        if n >= 4 {
            pool.push(GadgetKind::Xg);
        }
        if config.allow_singular && n >= 2 {
            pool.push(GadgetKind::Sb);
        }
    }
    if n >= 3 {
        pool.push(GadgetKind::Wp);
    }
    if config.allow_singular && n >= 2 {
        pool.push(GadgetKind::Sp);
    }
    pool
}

fn sample_gadget(kind: GadgetKind, degree: i64, rng: &mut ChaCha8Rng) -> Chart {
    let label = |rng: &mut ChaCha8Rng| rng.gen_range(1..degree);
    let index = |rng: &mut ChaCha8Rng| rng.gen_range(2..degree);
    let sign = |rng: &mut ChaCha8Rng| {
        if rng.gen::<bool>() {
            Sign::Plus
        } else {
            Sign::Minus
        }
    };
    match kind {
        GadgetKind::Fe => fixtures::fe(label(rng), degree),
        GadgetKind::Sw => fixtures::sw(index(rng), sign(rng), degree),
        GadgetKind::Wp => fixtures::wp(index(rng), degree),
        GadgetKind::Xg => {
            // any pair with gap >= 2
            let i = rng.gen_range(1..=degree - 3);
            let j = rng.gen_range(i + 2..degree);
            if rng.gen::<bool>() {
                fixtures::xg(i, j, degree)
            } else {
                fixtures::xg(j, i, degree)
            }
        }
        GadgetKind::Sp => fixtures::sp(label(rng), degree),
        GadgetKind::Sb => {
            let c = fixtures::sb(label(rng), degree);
            if rng.gen::<bool>() {
                c
            } else {
                c.reverse_orientation()
            }
        }
    }
}

/// Generate a valid chart: a gadget soup stirred by splice and merge
/// passes. Deterministic per config.
pub fn generate(config: &GenConfig) -> Result<Chart, GenError> {
    if config.target_vertices == 0 {
        return Ok(Chart::empty(config.degree.max(1)));
    }
    if config.degree < 2 {
        return Err(GenError::InfeasibleConfig(format!(
            "degree {} admits no edges",
            config.degree
        )));
    }
    let pool = gadget_pool(config);
    if pool.is_empty() {
        return Err(GenError::InfeasibleConfig(
            "no gadget kind is possible at this degree with these flags".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut parts = Vec::new();
    let mut total = 0usize;
    while total < config.target_vertices {
        let kind = *pool.choose(&mut rng).expect("nonempty pool");
        let part = sample_gadget(kind, config.degree, &mut rng);
        total += part.vertices().len();
        parts.push(part.with_prefixed_names(&format!("g{}_", parts.len())));
    }
    let mut chart =
        Chart::disjoint_union(&parts, config.degree).expect("prefixed ids are unique");

    for _ in 0..config.splice_attempts {
        let try_merge = !config.black_free && rng.gen_range(0..4) == 0;
        if try_merge {
            let mut positives = Vec::new();
            let mut negatives = Vec::new();
            for v in chart.vertex_ids() {
                let vertex = chart.vertex(v);
                if vertex.kind != VertexKind::Black {
                    continue;
                }
                let label = chart.edge(vertex.rotation[0].0).label;
                match vertex.rotation[0].1 {
                    EndSide::Tail => positives.push((v, label)),
                    EndSide::Head => negatives.push((v, label)),
                }
            }
            if positives.is_empty() {
                continue;
            }
            let &(vp, label) = positives.choose(&mut rng).expect("nonempty");
            let same: Vec<VertexId> = negatives
                .iter()
                .filter(|&&(_, l)| l == label)
                .map(|&(v, _)| v)
                .collect();
            let Some(&vm) = same.choose(&mut rng) else {
                continue;
            };
            if let Ok(next) = merge_blacks(&chart, vp, vm) {
                chart = next;
            }
        } else {
            let mut by_label: std::collections::BTreeMap<i64, Vec<EdgeId>> =
                std::collections::BTreeMap::new();
            for e in chart.edge_ids() {
                by_label.entry(chart.edge(e).label).or_default().push(e);
            }
            let eligible: Vec<&Vec<EdgeId>> =
                by_label.values().filter(|v| v.len() >= 2).collect();
            if eligible.is_empty() {
                continue;
            }
            let group = eligible[rng.gen_range(0..eligible.len())];
            let a = rng.gen_range(0..group.len());
            let b = loop {
                let b = rng.gen_range(0..group.len());
                if b != a {
                    break b;
                }
            };
            if let Ok(next) = splice(&chart, group[a], group[b]) {
                chart = next;
            }
        }
    }

    debug_assert!(crate::chart::validate(&chart).ok());
    Ok(chart)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::{census, check_edge_count};
    use crate::chart::validate;
    use crate::identity::{star_holds, weighted_sum, WeightSequence};
    use rand::Rng;

    #[test]
    fn generation_is_reproducible() {
        let config = GenConfig::new(7, 5, 25);
        let a = generate(&config).unwrap();
        let b = generate(&config).unwrap();
        assert_eq!(a, b);
        let other = generate(&GenConfig::new(8, 5, 25)).unwrap();
        assert_ne!(a, other);
    }

    #[test]
    fn generated_charts_pass_the_identity_suite() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        for seed in 1..=40 {
            let config = GenConfig::new(seed, 2 + (seed as i64 % 7), 6 + (seed as usize % 30));
            let chart = generate(&config).unwrap();
            let report = validate(&chart);
            assert!(report.ok(), "seed {seed}: {:?}", report.violations);
            let table = census(&chart);
            assert!(check_edge_count(&table), "seed {seed}");
            assert!(star_holds(&table), "seed {seed}");
            if let Some((lo, hi)) = table.support_bounds() {
                for _ in 0..5 {
                    let w = WeightSequence::from_fn(lo - 1, hi, |_| rng.gen_range(-50..=50))
                        .unwrap();
                    assert_eq!(weighted_sum(&table, &w).unwrap(), 0, "seed {seed}");
                }
            }
        }
    }

    #[test]
    fn black_free_mode_has_no_blacks_and_balanced_whites() {
        for seed in [7, 8, 9] {
            let config = GenConfig {
                black_free: true,
                ..GenConfig::new(seed, 5, 20)
            };
            let chart = generate(&config).unwrap();
            assert!(validate(&chart).ok());
            let table = census(&chart);
            assert!(table.is_black_free());
            for &(plus, minus) in table.t_map().values() {
                assert_eq!(plus, minus);
            }
        }
    }

    #[test]
    fn size_zero_yields_the_empty_chart() {
        let config = GenConfig::new(1, 4, 0);
        let chart = generate(&config).unwrap();
        assert_eq!(chart.vertices().len(), 0);
        assert!(validate(&chart).ok());
    }

    #[test]
    fn infeasible_configs_are_rejected() {
        // black-free at degree 2 without singulars leaves no gadgets
        let config = GenConfig {
            black_free: true,
            allow_singular: false,
            ..GenConfig::new(1, 2, 5)
        };
        assert!(matches!(
            generate(&config),
            Err(GenError::InfeasibleConfig(_))
        ));
        // with singulars it works: a soup of sp gadgets
        let config = GenConfig {
            black_free: true,
            allow_singular: true,
            ..GenConfig::new(1, 2, 5)
        };
        let chart = generate(&config).unwrap();
        assert!(validate(&chart).ok());
        assert!(census(&chart).is_black_free());
    }

    #[test]
    fn splice_two_disjoint_edges_keeps_census() {
        let parts = [
            fixtures::fe(1, 2).with_prefixed_names("a_"),
            fixtures::fe(1, 2).with_prefixed_names("b_"),
        ];
        let chart = Chart::disjoint_union(&parts, 2).unwrap();
        let e1 = chart.find_edge("a_e1").unwrap();
        let e2 = chart.find_edge("b_e1").unwrap();
        let spliced = splice(&chart, e1, e2).unwrap();
        assert!(validate(&spliced).ok());
        assert_eq!(census(&spliced), census(&chart));
        // the reconnect really happened
        assert_eq!(
            spliced.edge(e1).head,
            chart.edge(e2).head,
            "e1 now ends where e2 did"
        );
    }

    #[test]
    fn splice_rejects_genus_creation() {
        let chart = fixtures::wp(2, 3);
        let a = chart.find_edge("a").unwrap();
        let c = chart.find_edge("c").unwrap();
        assert_eq!(splice(&chart, a, c), Err(SpliceError::GenusRejected));
    }

    #[test]
    fn splice_rejects_label_mismatch_and_same_edge() {
        let chart = fixtures::wp(2, 3);
        let a = chart.find_edge("a").unwrap();
        let b = chart.find_edge("b").unwrap();
        assert_eq!(splice(&chart, a, a), Err(SpliceError::SameEdge));
        assert_eq!(splice(&chart, a, b), Err(SpliceError::LabelMismatch(2, 1)));
    }

    #[test]
    fn splice_preserves_weighted_sum() {
        let parts = [
            fixtures::sw(2, Sign::Plus, 3).with_prefixed_names("a_"),
            fixtures::sw(2, Sign::Minus, 3).with_prefixed_names("b_"),
        ];
        let chart = Chart::disjoint_union(&parts, 3).unwrap();
        let e1 = chart.find_edge("a_e1").unwrap();
        let e2 = chart.find_edge("b_e0").unwrap();
        assert_eq!(chart.edge(e1).label, chart.edge(e2).label);
        if let Ok(spliced) = splice(&chart, e1, e2) {
            let table = census(&spliced);
            let w = WeightSequence::linear(0, 3).unwrap();
            assert_eq!(weighted_sum(&table, &w).unwrap(), 0);
            assert_eq!(
                table.b_map(),
                census(&chart).b_map(),
                "B counts unchanged"
            );
        }
    }

    #[test]
    fn merge_fe_with_itself_is_degenerate() {
        let chart = fixtures::fe(2, 3);
        let vp = chart.find_vertex("bp").unwrap();
        let vm = chart.find_vertex("bm").unwrap();
        assert_eq!(merge_blacks(&chart, vp, vm), Err(MergeError::SelfFuse));
    }

    #[test]
    fn merge_across_gadgets_reduces_b_counts() {
        let parts = [
            fixtures::sw(2, Sign::Plus, 3).with_prefixed_names("a_"),
            fixtures::fe(1, 3).with_prefixed_names("b_"),
        ];
        let chart = Chart::disjoint_union(&parts, 3).unwrap();
        // sw's slot 4 black caps an outgoing label-1 edge, so it is negative
        let vm = chart.find_vertex("a_b4").unwrap();
        let vp = chart.find_vertex("b_bp").unwrap();
        let before = census(&chart);
        let merged = merge_blacks(&chart, vp, vm).unwrap();
        assert!(validate(&merged).ok());
        let after = census(&merged);
        assert_eq!(after.b(1).0, before.b(1).0 - 1);
        assert_eq!(after.b(1).1, before.b(1).1 - 1);
        assert!(star_holds(&after));
        assert!(check_edge_count(&after));
    }

    #[test]
    fn merge_checks_kinds_signs_and_labels() {
        let parts = [
            fixtures::sw(2, Sign::Plus, 3).with_prefixed_names("a_"),
            fixtures::fe(2, 3).with_prefixed_names("b_"),
        ];
        let chart = Chart::disjoint_union(&parts, 3).unwrap();
        let w = chart.find_vertex("a_w").unwrap();
        let vp = chart.find_vertex("b_bp").unwrap();
        let vm = chart.find_vertex("a_b4").unwrap(); // negative, label 1
        assert!(matches!(
            merge_blacks(&chart, w, vm),
            Err(MergeError::NotASignedBlack(_))
        ));
        assert!(matches!(
            merge_blacks(&chart, vm, vp),
            Err(MergeError::NotASignedBlack(_))
        ));
        assert_eq!(
            merge_blacks(&chart, vp, vm),
            Err(MergeError::LabelMismatch(2, 1))
        );
    }
}
