//! Acceptance suite: one test per criterion, each printing a pass line with
//! its timing. Every assertion is exact; no tolerances anywhere.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use braid_charts::census::{census, check_edge_count, Census};
use braid_charts::chart::{validate, Chart, Sign};
use braid_charts::classical;
use braid_charts::cli::cli_main;
use braid_charts::fixtures;
use braid_charts::format::{parse_chart, serialize_chart, ChartDocument, FormatErrorKind};
use braid_charts::generate::{generate, GenConfig};
use braid_charts::identity::{
    corollary_branch_sum, corollary_immersed, corollary_partial_sums, star_holds, weighted_sum,
    ImmersedCheck, WeightSequence,
};
use braid_charts::realize::{
    plan_targets, realize, verify_realization, TargetCounts, DEFAULT_BUDGET,
};

fn window_for(table: &Census) -> (i64, i64) {
    match table.support_bounds() {
        Some((lo, hi)) => (lo - 1, hi),
        None => (0, 1),
    }
}

/// The criterion-1 identity battery: validity, the edge double-count,
/// equation (*) everywhere, and exact zero weighted totals for constant,
/// linear, triangular, and five seeded random weight sequences.
fn assert_identity_suite(chart: &Chart, context: &str) {
    let report = validate(chart);
    assert!(report.ok(), "{context}: {:?}", report.violations);
    let table = census(chart);
    assert!(check_edge_count(&table), "{context}: edge count");
    assert!(star_holds(&table), "{context}: equation (*)");
    let (lo, hi) = window_for(&table);
    let mut weights = vec![
        WeightSequence::constant(5, lo, hi).unwrap(),
        WeightSequence::linear(lo, hi).unwrap(),
        WeightSequence::triangular(lo, hi).unwrap(),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE97);
    for _ in 0..5 {
        weights.push(WeightSequence::from_fn(lo, hi, |_| rng.gen_range(-999..=999)).unwrap());
    }
    for w in &weights {
        assert_eq!(
            weighted_sum(&table, w).unwrap(),
            0,
            "{context}: weighted total"
        );
    }
}

fn pass(criterion: u32, what: &str, started: Instant, budget: Option<Duration>) {
    let elapsed = started.elapsed();
    if let Some(budget) = budget {
        assert!(
            elapsed < budget,
            "criterion {criterion} took {elapsed:?}, budget {budget:?}"
        );
    }
    println!("acceptance criterion {criterion} ({what}): PASS in {elapsed:?}");
}

#[test]
fn criterion_1_fixture_identity_suite() {
    let started = Instant::now();
    let named: Vec<(String, Chart)> = vec![
        ("FE(1)".into(), fixtures::fe(1, 2)),
        ("FE(3)".into(), fixtures::fe(3, 4)),
        ("SW(2,+)".into(), fixtures::sw(2, Sign::Plus, 3)),
        ("SW(2,-)".into(), fixtures::sw(2, Sign::Minus, 3)),
        ("SW(3,+)".into(), fixtures::sw(3, Sign::Plus, 4)),
        ("SW(3,-)".into(), fixtures::sw(3, Sign::Minus, 4)),
        ("WP(2)".into(), fixtures::wp(2, 3)),
        ("SP(2)".into(), fixtures::sp(2, 3)),
        ("SB(2)".into(), fixtures::sb(2, 3)),
        ("XG(1,3)".into(), fixtures::xg(1, 3, 4)),
    ];
    for (name, chart) in &named {
        assert_identity_suite(chart, name);
    }
    pass(1, "fixture identity suite", started, Some(Duration::from_secs(1)));
}

fn criterion_2_config(seed: u64) -> GenConfig {
    // degrees up to 8, at most 60 vertices, singular vertices enabled
    GenConfig::new(seed, 2 + (seed as i64 % 7), 4 + (seed as usize % 50))
}

#[test]
fn criterion_2_randomized_theorem_verification() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x7E02);
    for seed in 1..=1000u64 {
        let config = criterion_2_config(seed);
        let chart = generate(&config).expect("feasible config");
        assert!(chart.vertices().len() <= 60, "seed {seed}: size bound");
        assert!(chart.degree() <= 8);
        let report = validate(&chart);
        assert!(report.ok(), "seed {seed}: {:?}", report.violations);
        let table = census(&chart);
        assert!(check_edge_count(&table), "seed {seed}: edge count");
        assert!(star_holds(&table), "seed {seed}: equation (*)");
        let (lo, hi) = window_for(&table);
        for _ in 0..5 {
            let w = WeightSequence::from_fn(lo, hi, |_| rng.gen_range(-999..=999)).unwrap();
            assert_eq!(weighted_sum(&table, &w).unwrap(), 0, "seed {seed}");
        }
    }
    pass(
        2,
        "1000 random charts satisfy the weighted theorem",
        started,
        Some(Duration::from_secs(30)),
    );
}

#[test]
fn criterion_3_corollary_suite() {
    let started = Instant::now();
    for seed in 1..=1000u64 {
        let chart = generate(&criterion_2_config(seed)).expect("feasible config");
        let table = census(&chart);
        let bs = corollary_branch_sum(&table);
        assert!(bs.ok, "seed {seed}: signed branch/singular total");
        if table.d_map().is_empty() {
            assert_eq!(bs.branch_total, 0, "seed {seed}: signed branch total");
        }
        assert!(
            corollary_partial_sums(&table).values().all(|ps| ps.ok),
            "seed {seed}: partial sums"
        );
    }
    for seed in 1..=200u64 {
        let config = GenConfig {
            black_free: true,
            ..GenConfig::new(seed, 3 + (seed as i64 % 6), 6 + (seed as usize % 40))
        };
        let chart = generate(&config).expect("feasible config");
        let table = census(&chart);
        assert!(table.is_black_free(), "seed {seed}");
        assert_eq!(
            corollary_immersed(&table),
            ImmersedCheck::Applicable { holds: true },
            "seed {seed}: immersed corollary"
        );
        let bs = corollary_branch_sum(&table);
        assert!(bs.ok && bs.branch_total == 0, "seed {seed}");
    }
    pass(
        3,
        "corollaries on 1000 charts and 200 black-free charts",
        started,
        None,
    );
}

fn random_t_targets(rng: &mut ChaCha8Rng) -> TargetCounts {
    let whites = rng.gen_range(1..=6usize);
    let mut t = std::collections::BTreeMap::new();
    for _ in 0..whites {
        let q = rng.gen_range(2..=5i64);
        let entry: &mut (i64, i64) = t.entry(q).or_insert((0, 0));
        if rng.gen::<bool>() {
            entry.0 += 1;
        } else {
            entry.1 += 1;
        }
    }
    plan_targets(&t, &std::collections::BTreeMap::new())
}

fn random_td_targets(rng: &mut ChaCha8Rng) -> TargetCounts {
    let whites = rng.gen_range(0..=4usize);
    let singulars = rng.gen_range(1..=3usize);
    let mut t = std::collections::BTreeMap::new();
    for _ in 0..whites {
        let q = rng.gen_range(2..=5i64);
        let entry: &mut (i64, i64) = t.entry(q).or_insert((0, 0));
        if rng.gen::<bool>() {
            entry.0 += 1;
        } else {
            entry.1 += 1;
        }
    }
    let mut d = std::collections::BTreeMap::new();
    for _ in 0..singulars {
        let r = rng.gen_range(1..=5i64);
        let entry: &mut (i64, i64) = d.entry(r).or_insert((0, 0));
        if rng.gen::<bool>() {
            entry.0 += 1;
        } else {
            entry.1 += 1;
        }
    }
    plan_targets(&t, &d)
}

#[test]
fn criterion_4_realization_round_trip() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EA1);
    let mut cases: Vec<TargetCounts> = (0..200).map(|_| random_t_targets(&mut rng)).collect();
    cases.extend((0..50).map(|_| random_td_targets(&mut rng)));
    for (i, targets) in cases.iter().enumerate() {
        assert!(targets.star_holds(), "case {i}");
        let result = realize(targets, DEFAULT_BUDGET)
            .unwrap_or_else(|e| panic!("case {i} failed: {e} for {targets:?}"));
        let shifted = targets.shifted(result.shift);
        assert!(
            verify_realization(&shifted, &result.chart),
            "case {i}: census mismatch"
        );
        assert_identity_suite(&result.chart, &format!("case {i}"));
    }
    pass(
        4,
        "200 T-targets and 50 T/D-targets realize and round-trip",
        started,
        Some(Duration::from_secs(120)),
    );
}

#[test]
#[allow(clippy::identity_op)]
fn criterion_5_star_gadget_spot_checks() {
    let started = Instant::now();
    let table = census(&fixtures::sw(2, Sign::Plus, 3));
    assert_eq!(table.b(1), (2, 1));
    assert_eq!(table.b(2), (1, 2));
    assert_eq!(table.t(2), (1, 0));
    assert_eq!(table.d_map().len(), 0);
    assert_eq!(table.e(1), 3);
    assert_eq!(table.e(2), 3);

    // linear weights x_p = p: 1*(2-1) + 2*(1-2) + y_2*(1-0) = 1 - 2 + 1 = 0
    let linear = WeightSequence::linear(0, 2).unwrap();
    let by_hand = 1 * (2 - 1) + 2 * (1 - 2) + (2 - 1) * (1 - 0);
    assert_eq!(by_hand, 0);
    assert_eq!(weighted_sum(&table, &linear).unwrap(), 0);

    // triangular weights x_p = p(p+1)/2: 1*(2-1) + 3*(1-2) + 2*(1-0)
    // = 1 - 3 + 2 = 0
    let triangular = WeightSequence::triangular(0, 2).unwrap();
    assert_eq!(triangular.x(1), 1);
    assert_eq!(triangular.x(2), 3);
    let by_hand = 1 * (2 - 1) + 3 * (1 - 2) + (3 - 1) * (1 - 0);
    assert_eq!(by_hand, 1 - 3 + 2);
    assert_eq!(by_hand, 0);
    assert_eq!(weighted_sum(&table, &triangular).unwrap(), 0);
    pass(5, "star gadget numeric spot checks", started, None);
}

#[test]
fn criterion_6_parser_round_trip_and_malformed_files() {
    let started = Instant::now();
    for seed in 1..=500u64 {
        let mut config = GenConfig::new(seed, 2 + (seed as i64 % 7), 3 + (seed as usize % 40));
        config.black_free = seed % 11 == 0 && config.degree >= 3;
        let chart = generate(&config).expect("feasible config");
        let doc = ChartDocument::new(chart);
        let first = serialize_chart(&doc);
        let reparsed = parse_chart(&first).unwrap_or_else(|e| panic!("seed {seed}: {e}"));
        let second = serialize_chart(&reparsed);
        assert_eq!(first, second, "seed {seed}: round trip not byte-identical");
    }

    type ErrCheck = fn(&FormatErrorKind) -> bool;
    // golden file: the seed-1 chart's canonical bytes are frozen
    let golden = include_str!("data/generate_seed1.chart");
    let chart = generate(&GenConfig::new(1, 5, 20)).unwrap();
    assert_identity_suite(&chart, "seed-1 golden chart");
    let serialized = serialize_chart(&ChartDocument::new(chart));
    assert_eq!(serialized, golden, "seed-1 golden file drifted");

    let malformed: Vec<(&str, ErrCheck)> = vec![
        ("", |k| matches!(k, FormatErrorKind::MissingHeader)),
        ("degree 3\n", |k| matches!(k, FormatErrorKind::MissingHeader)),
        ("%chart 2\ndegree 3\n", |k| matches!(k, FormatErrorKind::UnsupportedHeader(_))),
        ("%chart 1 extra\ndegree 3\n", |k| matches!(k, FormatErrorKind::UnsupportedHeader(_))),
        ("%targets 1\ndegree 3\n", |k| matches!(k, FormatErrorKind::UnsupportedHeader(_))),
        ("%chart 1\nvertex a black\n", |k| matches!(k, FormatErrorKind::MissingDegree)),
        ("%chart 1\ndegree 3\ndegree 3\n", |k| matches!(k, FormatErrorKind::DuplicateDegree)),
        ("%chart 1\ndegree 0\n", |k| {
            matches!(k, FormatErrorKind::Build(braid_charts::chart::BuildError::BadDegree(0)))
        }),
        ("%chart 1\ndegree three\n", |k| matches!(k, FormatErrorKind::BadInteger(_))),
        ("%chart 1\ndegree 3\nvortex a black\n", |k| {
            matches!(k, FormatErrorKind::UnknownDirective(_))
        }),
        ("%chart 1\ndegree 3\nvertex a gray\n", |k| {
            matches!(k, FormatErrorKind::UnknownVertexKind(_))
        }),
        ("%chart 1\ndegree 3\nvertex a black extra\n", |k| {
            matches!(k, FormatErrorKind::WrongArity { .. })
        }),
        ("%chart 1\ndegree 3\nvertex a-b black\n", |k| {
            matches!(k, FormatErrorKind::BadIdentifier(_))
        }),
        ("%chart 1\ndegree 3\nedge e 1 a\n", |k| {
            matches!(k, FormatErrorKind::WrongArity { .. })
        }),
        ("%chart 1\ndegree 3\nvertex a black\nvertex a white\n", |k| {
            matches!(k, FormatErrorKind::Build(braid_charts::chart::BuildError::DuplicateId(_)))
        }),
        ("%chart 1\ndegree 3\nvertex a black\nedge e 1 a ghost\n", |k| {
            matches!(
                k,
                FormatErrorKind::Build(braid_charts::chart::BuildError::DanglingReference { .. })
            )
        }),
        (
            "%chart 1\ndegree 3\nvertex w white\nvertex a black\nvertex b black\n\
             edge e 1 a w\nedge f 1 w b\nrot w e:h,f:t\n",
            |k| {
                matches!(
                    k,
                    FormatErrorKind::Build(braid_charts::chart::BuildError::RotationArity { .. })
                )
            },
        ),
        (
            "%chart 1\ndegree 3\nvertex s singular\nvertex t singular\n\
             edge e 1 s t\nedge f 1 s t\nrot s e:t,f:x\nrot t e:h,f:h\n",
            |k| matches!(k, FormatErrorKind::RotationSyntax(_)),
        ),
        (
            "%chart 1\ndegree 3\nvertex s singular\nvertex t singular\n\
             edge e 1 s t\nedge f 1 s t\nrot s e:t,f:t\nrot t e:h,f:t\n",
            |k| {
                matches!(
                    k,
                    FormatErrorKind::Build(braid_charts::chart::BuildError::MisplacedEnd { .. })
                )
            },
        ),
        ("%chart 1\ndegree 3\nvertex a black\ncoord a 1..2 0\n", |k| {
            matches!(k, FormatErrorKind::BadDecimal(_))
        }),
    ];
    assert_eq!(malformed.len(), 20);
    let dir = tempfile::tempdir().unwrap();
    for (i, (text, matches_kind)) in malformed.iter().enumerate() {
        let kind = parse_chart(text).expect_err(text).kind;
        assert!(matches_kind(&kind), "file {i}: got {kind:?}");

        // and through the CLI: documented error class on stderr, exit 2
        let path = dir.path().join(format!("malformed_{i}.chart"));
        std::fs::write(&path, text).unwrap();
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = cli_main(
            &["validate".to_string(), path.to_string_lossy().into_owned()],
            &mut out,
            &mut err,
        );
        assert_eq!(code, 2, "file {i}");
        assert!(!err.is_empty(), "file {i} should explain itself");
    }
    pass(
        6,
        "500 round-trips and 20 malformed files",
        started,
        None,
    );
}

#[test]
fn criterion_7_classical_numbering() {
    let started = Instant::now();

    // round unknot, both orientations
    for (ccw, expected_inner) in [(true, 1i64), (false, -1i64)] {
        let pd = classical::parse_pd(if ccw { "A 1 ccw\n" } else { "A 1 cw\n" }).unwrap();
        let numbering = classical::alexander_number(&pd).unwrap();
        assert_eq!(numbering.numbers.len(), 2);
        assert_eq!(numbering.numbers[numbering.outer], 0);
        assert_eq!(numbering.numbers[1 - numbering.outer], expected_inner);
    }

    // trefoil as a 2-braid closure, against the ray-casting winding oracle
    let (pd, drawing) = classical::braid_closure(2, &[(1, true), (1, true), (1, true)]);
    let numbering = classical::alexander_number(&pd).unwrap();
    assert_eq!(numbering.regions.len(), 5);
    assert!(classical::verify_numbering(&pd, &numbering));
    let mut checked_regions = std::collections::BTreeSet::new();
    for &arc in drawing.arc_paths.keys() {
        let (left_pt, right_pt) = drawing.side_points(arc);
        for (side, pt) in [
            (classical::CurveSide::Left, left_pt),
            (classical::CurveSide::Right, right_pt),
        ] {
            let region = numbering
                .regions
                .iter()
                .position(|r| r.contains(&(arc, side)))
                .unwrap();
            assert_eq!(
                numbering.numbers[region],
                classical::winding_number(&drawing.component_loops, pt),
                "arc {arc} {side:?}"
            );
            checked_regions.insert(region);
        }
    }
    assert_eq!(checked_regions.len(), 5, "oracle touched all regions");

    // orientation reversal negates every region number
    let reversed = classical::alexander_number(&pd.reverse()).unwrap();
    let mut forward: Vec<i64> = numbering.numbers.clone();
    let mut negated: Vec<i64> = reversed.numbers.iter().map(|&n| -n).collect();
    forward.sort_unstable();
    negated.sort_unstable();
    assert_eq!(forward, negated);
    assert_eq!(reversed.numbers[reversed.outer], 0);

    pass(7, "classical Alexander numbering", started, None);
}

#[test]
fn criterion_8_symmetry_properties() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x57_77);
    for seed in 1..=200u64 {
        let config = criterion_2_config(seed * 31 + 7);
        let chart = generate(&config).expect("feasible config");
        let table = census(&chart);

        let reversed = chart.reverse_orientation();
        assert!(validate(&reversed).ok(), "seed {seed}");
        assert_eq!(census(&reversed), table.sign_swapped(), "seed {seed}");

        let labels: Vec<i64> = chart.edges().iter().map(|e| e.label).collect();
        let min_label = labels.iter().min().copied().unwrap_or(1);
        let max_label = labels.iter().max().copied().unwrap_or(1);
        let shift = rng.gen_range(-(min_label - 1)..=6);
        let degree = max_label + shift + 1 + rng.gen_range(0..3);
        let translated = chart.translate_labels(shift, degree).unwrap();
        assert!(validate(&translated).ok(), "seed {seed}");
        assert_eq!(census(&translated), table.shifted(shift), "seed {seed}");
    }
    pass(
        8,
        "reversal and translation symmetries on 200 charts",
        started,
        None,
    );
}
