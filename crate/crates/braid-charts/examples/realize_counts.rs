//! Prescribe singularity counts, fill in the minimal branch points, and
//! synthesize a chart realizing them exactly.
//!
//! ```bash
//! cargo run -p braid-charts --example realize_counts
//! ```

use std::collections::BTreeMap;

use braid_charts::census::census;
use braid_charts::format::{serialize_chart, serialize_targets, ChartDocument};
use braid_charts::realize::{plan_targets, realize, verify_realization, DEFAULT_BUDGET};

fn main() {
    // two positive triple points of index 2, one negative of index 3
    let t: BTreeMap<i64, (i64, i64)> = [(2, (2, 0)), (3, (0, 1))].into_iter().collect();
    let d: BTreeMap<i64, (i64, i64)> = [(2, (1, 0))].into_iter().collect();
    let targets = plan_targets(&t, &d);
    println!("planned targets (minimal B counts added):");
    print!("{}", serialize_targets(&targets));
    assert!(targets.star_holds());

    let result = realize(&targets, DEFAULT_BUDGET).expect("targets satisfy the balance equation");
    println!(
        "\nrealized: {} vertices, {} edges, {} faces, {} search nodes, {} crossings inserted",
        result.chart.vertices().len(),
        result.chart.edges().len(),
        result.chart.trace_faces().len(),
        result.nodes,
        result.crossings_inserted,
    );
    assert!(verify_realization(&targets.shifted(result.shift), &result.chart));
    println!("round-trip census check: ok");

    let table = census(&result.chart);
    println!(
        "census: B entries {:?}, T entries {:?}, D entries {:?}",
        table.b_map(),
        table.t_map(),
        table.d_map()
    );

    println!("\nchart file:");
    print!("{}", serialize_chart(&ChartDocument::new(result.chart)));
}
