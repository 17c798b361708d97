//! Generate a random valid chart and run the whole identity suite on it.
//!
//! ```bash
//! cargo run -p braid-charts --example verify_random_chart
//! ```

use rand::{Rng, SeedableRng};

use braid_charts::census::{census, check_edge_count};
use braid_charts::chart::validate;
use braid_charts::generate::{generate, GenConfig};
use braid_charts::identity::{
    corollary_branch_sum, corollary_partial_sums, star_holds, weighted_sum, WeightSequence,
};

fn main() {
    let config = GenConfig::new(20240, 6, 30);
    let chart = generate(&config).expect("config is feasible");
    println!(
        "generated chart: degree {}, {} vertices, {} edges, {} faces",
        chart.degree(),
        chart.vertices().len(),
        chart.edges().len(),
        chart.trace_faces().len(),
    );
    assert!(validate(&chart).ok());

    let table = census(&chart);
    let (lo, hi) = match table.support_bounds() {
        Some((min, max)) => (min - 1, max),
        None => (0, 1),
    };
    println!("census support window: [{lo}, {hi}]");
    println!("edge double-count: {}", check_edge_count(&table));
    println!("balance (*):       {}", star_holds(&table));
    let bs = corollary_branch_sum(&table);
    println!(
        "signed branch total {} + singular total {} = 0: {}",
        bs.branch_total, bs.singular_total, bs.ok
    );
    println!(
        "partial sums hold:  {}",
        corollary_partial_sums(&table).values().all(|ps| ps.ok)
    );

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for name in ["constant:5", "linear", "triangular"] {
        let w = match name {
            "constant:5" => WeightSequence::constant(5, lo, hi),
            "linear" => WeightSequence::linear(lo, hi),
            _ => WeightSequence::triangular(lo, hi),
        }
        .unwrap();
        println!(
            "weighted total with {name:12} weights: {}",
            weighted_sum(&table, &w).unwrap()
        );
    }
    for i in 0..3 {
        let w = WeightSequence::from_fn(lo, hi, |_| rng.gen_range(-50..=50)).unwrap();
        println!(
            "weighted total with random weights #{i}:  {}",
            weighted_sum(&table, &w).unwrap()
        );
    }
}
