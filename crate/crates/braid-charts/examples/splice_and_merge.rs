//! Census-preserving surgery on charts: splicing same-label edges and
//! merging opposite-sign black vertices, with the sphere check deciding
//! acceptance.
//!
//! ```bash
//! cargo run -p braid-charts --example splice_and_merge
//! ```

use braid_charts::census::census;
use braid_charts::chart::{validate, Chart, Sign};
use braid_charts::fixtures;
use braid_charts::generate::{merge_blacks, splice, SpliceError};

fn main() {
    // two disjoint single-edge charts; splicing their edges crosses the
    // connections while leaving every count unchanged
    let parts = [
        fixtures::fe(1, 2).with_prefixed_names("a_"),
        fixtures::fe(1, 2).with_prefixed_names("b_"),
    ];
    let chart = Chart::disjoint_union(&parts, 2).unwrap();
    let e1 = chart.find_edge("a_e1").unwrap();
    let e2 = chart.find_edge("b_e1").unwrap();
    let spliced = splice(&chart, e1, e2).expect("cross-component splice is a sphere");
    println!(
        "spliced two disjoint edges: censuses equal: {}",
        census(&spliced) == census(&chart)
    );

    // inside the white pair, swapping two parallel same-label edges would
    // twist the sphere into a torus, so the move is rejected atomically
    let wp = fixtures::wp(2, 3);
    let a = wp.find_edge("a").unwrap();
    let c = wp.find_edge("c").unwrap();
    match splice(&wp, a, c) {
        Err(SpliceError::GenusRejected) => println!("in-component splice rejected: genus"),
        other => panic!("expected genus rejection, got {other:?}"),
    }

    // merging a negative black of one gadget with a positive black of
    // another fuses their arcs into one longer arc
    let parts = [
        fixtures::sw(2, Sign::Plus, 3).with_prefixed_names("w_"),
        fixtures::fe(1, 3).with_prefixed_names("f_"),
    ];
    let chart = Chart::disjoint_union(&parts, 3).unwrap();
    let before = census(&chart);
    let positive = chart.find_vertex("f_bp").unwrap();
    let negative = chart.find_vertex("w_b4").unwrap();
    let merged = merge_blacks(&chart, positive, negative).expect("labels match");
    let after = census(&merged);
    println!(
        "merged blacks: B(1) went {:?} -> {:?}, still valid: {}",
        before.b(1),
        after.b(1),
        validate(&merged).ok()
    );
    println!(
        "arcs of label 1: E(1) went {} -> {} (two arcs fused into one)",
        before.e(1),
        after.e(1)
    );
}
