//! Census tables and the balance equation for the built-in gadget charts.
//!
//! ```bash
//! cargo run -p braid-charts --example census_fixtures
//! ```

use braid_charts::census::{census, check_edge_count};
use braid_charts::chart::Sign;
use braid_charts::fixtures;
use braid_charts::identity::{check_star, star_holds};

fn main() {
    let named = [
        ("FE(3)   single edge", fixtures::fe(3, 4)),
        ("SW(2,+) capped white", fixtures::sw(2, Sign::Plus, 3)),
        ("SW(2,-) capped white", fixtures::sw(2, Sign::Minus, 3)),
        ("WP(2)   white pair", fixtures::wp(2, 3)),
        ("SP(2)   singular pair", fixtures::sp(2, 3)),
        ("SB(2)   capped singular", fixtures::sb(2, 3)),
        ("XG(1,3) crossing", fixtures::xg(1, 3, 4)),
    ];
    for (name, chart) in named {
        let table = census(&chart);
        println!("{name}");
        for (&p, &(plus, minus)) in table.b_map() {
            println!("  B({p}) = +{plus} / -{minus}");
        }
        for (&q, &(plus, minus)) in table.t_map() {
            println!("  T({q}) = +{plus} / -{minus}");
        }
        for (&r, &(plus, minus)) in table.d_map() {
            println!("  D({r}) = +{plus} / -{minus}");
        }
        for (&p, &n) in table.e_map() {
            println!("  E({p}) = {n}");
        }
        println!("  edge double-count holds: {}", check_edge_count(&table));
        println!("  balance (*) holds:       {}", star_holds(&table));
        for (p, ok) in check_star(&table) {
            assert!(ok, "balance fails at {p}");
        }
        println!();
    }
}
