//! Alexander numbering of a classical knot diagram, cross-checked against
//! exact winding numbers on an embedded drawing.
//!
//! ```bash
//! cargo run -p braid-charts --example classical_regions
//! ```

use braid_charts::classical::{
    alexander_number, braid_closure, verify_numbering, winding_number, CurveSide,
};

fn main() {
    // the trefoil as the closure of the 2-strand braid with 3 positive
    // crossings
    let (pd, drawing) = braid_closure(2, &[(1, true), (1, true), (1, true)]);
    println!("trefoil PD code:");
    for x in &pd.crossings {
        println!("  X {} {} {} {}", x.arcs[0], x.arcs[1], x.arcs[2], x.arcs[3]);
    }

    let numbering = alexander_number(&pd).expect("planar diagram");
    println!("\n{} regions (crossings + 2):", numbering.regions.len());
    for (i, boundary) in numbering.regions.iter().enumerate() {
        let sides: Vec<String> = boundary
            .iter()
            .map(|&(arc, side)| {
                format!(
                    "{arc}{}",
                    if side == CurveSide::Left { "l" } else { "r" }
                )
            })
            .collect();
        println!(
            "  region {i}: number {}{} boundary [{}]",
            numbering.numbers[i],
            if i == numbering.outer { " (unbounded)" } else { "" },
            sides.join(" ")
        );
    }
    assert!(verify_numbering(&pd, &numbering));

    println!("\ncross-check against ray-cast winding numbers:");
    for &arc in drawing.arc_paths.keys() {
        let (left_pt, right_pt) = drawing.side_points(arc);
        let left = winding_number(&drawing.component_loops, left_pt);
        let right = winding_number(&drawing.component_loops, right_pt);
        println!("  arc {arc}: winding left {left}, right {right}");
        assert_eq!(left, right + 1);
    }
    println!("every region number equals the winding number: ok");
}
