//! The chart text format: parsing, canonical serialization, idempotence.
//!
//! ```bash
//! cargo run -p braid-charts --example chart_files
//! ```

use braid_charts::format::{parse_chart, serialize_chart};

fn main() {
    // directives may come in any order; serialization canonicalizes
    let scrambled = "\
%chart 1
# name: demo star
rot w e0:h,e1:h,e2:h,e3:t,e4:t,e5:t
edge e5 2 w b5
edge e4 1 w b4
edge e3 2 w b3
edge e2 1 b2 w
edge e1 2 b1 w
edge e0 1 b0 w
vertex w white
vertex b0 black
vertex b1 black
vertex b2 black
vertex b3 black
vertex b4 black
vertex b5 black
degree 3
";
    let doc = parse_chart(scrambled).expect("well-formed chart");
    println!(
        "parsed `{}`: degree {}, {} vertices, {} edges",
        doc.name.as_deref().unwrap_or("unnamed"),
        doc.chart.degree(),
        doc.chart.vertices().len(),
        doc.chart.edges().len()
    );

    let canonical = serialize_chart(&doc);
    println!("\ncanonical form:\n{canonical}");

    let again = serialize_chart(&parse_chart(&canonical).unwrap());
    assert_eq!(canonical, again, "canonicalization is idempotent");
    println!("serialize(parse(canonical)) is byte-identical: ok");
}
