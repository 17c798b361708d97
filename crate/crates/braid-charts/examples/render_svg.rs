//! Render charts to SVG with index/sign overlays.
//!
//! ```bash
//! cargo run -p braid-charts --example render_svg
//! ```

use braid_charts::chart::Sign;
use braid_charts::fixtures;
use braid_charts::generate::{generate, GenConfig};
use braid_charts::render::{render_svg, RenderOptions};

fn main() {
    let options = RenderOptions {
        overlay_indices: true,
        auto_layout: true,
    };
    let out_dir = std::env::temp_dir();
    for (name, chart) in [
        ("sw_2_plus", fixtures::sw(2, Sign::Plus, 3)),
        ("wp_2", fixtures::wp(2, 3)),
        (
            "random_chart",
            generate(&GenConfig::new(5, 5, 24)).expect("feasible config"),
        ),
    ] {
        let svg = render_svg(&chart, &options).expect("layout available");
        let path = out_dir.join(format!("{name}.svg"));
        std::fs::write(&path, &svg).expect("writable temp dir");
        println!(
            "{name}: {} vertices, {} edges -> {}",
            chart.vertices().len(),
            chart.edges().len(),
            path.display()
        );
    }
}
