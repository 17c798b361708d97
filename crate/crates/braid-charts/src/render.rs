//! SVG rendering and the vertical-band layout.
//!
//! Rendering is strictly presentational: it reads a chart and its optional
//! coordinates and produces text. Floating point appears here and nowhere
//! else; the math core stays exact.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::census::vertex_index;
use crate::chart::{Chart, VertexId, VertexKind};
use crate::dec::Dec;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RenderError {
    #[error("chart has no coordinates and automatic layout is disabled")]
    NoLayout,
}

/// Place vertices in vertical bands by index: an indexed vertex sits at
/// `x = 2 * index`, a crossing between its two arc labels, and vertices in
/// one band stack upward in id order. Exact coordinates, suitable for
/// serialization.
pub fn band_layout(chart: &Chart) -> BTreeMap<usize, (Dec, Dec)> {
    let mut band_of: BTreeMap<usize, i64> = BTreeMap::new();
    for v in chart.vertex_ids() {
        let vertex = chart.vertex(v);
        let band = match vertex.kind {
            VertexKind::Crossing => {
                let mut labels: Vec<i64> = vertex
                    .rotation
                    .iter()
                    .map(|&(e, _)| chart.edge(e).label)
                    .collect();
                labels.sort_unstable();
                labels.dedup();
                labels.iter().sum::<i64>()
            }
            _ => 2 * vertex_index(chart, v).expect("indexed vertex"),
        };
        band_of.insert(v.0, band);
    }
    let mut by_band: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (&v, &band) in &band_of {
        by_band.entry(band).or_default().push(v);
    }
    let mut coords = BTreeMap::new();
    for (band, mut members) in by_band {
        members.sort_by(|&a, &b| {
            chart.vertices()[a]
                .name
                .cmp(&chart.vertices()[b].name)
        });
        for (row, v) in members.into_iter().enumerate() {
            coords.insert(v, (Dec::from_int(band), Dec::from_int(3 * row as i64)));
        }
    }
    coords
}

#[derive(Debug, Clone, Copy)]
pub struct RenderOptions {
    /// Annotate black, white, and singular vertices with "index,sign".
    pub overlay_indices: bool,
    /// Fall back to [`band_layout`] when the chart carries no coordinates.
    pub auto_layout: bool,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            overlay_indices: false,
            auto_layout: true,
        }
    }
}

const SCALE: f64 = 40.0;
const MARGIN: f64 = 40.0;

pub fn render_svg(chart: &Chart, options: &RenderOptions) -> Result<String, RenderError> {
    let coords: BTreeMap<usize, (f64, f64)> = if !chart.coords().is_empty()
        && chart
            .vertex_ids()
            .all(|v| chart.coords().contains_key(&v.0))
    {
        chart
            .coords()
            .iter()
            .map(|(&v, &(x, y))| (v, (x.to_f64(), y.to_f64())))
            .collect()
    } else if options.auto_layout {
        band_layout(chart)
            .into_iter()
            .map(|(v, (x, y))| (v, (x.to_f64(), y.to_f64())))
            .collect()
    } else {
        return Err(RenderError::NoLayout);
    };

    let pos = |v: VertexId| {
        let &(x, y) = coords.get(&v.0).unwrap_or(&(0.0, 0.0));
        // flip y so larger rows draw upward
        (MARGIN + x * SCALE, MARGIN + (max_y(&coords) - y) * SCALE)
    };

    fn max_y(coords: &BTreeMap<usize, (f64, f64)>) -> f64 {
        coords.values().map(|&(_, y)| y).fold(0.0, f64::max)
    }

    let width = coords
        .values()
        .map(|&(x, _)| x)
        .fold(0.0, f64::max)
        .mul_add(SCALE, 2.0 * MARGIN);
    let height = max_y(&coords).mul_add(SCALE, 2.0 * MARGIN);

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0}\" height=\"{:.0}\" viewBox=\"0 0 {:.0} {:.0}\">",
        width.max(120.0),
        height.max(120.0),
        width.max(120.0),
        height.max(120.0)
    );
    svg.push_str(
        "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"5\" refY=\"5\" \
         markerWidth=\"6\" markerHeight=\"6\" orient=\"auto-start-reverse\">\
         <path d=\"M 0 0 L 10 5 L 0 10 z\" fill=\"#333\"/></marker></defs>\n",
    );

    // group parallel edges so their curves fan out instead of overlapping
    let mut pair_seen: BTreeMap<(usize, usize), i64> = BTreeMap::new();
    for e in chart.edges() {
        let (x1, y1) = pos(e.tail);
        let (x2, y2) = pos(e.head);
        let key = if e.tail.0 <= e.head.0 {
            (e.tail.0, e.head.0)
        } else {
            (e.head.0, e.tail.0)
        };
        let rank = *pair_seen
            .entry(key)
            .and_modify(|r| *r += 1)
            .or_insert(0);
        // alternate bulge sides: 0, +1, -1, +2, ...
        let bulge = if rank == 0 {
            0.0
        } else {
            let mag = ((rank + 1) / 2) as f64;
            if rank % 2 == 1 {
                mag
            } else {
                -mag
            }
        };
        let (mx, my);
        let path;
        if e.tail == e.head {
            // self-loop: a small lobe to the upper right
            mx = x1 + 0.9 * SCALE;
            my = y1 - 0.9 * SCALE;
            path = format!(
                "M {x1:.1} {y1:.1} Q {:.1} {:.1} {mx:.1} {my:.1} Q {:.1} {:.1} {x2:.1} {y2:.1}",
                x1 + SCALE,
                y1,
                x1,
                y1 - SCALE,
            );
        } else {
            let (dx, dy) = (x2 - x1, y2 - y1);
            let len = (dx * dx + dy * dy).sqrt().max(1.0);
            let (nx, ny) = (-dy / len, dx / len);
            let off = bulge * 0.45 * SCALE;
            mx = (x1 + x2) / 2.0 + nx * off;
            my = (y1 + y2) / 2.0 + ny * off;
            path = format!("M {x1:.1} {y1:.1} L {mx:.1} {my:.1} L {x2:.1} {y2:.1}");
        }
        let _ = writeln!(
            svg,
            "<path class=\"edge\" d=\"{path}\" fill=\"none\" stroke=\"#333\" \
             stroke-width=\"1.5\" marker-mid=\"url(#arrow)\"/>"
        );
        let _ = writeln!(
            svg,
            "<text class=\"edge-label\" x=\"{:.1}\" y=\"{:.1}\" font-size=\"11\" \
             fill=\"#555\" text-anchor=\"middle\">{}</text>",
            mx + 5.0,
            my - 5.0,
            e.label
        );
    }

    for v in chart.vertex_ids() {
        let vertex = chart.vertex(v);
        let (x, y) = pos(v);
        match vertex.kind {
            VertexKind::Black => {
                let _ = writeln!(
                    svg,
                    "<circle class=\"vertex black\" cx=\"{x:.1}\" cy=\"{y:.1}\" r=\"4\" fill=\"#000\"/>"
                );
            }
            VertexKind::White => {
                let _ = writeln!(
                    svg,
                    "<circle class=\"vertex white\" cx=\"{x:.1}\" cy=\"{y:.1}\" r=\"6\" \
                     fill=\"#fff\" stroke=\"#000\" stroke-width=\"1.5\"/>"
                );
            }
            VertexKind::Crossing => {
                let _ = writeln!(
                    svg,
                    "<rect class=\"vertex crossing\" x=\"{:.1}\" y=\"{:.1}\" width=\"6\" \
                     height=\"6\" fill=\"none\" stroke=\"#999\" transform=\"rotate(45 {x:.1} {y:.1})\"/>",
                    x - 3.0,
                    y - 3.0
                );
            }
            VertexKind::Singular => {
                let _ = writeln!(
                    svg,
                    "<polygon class=\"vertex singular\" points=\"{:.1},{y:.1} {x:.1},{:.1} {:.1},{y:.1} {x:.1},{:.1}\" fill=\"#c33\"/>",
                    x - 5.0,
                    y - 5.0,
                    x + 5.0,
                    y + 5.0
                );
            }
        }
        if options.overlay_indices && vertex.kind != VertexKind::Crossing {
            let index = vertex_index(chart, v).expect("indexed vertex");
            let sign = crate::census::vertex_sign(chart, v).expect("indexed vertex");
            let _ = writeln!(
                svg,
                "<text class=\"overlay\" x=\"{:.1}\" y=\"{:.1}\" font-size=\"10\" \
                 fill=\"#06c\">{index},{sign}</text>",
                x + 7.0,
                y + 3.0
            );
        }
    }

    svg.push_str("</svg>\n");
    Ok(svg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chart::Sign;
    use crate::fixtures;

    #[test]
    fn fe_renders_one_arrowed_path_and_two_vertex_glyphs() {
        let svg = render_svg(&fixtures::fe(3, 4), &RenderOptions::default()).unwrap();
        assert_eq!(svg.matches("class=\"edge\"").count(), 1);
        assert_eq!(svg.matches("class=\"vertex").count(), 2);
        assert!(svg.contains("marker-mid=\"url(#arrow)\""));
    }

    #[test]
    fn overlay_annotates_white_vertex_with_index_and_sign() {
        let options = RenderOptions {
            overlay_indices: true,
            ..Default::default()
        };
        let svg = render_svg(&fixtures::sw(2, Sign::Plus, 3), &options).unwrap();
        assert!(svg.contains(">2,+<"));
    }

    #[test]
    fn disabling_layout_without_coords_is_an_error() {
        let options = RenderOptions {
            overlay_indices: false,
            auto_layout: false,
        };
        assert_eq!(
            render_svg(&fixtures::fe(1, 2), &options),
            Err(RenderError::NoLayout)
        );
    }

    #[test]
    fn band_layout_orders_by_index() {
        let c = fixtures::xg(1, 3, 4);
        let coords = band_layout(&c);
        assert_eq!(coords.len(), c.vertices().len());
        let crossing = c.find_vertex("c").unwrap();
        // crossing of labels 1 and 3 sits at x = 4, between 2*1 and 2*3
        assert_eq!(coords[&crossing.0].0, Dec::from_int(4));
    }

    #[test]
    fn rendering_is_pure_text_generation() {
        let c = fixtures::wp(2, 3);
        let a = render_svg(&c, &RenderOptions::default()).unwrap();
        let b = render_svg(&c, &RenderOptions::default()).unwrap();
        assert_eq!(a, b);
    }
}
