//! SVG drawings: arc diagrams of layouts and concentric layer drawings.

use std::fmt::Write;

use crate::concentric::ConcentricOrder;
use crate::layout::QueueLayout;
use crate::preprocess::{EdgeKind, PreparedGraph};

const PALETTE: [&str; 10] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2", "#7f7f7f",
    "#bcbd22",
];

fn color(q: usize) -> &'static str {
    PALETTE[q % PALETTE.len()]
}

/// Vertices on a line in layout order; each edge is an arc above the line,
/// colored by queue. With `layers`, consecutive runs of equal layer are boxed.
pub fn render_layout(layout: &QueueLayout, layers: Option<&[usize]>) -> String {
    let step = 40.0;
    let n = layout.order.len();
    let pos = layout.positions();
    let max_span = layout
        .queues
        .iter()
        .map(|q| pos[q.edge[0]].abs_diff(pos[q.edge[1]]))
        .max()
        .unwrap_or(1) as f64;
    let base = 30.0 + max_span * step / 2.0;
    let width = step * (n as f64 + 1.0);
    let height = base + 40.0;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let x = |i: usize| step * (i as f64 + 1.0);
    if let Some(layers) = layers {
        let mut i = 0;
        while i < n {
            let l = layers[layout.order[i]];
            let mut j = i;
            while j < n && layers[layout.order[j]] == l {
                j += 1;
            }
            let _ = writeln!(
                s,
                r##"<rect x="{}" y="{}" width="{}" height="24" fill="none" stroke="#bbb" stroke-dasharray="4 2"><title>layer {l}</title></rect>"##,
                x(i) - step / 2.0 + 2.0,
                base - 12.0,
                (j - i) as f64 * step - 4.0
            );
            i = j;
        }
    }
    for q in &layout.queues {
        let (a, b) = (pos[q.edge[0]].min(pos[q.edge[1]]), pos[q.edge[0]].max(pos[q.edge[1]]));
        let r = (x(b) - x(a)) / 2.0;
        let _ = writeln!(
            s,
            r#"<path d="M {} {base} A {r} {r} 0 0 1 {} {base}" fill="none" stroke="{}" stroke-width="1.5"><title>({}, {}) queue {}</title></path>"#,
            x(a),
            x(b),
            color(q.queue),
            q.edge[0],
            q.edge[1],
            q.queue
        );
    }
    for (i, &v) in layout.order.iter().enumerate() {
        let _ = writeln!(
            s,
            r#"<circle cx="{}" cy="{base}" r="4" fill="black"/><text x="{}" y="{}" font-size="10" text-anchor="middle">{v}</text>"#,
            x(i),
            x(i),
            base + 20.0
        );
    }
    s.push_str("</svg>\n");
    s
}

/// Layers as concentric circles around the root; tree edges solid, level
/// edges dashed.
pub fn render_concentric(prepared: &PreparedGraph, order: &ConcentricOrder) -> String {
    let ring = 40.0;
    let size = 2.0 * ring * (order.height as f64 + 1.5);
    let c = size / 2.0;
    let n = prepared.graph.n();
    let mut xy = vec![[c, c]; n];
    for (l, layer) in order.layers.iter().enumerate() {
        let r = ring * (order.height - l) as f64;
        for (i, &v) in layer.iter().enumerate() {
            let t = std::f64::consts::TAU * (i as f64 + 0.5) / layer.len() as f64;
            xy[v] = [c + r * t.cos(), c - r * t.sin()];
        }
    }
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#
    );
    for l in 0..order.height {
        let _ = writeln!(
            s,
            r##"<circle cx="{c}" cy="{c}" r="{}" fill="none" stroke="#ddd"/>"##,
            ring * (order.height - l) as f64
        );
    }
    for (&(u, v), kind) in prepared.graph.edges().iter().zip(&prepared.kinds) {
        let dash = if *kind == EdgeKind::Level { r#" stroke-dasharray="4 3""# } else { "" };
        let _ = writeln!(
            s,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="black"{dash}/>"#,
            xy[u][0], xy[u][1], xy[v][0], xy[v][1]
        );
    }
    let original = prepared.record.original_n;
    for (v, p) in xy.iter().enumerate() {
        let fill = if v < original { "black" } else { "white" };
        let _ = writeln!(
            s,
            r#"<circle cx="{}" cy="{}" r="4" fill="{fill}" stroke="black"><title>{v}</title></circle>"#,
            p[0], p[1]
        );
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn arcs_and_vertices_are_drawn() {
        let (_, layout) = fixtures::k4_two_queue_layout();
        let svg = render_layout(&layout, Some(&[0, 0, 1, 1]));
        assert_eq!(svg.matches("<path").count(), 6);
        assert_eq!(svg.matches("<circle").count(), 4);
        assert_eq!(svg.matches("<rect").count(), 2);
        assert!(svg.ends_with("</svg>\n"));
    }

    #[test]
    fn concentric_drawing_has_every_edge() {
        let f = fixtures::octahedron();
        let p = crate::preprocess::prepare(f.graph, f.rotation.unwrap(), None).unwrap();
        let order = crate::concentric::build_concentric_order(&p).unwrap();
        let svg = render_concentric(&p, &order);
        assert_eq!(svg.matches("<line").count(), p.graph.m());
    }
}
