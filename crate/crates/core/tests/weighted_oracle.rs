//! Weighted labels checked against an explicit expansion: every level edge on
//! layer `l > 0` is replaced by two complete `(Δ-1)`-ary trees of height `l`
//! whose leaves are joined by a rainbow, and the unweighted labelling of that
//! expanded tree must agree with the weighted one on the original vertices.

use num_traits::ToPrimitive;
use qlayout::collapse::layered_from_prepared;
use qlayout::concentric::{build_concentric_order, build_outer_routes};
use qlayout::delta_matched::{compute_labels, layout_delta_matched, layout_layered, DeltaMatchedInstance};
use qlayout::generate::{self, Generated};
use qlayout::fixtures;
use qlayout::preprocess::prepare;

fn hang_tree(children: &mut Vec<Vec<usize>>, at: usize, arity: usize, height: usize) -> Vec<usize> {
    let mut level = vec![at];
    for _ in 0..height {
        let mut next = Vec::new();
        for &v in &level {
            for _ in 0..arity {
                let c = children.len();
                children.push(Vec::new());
                children[v].push(c);
                next.push(c);
            }
        }
        level = next;
    }
    level
}

fn check_against_expansion(name: &str, g: &Generated) {
    let p = prepare(g.graph.clone(), g.rotation.clone().unwrap(), None).unwrap();
    let order = build_concentric_order(&p).unwrap();
    let routes = build_outer_routes(&p, &order).unwrap();
    let total: f64 = routes.routes.iter().map(|r| r.weight.to_f64().unwrap()).sum();
    assert!(total < 2e5, "{name}: expansion too large ({total})");

    let lm = layered_from_prepared(&p, &order, &routes);
    let (layout, labels) = layout_layered(&lm).unwrap();

    let n1 = p.graph.n();
    let arity = p.delta - 1;
    let mut children = order.children.clone();
    let mut matching = Vec::new();
    for r in &routes.routes {
        let (u, v) = r.edge;
        if r.layer == 0 {
            matching.push((u, v));
            continue;
        }
        let lu = hang_tree(&mut children, u, arity, r.layer);
        let lv = hang_tree(&mut children, v, arity, r.layer);
        let k = lu.len();
        matching.extend((0..k).map(|i| (lu[i], lv[k - 1 - i])));
    }
    let expanded = DeltaMatchedInstance::new(p.delta, children, matching).unwrap();
    let plain = compute_labels(&expanded.layered()).unwrap();
    for v in 0..n1 {
        assert_eq!(plain.matching[v], labels.matching[v], "{name}: matching value of {v}");
        assert_eq!(plain.group[v], labels.group[v], "{name}: group of {v}");
    }
    let full = layout_delta_matched(&expanded).unwrap();
    let restricted: Vec<usize> = full.order.iter().copied().filter(|&v| v < n1).collect();
    assert_eq!(restricted, layout.order, "{name}: order");
    for q in &layout.queues {
        let (a, b) = (q.edge[0], q.edge[1]);
        if let Some(fq) = full.queue_of(a, b) {
            assert_eq!(fq, q.queue, "{name}: queue of ({a}, {b})");
        }
    }
}

#[test]
fn expansion_agrees_on_small_graphs() {
    let mut cases: Vec<(String, Generated)> = vec![
        ("octahedron".into(), fixtures::octahedron()),
        ("k4".into(), fixtures::k4_embedded()),
    ];
    for k in 2..=7 {
        cases.push((format!("grid-{k}"), generate::grid(k).unwrap()));
    }
    for n in 3..=12 {
        cases.push((format!("prism-{n}"), generate::prism(n).unwrap()));
        cases.push((format!("path-chord-{n}"), generate::path_with_chord(n).unwrap()));
    }
    for h in 1..=4 {
        cases.push((format!("tree-2-{h}"), generate::tree(2, h).unwrap()));
    }
    for seed in 0..20 {
        cases.push((format!("stacked-7-{seed}"), generate::stacked_triangulation(7, seed).unwrap()));
    }
    for n in 4..=8 {
        cases.push((format!("fan-{n}"), generate::outerplanar_fan(n).unwrap()));
    }
    for (name, g) in &cases {
        check_against_expansion(name, g);
    }
}
