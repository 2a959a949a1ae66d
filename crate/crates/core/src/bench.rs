//! Timing series for the pipeline and log-log exponent fits.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::delta_matched::{compute_labels, layout_delta_matched};
use crate::error::Result;
use crate::generate::{self, Generated};
use crate::pipeline::{layout_graph, PipelineOptions, StageTimings};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub family: String,
    pub param: usize,
    pub n: usize,
    pub m: usize,
    pub timings: StageTimings,
    pub total_ms: f64,
    pub num_queues: usize,
    pub label_bits: u64,
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn fit_exponent(points: &[(f64, f64)]) -> f64 {
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let k = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / k;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / k;
    let cov: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let var: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    cov / var
}

/// Runs the pipeline `repeats` times and keeps the stage-wise minimum.
pub fn bench_graph(family: &str, param: usize, g: &Generated, repeats: usize) -> Result<BenchRow> {
    let mut best: Option<StageTimings> = None;
    let mut last = None;
    for _ in 0..repeats.max(1) {
        let out = layout_graph(&g.graph, g.rotation.as_ref(), &PipelineOptions::default())?;
        best = Some(match best {
            Some(b) => b.min(out.timings),
            None => out.timings,
        });
        last = Some(out);
    }
    let out = last.unwrap();
    let timings = best.unwrap();
    Ok(BenchRow {
        family: family.into(),
        param,
        n: g.graph.n(),
        m: g.graph.m(),
        total_ms: timings.total_ms(),
        timings,
        num_queues: out.layout.num_queues,
        label_bits: out.label_bits,
    })
}

pub fn bench_grid_series(sides: &[usize], repeats: usize) -> Result<Vec<BenchRow>> {
    sides
        .iter()
        .map(|&k| bench_graph("grid", k, &generate::grid(k)?, repeats))
        .collect()
}

pub fn bench_path_chord_series(sizes: &[usize]) -> Result<Vec<BenchRow>> {
    sizes
        .iter()
        .map(|&n| bench_graph("path-with-chord", n, &generate::path_with_chord(n)?, 1))
        .collect()
}

/// Random-shape Δ-matched trees with the given leaf counts.
pub fn bench_delta_matched_series(delta: usize, leaves: &[usize], seed: u64, repeats: usize) -> Result<Vec<BenchRow>> {
    leaves
        .iter()
        .map(|&l| {
            let inst = generate::delta_matched_random(delta, l, seed)?;
            let mut best = f64::INFINITY;
            let mut queues = 0;
            for _ in 0..repeats.max(1) {
                let t = Instant::now();
                queues = layout_delta_matched(&inst)?.num_queues;
                best = best.min(t.elapsed().as_secs_f64() * 1e3);
            }
            let bits = compute_labels(&inst.layered())?.max_bits();
            Ok(BenchRow {
                family: format!("delta-matched-{delta}"),
                param: l,
                n: inst.n(),
                m: inst.n() - 1 + inst.matching().len(),
                timings: StageTimings {
                    labels_ms: best,
                    ..Default::default()
                },
                total_ms: best,
                num_queues: queues,
                label_bits: bits,
            })
        })
        .collect()
}

pub fn format_table(rows: &[BenchRow]) -> String {
    let mut s = format!(
        "{:<20} {:>8} {:>9} {:>9} {:>10} {:>10} {:>10} {:>10} {:>10} {:>6} {:>6}\n",
        "family", "param", "n", "m", "prep_ms", "conc_ms", "label_ms", "coll_ms", "total_ms", "q", "bits"
    );
    for r in rows {
        s.push_str(&format!(
            "{:<20} {:>8} {:>9} {:>9} {:>10.3} {:>10.3} {:>10.3} {:>10.3} {:>10.3} {:>6} {:>6}\n",
            r.family,
            r.param,
            r.n,
            r.m,
            r.timings.preprocess_ms,
            r.timings.concentric_ms,
            r.timings.labels_ms,
            r.timings.collapse_ms,
            r.total_ms,
            r.num_queues,
            r.label_bits
        ));
    }
    s
}
