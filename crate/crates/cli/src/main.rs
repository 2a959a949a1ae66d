use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qlayout::bench;
use qlayout::concentric::build_concentric_order;
use qlayout::delta_matched::layout_delta_matched;
use qlayout::generate::{self, GeneratedInstance, GeneratorSpec};
use qlayout::io::{parse_delta_matched, parse_graph, parse_layout, Bounds, DeltaMatchedFile, GraphFile, LayoutFile};
use qlayout::pipeline::{layout_graph, PipelineOptions};
use qlayout::preprocess::prepare;
use qlayout::render::{render_concentric, render_layout};
use qlayout::verify::{exact_queue_number, max_rainbow, validate_layout, DEFAULT_EXACT_LIMIT};

const EXIT_USAGE: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_BOUND: u8 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Svg,
}

#[derive(Parser)]
#[command(name = "qlayout", version, about = "Queue layouts of bounded-degree planar graphs")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Seed for randomized generators.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Degree parameter for Δ-matched generators.
    #[arg(long, global = true, default_value_t = 3)]
    delta: usize,
    /// Write output here instead of standard output.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an embedded planar graph or a Δ-matched tree.
    Gen {
        #[command(subcommand)]
        family: Family,
    },
    /// Lay out an embedded planar graph.
    Layout {
        /// Graph JSON; standard input when omitted or "-".
        input: Option<PathBuf>,
        /// Root of the BFS layering (must have degree two).
        #[arg(long)]
        root: Option<usize>,
    },
    /// Lay out a Δ-matched tree directly.
    LayoutDm {
        input: Option<PathBuf>,
    },
    /// Check a layout against a graph; exit code 2 when invalid.
    Validate {
        graph: PathBuf,
        layout: PathBuf,
    },
    /// Exact queue number of a small graph.
    Exact {
        graph: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_EXACT_LIMIT)]
        limit: usize,
    },
    /// Largest rainbow of a graph under a layout's order.
    Rainbow {
        graph: PathBuf,
        layout: PathBuf,
    },
    /// Draw a layout or the layered normalized graph as SVG.
    Render {
        #[command(subcommand)]
        what: RenderTarget,
    },
    /// Time the pipeline over a size series.
    Bench {
        #[arg(long, value_enum, default_value = "grid")]
        series: Series,
        /// Comma-separated sizes (grid side, leaf count, or path length).
        #[arg(long, value_delimiter = ',')]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 3)]
        repeats: usize,
    },
}

#[derive(Subcommand)]
enum Family {
    Grid {
        #[arg(long)]
        k: usize,
    },
    Cycle {
        #[arg(long)]
        n: usize,
    },
    Path {
        #[arg(long)]
        n: usize,
    },
    Prism {
        #[arg(long)]
        n: usize,
    },
    Tree {
        #[arg(long)]
        arity: usize,
        #[arg(long)]
        height: usize,
    },
    Stacked {
        #[arg(long)]
        n: usize,
    },
    Fan {
        #[arg(long)]
        n: usize,
    },
    Complete {
        #[arg(long)]
        n: usize,
    },
    PathChord {
        #[arg(long)]
        n: usize,
    },
    DeltaMatched {
        #[arg(long)]
        height: usize,
    },
    DeltaMatchedRandom {
        #[arg(long)]
        leaves: usize,
    },
}

#[derive(Subcommand)]
enum RenderTarget {
    /// Arc diagram of a layout.
    Arcs { layout: PathBuf },
    /// Concentric layers of the normalized graph.
    Concentric {
        graph: Option<PathBuf>,
        #[arg(long)]
        root: Option<usize>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Series {
    Grid,
    DeltaMatched,
    PathChord,
}

struct Failure {
    code: u8,
    message: String,
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: e.to_string(),
        }
    }
}

fn read_input(path: Option<&PathBuf>) -> io::Result<String> {
    match path {
        Some(p) if p.as_os_str() != "-" => fs::read_to_string(p),
        _ => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn emit(cli: &Cli, text: &str) -> io::Result<()> {
    match &cli.output {
        Some(p) => fs::write(p, text),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())?;
            if !text.ends_with('\n') {
                out.write_all(b"\n")?;
            }
            Ok(())
        }
    }
}

fn unsupported(cli: &Cli, what: &str) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: format!("{what} cannot be written as {:?}", cli.format).to_lowercase(),
    }
}

fn generator_spec(cli: &Cli, family: &Family) -> GeneratorSpec {
    let (seed, delta) = (cli.seed, cli.delta);
    match *family {
        Family::Grid { k } => GeneratorSpec::Grid { k },
        Family::Cycle { n } => GeneratorSpec::Cycle { n },
        Family::Path { n } => GeneratorSpec::Path { n },
        Family::Prism { n } => GeneratorSpec::Prism { n },
        Family::Tree { arity, height } => GeneratorSpec::Tree { arity, height },
        Family::Stacked { n } => GeneratorSpec::StackedTriangulation { n, seed },
        Family::Fan { n } => GeneratorSpec::OuterplanarFan { n },
        Family::Complete { n } => GeneratorSpec::Complete { n },
        Family::PathChord { n } => GeneratorSpec::PathWithChord { n },
        Family::DeltaMatched { height } => GeneratorSpec::DeltaMatched { delta, height, seed },
        Family::DeltaMatchedRandom { leaves } => GeneratorSpec::DeltaMatchedRandom { delta, leaves, seed },
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Gen { family } => match generate::generate(&generator_spec(cli, family))? {
            GeneratedInstance::Graph(g) => match cli.format {
                Format::Json => emit(cli, &serde_json::to_string_pretty(&GraphFile::from_generated(&g))?)?,
                Format::Dot => emit(cli, &g.graph.to_dot())?,
                Format::Svg => return Err(unsupported(cli, "a graph")),
            },
            GeneratedInstance::DeltaMatched(inst) => match cli.format {
                Format::Json => emit(cli, &serde_json::to_string_pretty(&DeltaMatchedFile::from_instance(&inst))?)?,
                Format::Dot => emit(cli, &inst.to_graph().to_dot())?,
                Format::Svg => return Err(unsupported(cli, "a graph")),
            },
        },
        Command::Layout { input, root } => {
            let g = parse_graph(&read_input(input.as_ref())?)?;
            let out = layout_graph(&g.graph, g.rotation.as_ref(), &PipelineOptions { root: *root })?;
            match cli.format {
                Format::Json => {
                    let mut file = LayoutFile::new(&out.layout);
                    file.bounds = Bounds {
                        lemma1: out.report.lemma1_bound,
                        theorem1: Some(out.report.theorem1_bound),
                        delta_matched: None,
                    };
                    file.provenance = Some(out.record.clone());
                    file.report = Some(out.report.clone());
                    emit(cli, &serde_json::to_string_pretty(&file)?)?;
                }
                Format::Svg => emit(cli, &render_layout(&out.layout, None))?,
                Format::Dot => return Err(unsupported(cli, "a layout")),
            }
            if !out.report.within_bound {
                return Err(Failure {
                    code: EXIT_BOUND,
                    message: format!(
                        "{} queues exceed the bound {}",
                        out.report.q_final, out.report.theorem1_bound
                    ),
                });
            }
        }
        Command::LayoutDm { input } => {
            let inst = parse_delta_matched(&read_input(input.as_ref())?)?;
            let layout = layout_delta_matched(&inst)?;
            let bound = 2 * inst.delta() - 2;
            match cli.format {
                Format::Json => {
                    let mut file = LayoutFile::new(&layout);
                    file.bounds.delta_matched = Some(bound as u128);
                    emit(cli, &serde_json::to_string_pretty(&file)?)?;
                }
                Format::Svg => {
                    let layered = inst.layered();
                    emit(cli, &render_layout(&layout, Some(&layered.layer)))?
                }
                Format::Dot => return Err(unsupported(cli, "a layout")),
            }
            if layout.num_queues > bound {
                return Err(Failure {
                    code: EXIT_BOUND,
                    message: format!("{} queues exceed 2Δ-2 = {bound}", layout.num_queues),
                });
            }
        }
        Command::Validate { graph, layout } => {
            let g = parse_graph(&fs::read_to_string(graph)?)?;
            let l = parse_layout(&fs::read_to_string(layout)?)?.layout();
            let report = validate_layout(&g.graph, &l)?;
            emit(cli, &serde_json::to_string_pretty(&report)?)?;
            if let Some((e, f)) = report.witness {
                return Err(Failure {
                    code: EXIT_INVALID,
                    message: format!("edge ({}, {}) nests edge ({}, {}) in the same queue", e.0, e.1, f.0, f.1),
                });
            }
        }
        Command::Exact { graph, limit } => {
            let g = parse_graph(&read_input(graph.as_ref())?)?;
            emit(cli, &exact_queue_number(&g.graph, *limit)?.to_string())?;
        }
        Command::Rainbow { graph, layout } => {
            let g = parse_graph(&fs::read_to_string(graph)?)?;
            let l = parse_layout(&fs::read_to_string(layout)?)?;
            emit(cli, &max_rainbow(&l.order, g.graph.edges())?.to_string())?;
        }
        Command::Render { what } => match what {
            RenderTarget::Arcs { layout } => {
                let l = parse_layout(&fs::read_to_string(layout)?)?.layout();
                emit(cli, &render_layout(&l, None))?;
            }
            RenderTarget::Concentric { graph, root } => {
                let g = parse_graph(&read_input(graph.as_ref())?)?;
                let rotation = g.rotation.ok_or(qlayout::Error::MissingEmbedding)?;
                let p = prepare(g.graph, rotation, *root)?;
                let order = build_concentric_order(&p)?;
                emit(cli, &render_concentric(&p, &order))?;
            }
        },
        Command::Bench { series, sizes, repeats } => {
            let rows = match series {
                Series::Grid => {
                    let sizes = if sizes.is_empty() { vec![25, 50, 100, 200] } else { sizes.clone() };
                    bench::bench_grid_series(&sizes, *repeats)?
                }
                Series::DeltaMatched => {
                    let sizes = if sizes.is_empty() { vec![1 << 12, 1 << 14, 1 << 16] } else { sizes.clone() };
                    bench::bench_delta_matched_series(cli.delta, &sizes, cli.seed, *repeats)?
                }
                Series::PathChord => {
                    let sizes = if sizes.is_empty() { vec![10, 20, 40, 80, 160] } else { sizes.clone() };
                    bench::bench_path_chord_series(&sizes)?
                }
            };
            let pts: Vec<(f64, f64)> = rows.iter().map(|r| (r.n as f64, r.total_ms.max(1e-6))).collect();
            let exponent = (pts.len() >= 2).then(|| bench::fit_exponent(&pts));
            match cli.format {
                Format::Json => emit(
                    cli,
                    &serde_json::to_string_pretty(&serde_json::json!({ "rows": rows, "exponent": exponent }))?,
                )?,
                _ => {
                    let mut text = bench::format_table(&rows);
                    if let Some(e) = exponent {
                        text.push_str(&format!("fitted exponent: {e:.3}\n"));
                    }
                    emit(cli, &text)?;
                }
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        // a closed downstream pipe (e.g. `| head`) is not a failure
        Err(f) if f.message.contains("Broken pipe") => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
