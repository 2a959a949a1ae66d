//! Seeded generators for planar families with embeddings, and for Δ-matched
//! trees.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::delta_matched::DeltaMatchedInstance;
use crate::error::{Error, Result};
use crate::graph::{rotation_from_coordinates, Edge, Graph, RotationSystem};

/// A generated graph with its embedding and, when natural, coordinates.
#[derive(Clone, Debug)]
pub struct Generated {
    pub graph: Graph,
    pub rotation: Option<RotationSystem>,
    pub coords: Option<Vec<[f64; 2]>>,
}

impl Generated {
    fn from_coords(graph: Graph, coords: Vec<[f64; 2]>) -> Result<Self> {
        let rotation = rotation_from_coordinates(&graph, &coords)?;
        Ok(Generated {
            graph,
            rotation: Some(rotation),
            coords: Some(coords),
        })
    }

    fn from_rotation(graph: Graph, order: Vec<Vec<usize>>) -> Result<Self> {
        let rotation = RotationSystem::new(&graph, order)?;
        rotation.check_euler(&graph)?;
        Ok(Generated {
            graph,
            rotation: Some(rotation),
            coords: None,
        })
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn need(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidParams(msg()))
    }
}

/// `k x k` grid; vertex `(i, j)` is `i * k + j`.
pub fn grid(k: usize) -> Result<Generated> {
    need(k >= 1, || "grid side must be positive".into())?;
    let mut edges = Vec::new();
    let mut coords = Vec::with_capacity(k * k);
    for i in 0..k {
        for j in 0..k {
            let v = i * k + j;
            coords.push([j as f64, i as f64]);
            if j + 1 < k {
                edges.push((v, v + 1));
            }
            if i + 1 < k {
                edges.push((v, v + k));
            }
        }
    }
    Generated::from_coords(Graph::new(k * k, edges)?, coords)
}

fn circle(n: usize, radius: f64, phase: f64) -> impl Iterator<Item = [f64; 2]> {
    (0..n).map(move |i| {
        let t = phase + std::f64::consts::TAU * i as f64 / n as f64;
        [radius * t.cos(), radius * t.sin()]
    })
}

pub fn cycle(n: usize) -> Result<Generated> {
    need(n >= 3, || format!("a cycle needs 3 vertices, got {n}"))?;
    let g = Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))?;
    Generated::from_coords(g, circle(n, 1.0, 0.0).collect())
}

pub fn path(n: usize) -> Result<Generated> {
    need(n >= 1, || "a path needs a vertex".into())?;
    let g = Graph::new(n, (1..n).map(|i| (i - 1, i)))?;
    Generated::from_coords(g, (0..n).map(|i| [i as f64, 0.0]).collect())
}

/// Two concentric `n`-cycles joined by spokes.
pub fn prism(n: usize) -> Result<Generated> {
    need(n >= 3, || format!("a prism needs n >= 3, got {n}"))?;
    let mut edges = Vec::with_capacity(3 * n);
    for i in 0..n {
        edges.push((i, (i + 1) % n));
        edges.push((n + i, n + (i + 1) % n));
        edges.push((i, n + i));
    }
    let coords = circle(n, 2.0, 0.0).chain(circle(n, 1.0, 0.0)).collect();
    Generated::from_coords(Graph::new(2 * n, edges)?, coords)
}

/// Complete `arity`-ary tree of the given height, vertices in BFS order.
pub fn tree(arity: usize, height: usize) -> Result<Generated> {
    need(arity >= 1, || "arity must be positive".into())?;
    let mut children: Vec<Vec<usize>> = vec![Vec::new()];
    let mut frontier = vec![0];
    for _ in 0..height {
        let mut next = Vec::new();
        for &v in &frontier {
            for _ in 0..arity {
                let c = children.len();
                children.push(Vec::new());
                children[v].push(c);
                next.push(c);
            }
        }
        frontier = next;
    }
    let n = children.len();
    let mut parent = vec![None; n];
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    for (v, kids) in children.iter().enumerate() {
        for &c in kids {
            parent[c] = Some(v);
            edges.push((v, c));
        }
    }
    let order = (0..n)
        .map(|v| parent[v].into_iter().chain(children[v].iter().copied()).collect())
        .collect();
    Generated::from_rotation(Graph::new(n, edges)?, order)
}

/// Triangle with `n - 3` vertices stacked into uniformly chosen inner faces.
pub fn stacked_triangulation(n: usize, seed: u64) -> Result<Generated> {
    need(n >= 3, || format!("a triangulation needs 3 vertices, got {n}"))?;
    let mut rng = rng(seed);
    let mut rot: Vec<Vec<usize>> = vec![vec![1, 2], vec![2, 0], vec![0, 1]];
    let mut faces: Vec<[usize; 3]> = vec![[0, 1, 2]];
    let mut edges: Vec<Edge> = vec![(0, 1), (1, 2), (0, 2)];
    fn insert_after(list: &mut Vec<usize>, after: usize, x: usize) {
        let i = list.iter().position(|&w| w == after).unwrap();
        list.insert(i + 1, x);
    }
    for x in 3..n {
        let f = rng.gen_range(0..faces.len());
        let [a, b, c] = faces[f];
        insert_after(&mut rot[a], b, x);
        insert_after(&mut rot[b], c, x);
        insert_after(&mut rot[c], a, x);
        rot.push(vec![a, b, c]);
        edges.extend([(a, x), (b, x), (c, x)]);
        faces[f] = [a, b, x];
        faces.push([b, c, x]);
        faces.push([c, a, x]);
    }
    let graph = Graph::new(n, edges)?;
    let rotation = RotationSystem::new(&graph, rot)?.with_outer_face(&graph, (0, 2))?;
    rotation.check_euler(&graph)?;
    Ok(Generated {
        graph,
        rotation: Some(rotation),
        coords: None,
    })
}

/// A hub joined to every vertex of a path on `n - 1` vertices.
pub fn outerplanar_fan(n: usize) -> Result<Generated> {
    need(n >= 2, || format!("a fan needs 2 vertices, got {n}"))?;
    let mut edges: Vec<Edge> = (1..n).map(|i| (0, i)).collect();
    edges.extend((2..n).map(|i| (i - 1, i)));
    let mut coords = vec![[0.0, 0.0]];
    let k = (n - 1) as f64;
    coords.extend((1..n).map(|i| {
        let t = std::f64::consts::PI * (i as f64 - 0.5) / k;
        [t.cos(), t.sin()]
    }));
    Generated::from_coords(Graph::new(n, edges)?, coords)
}

pub fn complete_graph(n: usize) -> Graph {
    Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).expect("simple")
}

/// `K_n` with an embedding, planar only for `n <= 4`.
pub fn complete(n: usize) -> Result<Generated> {
    need((1..=4).contains(&n), || format!("K_{n} is not planar or empty"))?;
    let coords = match n {
        4 => vec![[0.0, 10.0], [-8.66, -5.0], [8.66, -5.0], [0.0, 0.0]],
        _ => circle(n, 1.0, 0.0).collect(),
    };
    Generated::from_coords(complete_graph(n), coords)
}

/// A path `0, 1, ..., n - 1` with the chord `(0, 2)`.
pub fn path_with_chord(n: usize) -> Result<Generated> {
    need(n >= 3, || format!("path with chord needs 3 vertices, got {n}"))?;
    let mut edges: Vec<Edge> = (1..n).map(|i| (i - 1, i)).collect();
    edges.push((0, 2));
    let mut coords = vec![[1.5, 1.0]];
    coords.extend((1..n).map(|i| [i as f64, 0.0]));
    Generated::from_coords(Graph::new(n, edges)?, coords)
}

/// Uniform non-crossing perfect matching on `2k` positions, via the cycle
/// lemma applied to a shuffled sequence of `k + 1` opens and `k` closes.
pub fn random_noncrossing_matching(pairs: usize, rng: &mut impl Rng) -> Vec<(usize, usize)> {
    let mut steps: Vec<i32> = std::iter::repeat_n(1, pairs + 1)
        .chain(std::iter::repeat_n(-1, pairs))
        .collect();
    steps.shuffle(rng);
    let mut sum = 0;
    let mut low = 0;
    let mut cut = 0;
    for (i, s) in steps.iter().enumerate() {
        if sum <= low {
            low = sum;
            cut = i;
        }
        sum += s;
    }
    steps.rotate_left(cut);
    let mut stack = Vec::new();
    let mut out = Vec::with_capacity(pairs);
    for (i, &s) in steps[1..].iter().enumerate() {
        if s > 0 {
            stack.push(i);
        } else {
            out.push((stack.pop().unwrap(), i));
        }
    }
    out
}

fn matched_instance(delta: usize, children: Vec<Vec<usize>>, rng: &mut impl Rng) -> Result<DeltaMatchedInstance> {
    // leaves in left-to-right order
    let mut leaves = Vec::new();
    let mut stack = vec![0];
    while let Some(v) = stack.pop() {
        if children[v].is_empty() {
            leaves.push(v);
        }
        stack.extend(children[v].iter().rev());
    }
    need(leaves.len() % 2 == 0, || format!("{} leaves cannot be perfectly matched", leaves.len()))?;
    let matching = random_noncrossing_matching(leaves.len() / 2, rng)
        .into_iter()
        .map(|(a, b)| (leaves[a], leaves[b]))
        .collect();
    DeltaMatchedInstance::new(delta, children, matching)
}

/// Complete `(delta - 1)`-ary tree with a random non-crossing matching.
pub fn delta_matched(delta: usize, height: usize, seed: u64) -> Result<DeltaMatchedInstance> {
    if delta < 3 {
        return Err(Error::InvalidDelta(delta));
    }
    need(height >= 1, || "height must be positive".into())?;
    let arity = delta - 1;
    let mut children: Vec<Vec<usize>> = vec![Vec::new()];
    let mut frontier = vec![0];
    for _ in 0..height {
        let mut next = Vec::with_capacity(frontier.len() * arity);
        for &v in &frontier {
            for _ in 0..arity {
                let c = children.len();
                children.push(Vec::new());
                children[v].push(c);
                next.push(c);
            }
        }
        frontier = next;
    }
    matched_instance(delta, children, &mut rng(seed))
}

/// Random-shape Δ-matched tree with exactly `leaves` leaves: each internal
/// vertex gets between 1 and `delta - 1` children.
pub fn delta_matched_random(delta: usize, leaves: usize, seed: u64) -> Result<DeltaMatchedInstance> {
    if delta < 3 {
        return Err(Error::InvalidDelta(delta));
    }
    need(leaves >= 2 && leaves.is_multiple_of(2), || format!("leaf count must be even and positive, got {leaves}"))?;
    let arity = delta - 1;
    let mut rng = rng(seed);
    let mut min_height = 0;
    let mut cap = 1usize;
    while cap < leaves {
        cap = cap.saturating_mul(arity);
        min_height += 1;
    }
    let height = min_height.max(1) + rng.gen_range(0..=2);
    let mut children: Vec<Vec<usize>> = vec![Vec::new()];
    let mut level = vec![0];
    for i in 0..height {
        let rest = (height - i - 1) as u32;
        let reach = arity.checked_pow(rest).unwrap_or(usize::MAX);
        let lo = level.len().max(leaves.div_ceil(reach));
        let hi = (level.len() * arity).min(leaves);
        let size = rng.gen_range(lo..=hi);
        // one child each, then spread the rest
        let mut counts = vec![1; level.len()];
        let mut open: Vec<usize> = (0..level.len()).filter(|_| arity > 1).collect();
        for _ in level.len()..size {
            let k = rng.gen_range(0..open.len());
            let p = open[k];
            counts[p] += 1;
            if counts[p] == arity {
                open.swap_remove(k);
            }
        }
        let mut next = Vec::with_capacity(size);
        for (&v, &c) in level.iter().zip(&counts) {
            for _ in 0..c {
                let id = children.len();
                children.push(Vec::new());
                children[v].push(id);
                next.push(id);
            }
        }
        level = next;
    }
    matched_instance(delta, children, &mut rng)
}

/// Named generator families.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum GeneratorSpec {
    Grid { k: usize },
    Cycle { n: usize },
    Path { n: usize },
    Prism { n: usize },
    Tree { arity: usize, height: usize },
    StackedTriangulation { n: usize, seed: u64 },
    OuterplanarFan { n: usize },
    Complete { n: usize },
    PathWithChord { n: usize },
    DeltaMatched { delta: usize, height: usize, seed: u64 },
    DeltaMatchedRandom { delta: usize, leaves: usize, seed: u64 },
}

#[derive(Clone, Debug)]
pub enum GeneratedInstance {
    Graph(Generated),
    DeltaMatched(DeltaMatchedInstance),
}

pub fn generate(spec: &GeneratorSpec) -> Result<GeneratedInstance> {
    use GeneratorSpec::*;
    Ok(match *spec {
        Grid { k } => GeneratedInstance::Graph(grid(k)?),
        Cycle { n } => GeneratedInstance::Graph(cycle(n)?),
        Path { n } => GeneratedInstance::Graph(path(n)?),
        Prism { n } => GeneratedInstance::Graph(prism(n)?),
        Tree { arity, height } => GeneratedInstance::Graph(tree(arity, height)?),
        StackedTriangulation { n, seed } => GeneratedInstance::Graph(stacked_triangulation(n, seed)?),
        OuterplanarFan { n } => GeneratedInstance::Graph(outerplanar_fan(n)?),
        Complete { n } => GeneratedInstance::Graph(complete(n)?),
        PathWithChord { n } => GeneratedInstance::Graph(path_with_chord(n)?),
        DeltaMatched { delta, height, seed } => {
            GeneratedInstance::DeltaMatched(delta_matched(delta, height, seed)?)
        }
        DeltaMatchedRandom { delta, leaves, seed } => {
            GeneratedInstance::DeltaMatched(delta_matched_random(delta, leaves, seed)?)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embeddings_are_planar() {
        let all = [
            grid(5).unwrap(),
            cycle(7).unwrap(),
            path(4).unwrap(),
            prism(6).unwrap(),
            tree(3, 3).unwrap(),
            stacked_triangulation(40, 9).unwrap(),
            outerplanar_fan(8).unwrap(),
            complete(4).unwrap(),
            path_with_chord(6).unwrap(),
            path_with_chord(3).unwrap(),
        ];
        for g in all {
            g.rotation.unwrap().check_euler(&g.graph).unwrap();
        }
    }

    #[test]
    fn stacked_triangulation_is_maximal() {
        let g = stacked_triangulation(50, 1).unwrap();
        assert_eq!(g.graph.m(), 3 * 50 - 6);
        assert_eq!(g.rotation.unwrap().faces().len(), 2 * 50 - 4);
    }

    #[test]
    fn matchings_are_noncrossing_and_perfect() {
        let mut r = rng(3);
        for pairs in 0..30 {
            let m = random_noncrossing_matching(pairs, &mut r);
            let mut seen = vec![false; 2 * pairs];
            for &(a, b) in &m {
                assert!(a < b);
                seen[a] = true;
                seen[b] = true;
            }
            assert!(seen.into_iter().all(|s| s));
            for &(a, b) in &m {
                for &(c, d) in &m {
                    assert!(!(a < c && c < b && b < d));
                }
            }
        }
    }

    #[test]
    fn delta_matched_shapes() {
        let inst = delta_matched(3, 4, 7).unwrap();
        assert_eq!(inst.leaves().len(), 16);
        assert!(matches!(delta_matched(4, 3, 0), Err(Error::InvalidParams(_))));
        for (delta, leaves) in [(3, 2), (4, 10), (6, 64), (5, 500)] {
            let inst = delta_matched_random(delta, leaves, 11).unwrap();
            assert_eq!(inst.leaves().len(), leaves);
        }
    }

    #[test]
    fn generators_are_deterministic() {
        let a = stacked_triangulation(30, 4).unwrap();
        let b = stacked_triangulation(30, 4).unwrap();
        assert_eq!(a.graph, b.graph);
        assert_eq!(delta_matched_random(4, 40, 2).unwrap(), delta_matched_random(4, 40, 2).unwrap());
    }
}
