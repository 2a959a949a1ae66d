//! JSON documents for graphs, Δ-matched instances and layouts.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::collapse::BoundReport;
use crate::delta_matched::DeltaMatchedInstance;
use crate::error::{Error, Result};
use crate::generate::Generated;
use crate::graph::{rotation_from_coordinates, Graph, RotationSystem};
use crate::layout::{QueueEdge, QueueLayout};
use crate::preprocess::SubdivisionRecord;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphFile {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rotation: Option<BTreeMap<usize, Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coords: Option<BTreeMap<usize, [f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outer_face: Option<[usize; 2]>,
}

/// A parsed graph; the rotation comes from the file's rotation if present,
/// otherwise from its coordinates.
#[derive(Clone, Debug)]
pub struct LoadedGraph {
    pub graph: Graph,
    pub rotation: Option<RotationSystem>,
    pub coords: Option<Vec<[f64; 2]>>,
}

impl GraphFile {
    pub fn from_graph(graph: &Graph, rotation: Option<&RotationSystem>, coords: Option<&[[f64; 2]]>) -> Self {
        GraphFile {
            n: graph.n(),
            edges: graph.edges().iter().map(|&(u, v)| [u, v]).collect(),
            rotation: rotation.map(|r| (0..graph.n()).map(|v| (v, r.around(v).to_vec())).collect()),
            coords: coords.map(|c| c.iter().copied().enumerate().collect()),
            outer_face: rotation.and_then(|r| r.outer_face()).map(|(a, b)| [a, b]),
        }
    }

    pub fn from_generated(g: &Generated) -> Self {
        Self::from_graph(&g.graph, g.rotation.as_ref(), g.coords.as_deref())
    }

    pub fn load(&self) -> Result<LoadedGraph> {
        let graph = Graph::new(self.n, self.edges.iter().map(|e| (e[0], e[1])))?;
        let coords = match &self.coords {
            Some(map) => {
                let mut out = vec![[0.0; 2]; self.n];
                for (&v, &c) in map {
                    *out.get_mut(v).ok_or(Error::UnknownVertex(v))? = c;
                }
                if map.len() != self.n {
                    return Err(Error::InvalidParams(format!(
                        "coordinates given for {} of {} vertices",
                        map.len(),
                        self.n
                    )));
                }
                Some(out)
            }
            None => None,
        };
        let rotation = match (&self.rotation, &coords) {
            (Some(map), _) => {
                let mut order = vec![Vec::new(); self.n];
                for (&v, list) in map {
                    *order.get_mut(v).ok_or(Error::UnknownVertex(v))? = list.clone();
                }
                let rot = RotationSystem::new(&graph, order)?;
                rot.check_euler(&graph)?;
                Some(rot)
            }
            (None, Some(c)) => Some(rotation_from_coordinates(&graph, c)?),
            (None, None) => None,
        };
        let rotation = match (rotation, self.outer_face) {
            (Some(r), Some([a, b])) => Some(r.with_outer_face(&graph, (a, b))?),
            (r, _) => r,
        };
        Ok(LoadedGraph {
            graph,
            rotation,
            coords,
        })
    }
}

pub fn parse_graph(json: &str) -> Result<LoadedGraph> {
    serde_json::from_str::<GraphFile>(json)?.load()
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeChildren {
    pub children: BTreeMap<usize, Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaMatchedFile {
    pub delta: usize,
    pub tree: TreeChildren,
    pub matching: Vec<[usize; 2]>,
}

impl DeltaMatchedFile {
    pub fn from_instance(inst: &DeltaMatchedInstance) -> Self {
        DeltaMatchedFile {
            delta: inst.delta(),
            tree: TreeChildren {
                children: inst
                    .children()
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_empty())
                    .map(|(v, c)| (v, c.clone()))
                    .collect(),
            },
            matching: inst.matching().iter().map(|&(a, b)| [a, b]).collect(),
        }
    }

    /// Vertex ids run from 0 to the largest id mentioned.
    pub fn load(&self) -> Result<DeltaMatchedInstance> {
        let mentioned = self
            .tree
            .children
            .iter()
            .flat_map(|(&v, c)| std::iter::once(v).chain(c.iter().copied()))
            .chain(self.matching.iter().flatten().copied());
        let n = mentioned.max().map_or(0, |v| v + 1);
        let mut children = vec![Vec::new(); n];
        for (&v, c) in &self.tree.children {
            children[v] = c.clone();
        }
        let matching = self.matching.iter().map(|e| (e[0], e[1])).collect();
        DeltaMatchedInstance::new(self.delta, children, matching)
    }
}

pub fn parse_delta_matched(json: &str) -> Result<DeltaMatchedInstance> {
    serde_json::from_str::<DeltaMatchedFile>(json)?.load()
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lemma1: Option<u128>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theorem1: Option<u128>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta_matched: Option<u128>,
}

/// A layout with the bounds it is measured against.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayoutFile {
    pub order: Vec<usize>,
    pub queues: Vec<QueueEdge>,
    pub num_queues: usize,
    #[serde(default)]
    pub bounds: Bounds,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<SubdivisionRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<BoundReport>,
}

impl LayoutFile {
    pub fn new(layout: &QueueLayout) -> Self {
        LayoutFile {
            order: layout.order.clone(),
            queues: layout.queues.clone(),
            num_queues: layout.num_queues,
            bounds: Bounds::default(),
            provenance: None,
            report: None,
        }
    }

    pub fn layout(&self) -> QueueLayout {
        QueueLayout::new(
            self.order.clone(),
            self.queues.iter().map(|q| ((q.edge[0], q.edge[1]), q.queue)),
        )
    }
}

pub fn parse_layout(json: &str) -> Result<LayoutFile> {
    Ok(serde_json::from_str(json)?)
}
