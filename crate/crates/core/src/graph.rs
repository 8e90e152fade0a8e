//! Finite simple undirected graphs and vertex colorings.

use std::collections::HashMap;
use std::fs;
use std::path::Path;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite simple undirected graph on vertices `0..n` with unique display labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    name: String,
    labels: Vec<String>,
    adj: Vec<FixedBitSet>,
}

/// On-disk form: `{"name": str, "labels": [str], "edges": [[u,v],...]}` with `u < v`,
/// edges sorted lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub name: String,
    pub labels: Vec<String>,
    pub edges: Vec<[usize; 2]>,
}

impl Graph {
    pub fn new<I>(name: impl Into<String>, labels: Vec<String>, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let n = labels.len();
        let mut seen = HashMap::with_capacity(n);
        for (i, l) in labels.iter().enumerate() {
            if let Some(j) = seen.insert(l.as_str(), i) {
                return Err(Error::InvalidGraph(format!(
                    "duplicate label `{l}` on vertices {j} and {i}"
                )));
            }
        }
        let mut adj = vec![FixedBitSet::with_capacity(n); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u},{v}) out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
            }
            adj[u].insert(v);
            adj[v].insert(u);
        }
        Ok(Graph {
            name: name.into(),
            labels,
            adj,
        })
    }

    /// Graph with labels `"1".."n"`.
    pub fn with_numbered_vertices<I>(name: impl Into<String>, n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Self::new(name, (1..=n).map(|i| i.to_string()).collect(), edges)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn vertex_by_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn neighbors(&self, v: usize) -> &FixedBitSet {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones(..)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones(..)).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, a)| a.ones().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn is_edgeless(&self) -> bool {
        self.adj.iter().all(|a| a.is_clear())
    }

    /// Vertices adjacent to every member of `set` (all vertices when `set` is empty).
    pub fn common_neighbors(&self, set: &FixedBitSet) -> FixedBitSet {
        let mut out = FixedBitSet::with_capacity(self.n());
        out.insert_range(..);
        for v in set.ones() {
            out.intersect_with(&self.adj[v]);
        }
        out
    }

    /// Two-coloring by BFS, if the graph is bipartite.
    pub fn bipartition(&self) -> Option<Vec<usize>> {
        let n = self.n();
        let mut side = vec![usize::MAX; n];
        let mut queue = std::collections::VecDeque::new();
        for s in 0..n {
            if side[s] != usize::MAX {
                continue;
            }
            side[s] = 0;
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                for w in self.adj[u].ones() {
                    if side[w] == usize::MAX {
                        side[w] = 1 - side[u];
                        queue.push_back(w);
                    } else if side[w] == side[u] {
                        return None;
                    }
                }
            }
        }
        Some(side)
    }

    pub fn is_triangle_free(&self) -> bool {
        self.edges().all(|(u, v)| {
            let mut common = self.adj[u].clone();
            common.intersect_with(&self.adj[v]);
            common.is_clear()
        })
    }

    /// Induced subgraph on `vertices`, in the given order.
    pub fn induced(&self, name: impl Into<String>, vertices: &[usize]) -> Result<Graph> {
        let labels = vertices.iter().map(|&v| self.labels[v].clone()).collect();
        let mut edges = Vec::new();
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    edges.push((i, j));
                }
            }
        }
        Graph::new(name, labels, edges)
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            name: self.name.clone(),
            labels: self.labels.clone(),
            edges: self.edges().map(|(u, v)| [u, v]).collect(),
        }
    }

    pub fn from_json(json: GraphJson) -> Result<Graph> {
        Graph::new(json.name, json.labels, json.edges.into_iter().map(|[u, v]| (u, v)))
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Graph> {
        let text = fs::read_to_string(path)?;
        Graph::from_json(serde_json::from_str(&text)?)
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        fs::write(path, serde_json::to_string_pretty(&self.to_json())?)?;
        Ok(())
    }
}

/// A vertex-indexed assignment of color ids.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Coloring {
    colors: Vec<usize>,
}

impl Coloring {
    pub fn new(colors: Vec<usize>) -> Self {
        Coloring { colors }
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn color(&self, v: usize) -> usize {
        self.colors[v]
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// Number of distinct colors used.
    pub fn palette_size(&self) -> usize {
        let mut seen: Vec<usize> = self.colors.clone();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }

    /// Relabels colors so that first occurrences appear as 0, 1, 2, ...
    pub fn canonical(&self) -> Coloring {
        let mut map = HashMap::new();
        let colors = self
            .colors
            .iter()
            .map(|c| {
                let next = map.len();
                *map.entry(*c).or_insert(next)
            })
            .collect();
        Coloring { colors }
    }

    pub fn is_canonical(&self) -> bool {
        let mut next = 0;
        for &c in &self.colors {
            if c > next {
                return false;
            }
            if c == next {
                next += 1;
            }
        }
        true
    }

    /// Checks length and properness; the error names a violating edge.
    pub fn check_proper(&self, g: &Graph) -> Result<()> {
        if self.colors.len() != g.n() {
            return Err(Error::InvalidColoring(format!(
                "coloring has {} entries, graph has {} vertices",
                self.colors.len(),
                g.n()
            )));
        }
        match g.edges().find(|&(u, v)| self.colors[u] == self.colors[v]) {
            Some((u, v)) => Err(Error::ImproperColoring(
                g.label(u).to_string(),
                g.label(v).to_string(),
            )),
            None => Ok(()),
        }
    }

    pub fn is_proper(&self, g: &Graph) -> bool {
        self.check_proper(g).is_ok()
    }
}
