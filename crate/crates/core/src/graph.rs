//! Graph data model shared by every other module.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// 1-based vertex identifier. `0` is reserved as "no vertex".
pub type Vertex = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Model {
    #[serde(rename = "ua")]
    Uniform,
    #[serde(rename = "pa")]
    Preferential,
}

impl Model {
    pub fn tag(self) -> &'static str {
        match self {
            Model::Uniform => "ua",
            Model::Preferential => "pa",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Model> {
        match tag {
            "ua" | "uniform" => Some(Model::Uniform),
            "pa" | "preferential" => Some(Model::Preferential),
            _ => None,
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Colour {
    Blue,
    Red,
    Plain,
}

impl Colour {
    pub fn letter(self) -> char {
        match self {
            Colour::Blue => 'b',
            Colour::Red => 'r',
            Colour::Plain => 'p',
        }
    }

    pub fn from_letter(c: &str) -> Option<Colour> {
        match c {
            "b" => Some(Colour::Blue),
            "r" => Some(Colour::Red),
            "p" => Some(Colour::Plain),
            _ => None,
        }
    }
}

/// One stem edge of an attachment process.
///
/// `time` and `stem` coincide for attachment edges: an edge is created at the
/// step its younger endpoint joins the process.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EdgeRecord {
    pub time: Vertex,
    pub stem: Vertex,
    pub target: Vertex,
    pub colour: Colour,
    pub ordinal: u32,
}

impl EdgeRecord {
    pub fn is_loop(&self) -> bool {
        self.stem == self.target
    }
}

/// Immutable record of one attachment process run.
///
/// Records are stored implicitly in `(stem, ordinal)` order: the target of
/// ordinal `k` of vertex `v` lives at `targets[(v - 1) * m + (k - 1)]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttachGraph {
    model: Model,
    n: u32,
    m1: u32,
    m2: u32,
    coloured: bool,
    seed: u64,
    targets: Vec<Vertex>,
}

impl AttachGraph {
    /// Assembles a graph from its parts, validating every structural invariant.
    pub fn from_parts(
        model: Model,
        n: u32,
        m1: u32,
        m2: u32,
        coloured: bool,
        seed: u64,
        targets: Vec<Vertex>,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::param("n must be at least 1"));
        }
        if !coloured && m2 != 0 {
            return Err(Error::param("an uncoloured graph must have m2 = 0"));
        }
        let m = (m1 + m2) as usize;
        if targets.len() != m * n as usize {
            return Err(Error::param(format!(
                "expected {} records, found {}",
                m * n as usize,
                targets.len()
            )));
        }
        let g = AttachGraph {
            model,
            n,
            m1,
            m2,
            coloured,
            seed,
            targets,
        };
        for r in g.records() {
            let ok = match model {
                Model::Uniform if r.stem == 1 => r.target == 1,
                Model::Uniform => r.target >= 1 && r.target < r.stem,
                Model::Preferential => r.target >= 1 && r.target <= r.stem,
            };
            if !ok {
                return Err(Error::param(format!(
                    "record {}:{} has target {} outside the admissible range",
                    r.stem, r.ordinal, r.target
                )));
            }
        }
        Ok(g)
    }

    pub(crate) fn from_parts_unchecked(
        model: Model,
        n: u32,
        m1: u32,
        m2: u32,
        coloured: bool,
        seed: u64,
        targets: Vec<Vertex>,
    ) -> Self {
        debug_assert_eq!(targets.len(), (m1 + m2) as usize * n as usize);
        AttachGraph {
            model,
            n,
            m1,
            m2,
            coloured,
            seed,
            targets,
        }
    }

    pub fn model(&self) -> Model {
        self.model
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m1 + self.m2
    }

    pub fn m1(&self) -> u32 {
        self.m1
    }

    pub fn m2(&self) -> u32 {
        self.m2
    }

    pub fn is_coloured(&self) -> bool {
        self.coloured
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn len(&self) -> usize {
        self.targets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.targets.is_empty()
    }

    /// Targets of all records, in `(stem, ordinal)` order.
    pub fn targets(&self) -> &[Vertex] {
        &self.targets
    }

    /// Targets of the `m` records stemming from `v`.
    pub fn stems_of(&self, v: Vertex) -> &[Vertex] {
        let m = self.m() as usize;
        let start = (v as usize - 1) * m;
        &self.targets[start..start + m]
    }

    pub fn colour_of(&self, ordinal: u32) -> Colour {
        if !self.coloured {
            Colour::Plain
        } else if ordinal <= self.m1 {
            Colour::Blue
        } else {
            Colour::Red
        }
    }

    pub fn record(&self, index: usize) -> EdgeRecord {
        let m = self.m() as usize;
        let stem = (index / m + 1) as Vertex;
        let ordinal = (index % m + 1) as u32;
        EdgeRecord {
            time: stem,
            stem,
            target: self.targets[index],
            colour: self.colour_of(ordinal),
            ordinal,
        }
    }

    pub fn records(&self) -> impl Iterator<Item = EdgeRecord> + '_ {
        (0..self.targets.len()).map(move |i| self.record(i))
    }

    /// Multigraph degrees of every vertex at the end of the process (loops
    /// count twice). Index 0 is unused.
    pub fn degrees(&self) -> Vec<u64> {
        self.degrees_at(self.n)
    }

    /// Multigraph degrees restricted to records with stem `<= t`.
    pub fn degrees_at(&self, t: Vertex) -> Vec<u64> {
        let mut deg = vec![0u64; self.n as usize + 1];
        let m = self.m() as usize;
        for (i, &target) in self.targets[..t as usize * m].iter().enumerate() {
            deg[i / m + 1] += 1;
            deg[target as usize] += 1;
        }
        deg
    }

    /// For each vertex, whether it ever receives an edge stemming from a
    /// strictly younger vertex.
    pub fn receives_from_younger(&self) -> Vec<bool> {
        let mut hit = vec![false; self.n as usize + 1];
        for r in self.records() {
            if r.target != r.stem {
                hit[r.target as usize] = true;
            }
        }
        hit
    }
}

/// Loop-free, deduplicated, undirected adjacency structure on `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SimpleView {
    adj: Vec<Vec<Vertex>>,
    edges: usize,
}

impl SimpleView {
    pub fn empty(n: usize) -> Self {
        SimpleView {
            adj: vec![Vec::new(); n + 1],
            edges: 0,
        }
    }

    /// Builds a view from arbitrary vertex pairs; loops and repeats are dropped.
    pub fn from_pairs<I>(n: usize, pairs: I) -> Self
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut adj = vec![Vec::new(); n + 1];
        for (u, v) in pairs {
            assert!(
                u as usize <= n && v as usize <= n && u >= 1 && v >= 1,
                "pair ({u}, {v}) outside 1..={n}"
            );
            if u != v {
                adj[u as usize].push(v);
                adj[v as usize].push(u);
            }
        }
        let mut edges = 0;
        for list in adj.iter_mut() {
            list.sort_unstable();
            list.dedup();
            edges += list.len();
        }
        SimpleView {
            adj,
            edges: edges / 2,
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len().saturating_sub(1)
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        1..=self.n() as Vertex
    }

    pub fn neighbours(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v as usize]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v as usize].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        let (a, b) = if self.adj[u as usize].len() <= self.adj[v as usize].len() {
            (u, v)
        } else {
            (v, u)
        };
        self.adj[a as usize].binary_search(&b).is_ok()
    }

    /// Inserts `{u, v}`; returns `false` for loops and existing edges.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> bool {
        if u == v {
            return false;
        }
        match self.adj[u as usize].binary_search(&v) {
            Ok(_) => false,
            Err(pos) => {
                self.adj[u as usize].insert(pos, v);
                let pos = self.adj[v as usize].binary_search(&u).unwrap_err();
                self.adj[v as usize].insert(pos, u);
                self.edges += 1;
                true
            }
        }
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.vertices().flat_map(move |u| {
            self.neighbours(u)
                .iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    pub fn min_degree(&self) -> usize {
        self.vertices().map(|v| self.degree(v)).min().unwrap_or(0)
    }

    /// Connected components as a label per vertex (`labels[0]` unused) and the
    /// component count. Vertices for which `keep` is false are skipped and get
    /// label `usize::MAX`.
    pub fn components_where(&self, keep: impl Fn(Vertex) -> bool) -> (Vec<usize>, usize) {
        let n = self.n();
        let mut label = vec![usize::MAX; n + 1];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for s in self.vertices() {
            if label[s as usize] != usize::MAX || !keep(s) {
                continue;
            }
            label[s as usize] = count;
            queue.push_back(s);
            while let Some(v) = queue.pop_front() {
                for &w in self.neighbours(v) {
                    if label[w as usize] == usize::MAX && keep(w) {
                        label[w as usize] = count;
                        queue.push_back(w);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }

    pub fn component_count(&self) -> usize {
        self.components_where(|_| true).1
    }

    pub fn is_connected(&self) -> bool {
        self.n() > 0 && self.component_count() == 1
    }
}

/// Loop-free deduplicated undirected graph of `g`.
pub fn simple_view(g: &AttachGraph) -> SimpleView {
    let pairs = g.records().map(|r| (r.stem, r.target));
    SimpleView::from_pairs(g.n() as usize, pairs)
}

/// Multigraph degree of `s` once every vertex up to `t` has joined.
pub fn degree_at_time(g: &AttachGraph, s: Vertex, t: Vertex) -> Result<u64> {
    let n = g.n();
    for v in [s, t] {
        if v == 0 || v > n {
            return Err(Error::VertexOutOfRange {
                vertex: v as u64,
                n: n as u64,
            });
        }
    }
    if s > t {
        return Err(Error::param(format!("degree_at_time needs s <= t, got {s} > {t}")));
    }
    let m = g.m() as usize;
    let own = m as u64;
    let received = g.targets()[..t as usize * m]
        .iter()
        .filter(|&&x| x == s)
        .count() as u64;
    Ok(own + received)
}

/// `N(C)`: vertices outside `c` adjacent to some vertex of `c`. Sorted.
pub fn neighbourhood(view: &SimpleView, c: &[Vertex]) -> Vec<Vertex> {
    let mut in_c = vec![false; view.n() + 1];
    for &v in c {
        in_c[v as usize] = true;
    }
    let mut seen = vec![false; view.n() + 1];
    let mut out = Vec::new();
    for &v in c {
        for &w in view.neighbours(v) {
            if !in_c[w as usize] && !seen[w as usize] {
                seen[w as usize] = true;
                out.push(w);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Size of `N(C)` where `c` is given as a membership mask.
pub(crate) fn neighbourhood_size_masked(view: &SimpleView, members: &[Vertex], in_c: &[bool]) -> usize {
    let mut seen: Vec<Vertex> = Vec::new();
    for &v in members {
        for &w in view.neighbours(v) {
            if !in_c[w as usize] {
                seen.push(w);
            }
        }
    }
    seen.sort_unstable();
    seen.dedup();
    seen.len()
}
