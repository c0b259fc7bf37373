//! Maximum matchings in general graphs, the `A(G)` / `B(v)` structures, the
//! two-round augmentation simulator and Tutte certificates.
//!
//! The engine is Edmonds' blossom search in its breadth-first, base-array
//! form. The same forest search run from *all* exposed vertices of a maximum
//! matching yields the Gallai–Edmonds set `D(G)`: the vertices reachable by
//! an even alternating path from an exposed vertex. `D(G)` is exactly the set
//! of vertices missed by some maximum matching, i.e. `A(G)`.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generate::project;
use crate::graph::{neighbourhood, simple_view, AttachGraph, SimpleView, Vertex};

const NONE: Vertex = 0;

/// A set of vertex-disjoint edges, stored as a mate array.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    mate: Vec<Vertex>,
    size: usize,
}

impl Matching {
    pub fn empty(n: usize) -> Self {
        Matching {
            mate: vec![NONE; n + 1],
            size: 0,
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn mate(&self, v: Vertex) -> Option<Vertex> {
        match self.mate[v as usize] {
            NONE => None,
            w => Some(w),
        }
    }

    pub fn is_exposed(&self, v: Vertex) -> bool {
        self.mate[v as usize] == NONE
    }

    /// Matched pairs `(u, v)` with `u < v`, sorted.
    pub fn pairs(&self) -> Vec<(Vertex, Vertex)> {
        (1..self.mate.len() as Vertex)
            .filter_map(|u| match self.mate[u as usize] {
                w if w > u => Some((u, w)),
                _ => None,
            })
            .collect()
    }

    pub fn exposed(&self) -> Vec<Vertex> {
        (1..self.mate.len() as Vertex)
            .filter(|&v| self.mate[v as usize] == NONE)
            .collect()
    }

    /// Checks that the pairs are disjoint edges of `g`.
    pub fn is_valid_for(&self, g: &SimpleView) -> bool {
        if self.mate.len() != g.n() + 1 {
            return false;
        }
        let mut count = 0;
        for u in g.vertices() {
            let w = self.mate[u as usize];
            if w == NONE {
                continue;
            }
            if self.mate[w as usize] != u || !g.has_edge(u, w) {
                return false;
            }
            count += 1;
        }
        count == 2 * self.size
    }

    fn recount(&mut self) {
        self.size = self.mate.iter().filter(|&&w| w != NONE).count() / 2;
    }
}

/// Blossom search state over one graph. Scratch arrays are reset lazily via
/// the `touched` list so repeated searches cost only what they explore.
struct Blossom<'g> {
    g: &'g SimpleView,
    mate: Vec<Vertex>,
    parent: Vec<Vertex>,
    base: Vec<Vertex>,
    outer: Vec<bool>,
    in_blossom: Vec<bool>,
    mark: Vec<u32>,
    stamp: u32,
    queue: VecDeque<Vertex>,
    touched: Vec<Vertex>,
    seen: Vec<bool>,
    blocked: Vertex,
}

impl<'g> Blossom<'g> {
    fn new(g: &'g SimpleView, mate: Vec<Vertex>) -> Self {
        let len = g.n() + 1;
        debug_assert_eq!(mate.len(), len);
        Blossom {
            g,
            mate,
            parent: vec![NONE; len],
            base: (0..len as Vertex).collect(),
            outer: vec![false; len],
            in_blossom: vec![false; len],
            mark: vec![0; len],
            stamp: 0,
            queue: VecDeque::new(),
            touched: Vec::new(),
            seen: vec![false; len],
            blocked: NONE,
        }
    }

    fn touch(&mut self, v: Vertex) {
        if !self.seen[v as usize] {
            self.seen[v as usize] = true;
            self.touched.push(v);
        }
    }

    fn reset(&mut self) {
        for &v in &self.touched {
            let i = v as usize;
            self.parent[i] = NONE;
            self.base[i] = v;
            self.outer[i] = false;
            self.in_blossom[i] = false;
            self.seen[i] = false;
        }
        self.touched.clear();
        self.queue.clear();
    }

    fn greedy(&mut self) {
        for u in self.g.vertices() {
            if self.mate[u as usize] != NONE {
                continue;
            }
            if let Some(&w) = self
                .g
                .neighbours(u)
                .iter()
                .find(|&&w| self.mate[w as usize] == NONE)
            {
                self.mate[u as usize] = w;
                self.mate[w as usize] = u;
            }
        }
    }

    fn is_outer(&self, v: Vertex) -> bool {
        match self.mate[v as usize] {
            NONE => self.outer[v as usize],
            w => self.parent[w as usize] != NONE,
        }
    }

    /// Lowest common base of `a` and `b` in the forest, if they share a tree.
    fn lca(&mut self, mut a: Vertex, mut b: Vertex) -> Option<Vertex> {
        self.stamp = self.stamp.wrapping_add(1);
        if self.stamp == 0 {
            self.mark.iter_mut().for_each(|x| *x = 0);
            self.stamp = 1;
        }
        loop {
            a = self.base[a as usize];
            self.mark[a as usize] = self.stamp;
            let ma = self.mate[a as usize];
            if ma == NONE {
                break;
            }
            a = self.parent[ma as usize];
        }
        loop {
            b = self.base[b as usize];
            if self.mark[b as usize] == self.stamp {
                return Some(b);
            }
            let mb = self.mate[b as usize];
            if mb == NONE {
                return None;
            }
            b = self.parent[mb as usize];
        }
    }

    fn mark_path(&mut self, mut v: Vertex, b: Vertex, mut child: Vertex) {
        while self.base[v as usize] != b {
            let mv = self.mate[v as usize];
            self.in_blossom[self.base[v as usize] as usize] = true;
            self.in_blossom[self.base[mv as usize] as usize] = true;
            self.parent[v as usize] = child;
            child = mv;
            v = self.parent[mv as usize];
        }
    }

    fn contract(&mut self, v: Vertex, to: Vertex) {
        let cur = self
            .lca(v, to)
            .expect("forest search met two trees: matching is not maximum");
        for &u in &self.touched {
            self.in_blossom[u as usize] = false;
        }
        self.mark_path(v, cur, to);
        self.mark_path(to, cur, v);
        let snapshot = self.touched.clone();
        for u in snapshot {
            if self.in_blossom[self.base[u as usize] as usize] {
                self.base[u as usize] = cur;
                if !self.outer[u as usize] {
                    self.outer[u as usize] = true;
                    self.queue.push_back(u);
                }
            }
        }
    }

    /// Grows an alternating forest from `roots`. Returns the far end of an
    /// augmenting path if one is found (only expected for a single root).
    fn grow(&mut self, roots: &[Vertex]) -> Option<Vertex> {
        self.reset();
        for &r in roots {
            self.touch(r);
            self.outer[r as usize] = true;
            self.queue.push_back(r);
        }
        while let Some(v) = self.queue.pop_front() {
            let g = self.g;
            for &to in g.neighbours(v) {
                if to == self.blocked
                    || self.base[v as usize] == self.base[to as usize]
                    || self.mate[v as usize] == to
                {
                    continue;
                }
                if self.is_outer(to) {
                    self.contract(v, to);
                } else if self.parent[to as usize] == NONE {
                    self.touch(to);
                    self.parent[to as usize] = v;
                    let mt = self.mate[to as usize];
                    if mt == NONE {
                        return Some(to);
                    }
                    self.touch(mt);
                    self.outer[mt as usize] = true;
                    self.queue.push_back(mt);
                }
            }
        }
        None
    }

    fn augment(&mut self, mut v: Vertex) {
        while v != NONE {
            let pv = self.parent[v as usize];
            let next = self.mate[pv as usize];
            self.mate[v as usize] = pv;
            self.mate[pv as usize] = v;
            v = next;
        }
    }

    /// Single-root search from `root`; augments and returns true on success.
    fn search_from(&mut self, root: Vertex) -> bool {
        if root == self.blocked || self.mate[root as usize] != NONE {
            return false;
        }
        match self.grow(&[root]) {
            Some(end) => {
                self.augment(end);
                true
            }
            None => false,
        }
    }

    fn maximise(&mut self) {
        for v in self.g.vertices() {
            if self.mate[v as usize] == NONE {
                self.search_from(v);
            }
        }
    }

    /// Outer vertices of the forest grown from every exposed vertex; with a
    /// maximum matching this is the Gallai–Edmonds set `D`.
    fn even_set(&mut self) -> Vec<Vertex> {
        let roots: Vec<Vertex> = self
            .g
            .vertices()
            .filter(|&v| v != self.blocked && self.mate[v as usize] == NONE)
            .collect();
        let found = self.grow(&roots);
        debug_assert!(found.is_none() || roots.len() <= 1);
        let mut out: Vec<Vertex> = self
            .touched
            .iter()
            .copied()
            .filter(|&v| self.outer[v as usize])
            .collect();
        out.sort_unstable();
        out
    }

    fn into_matching(self) -> Matching {
        let mut m = Matching {
            mate: self.mate,
            size: 0,
        };
        m.recount();
        m
    }
}

pub fn max_matching(g: &SimpleView) -> Matching {
    let mut b = Blossom::new(g, vec![NONE; g.n() + 1]);
    b.greedy();
    b.maximise();
    b.into_matching()
}

/// Perfect in the sense used throughout: size `⌊n/2⌋`, so one vertex may be
/// left over when `n` is odd.
pub fn has_perfect_matching(g: &SimpleView) -> bool {
    max_matching(g).size() == g.n() / 2
}

fn even_set_for(g: &SimpleView, m: &Matching) -> Vec<Vertex> {
    let mut b = Blossom::new(g, m.mate.clone());
    b.even_set()
}

/// `A(G)`: vertices left exposed by at least one maximum matching.
pub fn isolatable_set(g: &SimpleView) -> Vec<Vertex> {
    let m = max_matching(g);
    even_set_for(g, &m)
}

/// A maximum matching of `g` that leaves `u` exposed, or `None` if `u` is
/// covered by every maximum matching. `m` must be maximum.
fn isolating_matching(g: &SimpleView, m: &Matching, u: Vertex) -> Option<Matching> {
    let w = match m.mate(u) {
        None => return Some(m.clone()),
        Some(w) => w,
    };
    let mut mate = m.mate.clone();
    mate[u as usize] = NONE;
    mate[w as usize] = NONE;
    let mut b = Blossom::new(g, mate);
    b.blocked = u;
    if b.search_from(w) {
        Some(b.into_matching())
    } else {
        None
    }
}

fn b_set_with(g: &SimpleView, m: &Matching, u: Vertex) -> Result<(Vec<Vertex>, Matching)> {
    check_vertex(g, u)?;
    let iso = isolating_matching(g, m, u)
        .ok_or_else(|| Error::Precondition(format!("vertex {u} is not in A(G)")))?;
    let mut b = Blossom::new(g, iso.mate.clone());
    b.blocked = u;
    let set = b.even_set();
    Ok((set, iso))
}

fn check_vertex(g: &SimpleView, u: Vertex) -> Result<()> {
    if u == 0 || u as usize > g.n() {
        return Err(Error::VertexOutOfRange {
            vertex: u as u64,
            n: g.n() as u64,
        });
    }
    Ok(())
}

/// `B(u) = {w ≠ u : ν(G−u−w) = ν(G)}` for `u ∈ A(G)`.
///
/// Computed as `A(G−u)` using a maximum matching that isolates `u`.
pub fn b_set(g: &SimpleView, u: Vertex) -> Result<Vec<Vertex>> {
    let m = max_matching(g);
    b_set_with(g, &m, u).map(|(set, _)| set)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpansionCounterexample {
    pub vertex: Vertex,
    pub b_size: usize,
    pub neighbourhood_size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchingExpansionReport {
    /// The graph has a perfect matching, so the check does not apply.
    pub skipped: bool,
    pub checked: usize,
    pub counterexample: Option<ExpansionCounterexample>,
}

/// Verifies `|N(B(u))| < |B(u)|` for every `u ∈ A(G)` with `B(u)` non-empty.
pub fn check_matching_expansion(g: &SimpleView) -> MatchingExpansionReport {
    let m = max_matching(g);
    if m.size() == g.n() / 2 {
        return MatchingExpansionReport {
            skipped: true,
            checked: 0,
            counterexample: None,
        };
    }
    let mut checked = 0;
    for u in even_set_for(g, &m) {
        let (b, _) = b_set_with(g, &m, u).expect("u taken from A(G)");
        if b.is_empty() {
            continue;
        }
        checked += 1;
        let nb = neighbourhood(g, &b).len();
        if nb >= b.len() {
            return MatchingExpansionReport {
                skipped: false,
                checked,
                counterexample: Some(ExpansionCounterexample {
                    vertex: u,
                    b_size: b.len(),
                    neighbourhood_size: nb,
                }),
            };
        }
    }
    MatchingExpansionReport {
        skipped: false,
        checked,
        counterexample: None,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AugStep {
    /// The exposed vertex whose red stems were revealed.
    pub vertex: Vertex,
    pub a_size: usize,
    pub b_size: usize,
    pub hit: bool,
    /// A revealed red edge `vertex–w` with `w ∈ B(vertex)`, if any.
    pub edge_into_b: Option<Vertex>,
    /// Matching size after the step.
    pub size: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SimStatus {
    Perfect,
    Exhausted,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AugTrace {
    pub initial_size: usize,
    pub steps: Vec<AugStep>,
    pub status: SimStatus,
}

impl AugTrace {
    pub fn final_size(&self) -> usize {
        self.steps.last().map_or(self.initial_size, |s| s.size)
    }

    pub fn hits(&self) -> usize {
        self.steps.iter().filter(|s| s.hit).count()
    }
}

pub(crate) fn require_two_rounds(g: &AttachGraph) -> Result<()> {
    if !g.is_coloured() || g.m1() == 0 || g.m2() == 0 {
        return Err(Error::param(
            "two-round simulation needs a coloured graph with m1 >= 1 and m2 >= 1",
        ));
    }
    Ok(())
}

/// Replays the two-round exposure argument on a fixed coloured graph.
///
/// Starts from a maximum matching of the blue graph. While no perfect matching
/// exists, takes the youngest vertex `v ∈ A(G)` whose red stems are still
/// hidden, reveals them, and augments if one of them lands in `B(v)`. Each
/// vertex is revealed at most once.
pub fn two_round_matching_sim(g: &AttachGraph) -> Result<AugTrace> {
    require_two_rounds(g)?;
    let n = g.n() as usize;
    let target = n / 2;
    let blue = project(g, 1)?;
    let red = project(g, 2)?;
    let mut view = simple_view(&blue);
    let mut m = max_matching(&view);
    let initial_size = m.size();
    let mut exposed = vec![false; n + 1];
    let mut steps = Vec::new();

    while m.size() < target {
        let a = even_set_for(&view, &m);
        let Some(&v) = a.iter().rev().find(|&&v| !exposed[v as usize]) else {
            break;
        };
        exposed[v as usize] = true;
        let (b, iso) = b_set_with(&view, &m, v)?;
        let mut in_b = vec![false; n + 1];
        for &w in &b {
            in_b[w as usize] = true;
        }
        let mut edge_into_b = None;
        for &w in red.stems_of(v) {
            if view.add_edge(v, w) && in_b[w as usize] && edge_into_b.is_none() {
                edge_into_b = Some(w);
            }
        }
        let mut engine = Blossom::new(&view, iso.mate);
        let grew = engine.search_from(v);
        m = engine.into_matching();
        debug_assert_eq!(grew, edge_into_b.is_some());
        steps.push(AugStep {
            vertex: v,
            a_size: a.len(),
            b_size: b.len(),
            hit: grew,
            edge_into_b,
            size: m.size(),
        });
    }
    let status = if m.size() == target {
        SimStatus::Perfect
    } else {
        SimStatus::Exhausted
    };
    Ok(AugTrace {
        initial_size,
        steps,
        status,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TutteWitness {
    pub removed: usize,
    pub odd_components: usize,
    /// `o(G−S) − |S|`; at least 2 for a witness.
    pub deficiency: usize,
}

/// Returns a witness iff `o(G−S) − |S| ≥ 2`, which rules out a matching of
/// size `⌊n/2⌋` whatever the parity of `n`.
pub fn tutte_certificate(g: &SimpleView, s: &[Vertex]) -> Result<Option<TutteWitness>> {
    let mut in_s = vec![false; g.n() + 1];
    for &v in s {
        check_vertex(g, v)?;
        in_s[v as usize] = true;
    }
    let removed = in_s.iter().filter(|&&x| x).count();
    let odd = odd_components_where(g, |v| !in_s[v as usize]);
    Ok(if odd >= removed + 2 {
        Some(TutteWitness {
            removed,
            odd_components: odd,
            deficiency: odd - removed,
        })
    } else {
        None
    })
}

pub(crate) fn odd_components_where(g: &SimpleView, keep: impl Fn(Vertex) -> bool) -> usize {
    let (labels, count) = g.components_where(keep);
    let mut sizes = vec![0usize; count];
    for &l in &labels[1..] {
        if l != usize::MAX {
            sizes[l] += 1;
        }
    }
    sizes.iter().filter(|&&s| s % 2 == 1).count()
}

/// Closed form of the expected success fraction of the augmentation process:
/// `∫₀^α 1 − (1 − (α−x)/h)^{m₂} dx` with `h = 1`, or `h = 2` when `halved`.
pub fn success_rate(alpha: f64, m2: u32, halved: bool) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::param(format!("alpha must lie in (0, 1), got {alpha}")));
    }
    if m2 == 0 {
        return Err(Error::param("m2 must be at least 1"));
    }
    let k = m2 as f64 + 1.0;
    Ok(if halved {
        alpha - 2.0 / k + 2.0 * (1.0 - alpha / 2.0).powf(k) / k
    } else {
        alpha - 1.0 / k + (1.0 - alpha).powf(k) / k
    })
}
