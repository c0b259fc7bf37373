//! Rotation–extension machinery for long paths and Hamiltonian cycles.
//!
//! Paths are stored anchor-first: `seq[0]` is the fixed endpoint `a`, the
//! last element is the moving endpoint `b`. A rotation with pivot `x` (an
//! on-path neighbour of `b`) turns `(a, …, x, y, …, b)` into
//! `(a, …, x, b, …, y)`.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generate::project;
use crate::graph::{simple_view, AttachGraph, SimpleView, Vertex};
use crate::matching::require_two_rounds;
use crate::rng::rng_from_seed;

/// Largest `n` accepted by [`exact_hamiltonian`].
pub const EXACT_MAX_N: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathState {
    seq: Vec<Vertex>,
}

impl PathState {
    pub fn new(seq: Vec<Vertex>) -> Self {
        assert!(!seq.is_empty(), "a path has at least one vertex");
        PathState { seq }
    }

    pub fn single(v: Vertex) -> Self {
        PathState { seq: vec![v] }
    }

    pub fn anchor(&self) -> Vertex {
        self.seq[0]
    }

    pub fn end(&self) -> Vertex {
        *self.seq.last().unwrap()
    }

    /// Number of vertices on the path.
    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.seq
    }

    pub fn reversed(&self) -> PathState {
        let mut seq = self.seq.clone();
        seq.reverse();
        PathState { seq }
    }

    pub fn is_valid_for(&self, g: &SimpleView) -> bool {
        let mut seen = vec![false; g.n() + 1];
        for &v in &self.seq {
            if v == 0 || v as usize > g.n() || seen[v as usize] {
                return false;
            }
            seen[v as usize] = true;
        }
        self.seq.windows(2).all(|w| g.has_edge(w[0], w[1]))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HamCycle {
    seq: Vec<Vertex>,
}

impl HamCycle {
    pub fn vertices(&self) -> &[Vertex] {
        &self.seq
    }

    pub fn is_valid_for(&self, g: &SimpleView) -> bool {
        let n = g.n();
        if n < 3 || self.seq.len() != n {
            return false;
        }
        let mut seen = vec![false; n + 1];
        for &v in &self.seq {
            if v == 0 || v as usize > n || seen[v as usize] {
                return false;
            }
            seen[v as usize] = true;
        }
        self.seq.windows(2).all(|w| g.has_edge(w[0], w[1]))
            && g.has_edge(self.seq[n - 1], self.seq[0])
    }
}

/// Rotation of `p` about `pivot`, which must be adjacent to the moving end.
pub fn rotate(g: &SimpleView, p: &PathState, pivot: Vertex) -> Result<PathState> {
    let b = p.end();
    if pivot == b {
        return Err(Error::param("pivot must differ from the moving endpoint"));
    }
    let i = p
        .seq
        .iter()
        .position(|&v| v == pivot)
        .ok_or_else(|| Error::param(format!("pivot {pivot} is not on the path")))?;
    if !g.has_edge(pivot, b) {
        return Err(Error::param(format!("pivot {pivot} is not adjacent to endpoint {b}")));
    }
    let mut seq = p.seq.clone();
    seq[i + 1..].reverse();
    Ok(PathState { seq })
}

/// Breadth-first rotation closure with the anchor fixed. Distinct paths are
/// explored until `per_end` of them share an endpoint; returns the first
/// witness found for each reachable endpoint, starting with `p` itself. Each
/// rotation costs one unit from `steps`; exploration stops once `steps`
/// reaches `cap`.
fn closure(g: &SimpleView, p: &PathState, cap: u64, steps: &mut u64, per_end: usize) -> Vec<PathState> {
    let n = g.n();
    let mut hits = vec![0usize; n + 1];
    let mut pos = vec![usize::MAX; n + 1];
    let mut known: HashSet<Vec<Vertex>> = HashSet::new();
    hits[p.end() as usize] = 1;
    if per_end > 1 {
        known.insert(p.seq.clone());
    }
    let mut states = vec![p.clone()];
    let mut i = 0;
    'outer: while i < states.len() {
        let cur = &states[i];
        let len = cur.seq.len();
        for (k, &v) in cur.seq.iter().enumerate() {
            pos[v as usize] = k;
        }
        let b = cur.end();
        let mut fresh = Vec::new();
        for &x in g.neighbours(b) {
            let ix = pos[x as usize];
            // the predecessor of b gives the identical path
            if ix == usize::MAX || ix + 2 >= len {
                continue;
            }
            let y = cur.seq[ix + 1];
            if hits[y as usize] >= per_end {
                continue;
            }
            let mut seq = cur.seq.clone();
            seq[ix + 1..].reverse();
            if per_end > 1 && known.contains(&seq) {
                continue;
            }
            if *steps >= cap {
                for &v in &cur.seq {
                    pos[v as usize] = usize::MAX;
                }
                states.extend(fresh);
                break 'outer;
            }
            *steps += 1;
            hits[y as usize] += 1;
            if per_end > 1 {
                known.insert(seq.clone());
            }
            fresh.push(PathState { seq });
        }
        for &v in &cur.seq {
            pos[v as usize] = usize::MAX;
        }
        states.extend(fresh);
        i += 1;
    }
    let mut first = vec![false; n + 1];
    states.retain(|s| !std::mem::replace(&mut first[s.end() as usize], true));
    states
}

/// `END(P, a)`: every endpoint reachable by rotations with the anchor fixed,
/// including `p`'s own moving end. Sorted. Up to `n` distinct witness paths
/// are explored per endpoint.
pub fn end_set(g: &SimpleView, p: &PathState) -> Vec<Vertex> {
    let mut steps = 0;
    let mut ends: Vec<Vertex> = closure(g, p, u64::MAX, &mut steps, g.n().max(1))
        .iter()
        .map(PathState::end)
        .collect();
    ends.sort_unstable();
    ends
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GreedyPathReport {
    pub path: PathState,
    /// Largest value of `min(|U|, |W|)` over the run.
    pub max_min_uw: usize,
    pub restarts: usize,
}

/// The U/W depth-first process: extend from the head into `U` while possible,
/// otherwise retire the head into `W`; when the path empties, restart from a
/// vertex of `U`. No edge ever joins `U` and `W`. Returns the longest path
/// seen.
pub fn longest_path_greedy(g: &SimpleView, seed: u64) -> GreedyPathReport {
    let n = g.n();
    let mut rng = rng_from_seed(seed);
    let mut order: Vec<Vertex> = g.vertices().collect();
    order.shuffle(&mut rng);
    let mut in_u = vec![true; n + 1];
    let mut scan = vec![0usize; n + 1];
    let (mut u_size, mut w_size) = (n, 0usize);
    let mut path: Vec<Vertex> = Vec::new();
    let mut best: Vec<Vertex> = Vec::new();
    let mut max_min = 0;
    let mut restarts = 0usize;
    let mut next_start = 0;

    loop {
        if path.is_empty() {
            while next_start < order.len() && !in_u[order[next_start] as usize] {
                next_start += 1;
            }
            let Some(&s) = order.get(next_start) else { break };
            in_u[s as usize] = false;
            u_size -= 1;
            path.push(s);
            restarts += 1;
            max_min = max_min.max(u_size.min(w_size));
            continue;
        }
        let head = *path.last().unwrap();
        let adj = g.neighbours(head);
        let p = &mut scan[head as usize];
        while *p < adj.len() && !in_u[adj[*p] as usize] {
            *p += 1;
        }
        if *p < adj.len() {
            let w = adj[*p];
            in_u[w as usize] = false;
            u_size -= 1;
            path.push(w);
        } else {
            if path.len() > best.len() {
                best.clone_from(&path);
            }
            path.pop();
            w_size += 1;
        }
        max_min = max_min.max(u_size.min(w_size));
    }
    GreedyPathReport {
        path: PathState::new(if best.is_empty() { vec![1] } else { best }),
        max_min_uw: max_min,
        restarts: restarts.saturating_sub(1),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosaOutcome {
    pub cycle: Option<HamCycle>,
    pub longest: PathState,
    pub steps: u64,
    pub restarts: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PosaParams {
    /// Rotations plus extensions allowed.
    pub budget: u64,
    pub seed: u64,
    /// Steps without a longer path before restarting; `None` means `5n`.
    pub stall_window: Option<u64>,
}

pub fn posa_search(g: &SimpleView, budget: u64, seed: u64) -> Result<PosaOutcome> {
    posa_search_with(
        g,
        &PosaParams {
            budget,
            seed,
            stall_window: None,
        },
    )
}

/// Turns a cycle through the vertices of `p` (closed by `end–anchor`) into a
/// path one vertex longer, using the lowest-index outside vertex adjacent to
/// the cycle. `None` if no such vertex exists.
fn open_cycle(g: &SimpleView, p: &PathState, on_path: &[bool]) -> Option<PathState> {
    let mut best: Option<(Vertex, usize)> = None;
    for (i, &c) in p.seq.iter().enumerate() {
        if let Some(&u) = g.neighbours(c).iter().find(|&&u| !on_path[u as usize]) {
            if best.is_none_or(|(b, _)| u < b) {
                best = Some((u, i));
            }
        }
    }
    let (u, i) = best?;
    let mut seq = Vec::with_capacity(p.len() + 1);
    seq.extend_from_slice(&p.seq[i + 1..]);
    seq.extend_from_slice(&p.seq[..=i]);
    seq.push(u);
    Some(PathState { seq })
}

fn mark(on_path: &mut [bool], p: &PathState) {
    on_path.iter_mut().for_each(|x| *x = false);
    for &v in &p.seq {
        on_path[v as usize] = true;
    }
}

pub fn posa_search_with(g: &SimpleView, params: &PosaParams) -> Result<PosaOutcome> {
    let n = g.n();
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if n < 3 {
        let seq = g.vertices().collect();
        return Ok(PosaOutcome {
            cycle: None,
            longest: PathState::new(seq),
            steps: 0,
            restarts: 0,
        });
    }
    let window = params.stall_window.unwrap_or(5 * n as u64).max(1);
    let mut rng = rng_from_seed(params.seed);
    let mut path = PathState::single(rng.gen_range(1..=n as Vertex));
    let mut on_path = vec![false; n + 1];
    mark(&mut on_path, &path);
    let mut best = path.clone();
    let mut steps = 0u64;
    let mut last_gain = 0u64;
    let mut restarts = 0u32;

    while steps < params.budget {
        let b = path.end();
        let off: Vec<Vertex> = g
            .neighbours(b)
            .iter()
            .copied()
            .filter(|&w| !on_path[w as usize])
            .collect();
        if let Some(&w) = off.choose(&mut rng) {
            path.seq.push(w);
            on_path[w as usize] = true;
            steps += 1;
            if path.len() > best.len() {
                best = path.clone();
                last_gain = steps;
            }
            continue;
        }
        if g.has_edge(b, path.anchor()) {
            if path.len() == n {
                let cycle = HamCycle { seq: path.seq };
                assert!(cycle.is_valid_for(g), "rotation search produced an invalid cycle");
                return Ok(PosaOutcome {
                    cycle: Some(cycle),
                    longest: best,
                    steps,
                    restarts,
                });
            }
            let longer = open_cycle(g, &path, &on_path).expect("connected graph has an exit");
            path = longer;
            mark(&mut on_path, &path);
            steps += 1;
            if path.len() > best.len() {
                best = path.clone();
                last_gain = steps;
            }
            continue;
        }

        let witnesses = closure(g, &path, params.budget, &mut steps, 1);
        let useful = witnesses[1..].iter().find(|w| {
            let e = w.end();
            g.has_edge(e, w.anchor()) || g.neighbours(e).iter().any(|&u| !on_path[u as usize])
        });
        if let Some(w) = useful {
            path = w.clone();
            continue;
        }
        if steps.saturating_sub(last_gain) > window {
            path = PathState::single(rng.gen_range(1..=n as Vertex));
            mark(&mut on_path, &path);
            restarts += 1;
            last_gain = steps;
        } else {
            // switch anchors: continue rotating from the other end
            path = witnesses.choose(&mut rng).unwrap().reversed();
        }
        steps += 1;
    }
    Ok(PosaOutcome {
        cycle: None,
        longest: best,
        steps,
        restarts,
    })
}

/// Exact Hamiltonicity by dynamic programming over vertex subsets.
///
/// `reach[S]` is the set of end vertices of paths that start at vertex 1 and
/// visit exactly `S ∪ {1}`; the table is indexed by `S` without vertex 1.
pub fn exact_hamiltonian(g: &SimpleView) -> Result<bool> {
    let n = g.n();
    if n > EXACT_MAX_N {
        return Err(Error::TooLarge {
            n,
            max: EXACT_MAX_N,
        });
    }
    if n < 3 {
        return Ok(false);
    }
    let adj: Vec<u32> = (0..n)
        .map(|i| {
            g.neighbours(i as Vertex + 1)
                .iter()
                .fold(0u32, |acc, &w| acc | 1 << (w - 1))
        })
        .collect();
    let rest = n - 1;
    let full = (1usize << rest) - 1;
    let mut reach = vec![0u32; 1 << rest];
    for v in 1..n {
        if adj[0] >> v & 1 == 1 {
            reach[1 << (v - 1)] |= 1 << v;
        }
    }
    for s in 1..=full {
        let ends = reach[s];
        if ends == 0 {
            continue;
        }
        let visited = ((s as u32) << 1) | 1;
        let mut e = ends;
        while e != 0 {
            let v = e.trailing_zeros() as usize;
            e &= e - 1;
            let mut nxt = adj[v] & !visited;
            while nxt != 0 {
                let w = nxt.trailing_zeros() as usize;
                nxt &= nxt - 1;
                reach[s | 1 << (w - 1)] |= 1 << w;
            }
        }
    }
    Ok(reach[full] & adj[0] != 0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HamStep {
    pub vertex: Vertex,
    pub a_size: usize,
    pub b_size: usize,
    pub hit: bool,
    pub path_len: usize,
    pub closed: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HamStatus {
    Hamiltonian,
    Exhausted,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HamTrace {
    pub initial_len: usize,
    pub steps: Vec<HamStep>,
    pub status: HamStatus,
    pub cycle: Option<HamCycle>,
}

impl HamTrace {
    pub fn successes(&self) -> usize {
        self.steps.iter().filter(|s| s.hit).count()
    }
}

/// Two-round exposure for Hamiltonicity on a fixed coloured graph.
///
/// The blue graph's longest path comes from [`posa_search`]. `A` is
/// approximated by the anchor together with its rotation endpoints, and
/// `B(v)` by `END(P_v, v)` for a witness path `P_v` anchored at `v`. Each
/// step reveals the red stems of the youngest unrevealed vertex of `A`; a red
/// edge into `B(v)` closes a cycle, and a red edge leaving the path extends it.
pub fn two_round_hamilton_sim(g: &AttachGraph, budget: u64, seed: u64) -> Result<HamTrace> {
    require_two_rounds(g)?;
    let n = g.n() as usize;
    let blue = project(g, 1)?;
    let red = project(g, 2)?;
    let mut view = simple_view(&blue);
    let start = posa_search(&view, budget, seed)?;
    if start.cycle.is_some() {
        return Ok(HamTrace {
            initial_len: n,
            steps: Vec::new(),
            status: HamStatus::Hamiltonian,
            cycle: start.cycle,
        });
    }
    let mut path = start.longest;
    let initial_len = path.len();
    let mut revealed = vec![false; n + 1];
    let mut on_path = vec![false; n + 1];
    let mut steps = Vec::new();

    loop {
        let mut spent = 0;
        let ends = closure(&view, &path, budget, &mut spent, 1);
        let Some((v, p_v)) = std::iter::once((path.anchor(), path.clone()))
            .chain(ends.iter().map(|w| (w.end(), w.reversed())))
            .filter(|(v, _)| !revealed[*v as usize])
            .max_by_key(|(v, _)| *v)
        else {
            break;
        };
        let a_size = ends.len() + 1;
        revealed[v as usize] = true;
        let mut spent = 0;
        let b_witness = closure(&view, &p_v, budget, &mut spent, 1);
        mark(&mut on_path, &p_v);

        let mut fresh = Vec::new();
        for &w in red.stems_of(v) {
            if view.add_edge(v, w) {
                fresh.push(w);
            }
        }
        let mut hit = false;
        let mut closed = false;
        if let Some(w) = b_witness
            .iter()
            .find(|w| w.len() > 1 && fresh.contains(&w.end()))
        {
            hit = true;
            if w.len() == n {
                closed = true;
                let cycle = HamCycle { seq: w.seq.clone() };
                debug_assert!(cycle.is_valid_for(&view));
                steps.push(HamStep {
                    vertex: v,
                    a_size,
                    b_size: b_witness.len() - 1,
                    hit,
                    path_len: n,
                    closed,
                });
                return Ok(HamTrace {
                    initial_len,
                    steps,
                    status: HamStatus::Hamiltonian,
                    cycle: Some(cycle),
                });
            }
            path = open_cycle(&view, w, &on_path).expect("blue graph is connected");
        } else if let Some(&w) = fresh.iter().find(|&&w| !on_path[w as usize]) {
            hit = true;
            let mut seq = p_v.reversed().seq;
            seq.push(w);
            path = PathState { seq };
        }
        steps.push(HamStep {
            vertex: v,
            a_size,
            b_size: b_witness.len() - 1,
            hit,
            path_len: path.len(),
            closed,
        });
    }
    Ok(HamTrace {
        initial_len,
        steps,
        status: HamStatus::Exhausted,
        cycle: None,
    })
}
