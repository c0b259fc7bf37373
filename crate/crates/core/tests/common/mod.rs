//! Brute-force oracles shared by the integration tests. Everything here is
//! deliberately naive and only meant for tiny inputs.
#![allow(dead_code)]

use std::collections::{HashMap, HashSet, VecDeque};

use attachlab::{SimpleView, Vertex};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `G(n, p)`.
pub fn gnp(n: usize, p: f64, rng: &mut ChaCha8Rng) -> SimpleView {
    let mut pairs = Vec::new();
    for u in 1..=n as Vertex {
        for w in u + 1..=n as Vertex {
            if rng.gen_bool(p) {
                pairs.push((u, w));
            }
        }
    }
    SimpleView::from_pairs(n, pairs)
}

/// `g` with every edge at a vertex in `gone` removed (vertices stay, isolated).
pub fn without(g: &SimpleView, gone: &[Vertex]) -> SimpleView {
    SimpleView::from_pairs(
        g.n(),
        g.edges().filter(|(u, w)| !gone.contains(u) && !gone.contains(w)),
    )
}

fn nu_rec(adj: &[u32], free: u32) -> usize {
    if free == 0 {
        return 0;
    }
    let v = free.trailing_zeros();
    let rest = free & !(1 << v);
    let mut best = nu_rec(adj, rest);
    let mut cand = adj[v as usize] & rest;
    while cand != 0 {
        let w = cand.trailing_zeros();
        cand &= cand - 1;
        best = best.max(1 + nu_rec(adj, rest & !(1 << w)));
    }
    best
}

fn masks(g: &SimpleView) -> Vec<u32> {
    (1..=g.n() as Vertex)
        .map(|v| g.neighbours(v).iter().fold(0, |a, &w| a | 1 << (w - 1)))
        .collect()
}

/// Matching number by exhaustive branching.
pub fn brute_nu(g: &SimpleView) -> usize {
    assert!(g.n() <= 20);
    let full = if g.n() == 0 { 0 } else { (1u32 << g.n()) - 1 };
    nu_rec(&masks(g), full)
}

/// `{v : ν(G−v) = ν(G)}`.
pub fn brute_a_set(g: &SimpleView) -> Vec<Vertex> {
    let nu = brute_nu(g);
    g.vertices().filter(|&v| brute_nu(&without(g, &[v])) == nu).collect()
}

/// `{w ≠ u : ν(G−u−w) = ν(G)}`.
pub fn brute_b_set(g: &SimpleView, u: Vertex) -> Vec<Vertex> {
    let nu = brute_nu(g);
    g.vertices()
        .filter(|&w| w != u && brute_nu(&without(g, &[u, w])) == nu)
        .collect()
}

/// Hamiltonian cycle by plain backtracking from vertex 1.
pub fn brute_hamiltonian(g: &SimpleView) -> bool {
    let n = g.n();
    if n < 3 {
        return false;
    }
    fn go(g: &SimpleView, v: Vertex, seen: &mut Vec<bool>, depth: usize) -> bool {
        if depth == g.n() {
            return g.has_edge(v, 1);
        }
        for &w in g.neighbours(v) {
            if !seen[w as usize] {
                seen[w as usize] = true;
                if go(g, w, seen, depth + 1) {
                    return true;
                }
                seen[w as usize] = false;
            }
        }
        false
    }
    let mut seen = vec![false; n + 1];
    seen[1] = true;
    go(g, 1, &mut seen, 1)
}

/// Vertex count of a longest path, by subset DP.
pub fn longest_path_vertices(g: &SimpleView) -> usize {
    let n = g.n();
    assert!(n <= 16);
    if n == 0 {
        return 0;
    }
    let adj = masks(g);
    let mut reach = vec![0u32; 1 << n];
    for v in 0..n {
        reach[1 << v] = 1 << v;
    }
    let mut best = 1;
    for s in 1usize..1 << n {
        let mut e = reach[s];
        if e == 0 {
            continue;
        }
        best = best.max(s.count_ones() as usize);
        while e != 0 {
            let v = e.trailing_zeros() as usize;
            e &= e - 1;
            let mut nxt = adj[v] & !(s as u32);
            while nxt != 0 {
                let w = nxt.trailing_zeros() as usize;
                nxt &= nxt - 1;
                reach[s | 1 << w] |= 1 << w;
            }
        }
    }
    best
}

/// Up to `cap` longest paths (as vertex sequences), found by DFS.
pub fn longest_paths(g: &SimpleView, cap: usize) -> Vec<Vec<Vertex>> {
    let target = longest_path_vertices(g);
    let mut out = Vec::new();
    fn go(
        g: &SimpleView,
        path: &mut Vec<Vertex>,
        seen: &mut Vec<bool>,
        target: usize,
        cap: usize,
        out: &mut Vec<Vec<Vertex>>,
    ) {
        if out.len() >= cap {
            return;
        }
        if path.len() == target {
            out.push(path.clone());
            return;
        }
        let v = *path.last().unwrap();
        for &w in g.neighbours(v) {
            if !seen[w as usize] {
                seen[w as usize] = true;
                path.push(w);
                go(g, path, seen, target, cap, out);
                path.pop();
                seen[w as usize] = false;
            }
        }
    }
    for s in g.vertices() {
        let mut seen = vec![false; g.n() + 1];
        seen[s as usize] = true;
        go(g, &mut vec![s], &mut seen, target, cap, &mut out);
    }
    out
}

/// `END(P, a)` by breadth-first search over every path reachable through
/// rotations (no deduplication by endpoint).
pub fn full_end_set(g: &SimpleView, path: &[Vertex]) -> Vec<Vertex> {
    let mut seen: HashSet<Vec<Vertex>> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(path.to_vec());
    queue.push_back(path.to_vec());
    let mut ends = HashSet::new();
    while let Some(p) = queue.pop_front() {
        let b = *p.last().unwrap();
        ends.insert(b);
        let k = p.len();
        for i in 0..k.saturating_sub(2) {
            if g.has_edge(b, p[i]) {
                let mut q = p[..=i].to_vec();
                q.extend(p[i + 1..].iter().rev());
                if seen.insert(q.clone()) {
                    queue.push_back(q);
                }
            }
        }
    }
    let mut v: Vec<Vertex> = ends.into_iter().collect();
    v.sort_unstable();
    v
}

/// Exact law of the preferential process with `m = 1`: maps the target
/// vector (index `t−1` holds vertex `t`'s target) to its probability.
pub fn exact_pa1(n: usize) -> HashMap<Vec<Vertex>, f64> {
    let mut states: Vec<(Vec<Vertex>, Vec<u64>, f64)> = vec![(vec![1], vec![0, 2], 1.0)];
    for t in 2..=n {
        let total = (2 * t - 1) as f64;
        let mut next = Vec::new();
        for (targets, deg, p) in states {
            for w in 1..=t {
                let weight = if w == t { 1 } else { deg[w] };
                let mut tg = targets.clone();
                tg.push(w as Vertex);
                let mut d = deg.clone();
                d.push(0);
                d[w] += 1;
                d[t] += 1;
                next.push((tg, d, p * weight as f64 / total));
            }
        }
        states = next;
    }
    let mut out = HashMap::new();
    for (tg, _, p) in states {
        *out.entry(tg).or_insert(0.0) += p;
    }
    out
}

/// Composite Simpson rule with `steps` (even) subintervals.
pub fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, steps: usize) -> f64 {
    let h = (b - a) / steps as f64;
    let mut s = f(a) + f(b);
    for i in 1..steps {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(a + i as f64 * h);
    }
    s * h / 3.0
}
