//! Lonely vertices and the Tutte-condition obstruction for `G^n_2`.
//!
//! A vertex is *old* if it is at most `⌊cn⌋`, *lonely* if no younger vertex
//! ever attaches to it. Deleting the old non-lonely vertices leaves `H`, whose
//! odd components outnumber the deleted set once there are many isolated
//! vertices and size-3 "sweet cherry" components.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{simple_view, AttachGraph, Model, SimpleView, Vertex};
use crate::matching::{has_perfect_matching, odd_components_where};

/// Exact matching cross-checks run only up to this size.
pub const CROSS_CHECK_MAX_N: usize = 2000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LonelyStats {
    pub n: usize,
    pub c: f64,
    /// `⌊cn⌋`, the number of old vertices.
    pub old: usize,
    /// Young, lonely, every non-loop stem into the old set.
    pub a_n: usize,
    /// Young, lonely, one stem old and one stem young (not a loop).
    pub b_n: usize,
    /// Old and lonely.
    pub c_n: usize,
    /// Old and not lonely.
    pub d_n: usize,
    /// Young lonely vertices with at least one loop (counted in `a_n` or in
    /// neither class).
    pub loop_degenerate: usize,
}

fn check_input(g: &AttachGraph, c: f64) -> Result<usize> {
    if g.model() != Model::Preferential {
        return Err(Error::ModelMismatch {
            expected: "pa",
            found: g.model().tag(),
        });
    }
    if g.m() != 2 {
        return Err(Error::param(format!("lower-bound statistics need m = 2, got {}", g.m())));
    }
    if !(c > 0.0 && c < 1.0) {
        return Err(Error::param(format!("c must lie in (0, 1), got {c}")));
    }
    Ok((c * g.n() as f64).floor() as usize)
}

/// `lonely[v]` for every vertex; index 0 unused.
pub fn lonely_flags(g: &AttachGraph) -> Vec<bool> {
    g.receives_from_younger().into_iter().map(|hit| !hit).collect()
}

pub fn lonely_stats(g: &AttachGraph, c: f64) -> Result<LonelyStats> {
    let k = check_input(g, c)?;
    let lonely = lonely_flags(g);
    let mut s = LonelyStats {
        n: g.n() as usize,
        c,
        old: k,
        a_n: 0,
        b_n: 0,
        c_n: 0,
        d_n: 0,
        loop_degenerate: 0,
    };
    for v in 1..=g.n() {
        let is_lonely = lonely[v as usize];
        if v as usize <= k {
            if is_lonely {
                s.c_n += 1;
            } else {
                s.d_n += 1;
            }
            continue;
        }
        if !is_lonely {
            continue;
        }
        let stems = g.stems_of(v);
        let loops = stems.iter().filter(|&&t| t == v).count();
        let old = stems.iter().filter(|&&t| (t as usize) <= k).count();
        let young = stems.len() - loops - old;
        if loops > 0 {
            s.loop_degenerate += 1;
        }
        match (old, young) {
            (_, 0) => s.a_n += 1,
            (1, 1) => s.b_n += 1,
            _ => {}
        }
    }
    Ok(s)
}

/// A simple view restricted to the vertices with `kept[v]`; deleted vertices
/// remain as isolated placeholders so vertex identities are preserved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedView {
    pub view: SimpleView,
    pub kept: Vec<bool>,
}

impl InducedView {
    pub fn order(&self) -> usize {
        self.kept[1..].iter().filter(|&&k| k).count()
    }

    pub fn isolated(&self) -> usize {
        self.view
            .vertices()
            .filter(|&v| self.kept[v as usize] && self.view.degree(v) == 0)
            .count()
    }

    /// Components as `(labels, count)`; deleted vertices get `usize::MAX`.
    pub fn components(&self) -> (Vec<usize>, usize) {
        self.view.components_where(|v| self.kept[v as usize])
    }

    pub fn odd_components(&self) -> usize {
        odd_components_where(&self.view, |v| self.kept[v as usize])
    }

    /// Sorted members of the component containing `v`.
    pub fn component_of(&self, v: Vertex) -> Vec<Vertex> {
        let (labels, _) = self.components();
        let l = labels[v as usize];
        self.view
            .vertices()
            .filter(|&u| labels[u as usize] == l)
            .collect()
    }
}

/// `H`: the graph left after deleting the old non-lonely vertices.
pub fn build_h(g: &AttachGraph, c: f64) -> Result<InducedView> {
    let k = check_input(g, c)?;
    let lonely = lonely_flags(g);
    let kept: Vec<bool> = (0..=g.n() as usize)
        .map(|v| v > 0 && (v > k || lonely[v]))
        .collect();
    let full = simple_view(g);
    let view = SimpleView::from_pairs(
        full.n(),
        full.edges().filter(|&(u, w)| kept[u as usize] && kept[w as usize]),
    );
    Ok(InducedView { view, kept })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cherry {
    pub v2: Vertex,
    pub v3: Vertex,
    pub v4: Vertex,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CherryReport {
    pub count: usize,
    pub witnesses: Vec<Cherry>,
    /// Some vertex appears in more than one witness.
    pub overlapping: bool,
}

/// Sweet cherries `(v₂, v₃, v₄)` over the quartiles `V₁ … V₄`: `v₄ ∈ V₄` is
/// lonely with stems exactly `{v₂, v₃}`, `v₂ ∈ V₂`, `v₃ ∈ V₃`, `v₄` is the only
/// younger neighbour of both, and both stems of `v₂` and of `v₃` land in `V₁`.
pub fn sweet_cherries(g: &AttachGraph) -> Result<CherryReport> {
    check_input(g, 0.25)?;
    let n = g.n() as usize;
    let mut report = CherryReport {
        count: 0,
        witnesses: Vec::new(),
        overlapping: false,
    };
    if n < 4 {
        return Ok(report);
    }
    let (q1, q2, q3) = (n / 4, n / 2, 3 * n / 4);
    let quartile = |v: Vertex| match v as usize {
        x if x <= q1 => 1,
        x if x <= q2 => 2,
        x if x <= q3 => 3,
        _ => 4,
    };
    // youngest and oldest younger neighbour of every vertex
    let mut lo = vec![Vertex::MAX; n + 1];
    let mut hi = vec![0 as Vertex; n + 1];
    for r in g.records() {
        if r.target != r.stem {
            let t = r.target as usize;
            lo[t] = lo[t].min(r.stem);
            hi[t] = hi[t].max(r.stem);
        }
    }
    let only_younger = |v: Vertex, w: Vertex| lo[v as usize] == w && hi[v as usize] == w;
    let stems_in_v1 = |v: Vertex| g.stems_of(v).iter().all(|&t| quartile(t) == 1);
    let mut used = vec![false; n + 1];
    for v4 in (q3 + 1) as Vertex..=n as Vertex {
        if hi[v4 as usize] != 0 {
            continue; // not lonely
        }
        let s = g.stems_of(v4);
        let (a, b) = (s[0].min(s[1]), s[0].max(s[1]));
        if quartile(a) != 2 || quartile(b) != 3 {
            continue;
        }
        if only_younger(a, v4) && only_younger(b, v4) && stems_in_v1(a) && stems_in_v1(b) {
            for v in [a, b, v4] {
                report.overlapping |= used[v as usize];
                used[v as usize] = true;
            }
            report.witnesses.push(Cherry { v2: a, v3: b, v4 });
        }
    }
    report.count = report.witnesses.len();
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NoPmWitness {
    /// `|S| = D_n`.
    pub removed: usize,
    pub odd_components: usize,
    pub deficiency: usize,
    /// Exact-matching verdict agrees (`None` above the cross-check size).
    pub matching_agrees: Option<bool>,
}

/// Tutte witness built from `S` = old non-lonely vertices, if
/// `odd(H) − |S| ≥ 2`.
pub fn no_pm_certificate(g: &AttachGraph, c: f64) -> Result<Option<NoPmWitness>> {
    let h = build_h(g, c)?;
    let removed = h.kept[1..].iter().filter(|&&k| !k).count();
    let odd = h.odd_components();
    if odd < removed + 2 {
        return Ok(None);
    }
    let matching_agrees = (g.n() as usize <= CROSS_CHECK_MAX_N)
        .then(|| !has_perfect_matching(&simple_view(g)));
    Ok(Some(NoPmWitness {
        removed,
        odd_components: odd,
        deficiency: odd - removed,
        matching_agrees,
    }))
}

/// Vertices with at least three lonely neighbours. Any such vertex rules out a
/// Hamiltonian cycle, since lonely vertices have degree at most 2.
pub fn lonely_common_neighbours(g: &AttachGraph) -> usize {
    let lonely = lonely_flags(g);
    let view = simple_view(g);
    view.vertices()
        .filter(|&u| {
            view.neighbours(u)
                .iter()
                .filter(|&&w| lonely[w as usize])
                .count()
                >= 3
        })
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{generate, GenParams};

    fn pa2(n: u32, seed: u64) -> AttachGraph {
        generate(&GenParams::new(Model::Preferential, n, 2, seed)).unwrap()
    }

    #[test]
    fn last_vertex_lonely_and_partition() {
        for seed in 0..20 {
            let g = pa2(200, seed);
            assert!(lonely_flags(&g)[200]);
            let s = lonely_stats(&g, 0.25).unwrap();
            assert_eq!(s.c_n + s.d_n, 50);
            assert!(s.a_n + s.b_n <= 150);
        }
    }

    #[test]
    fn isolated_in_h_matches_counts() {
        for seed in 0..40 {
            let g = pa2(300, seed);
            let s = lonely_stats(&g, 0.25).unwrap();
            let h = build_h(&g, 0.25).unwrap();
            assert_eq!(h.isolated(), s.a_n + s.c_n, "seed {seed}");
            assert_eq!(h.order(), 300 - s.d_n);
            assert!(h.odd_components() >= h.isolated());
        }
    }

    #[test]
    fn tiny_c_keeps_everything() {
        let g = pa2(50, 4);
        let h = build_h(&g, 0.001).unwrap();
        assert_eq!(h.view, simple_view(&g));
    }

    #[test]
    fn cherries_are_components_of_h() {
        let mut total = 0;
        for seed in 0..30 {
            let g = pa2(400, seed);
            let r = sweet_cherries(&g).unwrap();
            assert!(!r.overlapping);
            let h = build_h(&g, 0.25).unwrap();
            for w in &r.witnesses {
                assert_eq!(h.component_of(w.v4), vec![w.v2, w.v3, w.v4]);
            }
            total += r.count;
        }
        assert!(total > 0);
        assert_eq!(sweet_cherries(&pa2(3, 1)).unwrap().count, 0);
    }

    #[test]
    fn input_checks() {
        let g = pa2(10, 1);
        assert!(lonely_stats(&g, 1.0).is_err());
        assert!(lonely_stats(&g, 0.0).is_err());
        let g3 = generate(&GenParams::new(Model::Preferential, 10, 3, 1)).unwrap();
        assert!(lonely_stats(&g3, 0.25).is_err());
        let ua = generate(&GenParams::new(Model::Uniform, 10, 2, 1)).unwrap();
        assert!(matches!(build_h(&ua, 0.25), Err(Error::ModelMismatch { .. })));
        assert!(no_pm_certificate(&g, 1.5).is_err());
    }

    #[test]
    fn certificates_agree_with_matching() {
        for seed in 0..10 {
            let g = pa2(1000, seed);
            if let Some(w) = no_pm_certificate(&g, 0.25).unwrap() {
                assert_eq!(w.matching_agrees, Some(true));
                assert!(w.deficiency >= 2);
            }
        }
    }
}
