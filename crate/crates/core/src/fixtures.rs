//! Small named graphs used by tests, the experiment harness and the demo.

use crate::graph::{SimpleView, Vertex};

pub fn path(n: usize) -> SimpleView {
    SimpleView::from_pairs(n, (1..n as Vertex).map(|v| (v, v + 1)))
}

pub fn cycle(n: usize) -> SimpleView {
    assert!(n >= 3, "a cycle needs at least three vertices");
    SimpleView::from_pairs(n, (1..=n as Vertex).map(|v| (v, v % n as Vertex + 1)))
}

pub fn complete(n: usize) -> SimpleView {
    let n32 = n as Vertex;
    SimpleView::from_pairs(n, (1..=n32).flat_map(|u| (u + 1..=n32).map(move |v| (u, v))))
}

/// `K_{1,leaves}` with centre `1`.
pub fn star(leaves: usize) -> SimpleView {
    SimpleView::from_pairs(leaves + 1, (2..=leaves as Vertex + 1).map(|v| (1, v)))
}

/// Outer 5-cycle `1..=5`, inner pentagram `6..=10`, spokes `i — i+5`.
pub fn petersen() -> SimpleView {
    let mut pairs = Vec::new();
    for i in 0..5u32 {
        pairs.push((i + 1, (i + 1) % 5 + 1));
        pairs.push((i + 6, (i + 2) % 5 + 6));
        pairs.push((i + 1, i + 6));
    }
    SimpleView::from_pairs(10, pairs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(path(4).edge_count(), 3);
        assert_eq!(cycle(5).edge_count(), 5);
        assert_eq!(complete(5).edge_count(), 10);
        assert_eq!(star(3).edge_count(), 3);
        let p = petersen();
        assert_eq!(p.edge_count(), 15);
        assert!(p.vertices().all(|v| p.degree(v) == 3));
    }
}
