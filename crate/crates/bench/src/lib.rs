//! Benchmark inputs shared by the criterion targets.

use polyaxis::{EdgeWord, VertexCycle};

/// The alternating word `(a, b, a, b, …)` on `n` vertices.
pub fn alternating(n: u32, a: u32, b: u32) -> EdgeWord {
    let steps = [a, b].into_iter().cycle().take(n as usize).collect();
    EdgeWord::new(n, steps).expect("admissible pair")
}

/// A fixed asymmetric cycle, `k ↦ 3k mod n` with vertices 1 and 2 swapped.
pub fn scrambled_cycle(n: u32) -> VertexCycle {
    assert!(n % 3 != 0 && n > 4);
    let mut order: Vec<u32> = (0..n).map(|k| (3 * k) % n).collect();
    let i = order.iter().position(|&v| v == 1).unwrap();
    let j = order.iter().position(|&v| v == 2).unwrap();
    order.swap(i, j);
    VertexCycle::new(order).expect("permutation starting at 0")
}
