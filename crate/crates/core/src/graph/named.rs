//! Small named graphs. Vertices are `v0, v1, ...` and edges `e0, e1, ...`
//! unless stated otherwise.

use super::{GraphBuilder, Multigraph};

fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Multigraph {
    let mut b = GraphBuilder::new();
    for i in 0..n {
        b.add_vertex(format!("v{i}")).expect("fresh id");
    }
    for (j, &(u, v)) in pairs.iter().enumerate() {
        b.push_edge(format!("e{j}"), u, v).expect("fresh id");
    }
    b.build()
}

pub fn path(n: usize) -> Multigraph {
    let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    from_pairs(n, &pairs)
}

/// The cycle on `n >= 1` vertices; `cycle(1)` is a loop, `cycle(2)` a digon.
pub fn cycle(n: usize) -> Multigraph {
    let pairs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    from_pairs(n, &pairs)
}

pub fn triangle() -> Multigraph {
    cycle(3)
}

pub fn complete(n: usize) -> Multigraph {
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            pairs.push((i, j));
        }
    }
    from_pairs(n, &pairs)
}

/// `K_{a,b}` with parts `v0..v{a-1}` and `v{a}..`.
pub fn complete_bipartite(a: usize, b: usize) -> Multigraph {
    let mut pairs = Vec::new();
    for i in 0..a {
        for j in 0..b {
            pairs.push((i, a + j));
        }
    }
    from_pairs(a + b, &pairs)
}

pub fn star(leaves: usize) -> Multigraph {
    let pairs: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
    from_pairs(leaves + 1, &pairs)
}

/// Hub `v0` joined to a rim cycle `v1..v{n}`.
pub fn wheel(rim: usize) -> Multigraph {
    let mut pairs: Vec<_> = (1..=rim).map(|i| (0, i)).collect();
    for i in 0..rim {
        pairs.push((1 + i, 1 + (i + 1) % rim));
    }
    from_pairs(rim + 1, &pairs)
}

/// Two vertices joined by `k` parallel edges.
pub fn theta(k: usize) -> Multigraph {
    from_pairs(2, &vec![(0, 1); k])
}

/// One vertex carrying one loop.
pub fn single_loop() -> Multigraph {
    from_pairs(1, &[(0, 0)])
}

/// Outer 5-cycle `v0..v4`, spokes `vi–v{i+5}`, inner pentagram on `v5..v9`.
pub fn petersen() -> Multigraph {
    let mut pairs = Vec::new();
    for i in 0..5 {
        pairs.push((i, (i + 1) % 5));
    }
    for i in 0..5 {
        pairs.push((i, i + 5));
    }
    for i in 0..5 {
        pairs.push((5 + i, 5 + (i + 2) % 5));
    }
    from_pairs(10, &pairs)
}

/// Finite ladder with `n` rungs: rails `t{i}`, `b{i}`.
pub fn ladder(n: usize) -> Multigraph {
    let mut b = GraphBuilder::new();
    for i in 0..n {
        b.add_vertex(format!("t{i}")).expect("fresh");
        b.add_vertex(format!("b{i}")).expect("fresh");
    }
    for i in 0..n {
        b.push_edge(format!("r{i}"), 2 * i, 2 * i + 1).expect("fresh");
        if i + 1 < n {
            b.push_edge(format!("t{i}"), 2 * i, 2 * i + 2).expect("fresh");
            b.push_edge(format!("b{i}"), 2 * i + 1, 2 * i + 3).expect("fresh");
        }
    }
    b.build()
}

/// Looks up a named graph by a short name such as `petersen`, `k4`, `k3,3`, `c5`.
pub fn by_name(name: &str) -> Option<Multigraph> {
    let lower = name.to_ascii_lowercase();
    match lower.as_str() {
        "petersen" => return Some(petersen()),
        "triangle" => return Some(triangle()),
        _ => {}
    }
    if let Some(rest) = lower.strip_prefix('k') {
        if let Some((a, b)) = rest.split_once(',') {
            return Some(complete_bipartite(a.parse().ok()?, b.parse().ok()?));
        }
        return Some(complete(rest.parse().ok()?));
    }
    if let Some(rest) = lower.strip_prefix('c') {
        return Some(cycle(rest.parse().ok()?));
    }
    if let Some(rest) = lower.strip_prefix('p') {
        return Some(path(rest.parse().ok()?));
    }
    if let Some(rest) = lower.strip_prefix('w') {
        return Some(wheel(rest.parse().ok()?));
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(petersen().edge_count(), 15);
        assert!((0..10).all(|v| petersen().degree(v) == 3));
        assert_eq!(complete_bipartite(3, 3).edge_count(), 9);
        assert_eq!(wheel(4).degree(0), 4);
        assert_eq!(by_name("K3,3").unwrap().edge_count(), 9);
        assert_eq!(ladder(3).edge_count(), 7);
    }
}
