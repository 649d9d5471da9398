//! Bundled example graphs and presentations.

use crate::graph::Multigraph;
use crate::periodic::PeriodicPresentation;

pub const LADDER_FIG1_1: &str = include_str!("../fixtures/ladder_fig1_1.json");
pub const PETERSEN_CHAIN: &str = include_str!("../fixtures/petersen_chain_fig3_1_1.json");
pub const DOUBLE_RAY: &str = include_str!("../fixtures/double_ray.json");
pub const INFINITE_LADDER: &str = include_str!("../fixtures/infinite_ladder.json");
pub const INFINITE_LADDER_CIRCLE: &str = include_str!("../fixtures/infinite_ladder_circle.json");
pub const PETERSEN: &str = include_str!("../fixtures/petersen.json");
pub const K4: &str = include_str!("../fixtures/k4.json");
pub const K33: &str = include_str!("../fixtures/k33.json");

fn presentation(text: &str) -> PeriodicPresentation {
    PeriodicPresentation::parse_json(text).expect("bundled presentation is valid")
}

fn graph(text: &str) -> Multigraph {
    serde_json::from_str(text).expect("bundled graph is valid")
}

/// Three two-way rails with alternating rungs and a curved edge every second
/// column: cubic, bipartite, and without a non-elusive Z3-flow.
pub fn ladder_fig1_1() -> PeriodicPresentation {
    presentation(LADDER_FIG1_1)
}

/// Two-way chain of Petersen-like blocks joined by three edges; contracts onto
/// the Petersen graph.
pub fn petersen_chain() -> PeriodicPresentation {
    presentation(PETERSEN_CHAIN)
}

pub fn double_ray() -> PeriodicPresentation {
    presentation(DOUBLE_RAY)
}

pub fn infinite_ladder() -> PeriodicPresentation {
    presentation(INFINITE_LADDER)
}

pub fn petersen() -> Multigraph {
    graph(PETERSEN)
}

pub fn k4() -> Multigraph {
    graph(K4)
}

pub fn k33() -> Multigraph {
    graph(K33)
}

/// Bundled graph by file stem.
pub fn graph_by_name(name: &str) -> Option<Multigraph> {
    match name.trim_end_matches(".json") {
        "petersen" => Some(petersen()),
        "k4" => Some(k4()),
        "k33" => Some(k33()),
        _ => None,
    }
}

/// Bundled presentation by file stem.
pub fn presentation_by_name(name: &str) -> Option<PeriodicPresentation> {
    match name.trim_end_matches(".json") {
        "ladder_fig1_1" => Some(ladder_fig1_1()),
        "petersen_chain_fig3_1_1" => Some(petersen_chain()),
        "double_ray" => Some(double_ray()),
        "infinite_ladder" => Some(infinite_ladder()),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_files_parse_and_are_cubic_where_expected() {
        for p in [ladder_fig1_1(), petersen_chain()] {
            assert_eq!(p.max_degree(), 3);
            let w = p.materialize(4).unwrap();
            let inner: Vec<usize> = (0..w.graph.vertex_count())
                .map(|v| w.graph.degree(v) + w.ports.iter().filter(|q| q.inner == v).count())
                .collect();
            assert!(inner.iter().all(|&d| d == 3));
        }
        assert_eq!(double_ray().max_degree(), 2);
        assert_eq!(infinite_ladder().max_degree(), 3);
        assert!(crate::iso::is_isomorphic(&petersen(), &crate::graph::named::petersen()));
        assert!(crate::iso::is_isomorphic(&k4(), &crate::graph::named::complete(4)));
        assert!(crate::iso::is_isomorphic(&k33(), &crate::graph::named::complete_bipartite(3, 3)));
    }
}
