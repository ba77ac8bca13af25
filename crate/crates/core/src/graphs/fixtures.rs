//! Standard graph families and the named fixture graphs.

use super::Graph;
use crate::error::{Error, Result};

/// The wheel with `n` spokes: rim vertices `0..n`, hub `n`.
///
/// Edges `0..n` are the rim (`i -> i+1 mod n`); edges `n..2n` are the
/// spokes, spoke `n+j` running from the hub to rim vertex `j-1 mod n`.
/// For `n = 3` this labeling reproduces the textbook cycle basis with
/// `H^T` rows `[1,0,0,0,1,-1]`, `[0,1,0,-1,0,1]`, `[0,0,1,1,-1,0]`.
pub fn wheel(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("a wheel needs at least 3 spokes, got {n}")));
    }
    let mut edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    edges.extend((0..n).map(|j| (n, (j + n - 1) % n)));
    Ok(Graph::new(n + 1, edges)?.with_label(format!("W{n}")))
}

/// The complete graph on `n` vertices, edges `(i, j)`, `i < j`, in lexicographic order.
pub fn complete_graph(n: usize) -> Result<Graph> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("complete graph needs n >= 2, got {n}")));
    }
    let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    Ok(Graph::new(n, edges)?.with_label(format!("K{n}")))
}

/// The cycle on `n` vertices (`n = 1` is a single tadpole).
pub fn cycle(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidArgument("cycle needs at least one vertex".into()));
    }
    let edges = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Ok(Graph::new(n, edges)?.with_label(format!("C{n}")))
}

/// Two vertices joined by `n` parallel edges.
pub fn banana(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidArgument("banana needs at least one edge".into()));
    }
    Ok(Graph::new(2, vec![(0, 1); n])?.with_label(format!("banana{n}")))
}

/// The zigzag graph with five loops.
fn zigzag5() -> Graph {
    let edges = vec![
        (0, 1),
        (1, 2),
        (2, 3),
        (3, 4),
        (4, 5),
        (0, 2),
        (1, 3),
        (2, 4),
        (3, 5),
        (5, 0),
    ];
    Graph::new(6, edges).expect("valid").with_label("Z5")
}

/// Two copies of `K4` sharing the edge `uv` (vertices 0 and 1), with the
/// shared edge removed.
fn two_vertex_join5() -> Graph {
    let edges = vec![
        (0, 2),
        (0, 3),
        (1, 2),
        (1, 3),
        (2, 3),
        (0, 4),
        (0, 5),
        (1, 4),
        (1, 5),
        (4, 5),
    ];
    Graph::new(6, edges).expect("valid").with_label("T5")
}

/// The unique generator of `GC_2` with 5 loops and 11 edges, oriented so
/// that `d X5 = 2 Z5 − W5` with `Z5` and `W5` as stored.
fn x5() -> Graph {
    let edges = vec![
        (0, 2),
        (0, 1),
        (0, 3),
        (1, 2),
        (1, 4),
        (2, 6),
        (3, 5),
        (3, 6),
        (4, 5),
        (4, 6),
        (5, 6),
    ];
    Graph::new(7, edges).expect("valid").with_label("X5")
}

/// Names accepted by [`fixture`] (parametrized families take a size suffix).
pub fn fixture_names() -> Vec<&'static str> {
    vec!["W3", "W5", "W7", "Z5", "T5", "X5", "K6", "banana<n>", "wheel<n>", "W<n>", "K<n>", "C<n>"]
}

/// Swaps the first two edges, reversing the orientation (edge order) of a graph.
fn flip_orientation(g: Graph) -> Graph {
    let mut g = g;
    g.edges.swap(0, 1);
    g
}

/// Looks up a named fixture graph.
///
/// The wheels `W3`, `W5`, `W7` and `K6` are oriented so that their canonical
/// integrals are positive: `W3` and `W7` are [`wheel`] with the first two rim
/// edges swapped, the others use the plain family labeling. `wheel<n>`
/// always gives the plain [`wheel`] labeling.
pub fn fixture(name: &str) -> Result<Graph> {
    let unknown = || Error::UnknownFixture(name.to_string());
    let parse_suffix = |prefix: &str| -> Option<usize> {
        let rest = name.strip_prefix(prefix)?;
        let rest = rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')).unwrap_or(rest);
        rest.parse().ok()
    };
    match name {
        "Z5" => Ok(zigzag5()),
        "T5" => Ok(two_vertex_join5()),
        "X5" => Ok(x5()),
        _ => {
            if let Some(n) = parse_suffix("banana") {
                banana(n)
            } else if let Some(n) = parse_suffix("wheel") {
                wheel(n)
            } else if let Some(n) = parse_suffix("W") {
                wheel(n).map(|w| if n == 3 || n == 7 { flip_orientation(w) } else { w })
            } else if let Some(n) = parse_suffix("K") {
                complete_graph(n)
            } else if let Some(n) = parse_suffix("C") {
                cycle(n)
            } else {
                Err(unknown())
            }
        }
    }
    .map_err(|e| match e {
        Error::InvalidArgument(_) => unknown(),
        other => other,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wheel_sizes() {
        let w3 = wheel(3).unwrap();
        assert_eq!((w3.vertex_count, w3.edge_count(), w3.loop_number()), (4, 6, 3));
        let w5 = wheel(5).unwrap();
        assert_eq!((w5.vertex_count, w5.edge_count(), w5.loop_number()), (6, 10, 5));
        assert!(wheel(2).is_err());
    }

    #[test]
    fn complete_graph_sizes() {
        let k6 = complete_graph(6).unwrap();
        assert_eq!((k6.edge_count(), k6.loop_number()), (15, 10));
        assert_eq!(complete_graph(3).unwrap().loop_number(), 1);
    }

    #[test]
    fn named_fixtures() {
        for (name, v, e, h) in [("Z5", 6, 10, 5), ("T5", 6, 10, 5), ("X5", 7, 11, 5), ("K6", 6, 15, 10), ("W7", 8, 14, 7)] {
            let g = fixture(name).unwrap();
            assert_eq!((g.vertex_count, g.edge_count(), g.loop_number()), (v, e, h), "{name}");
            assert!(g.min_degree() >= 3, "{name}");
            assert!(g.is_simple(), "{name}");
        }
        assert_eq!(fixture("banana(3)").unwrap().edge_count(), 3);
        assert_eq!(fixture("banana4").unwrap().edge_count(), 4);
        assert!(matches!(fixture("nope"), Err(Error::UnknownFixture(_))));
        assert!(matches!(fixture("W1"), Err(Error::UnknownFixture(_))));
        assert_eq!(fixture("wheel3").unwrap(), wheel(3).unwrap());
        let w3 = fixture("W3").unwrap();
        assert_eq!(w3.edges[0], wheel(3).unwrap().edges[1]);
        assert_eq!(w3.edges[2..], wheel(3).unwrap().edges[2..]);
    }

    #[test]
    fn t5_is_a_two_vertex_join() {
        let t5 = fixture("T5").unwrap();
        assert!(!t5.is_one_vertex_reducible());
        // Removing vertices 0 and 1 disconnects {2,3} from {4,5}.
        let rest: Vec<(usize, usize)> = t5.edges.iter().copied().filter(|&(a, b)| a > 1 && b > 1).collect();
        let g = Graph::new(6, rest).unwrap();
        assert_eq!(g.component_count(), 4);
    }
}
