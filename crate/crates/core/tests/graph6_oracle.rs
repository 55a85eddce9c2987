//! Decodings frozen from an independent graph6 implementation.

use ppm_core::{are_isomorphic, parse_graph6, write_graph6, Multigraph};

type Fixture = (&'static str, usize, &'static [(usize, usize)]);

const FIXTURES: &[Fixture] = &[
    (
        "F~~~g",
        7,
        &[
            (0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (0, 6), (1, 2), (1, 3), (1, 4), (1, 5),
            (1, 6), (2, 3), (2, 4), (2, 5), (2, 6), (3, 4), (3, 5), (3, 6), (4, 5), (5, 6),
        ],
    ),
    ("K?@??GC????A", 12, &[(1, 5), (5, 7), (5, 8), (9, 11)]),
    ("I_?T?????", 10, &[(0, 1), (0, 6), (2, 6), (3, 5)]),
    ("A_", 2, &[(0, 1)]),
    ("A?", 2, &[]),
    ("B_", 3, &[(0, 1)]),
    ("GA_???", 8, &[(0, 4), (1, 3)]),
    ("Bw", 3, &[(0, 1), (0, 2), (1, 2)]),
    (
        "K|\\QYT~UUvd~",
        12,
        &[
            (0, 1), (0, 2), (0, 3), (0, 10), (1, 2), (1, 4), (1, 5), (1, 6), (1, 7), (1, 8),
            (1, 9), (1, 10), (2, 3), (2, 4), (2, 8), (2, 11), (3, 4), (3, 5), (3, 8), (3, 9),
            (3, 10), (4, 6), (4, 7), (4, 8), (4, 9), (4, 10), (4, 11), (5, 6), (5, 8), (5, 11),
            (6, 7), (6, 8), (6, 10), (6, 11), (7, 8), (7, 9), (7, 10), (7, 11), (8, 10),
            (8, 11), (9, 10), (9, 11), (10, 11),
        ],
    ),
    (
        "JIr~Xtvt}j?",
        11,
        &[
            (0, 4), (0, 5), (0, 6), (0, 9), (0, 10), (1, 2), (1, 3), (1, 4), (1, 5), (1, 6),
            (1, 8), (1, 9), (1, 10), (2, 5), (2, 6), (2, 7), (2, 8), (3, 5), (3, 7), (3, 8),
            (3, 9), (3, 10), (4, 5), (4, 6), (4, 7), (5, 6), (5, 8), (5, 9), (5, 10), (6, 7),
            (6, 8), (6, 9), (7, 8), (7, 9), (7, 10), (8, 9), (8, 10),
        ],
    ),
];

#[test]
fn decodes_like_reference() {
    for &(line, n, edges) in FIXTURES {
        let g = parse_graph6(line).unwrap();
        assert_eq!(g.vertex_count(), n, "{line}");
        assert_eq!(g.edges(), edges, "{line}");
        assert_eq!(write_graph6(&g).unwrap(), line);
    }
}

#[test]
fn petersen_line() {
    // The reference encoder's output for its own Petersen labelling.
    let reference = parse_graph6("IheA@GUAo").unwrap();
    let mut ours = Multigraph::new(10);
    for i in 0..5 {
        ours.add_edge(i, (i + 1) % 5);
        ours.add_edge(i, i + 5);
        ours.add_edge(i + 5, (i + 2) % 5 + 5);
    }
    let line = write_graph6(&ours).unwrap();
    assert_eq!(line.len(), 9);
    let back = parse_graph6(&line).unwrap();
    assert!(are_isomorphic(&back, &reference));
    assert!(back.degrees().iter().all(|&d| d == 3));
}
