#![no_main]

use libfuzzer_sys::fuzz_target;

// The JSON fatgraph decoder must reject malformed input without panicking,
// and accepted graphs must satisfy the structural invariants and round-trip
// exactly.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(graph) = fatghom::json::parse_fatgraph_json(text) else { return };

    // Euler relation with integer genus.
    let l = graph.num_vertices() as isize;
    let m = graph.num_edges() as isize;
    let n = graph.num_boundary_cycles() as isize;
    assert_eq!(l - m + n, 2 - 2 * graph.genus() as isize);

    // Boundary cycles partition the corner set.
    let corners: usize = graph.boundary_cycles().iter().map(|b| b.len()).sum();
    assert_eq!(corners, 2 * graph.num_edges());

    // Canonical serialization round-trips bit-exactly.
    let canonical = fatghom::json::fatgraph_to_json(&graph);
    let reparsed = fatghom::json::parse_fatgraph_json(&canonical).unwrap();
    assert_eq!(fatghom::json::fatgraph_to_json(&reparsed), canonical);
});
