#![no_main]

use libfuzzer_sys::fuzz_target;

use fatghom::fatgraph::Vertex;
use fatghom::Fatgraph;

// Build fatgraphs from raw vertex label lists: byte 0 gives the vertex
// count, following bytes give valences, the rest are labels.  The builder
// must reject every malformed input without panicking; accepted graphs must
// survive contraction of each non-loop edge.
fuzz_target!(|data: &[u8]| {
    if data.is_empty() {
        return;
    }
    let num_vertices = (data[0] % 6) as usize;
    let mut rest = &data[1..];
    if rest.len() < num_vertices {
        return;
    }
    let valences: Vec<usize> = rest[..num_vertices].iter().map(|&b| (b % 9) as usize).collect();
    rest = &rest[num_vertices..];
    let total: usize = valences.iter().sum();
    if rest.len() < total {
        return;
    }
    let mut vertices = Vec::with_capacity(num_vertices);
    let mut offset = 0;
    for &z in &valences {
        let labels: Vec<usize> = rest[offset..offset + z].iter().map(|&b| (b % 16) as usize).collect();
        vertices.push(Vertex::new(labels));
        offset += z;
    }
    let Ok(graph) = Fatgraph::build(vertices, None) else { return };

    let corners: usize = graph.boundary_cycles().iter().map(|b| b.len()).sum();
    assert_eq!(corners, 2 * graph.num_edges());

    for e in 0..graph.num_edges() {
        if graph.is_loop(e) {
            continue;
        }
        let c = graph.contract(e).unwrap();
        assert_eq!(c.genus(), graph.genus());
        assert_eq!(c.num_boundary_cycles(), graph.num_boundary_cycles());
        // Boundary-cycle transport matches the rebuilt cycles.
        for b in graph.boundary_cycles() {
            let image = graph.contract_boundary_cycle(b, e).unwrap();
            assert!(c.boundary_cycles().contains(&image));
        }
    }
});
