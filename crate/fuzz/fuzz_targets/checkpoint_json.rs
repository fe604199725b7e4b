#![no_main]

use libfuzzer_sys::fuzz_target;

// Checkpoint files are reloaded across runs and must be fully validated.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(graphs) = fatghom::json::parse_checkpoint_json(text) else { return };
    for graph in &graphs {
        assert!(graph.num_vertices() > 0);
        let corners: usize = graph.boundary_cycles().iter().map(|b| b.len()).sum();
        assert_eq!(corners, 2 * graph.num_edges());
    }
});
