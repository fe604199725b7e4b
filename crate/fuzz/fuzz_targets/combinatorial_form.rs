#![no_main]

use libfuzzer_sys::fuzz_target;

use fatghom::perm::Perm;
use fatghom::{CombinatorialForm, Fatgraph};

// Decode two candidate image arrays from the raw bytes and push them
// through permutation validation, the triple constructor, and the graph
// builder; none of the layers may panic, and accepted graphs must agree
// with the permutation structure.
fuzz_target!(|data: &[u8]| {
    if data.is_empty() {
        return;
    }
    let size = (data[0] % 24) as usize;
    let rest = &data[1..];
    if rest.len() < 2 * size {
        return;
    }
    let images0: Vec<usize> = rest[..size].iter().map(|&b| b as usize).collect();
    let images1: Vec<usize> = rest[size..2 * size].iter().map(|&b| b as usize).collect();
    let Ok(sigma0) = Perm::from_images(images0) else { return };
    let Ok(sigma1) = Perm::from_images(images1) else { return };
    let Ok(form) = CombinatorialForm::new(sigma0, sigma1) else { return };
    assert!(form.is_valid());
    match Fatgraph::from_combinatorial(&form) {
        Err(_) => {}
        Ok(graph) => {
            assert_eq!(graph.num_vertices(), form.num_vertices());
            assert_eq!(graph.num_edges(), form.num_edges());
            assert_eq!(graph.num_boundary_cycles(), form.num_boundary_cycles());
            // And the graph's own permutation form is again valid.
            assert!(graph.to_combinatorial().is_valid());
        }
    }
});
