#![no_main]

use libfuzzer_sys::fuzz_target;

use fatghom::SparseIntMatrix;

// The coordinate-text matrix reader must never panic, and accepted
// matrices must survive a text round trip.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(matrix) = SparseIntMatrix::from_coordinate_text(text) else { return };
    let emitted = matrix.to_coordinate_text();
    let reparsed = SparseIntMatrix::from_coordinate_text(&emitted).unwrap();
    assert_eq!(reparsed, matrix);
    // Rank is defined for anything that parses and bounded by the shape;
    // keep the work small.
    if matrix.rows() <= 24 && matrix.cols() <= 24 {
        let rank = fatghom::rank_exact(&matrix);
        assert!(rank <= matrix.rows().min(matrix.cols()));
        assert_eq!(rank, fatghom::rank_exact(&matrix.transpose()));
    }
});
