#![no_main]
use libfuzzer_sys::fuzz_target;

// Covering files carry the full sheet and Frobenius tables; loading
// re-validates every structural invariant, and a file that validates must
// support splitting without panics.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(cov) = ihara::io::parse_covering(text) {
        if cov.cover_graph().half_edge_count() <= 16 && cov.quotient().max_branching() <= 4 {
            let _ = cov.full_splitting_table(2, false);
        }
    }
});
