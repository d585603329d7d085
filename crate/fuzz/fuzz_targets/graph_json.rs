#![no_main]
use libfuzzer_sys::fuzz_target;

// Graph description files are untrusted input; parsing plus the cheap
// derived quantities must never panic.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(graph) = ihara::io::parse_graph(text) {
        let _ = graph.adjacency_matrix();
        let _ = graph.valency_matrix();
        if graph.half_edge_count() <= 12 {
            let gog = ihara::gog::GraphOfGroups::from_graph(graph);
            let _ = ihara::zeta::zeta_gog_two_term(&gog);
        }
    }
});
