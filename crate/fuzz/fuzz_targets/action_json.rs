#![no_main]
use libfuzzer_sys::fuzz_target;
use std::sync::OnceLock;

fn k4() -> &'static ihara::graph::Graph {
    static GRAPH: OnceLock<ihara::graph::Graph> = OnceLock::new();
    GRAPH.get_or_init(|| ihara::graph::Graph::complete(4))
}

// Action files are parsed against a fixed small graph; closure is bounded,
// and any edge-free result must survive the quotient construction.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(action) = ihara::io::parse_action(k4(), text, 24) {
        let _ = action.classify();
        let _ = action.conjugacy_classes();
        if let Ok(cov) = ihara::covering::Covering::new(action, 0, 0) {
            let _ = ihara::zeta::zeta_gog_two_term(cov.quotient());
        }
    }
});
