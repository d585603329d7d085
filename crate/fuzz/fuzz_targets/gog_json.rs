#![no_main]
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(gog) = ihara::io::parse_gog(text) {
        let _ = gog.half_edge_matrix();
        let _ = gog.charge_matrix();
        if gog.graph().half_edge_count() <= 10 && gog.max_branching() <= 6 {
            let _ = ihara::zeta::zeta_gog_three_term(&gog);
            let _ = gog.closed_reduced_count(4, false);
        }
    }
});
