#![no_main]
use libfuzzer_sys::fuzz_target;
use std::sync::OnceLock;

fn c3_action() -> &'static ihara::action::GroupAction {
    static ACTION: OnceLock<ihara::action::GroupAction> = OnceLock::new();
    ACTION.get_or_init(|| {
        let k4 = ihara::graph::Graph::complete(4);
        let perm = ihara::action::parse_vertex_cycles(k4.vertex_labels(), "(234)").unwrap();
        let auto = ihara::action::Automorphism::from_vertex_perm(&k4, perm).unwrap();
        ihara::action::GroupAction::generate(k4, vec![auto], 8).unwrap()
    })
}

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if text.len() > 1 << 16 {
        return;
    }
    let _ = ihara::io::parse_representation(c3_action(), text);
});
