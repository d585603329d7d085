#![no_main]
use libfuzzer_sys::fuzz_target;

// The polynomial text form must round-trip whatever it accepts.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if text.len() > 1 << 12 {
        return;
    }
    if let Ok(p) = ihara::poly::parse_int_poly(text) {
        let shown = p.to_string();
        let again = ihara::poly::parse_int_poly(&shown).expect("display form reparses");
        assert_eq!(again, p);
    }
});
