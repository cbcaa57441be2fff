#![no_main]
use libfuzzer_sys::fuzz_target;
use ucycle_core::galois::{field_from_text, field_to_text};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(ctx) = field_from_text(s) {
        let again = field_from_text(&field_to_text(&ctx)).expect("round trip");
        assert_eq!(again.exp_table(), ctx.exp_table());
    }
});
