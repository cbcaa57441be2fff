#![no_main]
use libfuzzer_sys::fuzz_target;
use ucycle_core::text::{format_cycle, parse_cycle};

fuzz_target!(|data: &[u8]| {
    let Some((&q, rest)) = data.split_first() else { return };
    let q = u32::from(q % 40);
    if let Ok(s) = std::str::from_utf8(rest) {
        if let Ok(chi) = parse_cycle(s, q) {
            assert_eq!(parse_cycle(&format_cycle(&chi), q).as_ref(), Ok(&chi));
        }
    }
});
