#![no_main]
use libfuzzer_sys::fuzz_target;
use ucycle_core::search::{format_atlas_line, parse_atlas_tsv};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(entries) = parse_atlas_tsv(s) {
        let text: String = entries.iter().map(|e| format_atlas_line(&e.canonical, e.verdict) + "\n").collect();
        assert_eq!(parse_atlas_tsv(&text).unwrap(), entries);
    }
});
