#![no_main]
use libfuzzer_sys::fuzz_target;
use ucycle_core::verify::CoverageDocument;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(doc) = CoverageDocument::from_json(s) {
        assert_eq!(CoverageDocument::from_json(&doc.to_json()).ok(), Some(doc));
    }
});
