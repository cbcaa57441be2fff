#![no_main]
use libfuzzer_sys::fuzz_target;
use ucycle_core::decomp::TrailDecomposition;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(dec) = TrailDecomposition::from_json(s) {
        // Only verified certificates are accepted.
        assert!(dec.verify().is_ok());
    }
});
