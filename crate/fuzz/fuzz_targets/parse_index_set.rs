#![no_main]
use libfuzzer_sys::fuzz_target;
use ucycle_core::text::parse_list;
use ucycle_core::{canonicalize_affine, IndexSet};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let Ok(values) = parse_list(s) else { return };
    let Ok(set) = IndexSet::from_integers(values.iter().copied()) else { return };
    assert_eq!(IndexSet::from_integers(parse_list(&set.to_string()).unwrap()).unwrap(), set);
    if set.len() <= 4 && set.greatest() < 64 {
        let modulus = set.greatest() + 1;
        let class = canonicalize_affine(&set, modulus);
        assert_eq!(canonicalize_affine(&class.canonical, modulus).canonical, class.canonical);
    }
});
