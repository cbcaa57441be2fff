#![no_main]
use libfuzzer_sys::fuzz_target;
use ucycle_cli::golden::GoldenTable;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(table) = GoldenTable::parse(s) {
        assert_eq!(GoldenTable::parse(&table.to_text()).as_ref(), Ok(&table));
    }
});
