#![no_main]

use libfuzzer_sys::fuzz_target;
use qsl_core::scanner::{parse_csv, to_csv_string};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(table) = parse_csv(text) else { return };
    // anything accepted must re-emit to a fixed point
    let once = to_csv_string(&table);
    let again = to_csv_string(&parse_csv(&once).expect("emitted CSV parses"));
    assert_eq!(once, again);
});
