#![no_main]

use libfuzzer_sys::fuzz_target;
use qsl_core::scanner::Grid;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(grid) = text.parse::<Grid>() else { return };
    if let Ok(values) = grid.values() {
        assert!(!values.is_empty());
        assert!(values.iter().all(|v| v.is_finite()));
        let rising = values.windows(2).all(|w| w[0] < w[1]);
        let falling = values.windows(2).all(|w| w[0] > w[1]);
        assert!(rising || falling);
    }
});
