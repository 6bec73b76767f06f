#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(t) = shipat::parse_area(text) {
        let path = t.to_path();
        assert_eq!(path.semilength(), t.area().len());
        assert_eq!(shipat::ShiTableau::from_path(&path).unwrap(), t);
        let _ = t.region_inequalities();
    }
});
