#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(path) = shipat::parse_path(text) {
        let word = path.to_string();
        assert_eq!(shipat::parse_path(&word), Ok(path.clone()));
        assert_eq!(path.run_form().to_path(), path);
        if !path.is_empty() {
            let t = shipat::ShiTableau::from_path(&path).unwrap();
            assert_eq!(t.to_path(), path);
        }
    }
});
