#![no_main]

use libfuzzer_sys::fuzz_target;
use padic_codes::{Poly, Zq};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let ring = Zq::new(3, 5).unwrap();
    if let Ok(f) = Poly::parse(&ring, text) {
        let again = Poly::parse(&ring, &f.to_string()).expect("display output parses");
        assert_eq!(again, f);
    }
});
