#![no_main]

use libfuzzer_sys::fuzz_target;
use padic_codes::Zq;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    for (p, prec) in [(2, 12), (13, 4)] {
        let ring = Zq::new(p, prec).unwrap();
        if let Ok(x) = ring.parse_digits(text) {
            assert!(x.digits().iter().all(|&d| d < p));
        }
    }
});
