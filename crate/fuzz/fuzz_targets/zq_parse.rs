#![no_main]

use libfuzzer_sys::fuzz_target;
use padic_codes::Zq;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let ring = Zq::new(2, 70).unwrap();
    if let Ok(x) = ring.parse(text) {
        assert_eq!(ring.parse(&x.residue().to_string()).unwrap(), x);
    }
});
