#![no_main]

use libfuzzer_sys::fuzz_target;
use padic_codes::code::{CyclicCode, CyclicRing};
use padic_codes::Poly;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let ring = CyclicRing::new(7, 2, 3, false).unwrap();
    if let Ok(gens) = Poly::parse_list(ring.zq(), text) {
        // Any generator list spans some ideal of Z/8[X]/(X^7 - 1).
        let code = CyclicCode::canonicalize(&ring, &gens).expect("every list generates an ideal");
        assert_eq!(code.dual().unwrap().dual().unwrap(), code);
    }
});
