//! Replays the checked-in fuzz corpus through the fuzz targets' invariants.

use std::fs;
use std::path::PathBuf;

use padic_codes::code::{CyclicCode, CyclicRing};
use padic_codes::{Poly, Zq};

fn seeds(target: &str) -> Vec<String> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fuzz/corpus")
        .join(target);
    let mut out: Vec<String> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| fs::read_to_string(e.unwrap().path()).unwrap())
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn poly_parse_seeds() {
    let ring = Zq::new(3, 5).unwrap();
    for text in seeds("poly_parse") {
        if let Ok(f) = Poly::parse(&ring, &text) {
            assert_eq!(Poly::parse(&ring, &f.to_string()).unwrap(), f, "{text:?}");
        }
    }
}

#[test]
fn zq_parse_seeds() {
    let ring = Zq::new(2, 70).unwrap();
    for text in seeds("zq_parse") {
        if let Ok(x) = ring.parse(&text) {
            assert_eq!(ring.parse(&x.residue().to_string()).unwrap(), x, "{text:?}");
        }
    }
}

#[test]
fn digits_parse_seeds() {
    for text in seeds("digits_parse") {
        for (p, prec) in [(2, 12), (13, 4)] {
            let ring = Zq::new(p, prec).unwrap();
            if let Ok(x) = ring.parse_digits(&text) {
                assert!(x.digits().iter().all(|&d| d < p), "{text:?}");
            }
        }
    }
}

#[test]
fn gens_parse_seeds() {
    let ring = CyclicRing::new(7, 2, 3, false).unwrap();
    for text in seeds("gens_parse") {
        if let Ok(gens) = Poly::parse_list(ring.zq(), &text) {
            let code = CyclicCode::canonicalize(&ring, &gens).unwrap();
            assert_eq!(code.dual().unwrap().dual().unwrap(), code, "{text:?}");
        }
    }
}
