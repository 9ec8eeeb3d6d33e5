#![no_main]

use attrex::io::{parse_implications, write_implications};
use attrex::AttributeUniverse;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    let u = AttributeUniverse::new(["a", "b", "c", "d", "e"]).unwrap();
    if let Ok(ls) = parse_implications(&u, text) {
        let again = parse_implications(&u, &write_implications(&ls)).unwrap();
        assert!(again.iter().eq(ls.iter()));
    }
});
