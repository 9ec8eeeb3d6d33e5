#![no_main]

use attrex::io::parse_partial_context;
use attrex::AttributeUniverse;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    let u = AttributeUniverse::new(["a", "b", "c", "d", "e"]).unwrap();
    if let Ok(p) = parse_partial_context(&u, text) {
        for d in p.descriptions() {
            assert!(!d.positive().intersects(d.negative()));
        }
    }
});
