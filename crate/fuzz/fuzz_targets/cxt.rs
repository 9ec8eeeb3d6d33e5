#![no_main]

use attrex::io::{parse_cxt, parse_cxt_bytes, serialize_cxt};
use libfuzzer_sys::fuzz_target;

// Whatever parses must survive a write/read cycle unchanged.
fuzz_target!(|data: &[u8]| {
    if let Ok(ctx) = parse_cxt_bytes(data) {
        if let Ok(text) = serialize_cxt(&ctx) {
            let again = parse_cxt(&text).expect("serialized context reparses");
            assert_eq!(again.objects(), ctx.objects());
            assert_eq!(again.rows(), ctx.rows());
            assert_eq!(serialize_cxt(&again).unwrap(), text);
        }
    }
});
