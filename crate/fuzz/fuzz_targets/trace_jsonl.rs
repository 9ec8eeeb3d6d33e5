#![no_main]

use attrex::exploration::{parse_trace, write_trace};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    if let Ok(events) = parse_trace(text) {
        assert_eq!(parse_trace(&write_trace(&events)).unwrap(), events);
    }
});
