#![no_main]

use attrex_service::cli::parse_reply;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|line: &str| {
    let _ = parse_reply(line);
});
