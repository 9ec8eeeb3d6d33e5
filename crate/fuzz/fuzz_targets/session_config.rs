#![no_main]

use attrex_service::{Session, SessionConfig};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    if let Ok(config) = serde_json::from_str::<SessionConfig>(text) {
        if config.universe.len() <= 8 {
            let _ = Session::create("fuzz", config);
        }
    }
});
