#![no_main]

use attrex_service::{Answer, Session, SessionConfig};
use libfuzzer_sys::fuzz_target;

// Rejected answers must leave the session as it was.
fuzz_target!(|text: &str| {
    let Ok(answer) = serde_json::from_str::<Answer>(text) else {
        return;
    };
    let config: SessionConfig = serde_json::from_str(r#"{"universe": ["a", "b", "c"]}"#).unwrap();
    let mut session = Session::create("fuzz", config).unwrap();
    let before = session.to_log();
    if session.answer(&answer).is_err() {
        assert_eq!(session.to_log(), before);
    }
});
