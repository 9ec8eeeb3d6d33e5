#![no_main]

use attrex_service::Session;
use libfuzzer_sys::fuzz_target;

// A restored session writes a log that restores to the same session.
fuzz_target!(|text: &str| {
    if let Ok((session, _)) = Session::from_log(text) {
        let log = session.to_log();
        let (again, repaired) = Session::from_log(&log).expect("own log replays");
        assert!(!repaired);
        assert_eq!(again.to_log(), log);
    }
});
