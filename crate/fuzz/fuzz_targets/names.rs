#![no_main]

use libfuzzer_sys::fuzz_target;
use nmsize::{Condition, Direction, Mode, MuRuleId};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(c) = text.parse::<Condition>() {
        assert_eq!(c.to_string().parse::<Condition>().unwrap(), c);
    }
    if let Ok(r) = text.parse::<MuRuleId>() {
        assert_eq!(r.to_string(), text);
    }
    let _ = text.parse::<Direction>();
    let _ = text.parse::<Mode>();
});
