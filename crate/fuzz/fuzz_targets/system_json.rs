#![no_main]

use libfuzzer_sys::fuzz_target;
use nmsize::io::{parse_system, system_to_json};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(file) = parse_system(text) else { return };
    let out = system_to_json(&file.system);
    let back = parse_system(&out).expect("serialized system parses");
    assert_eq!(back.system, file.system);
    assert_eq!(system_to_json(&back.system), out);
});
