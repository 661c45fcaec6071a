#![no_main]

use libfuzzer_sys::fuzz_target;
use nmsize::io::{mu_to_json, parse_mu};
use nmsize::SizeSystem;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(mu) = parse_mu(text) else { return };
    let out = mu_to_json(&mu);
    assert_eq!(parse_mu(&out).expect("serialized choice parses"), mu);
    assert_eq!(SizeSystem::from_mu(&mu).principal_mu().unwrap(), mu);
});
