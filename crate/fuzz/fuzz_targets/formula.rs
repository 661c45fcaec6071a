#![no_main]

use libfuzzer_sys::fuzz_target;
use nmsize::{models, parse_formula, Interpretation, Universe};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(f) = parse_formula(text) else { return };
    let g = parse_formula(&f.to_string()).expect("display output parses");
    assert_eq!(f, g);
    let u = Universe::numbered(3).unwrap();
    let i = Interpretation::canonical(&u);
    if f.atoms().iter().all(|a| i.get(a).is_some()) {
        assert_eq!(models(&f, &i).unwrap(), models(&g, &i).unwrap());
    }
});
