#![no_main]

use libfuzzer_sys::fuzz_target;
use permstat::Permutation;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(w) = text.parse::<Permutation>() else {
        return;
    };
    // Anything accepted must print back to itself.
    let again: Permutation = w.to_string().parse().expect("canonical form reparses");
    assert_eq!(again, w);
    if w.len() <= 7 {
        let _ = permstat::bijection::verify_main(&w);
        if w.len() >= 2 {
            let _ = permstat::bijection::verify_level(&w);
        }
    }
});
