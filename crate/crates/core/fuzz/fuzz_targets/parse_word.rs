#![no_main]

use libfuzzer_sys::fuzz_target;
use permstat::words::{self, ReducedWord};

fuzz_target!(|data: &[u8]| {
    let Some((&n, rest)) = data.split_first() else {
        return;
    };
    let n = usize::from(n % 12) + 1;
    let Ok(text) = std::str::from_utf8(rest) else {
        return;
    };
    if let Ok(letters) = words::parse_letters(text) {
        let _ = words::evaluate(&letters, n);
    }
    if let Ok(word) = ReducedWord::parse(text, n) {
        let w = word.evaluate();
        assert_eq!(w.length(), word.len());
        assert_eq!(word.letter_set(), w.support());
    }
});
