//! Parser must never panic on arbitrary input, and any document it accepts
//! must survive a serialize/parse round-trip unchanged.

#![no_main]

use libfuzzer_sys::fuzz_target;

use aac::model::{parse_canvas, serialize_canvas};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(canvas) = parse_canvas(text) {
        let out = serialize_canvas(&canvas);
        let again = parse_canvas(&out).expect("canonical output reparses");
        assert_eq!(again, canvas, "round-trip changed the document");
    }
});
