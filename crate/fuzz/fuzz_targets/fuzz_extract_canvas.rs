//! Import must never panic on arbitrary bytes (ZIP or bare JSON), and an
//! extracted canvas must serialize and reparse cleanly.

#![no_main]

use libfuzzer_sys::fuzz_target;

use aac::model::{parse_canvas, serialize_canvas};
use aac::reader::extract_canvas;

fuzz_target!(|data: &[u8]| {
    if let Ok(canvas) = extract_canvas(data) {
        let out = serialize_canvas(&canvas);
        assert_eq!(parse_canvas(&out).unwrap(), canvas);
    }
});
