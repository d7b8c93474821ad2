//! Profile verification is total: any byte sequence yields a report, never
//! a panic, and every reported issue carries a registered code.

#![no_main]

use libfuzzer_sys::fuzz_target;

use aac::reader::{verify_profile, PROFILE_CODES};

fuzz_target!(|data: &[u8]| {
    let report = verify_profile(data);
    for issue in &report.issues {
        assert!(
            PROFILE_CODES.iter().any(|(code, _)| *code == issue.code),
            "unregistered issue code {}",
            issue.code
        );
    }
});
