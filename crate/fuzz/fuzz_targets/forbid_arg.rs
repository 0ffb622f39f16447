#![no_main]

use graphreal::format::parse_forbid;
use graphreal::model::ForbiddenSet;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok((focal, members)) = parse_forbid(text) {
        assert!(focal > 0 && members.iter().all(|&m| m > 0));
        if let Ok(star) = ForbiddenSet::from_labels(focal, &members) {
            assert!(!star.contains(star.focal()));
            assert!(star.members().windows(2).all(|w| w[0] < w[1]));
        }
    }
});
