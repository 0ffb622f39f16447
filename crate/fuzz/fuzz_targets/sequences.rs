#![no_main]

use graphreal::format::parse_sequences;
use graphreal::graphicality::{
    erdos_gallai_all_k, erdos_gallai_test, havel_hakimi_construct, NodeSelectionPolicy,
};
use graphreal::model::validate_input_sequence;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(lines) = parse_sequences(text) else {
        return;
    };
    for (_, raw) in lines {
        let Ok(v) = validate_input_sequence(&raw) else {
            continue;
        };
        let d = &v.sequence;
        if d.len() > 64 {
            continue;
        }
        let graphical = erdos_gallai_test(d).graphical;
        assert_eq!(graphical, erdos_gallai_all_k(d));
        match havel_hakimi_construct(d, NodeSelectionPolicy::MaxResidual) {
            Ok(g) => {
                assert!(graphical);
                assert!(v
                    .to_original(&g)
                    .realizes(&raw.iter().map(|&x| x as usize).collect::<Vec<_>>()));
            }
            Err(_) => assert!(!graphical),
        }
    }
});
