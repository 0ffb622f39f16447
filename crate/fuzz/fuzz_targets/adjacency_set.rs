#![no_main]

use graphreal::model::AdjacencySet;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Some((&focal, rest)) = data.split_first() else {
        return;
    };
    let members: Vec<usize> = rest.iter().map(|&b| b as usize).collect();
    match AdjacencySet::from_labels(focal as usize, &members) {
        Ok(a) => {
            let labels = a.labels();
            assert!(labels.windows(2).all(|w| w[0] < w[1]));
            assert!(!labels.contains(&(focal as usize)));
            assert!(labels.iter().all(|&l| l > 0));
        }
        Err(_) => {
            let valid = focal > 0
                && members.iter().all(|&m| m > 0 && m != focal as usize)
                && members.windows(2).all(|w| w[0] < w[1]);
            assert!(!valid, "rejected a valid set");
        }
    }
});
