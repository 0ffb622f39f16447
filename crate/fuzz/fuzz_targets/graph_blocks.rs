#![no_main]

use graphreal::format::{parse_graphs, write_graph};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(graphs) = parse_graphs(text) else {
        return;
    };
    let mut out = Vec::new();
    for (k, g) in graphs.iter().enumerate() {
        if k > 0 {
            out.push(b'\n');
        }
        write_graph(&mut out, g).unwrap();
    }
    let again = parse_graphs(std::str::from_utf8(&out).unwrap()).unwrap();
    assert_eq!(again, graphs);
});
