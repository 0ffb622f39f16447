#![no_main]

use graphreal::format::{graph_to_json, parse_graph_json};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(g) = parse_graph_json(text) {
        assert_eq!(parse_graph_json(&graph_to_json(&g)).unwrap(), g);
        let degrees = g.degrees();
        assert_eq!(degrees.iter().sum::<usize>(), 2 * g.edge_count());
    }
});
