#![no_main]

use libfuzzer_sys::fuzz_target;
use quartet_core::events::parse_event_expr;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(expr) = parse_event_expr(text) {
        let printed = expr.to_string();
        let again = parse_event_expr(&printed).expect("printed expression parses");
        assert_eq!(again.to_string(), printed);
        assert_eq!(again.truth_table(), expr.truth_table());
    }
});
