#![no_main]

use libfuzzer_sys::fuzz_target;
use quartet_core::{parse_label, Label, LeafOrder};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(label) = text.parse::<Label>() {
        assert_eq!(label.to_string(), text);
        assert_eq!(label.reverse().reverse(), label);
        let w = label.width();
        assert_eq!(parse_label(text, w), Ok(label));
        for order in LeafOrder::ALL {
            assert_eq!(
                Label::at_leaf_index(w, order, label.leaf_index(order)).unwrap(),
                label
            );
        }
    }
});
