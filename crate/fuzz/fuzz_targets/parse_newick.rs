#![no_main]

use libfuzzer_sys::fuzz_target;
use quartet_core::parse_newick;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(tree) = parse_newick(text) {
        let printed = tree.to_newick();
        let again = parse_newick(&printed).expect("printed tree parses");
        assert_eq!(again.to_newick(), printed);
        assert_eq!(again.leaf_count(), tree.leaf_count());
    }
});
