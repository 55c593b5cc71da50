//! Replays the fuzz seed corpus through the fuzz targets' invariants.

use std::fs;
use std::path::PathBuf;

use quartet_core::events::parse_event_expr;
use quartet_core::{parse_label, parse_newick, Label, LeafOrder};

fn seeds(target: &str) -> Vec<String> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fuzz/corpus")
        .join(target);
    let mut out: Vec<String> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|entry| fs::read_to_string(entry.unwrap().path()).unwrap())
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn label_seeds() {
    let mut parsed = 0;
    for text in seeds("parse_label") {
        if let Ok(label) = text.parse::<Label>() {
            parsed += 1;
            assert_eq!(label.to_string(), text);
            assert_eq!(parse_label(&text, label.width()), Ok(label));
            for order in LeafOrder::ALL {
                assert_eq!(
                    Label::at_leaf_index(label.width(), order, label.leaf_index(order)).unwrap(),
                    label
                );
            }
        }
    }
    assert!(parsed > 0);
}

#[test]
fn newick_seeds() {
    let mut parsed = 0;
    for text in seeds("parse_newick") {
        if let Ok(tree) = parse_newick(&text) {
            parsed += 1;
            let printed = tree.to_newick();
            assert_eq!(parse_newick(&printed).unwrap().to_newick(), printed);
        }
    }
    assert!(parsed > 0);
}

#[test]
fn event_expr_seeds() {
    let mut parsed = 0;
    for text in seeds("parse_event_expr") {
        if let Ok(expr) = parse_event_expr(&text) {
            parsed += 1;
            let again = parse_event_expr(&expr.to_string()).unwrap();
            assert_eq!(again.truth_table(), expr.truth_table());
        }
    }
    assert!(parsed > 0);
}
