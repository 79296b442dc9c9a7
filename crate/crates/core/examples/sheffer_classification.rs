//! The Sheffer search with factorial upper intervals and with butterfly
//! upper intervals.
//!
//! ```text
//! cargo run --example sheffer_classification
//! ```

use poset_forge::classifier::{search_factorials, BRule, ConstraintSet, SearchMode};

fn main() {
    let tree = search_factorials(SearchMode::Sheffer(BRule::Factorial), 12, ConstraintSet::default(), None)
        .expect("rank >= 4");
    for leaf in tree.leaves() {
        println!("D = {:?}", leaf.values);
    }

    let butterfly = SearchMode::Sheffer(BRule::Butterfly);
    for (name, constraints) in
        [("all constraints", ConstraintSet::default()), ("no divisibility", ConstraintSet::without_divisibility())]
    {
        let tree = search_factorials(butterfly, 6, constraints, Some(6)).expect("capped");
        println!("butterfly, rank 6, odd cap 6, {name}: {} leaves", tree.leaves().len());
    }
}
