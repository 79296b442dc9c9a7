//! The binomial search: every admissible factorial function up to rank 12.
//!
//! ```text
//! cargo run --example binomial_classification
//! ```

use poset_forge::classifier::{
    admissible_odd_binomial, search_factorials, solve_even_binomial, ConstraintSet, SearchMode,
};
use num_bigint::BigUint;

fn main() {
    let tree = search_factorials(SearchMode::Binomial, 12, ConstraintSet::default(), None).expect("rank >= 4");
    print!("{}", tree.render());
    println!("rejections by reason: {:?}", tree.prune_counts());

    let prefix: Vec<BigUint> = [1u32, 1, 2].map(BigUint::from).to_vec();
    for c in admissible_odd_binomial(&prefix).expect("valid prefix") {
        println!("A(3) = {} gives B(4) = {}", c.ratio, c.next_value);
    }
    let bad: Vec<BigUint> = [1u32, 1, 2, 5].map(BigUint::from).to_vec();
    match solve_even_binomial(&bad).expect("valid prefix") {
        Ok(v) => println!("B(4) = {v}"),
        Err(rejection) => println!("B = (1, 1, 2, 5): {rejection}"),
    }
}
