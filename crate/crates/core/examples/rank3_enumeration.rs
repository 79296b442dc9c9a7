//! Rank-3 Eulerian binomial posets up to isomorphism, and the atom-function
//! check that excludes `1, 2, ..., j, j + 2`.
//!
//! ```text
//! cargo run --example rank3_enumeration
//! ```

use poset_forge::classifier::{enumerate_rank3_binomial, no_special_atom_poset_check};

fn main() {
    for q in 2..=8 {
        let classes = enumerate_rank3_binomial(q).expect("q in range");
        let parts: Vec<String> = classes.iter().map(|c| format!("{:?}x{}", c.partition, c.labelled)).collect();
        println!("q = {q}: {} classes {}", classes.len(), parts.join(" "));
    }
    for j in 2..=8 {
        let v = no_special_atom_poset_check(j).expect("j in range");
        println!("j = {j}: excluded = {}, method {:?}, witness {:?}", v.excluded(), v.method, v.rank_count_witness);
    }
}
