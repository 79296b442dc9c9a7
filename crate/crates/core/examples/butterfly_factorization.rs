//! Factor a Sheffer poset with butterfly upper intervals through the
//! butterfly with stem.
//!
//! ```text
//! cargo run --example butterfly_factorization
//! ```

use poset_forge::classifier::{butterfly_factorization, coatom_pairing};
use poset_forge::constructions::{doubled, tree_interval};

fn main() {
    let tree = tree_interval(&[1, 3, 1, 2], 5).expect("valid branching numbers");
    let p = doubled(&tree).expect("graded tree");
    let pairs = coatom_pairing(&p).expect("bounded").expect("coatoms pair up");
    println!("{} elements, coatom pairs {:?}", p.size(), pairs);

    let f = butterfly_factorization(&p).expect("factorizes");
    let levels = f.quotient.rank_data().expect("graded").level_sizes();
    println!("rank {}: {} twin pairs, quotient level sizes {levels:?}", f.rank, f.pairs.len());
}
