//! Posets with the factorial data of a cubical lattice that are not cubical
//! lattices.
//!
//! ```text
//! cargo run --example cubical_counterexamples
//! ```

use poset_forge::classifier::verify_structure;
use poset_forge::constructions::{boolean_lattice, cubical_lattice, deformed_cubical, tree_interval};
use poset_forge::is_isomorphic;

fn main() {
    let square = cubical_lattice(2);
    let deformed = deformed_cubical(3).expect("rank 3");
    let product = boolean_lattice(2)
        .adjoin_min()
        .rank_product(&tree_interval(&[2, 2], 3).expect("valid tree"))
        .expect("equal ranks");
    for (name, p) in [("square", &square), ("deformed", &deformed), ("rank product", &product)] {
        let lattice = p.is_lattice().expect("bounded").is_ok();
        println!(
            "{name}: lattice = {lattice}, same as the square = {}, verdict {:?}",
            is_isomorphic(p, &square).is_some(),
            verify_structure(p).expect("graded")
        );
    }
    println!("{:?}", verify_structure(&deformed_cubical(4).expect("rank 4")).expect("graded"));
}
