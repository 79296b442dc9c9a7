//! Isomorphism tests and the operations that build new posets.
//!
//! ```text
//! cargo run --example isomorphism
//! ```

use poset_forge::constructions::{boolean_lattice, butterfly, cubical_lattice, ngon_face_poset, sigma_star_boolean};
use poset_forge::is_isomorphic;

fn main() {
    let square = ngon_face_poset(4).expect("q >= 2");
    let b2 = boolean_lattice(2);
    println!("square = cubical lattice of rank 3: {}", is_isomorphic(&square, &cubical_lattice(2)).is_some());
    println!("B_2 x B_2 = B_4: {}", is_isomorphic(&b2.cartesian_product(&b2), &boolean_lattice(4)).is_some());
    println!("T_3 = dual suspension of B_2: {}", is_isomorphic(&butterfly(3), &sigma_star_boolean(2)).is_some());
    let b3 = boolean_lattice(3);
    println!("B_3 is self-dual: {}", is_isomorphic(&b3, &b3.dual()).is_some());
    let glued = b3.glue_copies(2).expect("bounded");
    println!("two glued copies of B_3: {} elements", glued.size());
    if let Some(map) = is_isomorphic(&b3, &b3.dual()) {
        println!("B_3 -> dual: {map:?}");
    }
}
