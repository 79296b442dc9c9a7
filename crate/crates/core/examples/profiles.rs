//! Factorial profiles of the standard families.
//!
//! ```text
//! cargo run --example profiles
//! ```

use poset_forge::constructions::{boolean_lattice, butterfly, cubical_lattice, sigma_star_boolean};
use poset_forge::regularity::{analyze_binomial, analyze_sheffer, analyze_triangular};

fn main() {
    for n in 1..=6 {
        let b = analyze_binomial(&boolean_lattice(n)).expect("Boolean algebras are binomial");
        println!("B_{n}: B = {:?}", b.values());
    }
    for n in 1..=6 {
        let t = analyze_binomial(&butterfly(n)).expect("butterflies are binomial");
        println!("T_{n}: B = {:?}", t.values());
    }
    for k in 1..=4 {
        let s = analyze_sheffer(&cubical_lattice(k)).expect("cubical lattices are Sheffer");
        println!("cubical lattice of rank {}: B = {:?}, D = {:?}, C = {:?}", k + 1, s.b(), s.d(), s.coatoms());
    }
    let s = analyze_sheffer(&sigma_star_boolean(4)).expect("dual suspensions are Sheffer");
    println!("dual suspension of B_4: D = {:?}", s.d());

    let table = analyze_triangular(&cubical_lattice(2)).expect("Sheffer posets are triangular");
    for (n, row) in table.rows().iter().enumerate() {
        let cells: Vec<String> = row.iter().map(|c| c.as_ref().map_or("-".into(), ToString::to_string)).collect();
        println!("  B({n}, m): {}", cells.join(" "));
    }
}
