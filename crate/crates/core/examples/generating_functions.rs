//! Möbius values from factorial profiles by series inversion, compared with
//! the values computed on the poset itself.
//!
//! ```text
//! cargo run --example generating_functions
//! ```

use poset_forge::constructions::cubical_lattice;
use poset_forge::regularity::{mobius_from_series, rules, sheffer_ep_residual, sheffer_mobius_from_series};

fn main() {
    let order = 6;
    let boolean = mobius_from_series(&rules::factorial_sequence(order), order).expect("positive profile");
    println!("n!: {boolean:?}");
    let b = rules::factorial_sequence(order);
    let d = rules::cubical_sequence(order);
    let series = sheffer_mobius_from_series(&b, &d, order).expect("positive profile");
    println!("cubical from the series: {series:?}");

    let p = cubical_lattice(order - 1);
    let (bottom, _) = p.bounds().expect("bounded");
    let rd = p.rank_data().expect("graded");
    let mu = p.mobius_from(bottom);
    let direct: Vec<_> = (0..=order).map(|r| mu[rd.level(r)[0]].clone()).collect();
    println!("cubical computed directly: {direct:?}");

    for n in 1..=order {
        println!("  Euler-Poincaré residual at rank {n}: {}", sheffer_ep_residual(&b, &d, n));
    }
}
