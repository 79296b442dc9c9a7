//! The Eulerian check, its witnesses, and the even-rank shortcut.
//!
//! ```text
//! cargo run --example eulerian_check
//! ```

use poset_forge::constructions::{chain, doubled, glued_ngons, tree_interval};
use poset_forge::regularity::{even_rank_eulerian_suffices, is_eulerian};

fn main() {
    let glued = glued_ngons(&[3, 4]).expect("valid polygon sizes");
    println!("glued triangle and square: {:?}", is_eulerian(&glued).expect("graded"));

    let c = chain(3);
    let verdict = is_eulerian(&c).expect("graded");
    let w = verdict.witness.expect("a chain of length 3 is not Eulerian");
    println!("chain of rank 3: mu({}, {}) = {}, expected {}", w.bottom, w.top, w.mobius, w.expected);

    let tree = tree_interval(&[1, 3, 1, 2], 5).expect("valid branching numbers");
    let d = doubled(&tree).expect("graded tree");
    let check = even_rank_eulerian_suffices(&d).expect("graded");
    println!(
        "doubled tree: {} elements, even intervals balanced = {}, direct = {}",
        d.size(),
        check.even_intervals_balanced,
        check.direct.eulerian
    );
}
