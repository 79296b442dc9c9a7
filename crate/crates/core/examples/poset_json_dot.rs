//! Reading and writing posets as JSON and Graphviz DOT.
//!
//! ```text
//! cargo run --example poset_json_dot
//! ```

use poset_forge::constructions::butterfly;
use poset_forge::poset::ReadOptions;
use poset_forge::Poset;

fn main() {
    let p = butterfly(3);
    let json = p.to_json();
    println!("{json}");
    let back = Poset::from_json(&json).expect("round trip");
    assert_eq!(back.to_json(), json);

    let relation = r#"{"size": 3, "covers": [[0, 1], [1, 2], [0, 2]]}"#;
    match Poset::from_json(relation) {
        Ok(_) => println!("accepted"),
        Err(e) => println!("strict reading: {e}"),
    }
    let reduced = Poset::from_json_with(relation, ReadOptions { reduce: true }).expect("acyclic");
    println!("reduced covers: {:?}", reduced.covers());
    print!("{}", p.to_dot());
}
