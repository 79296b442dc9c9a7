//! Four rank-4 Eulerian Sheffer posets sharing the dodecahedron's factorial
//! data.
//!
//! ```text
//! cargo run --example dodecahedron_trio
//! ```

use poset_forge::cw::{dual_face_poset, named_complex};
use poset_forge::is_isomorphic;
use poset_forge::regularity::{analyze_sheffer, is_eulerian};

fn main() {
    let names = ["antiprism-cap-5", "x2-x3", "zw", "x2-x2-z"];
    let posets: Vec<_> = names
        .iter()
        .map(|n| dual_face_poset(&named_complex(n).expect("known complex")).expect("valid complex"))
        .collect();
    for (name, p) in names.iter().zip(&posets) {
        let s = analyze_sheffer(p).expect("Sheffer");
        println!(
            "{name}: D = {:?}, Eulerian = {}, same as the dodecahedron = {}",
            s.d(),
            is_eulerian(p).expect("graded").eulerian,
            is_isomorphic(p, &posets[0]).is_some()
        );
    }
}
