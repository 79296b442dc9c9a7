//! Library results against values computed here by independent brute force.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use poset_forge::classifier::{enumerate_rank3_binomial, solve_even_binomial, PruneReason};
use poset_forge::constructions::{boolean_lattice, butterfly, cubical_lattice, glued_ngons, sigma_star_boolean};
use poset_forge::cw::{dual_face_poset, named_complex};
use poset_forge::regularity::analyze_sheffer;
use poset_forge::Poset;

/// Maximal chains from `x` to `top`, by walking every path of covers.
fn walk_chains(p: &Poset, x: usize, top: usize) -> u64 {
    if x == top {
        return 1;
    }
    p.upper_covers(x).iter().filter(|&&y| p.leq(y, top)).map(|&y| walk_chains(p, y, top)).sum()
}

/// Möbius function straight from its defining recursion, using only `leq`.
fn naive_mobius(p: &Poset, x: usize, y: usize, memo: &mut HashMap<(usize, usize), i64>) -> i64 {
    if let Some(&v) = memo.get(&(x, y)) {
        return v;
    }
    let v = if x == y {
        1
    } else if !p.leq(x, y) {
        0
    } else {
        -(0..p.size()).filter(|&z| z != y && p.leq(x, z) && p.leq(z, y)).map(|z| naive_mobius(p, x, z, memo)).sum::<i64>()
    };
    memo.insert((x, y), v);
    v
}

#[test]
fn chain_counts_match_path_walks() {
    let cases: Vec<(Poset, u64)> = vec![
        (boolean_lattice(5), 120),
        (butterfly(6), 32),
        (cubical_lattice(3), 48),
        (sigma_star_boolean(4), 48),
        (glued_ngons(&[3, 4]).unwrap(), 14),
    ];
    for (p, expected) in cases {
        let (bottom, top) = p.bounds().unwrap();
        let walked = walk_chains(&p, bottom, top);
        assert_eq!(walked, expected);
        assert_eq!(p.full_interval().unwrap().count_maximal_chains(), BigUint::from(walked));
        let dp = p.chain_counts_from(bottom);
        for y in 0..p.size() {
            assert_eq!(dp[y], BigUint::from(walk_chains(&p, bottom, y)), "element {y}");
        }
    }
}

#[test]
fn mobius_matches_the_recursion() {
    for p in [boolean_lattice(3), butterfly(4), cubical_lattice(2), glued_ngons(&[2, 3]).unwrap(), poset_forge::constructions::chain(3)] {
        let mut memo = HashMap::new();
        for x in 0..p.size() {
            let fast = p.mobius_from(x);
            for y in 0..p.size() {
                assert_eq!(fast[y], BigInt::from(naive_mobius(&p, x, y, &mut memo)), "mu({x}, {y})");
            }
        }
    }
}

#[test]
fn dodecahedron_profiles_by_chain_walks() {
    for name in ["antiprism-cap-5", "x2-x3", "zw", "x2-x2-z"] {
        let p = dual_face_poset(&named_complex(name).unwrap()).unwrap();
        let (bottom, _) = p.bounds().unwrap();
        let rd = p.rank_data().unwrap();
        let mut d = Vec::new();
        for r in 0..=rd.max_rank() {
            let counts: Vec<u64> = rd.level(r).iter().map(|&y| walk_chains(&p, bottom, y)).collect();
            assert!(counts.iter().all(|&c| c == counts[0]), "{name}: rank {r} counts {counts:?}");
            d.push(counts[0]);
        }
        assert_eq!(d, [1, 1, 2, 10, 120], "{name}");
        let profile = analyze_sheffer(&p).unwrap();
        let library: Vec<u64> = profile.d().iter().map(|v| u64::try_from(v).unwrap()).collect();
        assert_eq!(library, d, "{name}");
        assert_eq!(profile.b()[3], BigUint::from(6u32), "{name}");
    }
}

#[test]
fn rank4_binomial_solve_matches_closed_form() {
    // The rank-4 relation reads 2 + B(4) (1/B(2)^2 - 2/B(3)) = 0 with B(2) = 2,
    // so B(4) = 8 B(3) / (8 - B(3)).
    for b3 in 4u64..=7 {
        let expected = BigRational::new(BigInt::from(8 * b3), BigInt::from(8 - b3 as i64));
        let prefix: Vec<BigUint> = [1, 1, 2, b3].map(BigUint::from).to_vec();
        match solve_even_binomial(&prefix).unwrap() {
            Ok(v) => assert_eq!(BigRational::from_integer(BigInt::from(v)), expected, "B(3) = {b3}"),
            Err(r) => assert_eq!(r.value, Some(expected), "B(3) = {b3}"),
        }
    }
    let prefix: Vec<BigUint> = [1u64, 1, 2, 8].map(BigUint::from).to_vec();
    let r = solve_even_binomial(&prefix).unwrap().unwrap_err();
    assert!(matches!(r.reason, PruneReason::NonPositive { .. }));
}

#[test]
fn rank3_classes_match_partition_numbers() {
    // Partitions of q into parts >= 2 number p(q) - p(q - 1).
    let p = [1usize, 1, 2, 3, 5, 7, 11, 15, 22];
    for q in 2..=8 {
        assert_eq!(enumerate_rank3_binomial(q).unwrap().len(), p[q] - p[q - 1], "q = {q}");
    }
}
