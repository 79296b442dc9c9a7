//! Self-checking suites that replay the classification on concrete data.
//!
//! Each suite runs a list of named checks and reports every outcome rather
//! than stopping at the first failure, so a single run shows the full state.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::classifier::{
    admissible_odd_binomial, binomial_lemma_x, bound_corollary_a, bound_corollary_c, butterfly_factorization,
    coatom_pairing, enumerate_rank3_binomial, no_special_atom_poset_check, search_factorials, second_form_reference,
    second_form_y, sheffer_lemma_x, solve_even_binomial, solve_even_sheffer, three_atom_configurations,
    verify_structure, Annotation, BRule, BoundInterval, ClassificationTree, ConstraintSet, NodeStatus, PruneReason,
    Rejection, SearchMode, StructureFamily, StructureVerdict, TreeNode, WindowShape,
};
use crate::constructions::{
    boolean_lattice, butterfly, butterfly_with_stem, cubical_lattice, deformed_cubical, doubled, glued_ngons,
    sigma_star_boolean, tree_interval,
};
use crate::cw::{dual_face_poset, named_complex};
use crate::poset::{is_isomorphic, Poset};
use crate::regularity::{
    analyze_binomial, analyze_sheffer, binomial_ep_residual, even_rank_eulerian_suffices, is_eulerian,
    mobius_from_series, rules, sheffer_ep_residual, sheffer_mobius_from_series,
};

/// The available suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    BinomialTheorem,
    ShefferBooleanTheorem,
    ShefferButterfly,
    DodecahedronExamples,
    GfIdentities,
    Structure,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::BinomialTheorem,
        Suite::ShefferBooleanTheorem,
        Suite::ShefferButterfly,
        Suite::DodecahedronExamples,
        Suite::GfIdentities,
        Suite::Structure,
    ];

    /// Command-line name.
    pub fn name(self) -> &'static str {
        match self {
            Suite::BinomialTheorem => "binomial-theorem",
            Suite::ShefferBooleanTheorem => "sheffer-boolean-theorem",
            Suite::ShefferButterfly => "sheffer-butterfly",
            Suite::DodecahedronExamples => "dodecahedron-examples",
            Suite::GfIdentities => "gf-identities",
            Suite::Structure => "structure",
        }
    }

    /// Runs every check of the suite.
    pub fn run(self) -> Vec<CheckResult> {
        let mut r = Runner::default();
        match self {
            Suite::BinomialTheorem => binomial_theorem(&mut r),
            Suite::ShefferBooleanTheorem => sheffer_boolean_theorem(&mut r),
            Suite::ShefferButterfly => sheffer_butterfly(&mut r),
            Suite::DodecahedronExamples => dodecahedron_examples(&mut r),
            Suite::GfIdentities => gf_identities(&mut r),
            Suite::Structure => structure(&mut r),
        }
        r.results
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| {
            let names: Vec<&str> = Suite::ALL.iter().map(|x| x.name()).collect();
            format!("unknown suite {s:?}; known suites: {}", names.join(", "))
        })
    }
}

/// Outcome of one check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{tag}] {}: {}", self.name, self.detail)
    }
}

type Outcome = Result<String, String>;

#[derive(Default)]
struct Runner {
    results: Vec<CheckResult>,
}

impl Runner {
    fn check(&mut self, name: &str, f: impl FnOnce() -> Outcome) {
        let (passed, detail) = match f() {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        self.results.push(CheckResult { name: name.to_string(), passed, detail });
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: impl fmt::Display) -> String {
    e.to_string()
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn int(n: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn nums(xs: &[u64]) -> Vec<BigUint> {
    xs.iter().map(|&x| BigUint::from(x)).collect()
}

fn show(xs: &[BigUint]) -> String {
    let s: Vec<String> = xs.iter().map(ToString::to_string).collect();
    format!("[{}]", s.join(", "))
}

fn sign(n: usize) -> BigInt {
    BigInt::from(if n % 2 == 0 { 1 } else { -1 })
}

fn interval(lower: BigRational, upper: BigRational) -> BoundInterval {
    BoundInterval { lower, upper: Some(upper) }
}

fn show_interval(i: &BoundInterval) -> String {
    match &i.upper {
        Some(u) => format!("[{}, {})", i.lower, u),
        None => format!("[{}, oo)", i.lower),
    }
}

/// Rejections recorded anywhere below `node`, both on pruned nodes and as
/// witnesses of empty windows.
fn rejections(node: &TreeNode) -> Vec<&Rejection> {
    let mut out = Vec::new();
    let mut stack = vec![node];
    while let Some(n) = stack.pop() {
        if let NodeStatus::Pruned { rejection } = &n.status {
            out.push(rejection);
        }
        if let Some(w) = &n.window {
            if let WindowShape::Empty { witness } = &w.shape {
                out.push(witness);
            }
        }
        stack.extend(&n.children);
    }
    out
}

/// The node reached by following the given values from the root.
fn follow<'a>(tree: &'a ClassificationTree, values: &[u64]) -> Option<&'a TreeNode> {
    let mut node = &tree.root;
    for &v in values {
        let target = BigRational::from_integer(BigInt::from(v));
        node = node.children.iter().find(|c| c.value.as_ref() == Some(&target))?;
    }
    Some(node)
}

fn leaf_values(tree: &ClassificationTree) -> Vec<Vec<BigUint>> {
    let mut v: Vec<Vec<BigUint>> = tree.leaves().into_iter().map(|l| l.values).collect();
    v.sort();
    v
}

fn identified(p: &Poset, family: StructureFamily, rank: usize) -> Result<(), String> {
    let v = verify_structure(p).map_err(err)?;
    ensure(v == StructureVerdict::Isomorphic { family, rank }, || format!("rank {rank}: got {v:?}"))
}

fn binomial_theorem(r: &mut Runner) {
    r.check("two leaves up to rank 12", || {
        let tree = search_factorials(SearchMode::Binomial, 12, ConstraintSet::default(), None).map_err(err)?;
        let mut expected = vec![rules::factorial_sequence(12), rules::butterfly_sequence(12)];
        expected.sort();
        let got = leaf_values(&tree);
        ensure(got == expected, || format!("leaves {got:?}"))?;
        let b = rules::butterfly_sequence(12);
        for n in (5..=11).step_by(2) {
            let path: Vec<u64> = b[2..n].iter().map(|v| u64::try_from(v).unwrap_or(u64::MAX)).collect();
            let parent = follow(&tree, &path).ok_or_else(|| format!("no butterfly node at rank {}", n - 1))?;
            let flagged = parent.children.iter().any(|c| {
                c.ratio == Some(int(3)) && c.annotations.contains(&Annotation::ButterflyThreeAtoms)
            });
            ensure(flagged, || format!("A({n}) = 3 is not annotated"))?;
        }
        Ok(format!("B = n! and B = 2^(n-1); {} nodes", tree.nodes().len()))
    });
    r.check("B(3) in {4, 6}", || {
        let c = admissible_odd_binomial(&nums(&[1, 1, 2])).map_err(err)?;
        let values: Vec<BigUint> = c.iter().map(|c| c.value.clone()).collect();
        ensure(values == nums(&[4, 6]), || format!("B(3) candidates {}", show(&values)))?;
        Ok("A(3) = 2 gives B(4) = 8, A(3) = 3 gives B(4) = 24".into())
    });
    r.check("B(3) = 8 fails positivity", || {
        let tree = search_factorials(SearchMode::Binomial, 4, ConstraintSet::default(), None).map_err(err)?;
        let node = follow(&tree, &[2, 8]).ok_or("no node for B(3) = 8")?;
        match &node.status {
            NodeStatus::Pruned { rejection } if matches!(rejection.reason, PruneReason::NonPositive { .. }) => {
                Ok(rejection.to_string())
            }
            other => Err(format!("B(3) = 8 has status {other:?}")),
        }
    });
    r.check("B(3) = 5 gives a non-integral B(4)", || {
        let rej = solve_even_binomial(&nums(&[1, 1, 2, 5])).map_err(err)?.err().ok_or("B(4) accepted")?;
        ensure(rej.reason == PruneReason::NonInteger && rej.value == Some(q(40, 3)), || rej.to_string())?;
        Ok(rej.to_string())
    });
    r.check("A(5) after the two prefixes", || {
        let boolean = admissible_odd_binomial(&rules::factorial_sequence(4)).map_err(err)?;
        let ratios: Vec<BigUint> = boolean.iter().map(|c| c.ratio.clone()).collect();
        ensure(ratios == nums(&[5]), || format!("Boolean prefix: A(5) in {}", show(&ratios)))?;
        let bfly = admissible_odd_binomial(&rules::butterfly_sequence(4)).map_err(err)?;
        let ratios: Vec<BigUint> = bfly.iter().map(|c| c.ratio.clone()).collect();
        ensure(ratios == nums(&[2, 3]), || format!("butterfly prefix: A(5) in {}", show(&ratios)))?;
        ensure(bfly[0].annotations.is_empty() && bfly[1].annotations == [Annotation::ButterflyThreeAtoms], || {
            "annotations misplaced".into()
        })?;
        Ok("Boolean: {5}; butterfly: {2, 3 (annotated)}".into())
    });
    r.check("Boolean window", || {
        for j in (2..=10).step_by(2) {
            let x = binomial_lemma_x(&rules::factorial_sequence(j)).map_err(err)?;
            ensure(x == q(1, j as i64 + 2), || format!("j = {j}: x = {x}"))?;
            let got = bound_corollary_a(&x, &int(j), None).map_err(err)?;
            let want = interval(int(j + 1) - q(2, j as i64), int(j + 2));
            ensure(got == want, || format!("j = {j}: {}", show_interval(&got)))?;
        }
        Ok("x = 1/(j+2), window [j+1-2/j, j+2) for even j <= 10".into())
    });
    r.check("butterfly window", || {
        for j in (2..=10).step_by(2) {
            let x = binomial_lemma_x(&rules::butterfly_sequence(j)).map_err(err)?;
            ensure(x == q(1, 4), || format!("j = {j}: x = {x}"))?;
            let got = bound_corollary_a(&x, &int(2), None).map_err(err)?;
            ensure(got == interval(int(2), int(4)), || format!("j = {j}: {}", show_interval(&got)))?;
        }
        Ok("x = 1/4, window [2, 4) for even j <= 10".into())
    });
    r.check("Boolean and butterfly posets are identified", || {
        for n in 4..=7 {
            identified(&boolean_lattice(n), StructureFamily::Boolean, n)?;
            identified(&butterfly(n), StructureFamily::Butterfly, n)?;
        }
        Ok("ranks 4..=7".into())
    });
    r.check("three atoms above rank 2 form a hexagon", || {
        let c = three_atom_configurations();
        ensure(c.regular > 0 && c.with_square == 0, || format!("{c:?}"))?;
        Ok(format!("{} degree-2 configurations, none containing a square", c.regular))
    });
    r.check("no binomial poset with atoms 1, 2, ..., j, j+2", || {
        let v3 = no_special_atom_poset_check(3).map_err(err)?;
        let w = v3.rank_count_witness.as_ref().ok_or("j = 3 not rejected by rank counts")?;
        ensure(w.count == q(15, 2), || format!("j = 3 witness {}", w.count))?;
        let v4 = no_special_atom_poset_check(4).map_err(err)?;
        ensure(v4.excluded(), || format!("j = 4 survivors {:?}", v4.surviving))?;
        Ok(format!("j = 3: B({})/(B({})B({})) = {}; j = 4: {} cycle types excluded", w.n, w.k, w.n - w.k, w.count, v4.searched))
    });
    r.check("leaf profiles are Eulerian", || {
        for b in [rules::factorial_sequence(12), rules::butterfly_sequence(12)] {
            let mu = mobius_from_series(&b, 12).map_err(err)?;
            ensure(mu.iter().enumerate().all(|(n, m)| *m == sign(n)), || format!("mu = {mu:?}"))?;
            for n in 1..=12 {
                let res = binomial_ep_residual(&b, n);
                ensure(res == BigRational::from_integer(BigInt::from(0)), || format!("residual {res} at {n}"))?;
            }
        }
        Ok("mu(n) = (-1)^n and zero residuals to rank 12".into())
    });
}

fn sheffer_boolean_theorem(r: &mut Runner) {
    let tree = search_factorials(SearchMode::Sheffer(BRule::Factorial), 12, ConstraintSet::default(), None);
    r.check("three leaves up to rank 12", || {
        let tree = tree.as_ref().map_err(err)?;
        let mut expected =
            vec![rules::sigma_star_sequence(12), rules::factorial_sequence(12), rules::cubical_sequence(12)];
        expected.sort();
        let got = leaf_values(tree);
        ensure(got == expected, || format!("leaves {got:?}"))?;
        Ok("D = 2(n-1)!, n!, 2^(n-1)(n-1)!".into())
    });
    r.check("D(3) = 10 dies at rank 6", || {
        let tree = tree.as_ref().map_err(err)?;
        let node = follow(tree, &[2, 10]).ok_or("no node for D(3) = 10")?;
        ensure(node.status == NodeStatus::Exhausted, || format!("status {:?}", node.status))?;
        let c4 = follow(tree, &[2, 10, 120]).ok_or("no node for D(4) = 120")?;
        ensure(c4.ratio == Some(int(12)), || format!("C(4) = {:?}", c4.ratio))?;
        let witness = rejections(node).into_iter().find(|w| {
            w.rank == 6 && w.reason == PruneReason::FactA { ratio: int(2), minimum: BigUint::from(5u32) }
        });
        let w = witness.ok_or("no witness C(6) = 2 < A(5) = 5")?;
        Ok(format!("C(4) = 12; {w}"))
    });
    r.check("D(4) = 2*3! in the dual suspension branch", || {
        let tree = tree.as_ref().map_err(err)?;
        let node = follow(tree, &[2, 4, 12]).ok_or("no node for D(4) = 12")?;
        ensure(node.status == NodeStatus::Internal, || format!("status {:?}", node.status))?;
        Ok("D(4) = 12 is internal".into())
    });
    r.check("even solves", || {
        let a = solve_even_sheffer(BRule::Factorial, &nums(&[1, 2, 8])).map_err(err)?.map_err(err)?;
        let b = solve_even_sheffer(BRule::Factorial, &nums(&[1, 2, 10])).map_err(err)?.map_err(err)?;
        ensure(a == BigUint::from(48u32) && b == BigUint::from(120u32), || format!("{a}, {b}"))?;
        Ok("D = (1, 2, 8) -> 48, D = (1, 2, 10) -> 120".into())
    });
    r.check("windows after the three prefixes", || {
        for j in (2..=10).step_by(2) {
            let (ji, jr) = (j as i64, j);
            let cases = [
                ("dual suspension", rules::sigma_star_sequence(j), q(ji - 1, ji * (ji + 1)), interval(int(jr), q(ji * (ji + 1), ji - 1))),
                ("Boolean", rules::factorial_sequence(j), q(ji, (ji + 1) * (ji + 2)), interval(int(jr + 1) - q(2, ji), q((ji + 1) * (ji + 2), ji))),
                ("cubical", rules::cubical_sequence(j), q(1, 2 * (ji + 1)), interval(int(2 * jr - 2), int(2 * jr + 2))),
            ];
            for (name, d, x_want, window) in cases {
                let x = sheffer_lemma_x(BRule::Factorial, &d[1..]).map_err(err)?;
                ensure(x == x_want, || format!("{name}, j = {j}: x = {x}, expected {x_want}"))?;
                let got = bound_corollary_c(&x, &int(j + 1), None).map_err(err)?;
                ensure(got == window, || format!("{name}, j = {j}: {}", show_interval(&got)))?;
            }
        }
        Ok("closed forms of x and the C(j+1) window for even j <= 10".into())
    });
    r.check("second-form window", || {
        let c: Vec<BigRational> = [8, 10, 12, 14].into_iter().map(int).collect();
        let z = second_form_reference(&int(6), [&c[0], &c[1], &c[2], &c[3]]);
        ensure(z == q(13, 840), || format!("z = {z}"))?;
        let y = second_form_y(&z, &int(6), &int(6), &int(5));
        ensure(y == q(11, 84), || format!("y = {y}"))?;
        let w = bound_corollary_c(&y, &int(7), None).map_err(err)?;
        ensure(w == interval(q(60, 11), q(84, 11)), || show_interval(&w))?;
        Ok(format!("z = {z}, y = {y}, window {}", show_interval(&w)))
    });
    r.check("dual suspensions and cubical lattices are identified", || {
        for n in 4..=6 {
            identified(&sigma_star_boolean(n - 1), StructureFamily::SigmaStarBoolean, n)?;
        }
        for n in 3..=5 {
            identified(&cubical_lattice(n - 1), StructureFamily::Cubical, n)?;
        }
        Ok("dual suspensions of rank 4..=6, cubical lattices of rank 3..=5".into())
    });
    r.check("leaf profiles are Eulerian", || {
        let b = rules::factorial_sequence(12);
        for d in [rules::sigma_star_sequence(12), rules::factorial_sequence(12), rules::cubical_sequence(12)] {
            let mu = sheffer_mobius_from_series(&b, &d, 12).map_err(err)?;
            ensure(mu.iter().enumerate().all(|(n, m)| *m == sign(n)), || format!("mu = {mu:?}"))?;
            for n in 1..=12 {
                let res = sheffer_ep_residual(&b, &d, n);
                ensure(res == BigRational::from_integer(BigInt::from(0)), || format!("residual {res} at {n}"))?;
            }
        }
        Ok("mu(n) = (-1)^n and zero residuals to rank 12".into())
    });
}

/// Doubled trees with a single branch at every even rank, ranks `4..=max`,
/// odd-rank branching numbers in `1..=3`.
fn doubled_trees(max: usize) -> Vec<(Vec<usize>, Poset)> {
    let mut out = Vec::new();
    for n in 4..=max {
        let odd: Vec<usize> = (3..=n).filter(|k| k % 2 == 1).collect();
        let mut choice = vec![1usize; odd.len()];
        loop {
            let e: Vec<usize> = (2..=n)
                .map(|k| odd.iter().position(|&o| o == k).map_or(1, |i| choice[i]))
                .collect();
            if let Ok(p) = tree_interval(&e, n).and_then(|t| doubled(&t)) {
                out.push((e, p));
            }
            let Some(i) = choice.iter().position(|&c| c < 3) else { break };
            choice[i] += 1;
            choice[..i].fill(1);
        }
    }
    out
}

fn sheffer_butterfly(r: &mut Runner) {
    r.check("C(2m) = 2 is forced", || {
        for c in 2..=10u64 {
            let d4 = solve_even_sheffer(BRule::Butterfly, &nums(&[1, 2, 2 * c])).map_err(err)?.map_err(err)?;
            ensure(d4 == BigUint::from(4 * c), || format!("C(3) = {c}: D(4) = {d4}"))?;
        }
        Ok("C(3) in 2..=10 gives C(4) = 2".into())
    });
    r.check("every C(2m+1) in range survives without divisibility", || {
        let mode = SearchMode::Sheffer(BRule::Butterfly);
        let tree = search_factorials(mode, 8, ConstraintSet::without_divisibility(), Some(10)).map_err(err)?;
        let leaves = tree.leaves();
        let mut odd: Vec<Vec<BigUint>> = Vec::new();
        for l in &leaves {
            for (i, c) in l.ratios.iter().enumerate() {
                let n = i + 1;
                if n >= 2 && n % 2 == 0 && *c != BigUint::from(2u32) {
                    return Err(format!("C({n}) = {c} in {}", show(&l.ratios)));
                }
            }
            odd.push(l.ratios.iter().skip(2).step_by(2).cloned().collect());
        }
        odd.sort();
        let mut expected = Vec::new();
        for a in 2..=10u64 {
            for b in 2..=10u64 {
                for c in 2..=10u64 {
                    expected.push(nums(&[a, b, c]));
                }
            }
        }
        ensure(odd == expected, || format!("{} leaves", leaves.len()))?;
        let odd_valued = leaves.iter().filter(|l| l.annotations.contains(&Annotation::OddCoatomCount)).count();
        Ok(format!("{} leaves, {odd_valued} annotated with an odd coatom count", leaves.len()))
    });
    r.check("divisibility prunes odd coatom values", || {
        let mode = SearchMode::Sheffer(BRule::Butterfly);
        let tree = search_factorials(mode, 8, ConstraintSet::default(), Some(10)).map_err(err)?;
        let n = tree.leaves().len();
        ensure(n == 457, || format!("{n} leaves"))?;
        Ok(format!("{n} leaves, prunes {:?}", tree.prune_counts()))
    });
    r.check("doubled trees have paired coatoms", || {
        let trees = doubled_trees(7);
        for (e, p) in &trees {
            let prof = analyze_sheffer(p).map_err(|x| format!("e = {e:?}: {x}"))?;
            let n = prof.rank();
            ensure(prof.b() == &rules::butterfly_sequence(n)[..prof.b().len()], || format!("e = {e:?}: B = {}", show(prof.b())))?;
            let c = prof.coatoms();
            for (i, ci) in c.iter().enumerate().skip(2) {
                let k = i + 1;
                let want = if k % 2 == 0 { BigUint::from(2u32) } else { BigUint::from(2 * e[k - 2]) };
                ensure(*ci == want, || format!("e = {e:?}: C({k}) = {ci}"))?;
            }
            ensure(is_eulerian(p).map_err(err)?.eulerian, || format!("e = {e:?} is not Eulerian"))?;
            let pairs = coatom_pairing(p).map_err(err)?.map_err(|f| format!("e = {e:?}: {f:?}"))?;
            ensure(Some(&BigUint::from(2 * pairs.len())) == c.last(), || {
                format!("e = {e:?}: {} pairs", pairs.len())
            })?;
        }
        Ok(format!("{} doubled trees of rank 4..=7", trees.len()))
    });
    r.check("butterfly factorization reconstructs", || {
        let trees = doubled_trees(7);
        for (e, p) in &trees {
            let f = butterfly_factorization(p).map_err(|x| format!("e = {e:?}: {x}"))?;
            let rebuilt = butterfly_with_stem(f.rank).and_then(|s| s.rank_product(&f.quotient)).map_err(err)?;
            ensure(is_isomorphic(&rebuilt, p).is_some(), || format!("e = {e:?}: rebuilt poset differs"))?;
        }
        let stem = butterfly_with_stem(6).map_err(err)?;
        let f = butterfly_factorization(&stem).map_err(err)?;
        let levels = f.quotient.rank_data().map_err(err)?.level_sizes();
        ensure(levels.iter().all(|&s| s == 1), || format!("stem quotient levels {levels:?}"))?;
        Ok(format!("{} inputs; the butterfly with stem factors through a chain", trees.len()))
    });
}

fn dodecahedron_examples(r: &mut Runner) {
    let names = ["antiprism-cap-5", "x2-x3", "zw", "x2-x2-z"];
    let posets: Vec<Result<Poset, String>> = names
        .iter()
        .map(|name| {
            let k = named_complex(name).map_err(err)?;
            let f = k.f_vector();
            if f != [12, 30, 20] || k.euler_characteristic() != 2 || !k.is_closed_surface() {
                return Err(format!("{name}: f-vector {f:?}"));
            }
            dual_face_poset(&k).map_err(err)
        })
        .collect();
    for (name, p) in names.iter().zip(&posets) {
        r.check(&format!("{name}: Sheffer profile"), || {
            let p = p.as_ref().map_err(Clone::clone)?;
            let prof = analyze_sheffer(p).map_err(err)?;
            ensure(prof.b().starts_with(&nums(&[1, 1, 2, 6])), || format!("B = {}", show(prof.b())))?;
            ensure(prof.d() == &nums(&[1, 1, 2, 10, 120])[..], || format!("D = {}", show(prof.d())))?;
            let chains = p.full_interval().map_err(err)?.count_maximal_chains();
            ensure(chains == BigUint::from(120u32), || format!("{chains} maximal chains"))?;
            ensure(is_eulerian(p).map_err(err)?.eulerian, || "not Eulerian".into())?;
            Ok("B(3) = 6, D = (1, 2, 10, 120), Eulerian".into())
        });
    }
    for (name, p) in names.iter().zip(&posets).skip(1) {
        r.check(&format!("{name}: not the dodecahedron"), || {
            let first = posets[0].as_ref().map_err(Clone::clone)?;
            let p = p.as_ref().map_err(Clone::clone)?;
            ensure(is_isomorphic(first, p).is_none(), || "isomorphic to the dodecahedron".into())?;
            Ok("non-isomorphic".into())
        });
    }
}

/// `mu(0̂, y)` for every `y`, grouped by rank; `None` when a rank is not
/// uniform.
fn direct_mobius(p: &Poset) -> Result<Vec<BigInt>, String> {
    let (bottom, _) = p.require_bounded().map_err(err)?;
    let rd = p.rank_data().map_err(err)?;
    let mu = p.mobius_from(bottom);
    let mut out = Vec::new();
    for r in 0..=rd.max_rank() {
        let level = rd.level(r);
        let v = mu[level[0]].clone();
        ensure(level.iter().all(|&y| mu[y] == v), || format!("rank {r} has several Möbius values"))?;
        out.push(v);
    }
    Ok(out)
}

fn gf_identities(r: &mut Runner) {
    const ORDER: usize = 8;
    r.check("binomial series", || {
        for (name, b, p) in [
            ("n!", rules::factorial_sequence(ORDER), boolean_lattice(ORDER)),
            ("2^(n-1)", rules::butterfly_sequence(ORDER), butterfly(ORDER)),
        ] {
            let series = mobius_from_series(&b, ORDER).map_err(err)?;
            let direct = direct_mobius(&p)?;
            ensure(series == direct, || format!("{name}: series {series:?}, direct {direct:?}"))?;
        }
        Ok(format!("n! and 2^(n-1) to order {ORDER}"))
    });
    r.check("Sheffer series", || {
        let b = rules::factorial_sequence(ORDER);
        for (name, d, p) in [
            ("2(n-1)!", rules::sigma_star_sequence(ORDER), sigma_star_boolean(ORDER - 1)),
            ("cubical", rules::cubical_sequence(ORDER), cubical_lattice(ORDER - 1)),
        ] {
            let series = sheffer_mobius_from_series(&b, &d, ORDER).map_err(err)?;
            let direct = direct_mobius(&p)?;
            ensure(series == direct, || format!("{name}: series {series:?}, direct {direct:?}"))?;
        }
        Ok(format!("2(n-1)! and 2^(n-1)(n-1)! to order {ORDER}"))
    });
    r.check("non-Eulerian profile", || {
        let b: Vec<BigUint> = (0..=ORDER).map(|_| BigUint::one()).collect();
        let series = mobius_from_series(&b, ORDER).map_err(err)?;
        let direct = direct_mobius(&crate::constructions::chain(ORDER))?;
        ensure(series == direct, || format!("series {series:?}, direct {direct:?}"))?;
        Ok("chain: mu = (1, -1, 0, ...)".into())
    });
}

/// Partitions of `n` into parts of size at least 2.
fn partitions(n: usize, max: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in (2..=max.min(n)).rev() {
        for mut rest in partitions(n - p, p) {
            rest.insert(0, p);
            out.push(rest);
        }
    }
    out
}

fn structure(r: &mut Runner) {
    r.check("Eulerian families", || {
        let mut posets: Vec<(String, Poset)> = Vec::new();
        for n in 1..=7 {
            posets.push((format!("B_{n}"), boolean_lattice(n)));
            posets.push((format!("T_{n}"), butterfly(n)));
        }
        for k in 1..=4 {
            posets.push((format!("cubical {k}"), cubical_lattice(k)));
        }
        for n in 2..=6 {
            posets.push((format!("sigma-star B_{}", n - 1), sigma_star_boolean(n - 1)));
        }
        for total in 2..=8 {
            for qs in partitions(total, total) {
                posets.push((format!("glued {qs:?}"), glued_ngons(&qs).map_err(err)?));
            }
        }
        for (e, p) in doubled_trees(6) {
            posets.push((format!("doubled tree {e:?}"), p));
        }
        for (name, p) in &posets {
            let check = even_rank_eulerian_suffices(p).map_err(err)?;
            ensure(check.direct.eulerian && check.agrees(), || format!("{name}: {check:?}"))?;
        }
        Ok(format!("{} posets", posets.len()))
    });
    r.check("cubical counterexamples", || {
        let deformed = deformed_cubical(3).map_err(err)?;
        let product = boolean_lattice(2)
            .adjoin_min()
            .rank_product(&tree_interval(&[2, 2], 3).map_err(err)?)
            .map_err(err)?;
        let target = cubical_lattice(2);
        for (name, p) in [("deformed cubical", &deformed), ("rank product", &product)] {
            let v = verify_structure(p).map_err(err)?;
            let want = StructureVerdict::ProfileOnly { family: StructureFamily::Cubical, rank: 3, lattice: false };
            ensure(v == want, || format!("{name}: {v:?}"))?;
            ensure(is_isomorphic(p, &target).is_none(), || format!("{name} is the cubical lattice"))?;
        }
        ensure(is_isomorphic(&deformed, &product).is_some(), || "the two constructions differ".into())?;
        let v4 = verify_structure(&deformed_cubical(4).map_err(err)?).map_err(err)?;
        ensure(matches!(v4, StructureVerdict::ProfileOnly { .. }), || format!("rank 4: {v4:?}"))?;
        Ok("rank 3 and 4 deformed cubical posets are profile-only".into())
    });
    r.check("cubical lattices are identified", || {
        for k in 2..=3 {
            let p = cubical_lattice(k);
            ensure(p.is_lattice().map_err(err)?.is_ok(), || format!("cubical {k} is not a lattice"))?;
            identified(&p, StructureFamily::Cubical, k + 1)?;
        }
        Ok("ranks 3 and 4".into())
    });
    r.check("rank-3 binomial posets are glued polygons", || {
        let mut counts = Vec::new();
        for qn in [4, 5, 6] {
            let classes = enumerate_rank3_binomial(qn).map_err(err)?;
            let mut found: Vec<Vec<usize>> = classes.iter().map(|c| c.partition.clone()).collect();
            let mut want = partitions(qn, qn);
            found.sort();
            want.sort();
            ensure(found == want, || format!("q = {qn}: {found:?}"))?;
            counts.push(classes.len());
        }
        Ok(format!("q = 4, 5, 6: {counts:?}"))
    });
    r.check("glued copies of B_3", || {
        for k in 1..=4 {
            let p = boolean_lattice(3).glue_copies(k).map_err(err)?;
            ensure(is_eulerian(&p).map_err(err)?.eulerian, || format!("k = {k} is not Eulerian"))?;
            let b = analyze_binomial(&p).map_err(err)?;
            ensure(b.values() == &nums(&[1, 1, 2, 6 * k as u64])[..], || format!("k = {k}: B = {}", show(b.values())))?;
            let v = verify_structure(&p).map_err(err)?;
            let expected = if k == 1 {
                matches!(v, StructureVerdict::Isomorphic { family: StructureFamily::Boolean, rank: 3 })
            } else {
                matches!(v, StructureVerdict::NoClaim { .. })
            };
            ensure(expected, || format!("k = {k}: {v:?}"))?;
        }
        Ok("Eulerian with B(3) = 6k for k <= 4".into())
    });
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>(), Ok(s));
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn suites_pass() {
        for s in Suite::ALL {
            for c in s.run() {
                assert!(c.passed, "{s}: {c}");
            }
        }
    }
}
