//! Brute-force ground truth: exhaustive tallies over `T_n` and end-to-end
//! verification of every closed form and bijection at desk scale.
//!
//! Failures carry full witnesses (serialized tree, mark, parameters);
//! combinatorial bugs are only debuggable from witnesses.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::fmt::Write as _;
use core::time::Duration;

use num_bigint::BigUint;

use crate::classes::{self, classify, Class, NotInClass};
use crate::counts::{self, CountTable, Statistic};
use crate::phi_map::{phi_map, phi_map_inv, PathSet};
use crate::tree::{enumerate_trees, MarkedTree};

/// Telescoping identities are formula-only and cheap; they are always
/// checked up to this bound regardless of the tally bound.
const TELESCOPE_MAX: u32 = 30;

/// One failed check with its witness.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Failure {
    pub check: String,
    pub witness: String,
    pub expected: String,
    pub actual: String,
}

/// Outcome of one verification suite.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VerificationReport {
    pub suite: String,
    /// What was checked, spelled out.
    pub scope: String,
    /// Number of individual comparisons performed.
    pub checks: u64,
    /// Sorted before emission; empty on a passing run.
    pub failures: Vec<Failure>,
    /// Wall time, when the caller measured it. Never part of the rendered
    /// report, so rendered output stays byte-identical across runs.
    pub elapsed: Option<Duration>,
}

impl VerificationReport {
    fn new(suite: &str, scope: String) -> Self {
        VerificationReport {
            suite: String::from(suite),
            scope,
            checks: 0,
            failures: Vec::new(),
            elapsed: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn fail(&mut self, check: &str, witness: String, expected: String, actual: String) {
        self.failures.push(Failure { check: String::from(check), witness, expected, actual });
    }

    fn check_eq<T: PartialEq + fmt::Display>(
        &mut self,
        check: &str,
        witness: &str,
        expected: T,
        actual: T,
    ) {
        self.checks += 1;
        if expected != actual {
            self.fail(check, String::from(witness), expected.to_string(), actual.to_string());
        }
    }

    fn finish(mut self) -> Self {
        self.failures.sort();
        self
    }

    /// Deterministic human-readable rendering.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "suite: {}", self.suite);
        let _ = writeln!(out, "scope: {}", self.scope);
        let _ = writeln!(out, "checks: {}", self.checks);
        let _ = writeln!(out, "failures: {}", self.failures.len());
        for f in &self.failures {
            let _ = writeln!(
                out,
                "  [{}] witness: {} | expected: {} | actual: {}",
                f.check, f.witness, f.expected, f.actual
            );
        }
        let _ = writeln!(out, "result: {}", if self.passed() { "PASS" } else { "FAIL" });
        out
    }
}

/// Exhaustive tally of every statistic over all trees with `n` edges.
pub fn tally(n: u32) -> CountTable {
    assert!(n >= 1, "tally requires n >= 1");
    let mut table = CountTable::new(n);
    for tree in enumerate_trees(n) {
        for st in tree.all_stats() {
            table.add(Statistic::DegreeLevel, Some(st.degree), Some(st.level), 1);
            table.add(Statistic::OutdegLevel, Some(st.outdegree), Some(st.level), 1);
            if st.is_leaf {
                table.add(Statistic::Leaves, None, None, 1);
                table.add(Statistic::ClassC, Some(st.elder_siblings + 1), Some(st.level), 1);
            } else {
                table.add(Statistic::NonLeaves, None, None, 1);
                table.add(Statistic::ClassD, Some(st.outdegree), Some(st.level + 1), 1);
            }
            if st.is_first_child {
                table.add(Statistic::FirstChildren, None, None, 1);
                table.add(Statistic::ClassA, Some(st.degree), Some(st.level), 1);
            } else {
                table.add(Statistic::NonFirstChildren, None, None, 1);
                table.add(Statistic::ClassB, Some(st.degree), Some(st.level + 1), 1);
            }
        }
    }
    table
}

/// Compares every tally against every closed form for `1 <= n <= n_max`,
/// and checks the two telescoping identities in exact arithmetic.
pub fn verify_counts(n_max: u32) -> VerificationReport {
    assert!(n_max >= 1);
    let mut report = VerificationReport::new(
        "counts",
        format!(
            "tallies vs closed forms for 1 <= n <= {n_max}, all feasible (k, l); \
             telescoping identities for 1 <= k, l <= n <= {TELESCOPE_MAX}"
        ),
    );
    for n in 1..=n_max {
        compare_counts(&tally(n), &mut report);
    }
    for n in 1..=TELESCOPE_MAX {
        compare_telescoping(n, &mut report);
    }
    report.finish()
}

/// All count comparisons for one tally table. Split out so the harness can
/// be self-tested against a corrupted table.
fn compare_counts(table: &CountTable, report: &mut VerificationReport) {
    let n = table.n();

    // Half-of-all-vertices counts for the four unrefined vertex sets.
    let half = counts::half_vertices(n);
    for stat in [
        Statistic::Leaves,
        Statistic::NonLeaves,
        Statistic::FirstChildren,
        Statistic::NonFirstChildren,
    ] {
        report.check_eq(
            &format!("half_vertices.{}", stat.name()),
            &format!("n={n}"),
            half.clone(),
            table.scalar(stat),
        );
    }

    // The four classes share the (k + 2l - 2)/(2n - k) * C(2n-k, n+l-1) count.
    for k in 1..=n {
        for l in 1..=n {
            let expected = counts::count_class(n, k, l);
            for class in Class::ALL {
                report.check_eq(
                    &format!("class_count.{}", Statistic::for_class(class).name()),
                    &format!("n={n} k={k} l={l}"),
                    expected.clone(),
                    table.class(class, k, l),
                );
            }
        }
    }

    // Cumulative counts: outdegree >= k at level >= l is C(2n-k, n+l).
    for k in 0..=n {
        for l in 0..=n {
            report.check_eq(
                "cumulative_count",
                &format!("n={n} k={k} l={l}"),
                counts::count_cumulative(n, k, l),
                table.cumulative_outdeg_level(k, l),
            );
        }
    }

    // Exact outdegree at exact level: sieve, closed form, and oracle agree.
    for k in 0..=n {
        for l in 0..=n {
            let witness = format!("n={n} k={k} l={l}");
            let sieve = counts::count_outdeg_level(n, k, l);
            report.check_eq(
                "outdeg_level.sieve_vs_closed",
                &witness,
                sieve.clone(),
                counts::count_outdeg_level_closed(n, k, l),
            );
            report.check_eq("outdeg_level.oracle", &witness, sieve, table.outdeg_level(k, l));
        }
    }

    // Level summed out, degree summed out, factor two, and level parity.
    for k in 1..=n {
        let witness = format!("n={n} k={k}");
        let expected = counts::count_by_degree(n, k);
        for class in Class::ALL {
            let sum: BigUint = (1..=n).map(|l| table.class(class, k, l)).sum();
            report.check_eq(
                &format!("by_degree.{}", Statistic::for_class(class).name()),
                &witness,
                expected.clone(),
                sum,
            );
        }

        let degree_total: BigUint = (0..=n).map(|l| table.degree_level(k, l)).sum();
        let outdegree_total: BigUint = (0..=n).map(|l| table.outdeg_level(k, l)).sum();
        report.check_eq(
            "degree_is_twice_outdegree",
            &witness,
            degree_total.clone(),
            outdegree_total * 2u32,
        );

        let odd: BigUint = (0..=n).filter(|l| l % 2 == 1).map(|l| table.degree_level(k, l)).sum();
        let even: BigUint = (0..=n).filter(|l| l % 2 == 0).map(|l| table.degree_level(k, l)).sum();
        report.check_eq("degree_level_parity", &witness, odd, even);
    }
    for l in 1..=n {
        let expected = counts::count_by_level(n, l);
        for class in Class::ALL {
            let sum: BigUint = (1..=n).map(|k| table.class(class, k, l)).sum();
            report.check_eq(
                &format!("by_level.{}", Statistic::for_class(class).name()),
                &format!("n={n} l={l}"),
                expected.clone(),
                sum,
            );
        }
    }
}

fn compare_telescoping(n: u32, report: &mut VerificationReport) {
    use num_traits::CheckedSub;
    let big_n = i64::from(n);
    for k in 1..=n {
        for l in 1..=n {
            let witness = format!("n={n} k={k} l={l}");
            let class = counts::count_class(n, k, l);
            let diff_a = counts::binomial(2 * big_n - i64::from(k) - 1, big_n + i64::from(l) - 2)
                .checked_sub(&counts::binomial(2 * big_n - i64::from(k) - 1, big_n + i64::from(l) - 1))
                .expect("left binomial dominates");
            report.check_eq("telescoping.degree_step", &witness, class.clone(), diff_a);
            let diff_b = counts::count_outdeg_level_closed(n, k - 1, l)
                .checked_sub(&counts::count_outdeg_level_closed(n, k, l))
                .expect("left term dominates");
            report.check_eq("telescoping.level_step", &witness, class, diff_b);
        }
    }
}

/// Checks all three class surgeries for `1 <= n <= n_max` and every
/// feasible `(k, l)`: totality on the class, class preservation, edge
/// preservation, round trips both ways, injectivity, and image-set
/// equality with the target class.
pub fn verify_bijections(n_max: u32) -> VerificationReport {
    assert!(n_max >= 1);
    let mut report = VerificationReport::new(
        "bijections",
        format!("1 <= n <= {n_max}, all feasible (k, l), surgeries A<->D, B<->D, C<->D"),
    );
    for n in 1..=n_max {
        let mut groups: BTreeMap<(u32, u32), [Vec<MarkedTree>; 4]> = BTreeMap::new();
        for tree in enumerate_trees(n) {
            let stats = tree.all_stats();
            for (v, st) in stats.iter().enumerate() {
                let marked = MarkedTree::new(tree.clone(), v).expect("index from enumeration");
                if st.is_first_child {
                    groups.entry((st.degree, st.level)).or_default()[0].push(marked.clone());
                } else {
                    groups.entry((st.degree, st.level + 1)).or_default()[1].push(marked.clone());
                }
                if st.is_leaf {
                    groups.entry((st.elder_siblings + 1, st.level)).or_default()[2].push(marked);
                } else {
                    groups.entry((st.outdegree, st.level + 1)).or_default()[3].push(marked);
                }
            }
        }
        for (&params, [a, b, c, d]) in &groups {
            check_bijection(&mut report, params, Class::A, a, d, classes::map_a_to_d, classes::map_d_to_a);
            check_bijection(&mut report, params, Class::B, b, d, classes::map_b_to_d, classes::map_d_to_b);
            check_bijection(&mut report, params, Class::C, c, d, classes::map_c_to_d, classes::map_d_to_c);
        }
    }
    report.finish()
}

fn check_bijection<F, G>(
    report: &mut VerificationReport,
    (k, l): (u32, u32),
    from: Class,
    from_members: &[MarkedTree],
    to_members: &[MarkedTree],
    forward: F,
    inverse: G,
) where
    F: Fn(&MarkedTree, u32, u32) -> Result<MarkedTree, NotInClass>,
    G: Fn(&MarkedTree, u32, u32) -> Result<MarkedTree, NotInClass>,
{
    let name = |suffix: &str| format!("bijection.{}_to_D.{}", from.name(), suffix);
    let witness = |m: &MarkedTree| format!("k={k} l={l} {m}");

    let mut images: Vec<String> = Vec::with_capacity(from_members.len());
    for m in from_members {
        report.checks += 1;
        let image = match forward(m, k, l) {
            Ok(image) => image,
            Err(e) => {
                report.fail(&name("total"), witness(m), String::from("an image in D"), e.to_string());
                continue;
            }
        };
        if !classify(&image, k, l).contains(Class::D) {
            report.fail(
                &name("class_preserved"),
                witness(m),
                String::from("image in class D"),
                image.to_string(),
            );
        }
        if image.tree().edge_count() != m.tree().edge_count() {
            report.fail(
                &name("edges_preserved"),
                witness(m),
                m.tree().edge_count().to_string(),
                image.tree().edge_count().to_string(),
            );
        }
        match inverse(&image, k, l) {
            Ok(back) if back == *m => {}
            Ok(back) => report.fail(&name("round_trip"), witness(m), m.to_string(), back.to_string()),
            Err(e) => report.fail(&name("round_trip"), witness(m), m.to_string(), e.to_string()),
        }
        images.push(image.to_string());
    }

    images.sort_unstable();
    report.checks += 1;
    if let Some(pair) = images.windows(2).find(|w| w[0] == w[1]) {
        report.fail(
            &name("injective"),
            format!("k={k} l={l}"),
            String::from("distinct images"),
            format!("duplicate image {}", pair[0]),
        );
    }

    let mut target: Vec<String> = to_members.iter().map(ToString::to_string).collect();
    target.sort_unstable();
    report.checks += 1;
    if images != target {
        let at = images.iter().zip(&target).position(|(i, t)| i != t).unwrap_or(target.len().min(images.len()));
        report.fail(
            &name("image_equals_class"),
            format!("k={k} l={l} (sorted position {at})"),
            format!("{} members, [{}]", target.len(), target.get(at).map(String::as_str).unwrap_or("-")),
            format!("{} images, [{}]", images.len(), images.get(at).map(String::as_str).unwrap_or("-")),
        );
    }

    // The inverse is total on D and lands back in the source class.
    for m in to_members {
        report.checks += 1;
        match inverse(m, k, l) {
            Ok(pre) => {
                if !classify(&pre, k, l).contains(from) {
                    report.fail(
                        &name("inverse_class"),
                        witness(m),
                        format!("preimage in class {from}"),
                        pre.to_string(),
                    );
                }
            }
            Err(e) => {
                report.fail(&name("inverse_total"), witness(m), String::from("a preimage"), e.to_string());
            }
        }
    }
}

/// Checks the marked-vertex-to-lattice-path map for `1 <= n <= n_max` and
/// all `0 <= k, l <= n`: the images are distinct members of the path set,
/// the image size matches `C(2n - k, n + l)`, and the inverse restores
/// every marked tree.
pub fn verify_phi(n_max: u32) -> VerificationReport {
    assert!(n_max >= 1);
    let mut report = VerificationReport::new(
        "phi",
        format!("1 <= n <= {n_max}, all 0 <= k, l <= n, forward and inverse"),
    );
    for n in 1..=n_max {
        let trees: Vec<_> = enumerate_trees(n)
            .map(|tree| {
                let stats = tree.all_stats();
                (tree, stats)
            })
            .collect();
        for k in 0..=n {
            for l in 0..=n {
                let set = PathSet::new(n, k, l);
                let mut images: Vec<String> = Vec::new();
                for (tree, stats) in &trees {
                    for (v, st) in stats.iter().enumerate() {
                        if st.outdegree < k || st.level < l {
                            continue;
                        }
                        let marked = MarkedTree::new(tree.clone(), v).expect("valid index");
                        let witness = format!("n={n} k={k} l={l} {marked}");
                        report.checks += 1;
                        let path = match phi_map(&marked, k, l) {
                            Ok(path) => path,
                            Err(e) => {
                                report.fail("phi.total", witness, String::from("a path"), e.to_string());
                                continue;
                            }
                        };
                        if let Err(reason) = set.check(&path) {
                            report.fail("phi.in_set", witness.clone(), String::from("membership"), reason);
                        }
                        match phi_map_inv(&path, n, k, l) {
                            Ok(back) if back == marked => {}
                            Ok(back) => report.fail("phi.round_trip", witness, marked.to_string(), back.to_string()),
                            Err(e) => report.fail("phi.round_trip", witness, marked.to_string(), e.to_string()),
                        }
                        images.push(path.to_string());
                    }
                }
                images.sort_unstable();
                report.checks += 1;
                if let Some(pair) = images.windows(2).find(|w| w[0] == w[1]) {
                    report.fail(
                        "phi.injective",
                        format!("n={n} k={k} l={l}"),
                        String::from("distinct images"),
                        format!("duplicate image {}", pair[0]),
                    );
                }
                report.check_eq(
                    "phi.image_size",
                    &format!("n={n} k={k} l={l}"),
                    set.size(),
                    BigUint::from(images.len()),
                );
            }
        }
    }
    report.finish()
}
