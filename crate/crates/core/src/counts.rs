//! Exact-arithmetic evaluators for the closed-form vertex counts.
//!
//! Every formula is integral but its factors are not; rational prefactors
//! are handled by multiply-then-divide with an asserted zero remainder.
//! Nothing here touches floating point.

use alloc::collections::BTreeMap;
use alloc::string::String;
use core::fmt;
use core::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::{CheckedSub, One, Zero};

use crate::classes::Class;

/// Exact binomial coefficient `C(a, b)`; zero whenever `b < 0` or `b > a`.
pub fn binomial(a: i64, b: i64) -> BigUint {
    if b < 0 || b > a {
        return BigUint::zero();
    }
    let b = b.min(a - b);
    let mut result = BigUint::one();
    for i in 0..b {
        // Exact at every step: the running product of j consecutive
        // integers is divisible by j!.
        result = result * BigUint::from((a - i) as u64) / BigUint::from((i + 1) as u64);
    }
    result
}

/// `n`-th Catalan number `C(2n, n) / (n + 1)`, the size of `T_n`.
pub fn catalan(n: u32) -> BigUint {
    exact_div(binomial(2 * i64::from(n), i64::from(n)), u64::from(n) + 1)
}

/// Half of the vertices among all trees of `T_n`: `C(2n, n) / 2`. This is
/// the common size of the leaf, non-leaf, first-child, and non-first-child
/// vertex sets.
pub fn half_vertices(n: u32) -> BigUint {
    assert!(n >= 1, "half_vertices requires n >= 1");
    exact_div(binomial(2 * i64::from(n), i64::from(n)), 2)
}

/// Common size of the four vertex classes for `(n, k, l)`, each counted
/// among all trees of `T_n`:
///
/// ```text
/// ((k + 2l - 2) / (2n - k)) * C(2n - k, n + l - 1)
/// ```
pub fn count_class(n: u32, k: u32, l: u32) -> BigUint {
    assert!(n >= 1 && k >= 1 && l >= 1, "count_class requires n, k, l >= 1");
    let (n, k, l) = (i64::from(n), i64::from(k), i64::from(l));
    scaled_binomial(k + 2 * l - 2, 2 * n - k, 2 * n - k, n + l - 1)
}

/// Number of vertices of outdegree at least `k` at level at least `l`
/// among all trees of `T_n`: `C(2n - k, n + l)`.
pub fn count_cumulative(n: u32, k: u32, l: u32) -> BigUint {
    assert!(n >= 1, "count_cumulative requires n >= 1");
    let (n, k, l) = (i64::from(n), i64::from(k), i64::from(l));
    binomial(2 * n - k, n + l)
}

/// Number of vertices of outdegree exactly `k` at level exactly `l`,
/// evaluated by inclusion-exclusion over the cumulative counts.
pub fn count_outdeg_level(n: u32, k: u32, l: u32) -> BigUint {
    assert!(n >= 1, "count_outdeg_level requires n >= 1");
    let (n, k, l) = (i64::from(n), i64::from(k), i64::from(l));
    let cumulative = |k: i64, l: i64| binomial(2 * n - k, n + l);
    let keep = cumulative(k, l) + cumulative(k + 1, l + 1);
    let drop = cumulative(k + 1, l) + cumulative(k, l + 1);
    keep.checked_sub(&drop).expect("cumulative counts are monotone in k and l")
}

/// Closed form for [`count_outdeg_level`]:
/// `((k + 2l) / (2n - k)) * C(2n - k, n + l)`.
pub fn count_outdeg_level_closed(n: u32, k: u32, l: u32) -> BigUint {
    assert!(n >= 1, "count_outdeg_level_closed requires n >= 1");
    let (n, k, l) = (i64::from(n), i64::from(k), i64::from(l));
    scaled_binomial(k + 2 * l, 2 * n - k, 2 * n - k, n + l)
}

/// Number of vertices in each of the four classes with the level summed
/// out (first-children of degree `k`, non-leaves of outdegree `k`, ...):
/// `C(2n - k - 1, n - 1)`.
pub fn count_by_degree(n: u32, k: u32) -> BigUint {
    assert!(n >= 1 && k >= 1, "count_by_degree requires n, k >= 1");
    let (n, k) = (i64::from(n), i64::from(k));
    binomial(2 * n - k - 1, n - 1)
}

/// Number of vertices in each of the four classes with the degree summed
/// out (leaves at level `l`, non-leaves at level `l - 1`, ...):
/// `(l / n) * C(2n, n + l)`.
pub fn count_by_level(n: u32, l: u32) -> BigUint {
    assert!(n >= 1 && l >= 1, "count_by_level requires n, l >= 1");
    let (n, l) = (i64::from(n), i64::from(l));
    scaled_binomial(l, n, 2 * n, n + l)
}

/// `(factor / divisor) * C(a, b)` with the division performed last and
/// checked exact. Returns zero without dividing when the product is zero.
fn scaled_binomial(factor: i64, divisor: i64, a: i64, b: i64) -> BigUint {
    debug_assert!(factor >= 0);
    let product = binomial(a, b) * BigUint::from(factor as u64);
    if product.is_zero() {
        return product;
    }
    // A nonzero binomial forces 0 <= b <= a, hence divisor = a > 0 at
    // every call site.
    exact_div(product, divisor as u64)
}

fn exact_div(numerator: BigUint, divisor: u64) -> BigUint {
    let divisor = BigUint::from(divisor);
    assert!(
        (&numerator % &divisor).is_zero(),
        "divisibility failure: {numerator} is not a multiple of {divisor}"
    );
    numerator / divisor
}

/// One statistic tallied over all trees of a fixed `T_n`.
///
/// The first six are keyed by `(k, l)` parameters; the rest are scalar.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Statistic {
    /// First-children of degree `k` at level `l`.
    ClassA,
    /// Non-first-children of degree `k` at level `l - 1`.
    ClassB,
    /// Leaves with exactly `k - 1` elder siblings at level `l`.
    ClassC,
    /// Non-leaves of outdegree `k` at level `l - 1`.
    ClassD,
    /// Vertices of outdegree `k` at level `l`.
    OutdegLevel,
    /// Vertices of degree `k` at level `l`.
    DegreeLevel,
    Leaves,
    NonLeaves,
    FirstChildren,
    NonFirstChildren,
}

impl Statistic {
    pub fn name(self) -> &'static str {
        match self {
            Statistic::ClassA => "class_a",
            Statistic::ClassB => "class_b",
            Statistic::ClassC => "class_c",
            Statistic::ClassD => "class_d",
            Statistic::OutdegLevel => "outdeg_level",
            Statistic::DegreeLevel => "degree_level",
            Statistic::Leaves => "leaves",
            Statistic::NonLeaves => "non_leaves",
            Statistic::FirstChildren => "first_children",
            Statistic::NonFirstChildren => "non_first_children",
        }
    }

    pub fn for_class(class: Class) -> Statistic {
        match class {
            Class::A => Statistic::ClassA,
            Class::B => Statistic::ClassB,
            Class::C => Statistic::ClassC,
            Class::D => Statistic::ClassD,
        }
    }
}

impl fmt::Display for Statistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exact counts keyed by `(statistic, k, l)` for one edge count `n`.
/// Missing entries read as zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CountTable {
    n: u32,
    entries: BTreeMap<(Statistic, Option<u32>, Option<u32>), BigUint>,
}

impl CountTable {
    pub fn new(n: u32) -> Self {
        CountTable { n, entries: BTreeMap::new() }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn add(&mut self, stat: Statistic, k: Option<u32>, l: Option<u32>, amount: u64) {
        let slot = self.entries.entry((stat, k, l)).or_insert_with(BigUint::zero);
        *slot += amount;
    }

    pub fn get(&self, stat: Statistic, k: Option<u32>, l: Option<u32>) -> BigUint {
        self.entries.get(&(stat, k, l)).cloned().unwrap_or_else(BigUint::zero)
    }

    pub fn class(&self, class: Class, k: u32, l: u32) -> BigUint {
        self.get(Statistic::for_class(class), Some(k), Some(l))
    }

    pub fn outdeg_level(&self, k: u32, l: u32) -> BigUint {
        self.get(Statistic::OutdegLevel, Some(k), Some(l))
    }

    pub fn degree_level(&self, k: u32, l: u32) -> BigUint {
        self.get(Statistic::DegreeLevel, Some(k), Some(l))
    }

    pub fn scalar(&self, stat: Statistic) -> BigUint {
        self.get(stat, None, None)
    }

    /// Number of vertices of outdegree at least `k` at level at least `l`,
    /// summed from the exact tallies.
    pub fn cumulative_outdeg_level(&self, k: u32, l: u32) -> BigUint {
        let mut sum = BigUint::zero();
        for ((stat, ek, el), count) in &self.entries {
            if *stat == Statistic::OutdegLevel
                && ek.is_some_and(|v| v >= k)
                && el.is_some_and(|v| v >= l)
            {
                sum += count;
            }
        }
        sum
    }

    /// Entries in deterministic order (statistic, then `k`, then `l`).
    pub fn entries(&self) -> impl Iterator<Item = (Statistic, Option<u32>, Option<u32>, &BigUint)> {
        self.entries.iter().map(|(&(stat, k, l), count)| (stat, k, l, count))
    }

    /// CSV export with header `n,k,l,statistic,count`. Byte-identical
    /// across runs for a fixed table.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,k,l,statistic,count\n");
        for (stat, k, l, count) in self.entries() {
            let _ = write!(out, "{},", self.n);
            match k {
                Some(k) => {
                    let _ = write!(out, "{k},");
                }
                None => out.push(','),
            }
            match l {
                Some(l) => {
                    let _ = write!(out, "{l},");
                }
                None => out.push(','),
            }
            let _ = writeln!(out, "{},{}", stat.name(), count);
        }
        out
    }
}
