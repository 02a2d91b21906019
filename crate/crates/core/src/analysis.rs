//! Frequency statistics, exhaustive enumeration of union-closed families
//! over small universes, the density census and the closure tree.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_rational::Ratio;
use serde::Serialize;

use crate::closure::{binomial, closure, closure_unchecked, density};
use crate::error::{Error, Result};
use crate::exec::{self, Exec};
use crate::family::SetFamily;
use crate::set::full_mask;

/// Which "half" the most frequent element has to reach.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Threshold {
    /// `count >= ⌊|F|/2⌋`.
    #[default]
    Floor,
    /// `2·count >= |F|`.
    Half,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FranklReport {
    /// Smallest element of maximum frequency.
    pub element: u32,
    pub count: u64,
    pub size: u64,
    pub threshold: Threshold,
    pub satisfied: bool,
}

/// Most frequent element of a union-closed family and whether it lies in
/// at least half of the members.
pub fn frankl_check(family: &SetFamily, threshold: Threshold) -> FranklReport {
    let stats = family.statistics();
    let count = stats.max_frequency();
    let size = stats.size;
    let satisfied = match threshold {
        Threshold::Floor => count >= size / 2,
        Threshold::Half => 2 * count >= size,
    };
    FranklReport { element: stats.max_frequency_element, count, size, threshold, satisfied }
}

/// Maximum element frequency over the family size.
pub fn g_value(family: &SetFamily) -> Ratio<u64> {
    let stats = family.statistics();
    Ratio::new(stats.max_frequency(), stats.size)
}

/// `g(F)` against `g(closure(F))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GProbe {
    pub family: Ratio<u64>,
    pub closure: Ratio<u64>,
    /// `g(F) >= g(closure(F))`.
    pub decreased: bool,
}

pub fn g_monotonicity_probe(family: &SetFamily) -> Result<GProbe> {
    family.require_union_closed()?;
    if family.is_power_set() {
        return Err(Error::PreconditionViolated("the power set is its own closure".into()));
    }
    let g = g_value(family);
    let gc = g_value(&closure(family)?);
    Ok(GProbe { family: g, closure: gc, decreased: g >= gc })
}

/// Full enumeration runs by default up to this universe.
pub const MAX_ENUMERATION_UNIVERSE: u32 = 4;
/// With the long-run flag, one more.
pub const MAX_LONG_RUN_UNIVERSE: u32 = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Enumeration {
    pub allow_long_run: bool,
    pub exec: Exec,
}

impl Default for Enumeration {
    fn default() -> Self {
        Enumeration { allow_long_run: false, exec: Exec::Parallel }
    }
}

fn enumeration_cap(opts: Enumeration) -> u32 {
    if opts.allow_long_run {
        MAX_LONG_RUN_UNIVERSE
    } else {
        MAX_ENUMERATION_UNIVERSE
    }
}

/// Every union-closed family over `[n]` (with `[n]`, without `∅`).
pub fn enumerate_union_closed(n: u32) -> Result<Vec<SetFamily>> {
    enumerate_union_closed_with(n, Enumeration::default())
}

/// Include/exclude search over the proper non-empty subsets in descending
/// size order. When a set is decided, every union with an already chosen
/// set is at least as large, so it has been decided too and a single
/// lookup settles closure. Order of the output is the include-first DFS
/// order and does not depend on `opts.exec`.
pub fn enumerate_union_closed_with(n: u32, opts: Enumeration) -> Result<Vec<SetFamily>> {
    let cap = enumeration_cap(opts);
    if n == 0 || n > cap {
        return Err(Error::UniverseTooLargeForEnumeration { n, max: cap });
    }
    let full = full_mask(n);
    let mut order: Vec<u32> = (1..full).collect();
    order.sort_by_key(|&m| (std::cmp::Reverse(m.count_ones()), std::cmp::Reverse(m)));
    let start = 1u64 << full;

    let split = order.len().min(6);
    let mut frontier = Vec::new();
    collect_frontier(&order, 0, split, start, &mut frontier);
    let parts = exec::map_slice(opts.exec, &frontier, |&chosen| {
        let mut out = Vec::new();
        extend(&order, split, chosen, &mut out);
        out
    });
    Ok(parts
        .into_iter()
        .flatten()
        .map(|chosen| {
            let members: Vec<u32> = (1..=full).filter(|&m| chosen >> m & 1 == 1).collect();
            SetFamily::from_sorted(n, members)
        })
        .collect())
}

fn can_include(chosen: u64, c: u32) -> bool {
    let mut rest = chosen;
    while rest != 0 {
        let s = rest.trailing_zeros();
        rest &= rest - 1;
        if chosen >> (s | c) & 1 == 0 {
            return false;
        }
    }
    true
}

fn collect_frontier(order: &[u32], i: usize, depth: usize, chosen: u64, out: &mut Vec<u64>) {
    if i == depth {
        out.push(chosen);
        return;
    }
    let c = order[i];
    if can_include(chosen, c) {
        collect_frontier(order, i + 1, depth, chosen | 1 << c, out);
    }
    collect_frontier(order, i + 1, depth, chosen, out);
}

fn extend(order: &[u32], i: usize, chosen: u64, out: &mut Vec<u64>) {
    if i == order.len() {
        out.push(chosen);
        return;
    }
    let c = order[i];
    if can_include(chosen, c) {
        extend(order, i + 1, chosen | 1 << c, out);
    }
    extend(order, i + 1, chosen, out);
}

/// Per-density counts over all union-closed families on `[n]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DensityCensus {
    pub n: u32,
    pub total: u64,
    pub labelled_counts: BTreeMap<u32, u64>,
    pub iso_counts: BTreeMap<u32, u64>,
    /// Families that are nobody's closure.
    pub leaf_counts: BTreeMap<u32, u64>,
    /// `C(n, k−1)·f_{k−1}` for `2 <= k <= n−1`, where `f_j` counts the
    /// union-closed families over `[j]`.
    pub lower_bounds: BTreeMap<u32, u64>,
}

pub fn density_census(n: u32) -> Result<DensityCensus> {
    density_census_with(n, Enumeration::default())
}

/// Builds the census and checks the lower bounds on the labelled counts.
pub fn density_census_with(n: u32, opts: Enumeration) -> Result<DensityCensus> {
    let tree = closure_tree_with(n, opts)?;
    let canon = exec::map_slice(opts.exec, &tree.nodes, |f| f.canonical_iso_form());
    let mut labelled_counts = BTreeMap::new();
    let mut leaf_counts = BTreeMap::new();
    let mut classes: BTreeMap<u32, BTreeSet<SetFamily>> = BTreeMap::new();
    let leaves: BTreeSet<usize> = tree.leaves.iter().copied().collect();
    for (i, c) in canon.into_iter().enumerate() {
        let k = tree.density[i];
        *labelled_counts.entry(k).or_insert(0) += 1;
        *leaf_counts.entry(k).or_insert(0) += u64::from(leaves.contains(&i));
        classes.entry(k).or_default().insert(c?);
    }
    let iso_counts = classes.into_iter().map(|(k, s)| (k, s.len() as u64)).collect();

    let mut lower_bounds = BTreeMap::new();
    for k in 2..n {
        let f = enumerate_union_closed_with(k - 1, opts)?.len() as u64;
        let bound = binomial(n, k - 1) * f;
        let count = labelled_counts.get(&k).copied().unwrap_or(0);
        if count < bound {
            return Err(Error::VerificationFailed(format!(
                "only {count} labelled {k}-dense families over [{n}], expected at least {bound}"
            )));
        }
        lower_bounds.insert(k, bound);
    }
    Ok(DensityCensus {
        n,
        total: tree.nodes.len() as u64,
        labelled_counts,
        iso_counts,
        leaf_counts,
        lower_bounds,
    })
}

/// Minimum of `g` over the `k`-dense families on `[n]`.
pub fn a_value(k: u32, n: u32) -> Result<Ratio<u64>> {
    a_table(n)?.remove(&k).ok_or(Error::NoFamilyWithDensity { k, n })
}

/// `k ↦ min g` over every density that occurs on `[n]`.
pub fn a_table(n: u32) -> Result<BTreeMap<u32, Ratio<u64>>> {
    let families = enumerate_union_closed(n)?;
    let densities = exec::map_slice(Exec::auto(families.len()), &families, |f| {
        (density(f).unwrap(), g_value(f))
    });
    let mut table: BTreeMap<u32, Ratio<u64>> = BTreeMap::new();
    for (k, g) in densities {
        table.entry(k).and_modify(|best| *best = (*best).min(g)).or_insert(g);
    }
    Ok(table)
}

/// Every union-closed family on `[n]` pointing at its closure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosureTree {
    pub n: u32,
    /// Labelled families in enumeration order; ids are indices.
    pub nodes: Vec<SetFamily>,
    pub parent: Vec<usize>,
    /// Distance to the root, which equals the density.
    pub density: Vec<u32>,
    pub root: usize,
    pub depth: u32,
    pub leaves: Vec<usize>,
}

impl ClosureTree {
    /// One `child_id parent_id` line per node, the root included.
    pub fn edge_list(&self) -> String {
        self.parent.iter().enumerate().map(|(c, p)| format!("{c} {p}\n")).collect()
    }

    /// Nodes whose parent is themselves.
    pub fn self_loops(&self) -> Vec<usize> {
        (0..self.nodes.len()).filter(|&i| self.parent[i] == i).collect()
    }
}

pub fn closure_tree(n: u32) -> Result<ClosureTree> {
    closure_tree_with(n, Enumeration::default())
}

pub fn closure_tree_with(n: u32, opts: Enumeration) -> Result<ClosureTree> {
    let nodes = enumerate_union_closed_with(n, opts)?;
    let index: HashMap<&SetFamily, usize> = nodes.iter().enumerate().map(|(i, f)| (f, i)).collect();
    let closures = exec::map_slice(opts.exec, &nodes, |f| closure_unchecked(f, Exec::Sequential));
    let parent: Vec<usize> = closures
        .iter()
        .map(|c| {
            index.get(c).copied().ok_or_else(|| {
                Error::VerificationFailed(format!("closure {c:?} is missing from the enumeration"))
            })
        })
        .collect::<Result<_>>()?;
    let root = index[&SetFamily::power_set(n)?];

    for (i, &p) in parent.iter().enumerate() {
        let strict = nodes[i].len() < nodes[p].len() && nodes[i].is_subfamily_of(&nodes[p]);
        if (p == i) != (i == root) || (i != root && !strict) {
            return Err(Error::VerificationFailed(format!(
                "node {i} has parent {p}, which is not a strict superfamily"
            )));
        }
    }

    // parents are strictly larger, so processing by size fills depths in order
    let mut by_size: Vec<usize> = (0..nodes.len()).collect();
    by_size.sort_by_key(|&i| std::cmp::Reverse(nodes[i].len()));
    let mut depth_of = vec![0u32; nodes.len()];
    for &i in &by_size {
        if i != root {
            depth_of[i] = depth_of[parent[i]] + 1;
        }
    }
    let depth = depth_of.iter().copied().max().unwrap_or(0);
    if depth > n.saturating_sub(1) {
        return Err(Error::VerificationFailed(format!("closure tree over [{n}] has depth {depth}")));
    }
    let mut has_child = vec![false; nodes.len()];
    for (i, &p) in parent.iter().enumerate() {
        if p != i {
            has_child[p] = true;
        }
    }
    let leaves = (0..nodes.len()).filter(|&i| !has_child[i]).collect();
    Ok(ClosureTree { n, nodes, parent, density: depth_of, root, depth, leaves })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{chain_family, cube_plus_universe};
    use crate::set::ElementSet;

    /// Generate-and-filter: every subset of the proper non-empty masks, plus `[n]`.
    fn brute_union_closed(n: u32) -> Vec<SetFamily> {
        let full = full_mask(n);
        let proper: Vec<u32> = (1..full).collect();
        (0u64..1 << proper.len())
            .map(|pick| {
                let mut v: Vec<u32> =
                    (0..proper.len()).filter(|&i| pick >> i & 1 == 1).map(|i| proper[i]).collect();
                v.push(full);
                SetFamily::new(n, v).unwrap()
            })
            .filter(|f| f.is_union_closed())
            .collect()
    }

    #[test]
    fn enumeration_matches_generate_and_filter() {
        for n in 1..=4 {
            let mut fast = enumerate_union_closed(n).unwrap();
            let mut slow = brute_union_closed(n);
            fast.sort();
            slow.sort();
            assert_eq!(fast, slow, "n={n}");
        }
    }

    #[test]
    fn enumeration_counts() {
        let counts: Vec<usize> = (1..=4).map(|n| enumerate_union_closed(n).unwrap().len()).collect();
        assert_eq!(counts[0], 1);
        assert_eq!(counts[1], 4);
        // frozen from the generate-and-filter oracle above
        assert_eq!(counts[2], 45);
        assert_eq!(counts[3], 2_271);
    }

    #[test]
    fn enumeration_order_is_independent_of_strategy() {
        let seq = Enumeration { allow_long_run: false, exec: Exec::Sequential };
        let par = Enumeration { allow_long_run: false, exec: Exec::Parallel };
        assert_eq!(
            enumerate_union_closed_with(4, seq).unwrap(),
            enumerate_union_closed_with(4, par).unwrap()
        );
    }

    #[test]
    fn enumeration_caps() {
        assert_eq!(
            enumerate_union_closed(5),
            Err(Error::UniverseTooLargeForEnumeration { n: 5, max: 4 })
        );
        let long = Enumeration { allow_long_run: true, exec: Exec::Parallel };
        assert!(matches!(
            enumerate_union_closed_with(6, long),
            Err(Error::UniverseTooLargeForEnumeration { n: 6, max: 5 })
        ));
    }

    #[test]
    fn frankl_examples() {
        let r = frankl_check(&chain_family(3).unwrap(), Threshold::Floor);
        assert_eq!((r.element, r.count, r.satisfied), (1, 3, true));
        let r = frankl_check(&SetFamily::power_set(3).unwrap(), Threshold::Floor);
        assert_eq!((r.count, r.satisfied), (4, true));
        for n in 1..=4 {
            for f in enumerate_union_closed(n).unwrap() {
                assert!(frankl_check(&f, Threshold::Floor).satisfied);
                assert!(frankl_check(&f, Threshold::Half).satisfied);
            }
        }
    }

    #[test]
    fn g_values() {
        for n in 1..=6 {
            assert_eq!(g_value(&chain_family(n).unwrap()), Ratio::from_integer(1));
            let p = SetFamily::power_set(n).unwrap();
            assert_eq!(g_value(&p), Ratio::new(1 << (n - 1), (1 << n) - 1));
        }
    }

    #[test]
    fn g_probe_examples() {
        let probe = g_monotonicity_probe(&cube_plus_universe(6).unwrap()).unwrap();
        assert!(probe.family < probe.closure);
        assert!(!probe.decreased);
        let up = SetFamily::new(3, [1u32, 3, 5, 7]).unwrap();
        assert_eq!(g_monotonicity_probe(&up).unwrap().closure, Ratio::new(4, 7));
        assert!(g_monotonicity_probe(&SetFamily::power_set(3).unwrap()).is_err());
    }

    #[test]
    fn census_small() {
        let c = density_census(2).unwrap();
        assert_eq!(c.labelled_counts, BTreeMap::from([(0, 1), (1, 3)]));
        assert_eq!(c.iso_counts, BTreeMap::from([(0, 1), (1, 2)]));
        let c3 = density_census(3).unwrap();
        assert!(c3.labelled_counts[&2] >= 3);
        assert_eq!(c3.labelled_counts.values().sum::<u64>(), c3.total);
        let c4 = density_census(4).unwrap();
        assert!(c4.labelled_counts[&3] >= 24);
        assert_eq!(c4.lower_bounds[&3], 24);
    }

    #[test]
    fn a_values() {
        for n in 1..=4 {
            let a0 = a_value(0, n).unwrap();
            assert_eq!(a0, Ratio::new(1 << (n - 1), (1 << n) - 1));
            assert!(a0 >= Ratio::new(1, 2));
        }
        // proper up-sets over [2]: {[2]}, {{1},[2]}, {{2},[2]}
        assert_eq!(a_value(1, 2).unwrap(), Ratio::from_integer(1));
        assert_eq!(a_value(2, 2), Err(Error::NoFamilyWithDensity { k: 2, n: 2 }));
    }

    #[test]
    fn closure_tree_shape() {
        let t = closure_tree(2).unwrap();
        assert_eq!(t.nodes.len(), 4);
        assert_eq!(t.depth, 1);
        assert_eq!(t.self_loops(), vec![t.root]);
        for n in 1..=4 {
            let t = closure_tree(n).unwrap();
            assert_eq!(t.depth, n - 1);
            assert_eq!(t.self_loops(), vec![t.root]);
            assert_eq!(t.edge_list().lines().count(), t.nodes.len());
            for (i, f) in t.nodes.iter().enumerate() {
                assert_eq!(t.density[i], density(f).unwrap());
                // a family without every (n−1)-set cannot be a closure
                let all_large = (0..n).all(|e| f.contains(ElementSet::full(n).without(e + 1)));
                if n >= 2 && !all_large {
                    assert!(t.leaves.contains(&i));
                }
            }
        }
    }
}
