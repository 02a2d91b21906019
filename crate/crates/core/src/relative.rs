//! Relative subsets, relative generation and closure roots.
//!
//! For members `A, B` of a union-closed `F`, `A ⊆_F B` holds when `A = B`,
//! when `B = [n]`, or when some member `C ≠ B` has `A ∪ C = B`. It implies
//! `A ⊆ B` but is in general neither ordinary inclusion nor transitive.
//!
//! A closure root of `F` is a union-closed `H` with `closure(H) = F`. For a
//! 1-dense `F` with inclusion-minimal members `G`, a root exists iff
//! `closure(⟨G⟩_F) = F`, and then `⟨G⟩_F` is one.

use serde::Serialize;

use crate::closure::{closure, MAX_CLOSURE_UNIVERSE};
use crate::error::{Error, Result};
use crate::family::{require_universe_at_most, SetFamily};
use crate::set::{full_mask, ElementSet};

/// `A ⊆_F B`, computed fresh from the definition.
pub fn is_relative_subset(family: &SetFamily, a: ElementSet, b: ElementSet) -> Result<bool> {
    for s in [a, b] {
        if !family.contains(s) {
            return Err(Error::NotAMember { set: s.to_vec() });
        }
    }
    Ok(relative_subset_unchecked(family, a.mask(), b.mask()))
}

fn relative_subset_unchecked(family: &SetFamily, a: u32, b: u32) -> bool {
    if a == b || b == full_mask(family.universe()) {
        return true;
    }
    if a & b != a {
        return false;
    }
    family.masks().iter().any(|&c| c != b && c & b == c && a | c == b)
}

/// The full `|F| x |F|` relation matrix of `⊆_F`, rows indexed by the
/// canonical member order.
#[derive(Debug, Clone)]
pub struct RelativeOrder {
    size: usize,
    words: usize,
    bits: Vec<u64>,
}

impl RelativeOrder {
    pub fn new(family: &SetFamily) -> RelativeOrder {
        let ms = family.masks();
        let size = ms.len();
        let words = size.div_ceil(64);
        let mut bits = vec![0u64; size * words];
        let full = full_mask(family.universe());
        for (j, &b) in ms.iter().enumerate() {
            let below: Vec<(usize, u32)> =
                ms.iter().copied().enumerate().filter(|&(_, x)| x & b == x).collect();
            for &(i, a) in &below {
                let rel = i == j
                    || b == full
                    || below.iter().any(|&(k, c)| k != j && a | c == b);
                if rel {
                    bits[i * words + j / 64] |= 1 << (j % 64);
                }
            }
        }
        RelativeOrder { size, words, bits }
    }

    /// Member count of the underlying family.
    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    /// `member(i) ⊆_F member(j)`.
    #[inline]
    pub fn holds(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    /// Indices `j` with `member(i) ⊆_F member(j)`.
    pub fn successors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.size).filter(move |&j| self.holds(i, j))
    }
}

/// Outcome of the exhaustive transitivity scan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransitivityReport {
    pub transitive: bool,
    /// First `(A, B, C)` in canonical order with `A ⊆_F B ⊆_F C` but not `A ⊆_F C`.
    pub counterexample: Option<(ElementSet, ElementSet, ElementSet)>,
}

pub fn is_relative_transitive(family: &SetFamily) -> Result<TransitivityReport> {
    family.require_union_closed()?;
    let rel = RelativeOrder::new(family);
    let ms = family.masks();
    for i in 0..ms.len() {
        for j in rel.successors(i) {
            for k in rel.successors(j) {
                if !rel.holds(i, k) {
                    return Ok(TransitivityReport {
                        transitive: false,
                        counterexample: Some((ms[i].into(), ms[j].into(), ms[k].into())),
                    });
                }
            }
        }
    }
    Ok(TransitivityReport { transitive: true, counterexample: None })
}

/// Inclusion-wise minimal members, ascending.
pub fn minimal_members(family: &SetFamily) -> Vec<ElementSet> {
    let ms = family.masks();
    ms.iter()
        .filter(|&&a| !ms.iter().any(|&b| b != a && b & a == b))
        .map(|&a| a.into())
        .collect()
}

/// All subsets of `[n]` containing some generator.
pub fn up_set_generated(generators: &[ElementSet], n: u32) -> Result<SetFamily> {
    require_universe_at_most(n, MAX_CLOSURE_UNIVERSE)?;
    if generators.is_empty() {
        return Err(Error::EmptyGeneratorList);
    }
    let full = full_mask(n);
    for g in generators {
        if g.is_empty() {
            return Err(Error::EmptySetPresent);
        }
        if g.mask() & !full != 0 {
            return Err(Error::MaskOutOfRange { mask: g.mask(), n });
        }
    }
    let masks: Vec<u32> =
        (1..=full).filter(|&x| generators.iter().any(|g| g.mask() & x == g.mask())).collect();
    Ok(SetFamily::from_sorted(n, masks))
}

/// `⟨K⟩_F`: members `B` with `A ⊆_F B` for some `A ∈ K`.
pub fn relative_generated(family: &SetFamily, generators: &[ElementSet]) -> Result<SetFamily> {
    family.require_union_closed()?;
    if generators.is_empty() {
        return Err(Error::EmptyGeneratorList);
    }
    let mut idx = Vec::with_capacity(generators.len());
    for g in generators {
        match family.index_of(*g) {
            Some(i) => idx.push(i),
            None => return Err(Error::GeneratorNotMember { set: g.to_vec() }),
        }
    }
    let rel = RelativeOrder::new(family);
    Ok(relative_generated_with(family, &rel, &idx))
}

fn relative_generated_with(family: &SetFamily, rel: &RelativeOrder, idx: &[usize]) -> SetFamily {
    let ms = family.masks();
    let masks: Vec<u32> = (0..ms.len())
        .filter(|&j| idx.iter().any(|&i| rel.holds(i, j)))
        .map(|j| ms[j])
        .collect();
    // [n] is always reached through the universe clause
    SetFamily::from_sorted(family.universe(), masks)
}

/// Members `A` of `sub` such that any `B ∈ sub` with `B ⊆_F A` equals `A`.
pub fn relative_minimal_members(family: &SetFamily, sub: &SetFamily) -> Result<Vec<ElementSet>> {
    require_subfamily(family, sub)?;
    let rel = RelativeOrder::new(family);
    let idx: Vec<usize> = sub.members().map(|s| family.index_of(s).unwrap()).collect();
    Ok(idx
        .iter()
        .filter(|&&a| !idx.iter().any(|&b| b != a && rel.holds(b, a)))
        .map(|&a| family.masks()[a].into())
        .collect())
}

fn require_subfamily(family: &SetFamily, sub: &SetFamily) -> Result<()> {
    if family.universe() != sub.universe() {
        return Err(Error::UniverseMismatch { left: family.universe(), right: sub.universe() });
    }
    match sub.members().find(|&s| !family.contains(s)) {
        Some(s) => Err(Error::NotSubfamily { set: s.to_vec() }),
        None => Ok(()),
    }
}

/// Whether `closure(sub) ⊇ family`, decided both by computing the closure
/// and by the relative-subset criterion (every `B ∈ F` relatively above a
/// member of `sub` lies in `sub`). The two must agree.
pub fn covers_under_closure(family: &SetFamily, sub: &SetFamily) -> Result<bool> {
    require_subfamily(family, sub)?;
    family.require_union_closed()?;
    let direct = family.is_subfamily_of(&closure(sub)?);
    let rel = RelativeOrder::new(family);
    let criterion = cover_criterion(family, &rel, sub);
    if direct != criterion {
        return Err(Error::CriterionMismatch { direct, criterion });
    }
    Ok(direct)
}

pub(crate) fn cover_criterion(family: &SetFamily, rel: &RelativeOrder, sub: &SetFamily) -> bool {
    let ms = family.masks();
    sub.members().all(|a| {
        let i = family.index_of(a).unwrap();
        rel.successors(i).all(|j| sub.contains_mask(ms[j]))
    })
}

/// Verdict of the closure-root test for a 1-dense family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootCertificate {
    pub input: SetFamily,
    /// Inclusion-wise minimal members `G`.
    pub generating_set: Vec<ElementSet>,
    /// `⟨G⟩_F`.
    pub relative_generated: SetFamily,
    pub closure_of_generated: SetFamily,
    pub has_root: bool,
    /// `⟨G⟩_F` itself when it is a root.
    pub witness_root: Option<SetFamily>,
}

fn require_one_dense(family: &SetFamily) -> Result<()> {
    if family.is_power_set() || !family.is_up_set() {
        return Err(Error::NotOneDense);
    }
    Ok(())
}

pub fn has_closure_root(family: &SetFamily) -> Result<RootCertificate> {
    require_universe_at_most(family.universe(), MAX_CLOSURE_UNIVERSE)?;
    require_one_dense(family)?;
    let generating_set = minimal_members(family);
    let generated = relative_generated(family, &generating_set)?;
    let closed = closure(&generated)?;
    let has_root = closed == *family;
    Ok(RootCertificate {
        input: family.clone(),
        generating_set,
        witness_root: has_root.then(|| generated.clone()),
        relative_generated: generated,
        closure_of_generated: closed,
        has_root,
    })
}

/// For 1-dense `F` and union-closed `H ⊆ F` with `closure(H) ⊇ F`: reports
/// whether `closure(H) ⊇ closure(⟨G⟩_F)`.
pub fn closure_dominates_generated(family: &SetFamily, sub: &SetFamily) -> Result<bool> {
    require_universe_at_most(family.universe(), MAX_CLOSURE_UNIVERSE)?;
    require_one_dense(family)?;
    require_subfamily(family, sub)?;
    let sub_closure = closure(sub)?;
    if !family.is_subfamily_of(&sub_closure) {
        return Err(Error::PreconditionViolated(
            "closure of the subfamily does not contain the family".into(),
        ));
    }
    let generated = relative_generated(family, &minimal_members(family))?;
    Ok(closure(&generated)?.is_subfamily_of(&sub_closure))
}

pub const DEFAULT_ROOT_MEMBER_CAP: usize = 22;

/// Options for [`brute_force_closure_roots`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RootSearch {
    /// Families with more members are refused.
    pub member_cap: usize,
    /// Stop at the first root found.
    pub existence_only: bool,
    /// Also prune with the relative-subset cover criterion. Off by default so
    /// the search depends on nothing but union-closedness and the closure.
    pub relative_pruning: bool,
}

impl Default for RootSearch {
    fn default() -> Self {
        RootSearch {
            member_cap: DEFAULT_ROOT_MEMBER_CAP,
            existence_only: false,
            relative_pruning: false,
        }
    }
}

/// Every union-closed `H ⊆ F` with `closure(H) = F`, by exhaustive
/// subfamily search. Members are decided largest first with inclusion tried
/// before exclusion, so larger subfamilies come out earlier.
pub fn brute_force_closure_roots(family: &SetFamily, opts: RootSearch) -> Result<Vec<SetFamily>> {
    require_universe_at_most(family.universe(), MAX_CLOSURE_UNIVERSE)?;
    family.require_union_closed()?;
    if family.len() > opts.member_cap {
        return Err(Error::FamilyTooLarge { size: family.len(), cap: opts.member_cap });
    }
    let search = Search::new(family, opts);
    Ok(search.run())
}

struct Search<'a> {
    family: &'a SetFamily,
    /// canonical indices, decreasing size
    order: Vec<usize>,
    /// strict relative supersets, canonical indices (only with pruning)
    above: Vec<Vec<usize>>,
    opts: RootSearch,
}

/// Number of leading decisions fanned out across threads.
const SPLIT_DEPTH: usize = 6;

impl<'a> Search<'a> {
    fn new(family: &'a SetFamily, opts: RootSearch) -> Self {
        let ms = family.masks();
        let mut order: Vec<usize> = (0..ms.len()).collect();
        order.sort_by_key(|&i| (std::cmp::Reverse(ms[i].count_ones()), std::cmp::Reverse(ms[i])));
        let above = if opts.relative_pruning {
            let rel = RelativeOrder::new(family);
            (0..ms.len()).map(|i| rel.successors(i).filter(|&j| j != i).collect()).collect()
        } else {
            Vec::new()
        };
        Search { family, order, above, opts }
    }

    fn run(&self) -> Vec<SetFamily> {
        let size = self.family.len();
        let mut base = vec![false; size];
        // [n] comes first in the order and is always kept
        base[self.order[0]] = true;
        let depth = SPLIT_DEPTH.min(self.order.len() - 1);
        let prefixes: Vec<u32> = (0..1u32 << depth).collect();

        let explore = |&p: &u32| -> Option<Vec<SetFamily>> {
            let mut included = base.clone();
            for d in 0..depth {
                let include = p >> (depth - 1 - d) & 1 == 0;
                let idx = self.order[1 + d];
                if include {
                    if !self.can_include(&included, idx) {
                        return None;
                    }
                    included[idx] = true;
                }
            }
            let mut out = Vec::new();
            self.dfs(1 + depth, &mut included, &mut out);
            (!out.is_empty()).then_some(out)
        };

        #[cfg(feature = "parallel")]
        {
            use rayon::prelude::*;
            if self.opts.existence_only {
                return prefixes.par_iter().find_map_first(explore).unwrap_or_default();
            }
            prefixes.par_iter().filter_map(explore).flatten().collect()
        }
        #[cfg(not(feature = "parallel"))]
        {
            if self.opts.existence_only {
                return prefixes.iter().find_map(explore).unwrap_or_default();
            }
            prefixes.iter().filter_map(explore).flatten().collect()
        }
    }

    fn can_include(&self, included: &[bool], idx: usize) -> bool {
        let ms = self.family.masks();
        let a = ms[idx];
        // every union with an already chosen member was decided earlier
        let union_ok = included.iter().enumerate().filter(|&(_, &on)| on).all(|(j, _)| {
            let u = a | ms[j];
            u == a || included[self.family.index_of(u.into()).unwrap()]
        });
        union_ok && (!self.opts.relative_pruning || self.above[idx].iter().all(|&j| included[j]))
    }

    /// Returns true when the search should stop.
    fn dfs(&self, pos: usize, included: &mut Vec<bool>, out: &mut Vec<SetFamily>) -> bool {
        if pos == self.order.len() {
            let ms = self.family.masks();
            let masks: Vec<u32> =
                (0..ms.len()).filter(|&i| included[i]).map(|i| ms[i]).collect();
            let h = SetFamily::from_sorted(self.family.universe(), masks);
            let c = crate::closure::closure_unchecked(&h, crate::exec::Exec::Sequential);
            if c == *self.family {
                out.push(h);
                return self.opts.existence_only;
            }
            return false;
        }
        let idx = self.order[pos];
        if self.can_include(included, idx) {
            included[idx] = true;
            let stop = self.dfs(pos + 1, included, out);
            included[idx] = false;
            if stop {
                return true;
            }
        }
        self.dfs(pos + 1, included, out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(e: &[u32]) -> ElementSet {
        ElementSet::from_elements(e.iter().copied())
    }

    fn fam(n: u32, sets: &[&[u32]]) -> SetFamily {
        SetFamily::new(n, sets.iter().map(|s| set(s))).unwrap()
    }

    #[test]
    fn relative_subset_differs_from_inclusion() {
        let f = fam(3, &[&[1], &[1, 2], &[2, 3], &[1, 2, 3]]);
        assert!(!is_relative_subset(&f, set(&[1]), set(&[1, 2])).unwrap());
        assert!(is_relative_subset(&f, set(&[1, 2]), set(&[1, 2])).unwrap());
        assert!(is_relative_subset(&f, set(&[1]), set(&[1, 2, 3])).unwrap());
        assert_eq!(
            is_relative_subset(&f, set(&[2]), set(&[1, 2])),
            Err(Error::NotAMember { set: vec![2] })
        );
    }

    #[test]
    fn matrix_matches_fresh_queries() {
        let f = fam(4, &[&[1], &[2], &[1, 2], &[1, 3], &[1, 2, 3], &[1, 2, 3, 4]]);
        let rel = RelativeOrder::new(&f);
        for (i, a) in f.members().enumerate() {
            for (j, b) in f.members().enumerate() {
                assert_eq!(rel.holds(i, j), is_relative_subset(&f, a, b).unwrap());
            }
        }
    }

    #[test]
    fn transitivity_counterexample_triple() {
        let f = fam(4, &[&[1], &[2], &[1, 2], &[1, 3], &[1, 2, 3], &[1, 2, 3, 4]]);
        let r = is_relative_transitive(&f).unwrap();
        assert!(!r.transitive);
        assert_eq!(r.counterexample, Some((set(&[1]), set(&[1, 2]), set(&[1, 2, 3]))));
        assert!(is_relative_transitive(&SetFamily::power_set(3).unwrap()).unwrap().transitive);
    }

    #[test]
    fn minimal_members_examples() {
        let up = fam(3, &[&[1], &[1, 2], &[1, 3], &[1, 2, 3]]);
        assert_eq!(minimal_members(&up), vec![set(&[1])]);
        assert_eq!(
            minimal_members(&SetFamily::power_set(3).unwrap()),
            vec![set(&[1]), set(&[2]), set(&[3])]
        );
    }

    #[test]
    fn up_set_generated_examples() {
        assert_eq!(
            up_set_generated(&[set(&[1])], 3).unwrap(),
            fam(3, &[&[1], &[1, 2], &[1, 3], &[1, 2, 3]])
        );
        assert_eq!(up_set_generated(&[], 3), Err(Error::EmptyGeneratorList));
        let n = 5;
        let big: Vec<ElementSet> = crate::set::subsets_of_size(n, n - 1).collect();
        let f = up_set_generated(&big, n).unwrap();
        assert!(f.members().all(|s| s.len() >= n - 1));
        assert_eq!(f.len(), 6);
    }

    #[test]
    fn relative_generated_of_prefix() {
        // F = up-set of [2] over [5]; ⟨{[2]}⟩_F = {[2], [5]}
        let f = up_set_generated(&[ElementSet::prefix(2)], 5).unwrap();
        let g = relative_generated(&f, &[ElementSet::prefix(2)]).unwrap();
        assert_eq!(g, SetFamily::new(5, [ElementSet::prefix(2), ElementSet::full(5)]).unwrap());
        let top = relative_generated(&f, &[ElementSet::full(5)]).unwrap();
        assert_eq!(top.len(), 1);
        assert_eq!(
            relative_generated(&f, &[set(&[3])]),
            Err(Error::GeneratorNotMember { set: vec![3] })
        );
    }

    #[test]
    fn relative_minimal_examples() {
        let p = SetFamily::power_set(3).unwrap();
        assert_eq!(relative_minimal_members(&p, &p).unwrap().len(), 3);
        let f = up_set_generated(&[ElementSet::prefix(2)], 5).unwrap();
        let h = SetFamily::new(5, [ElementSet::prefix(2), ElementSet::full(5)]).unwrap();
        assert_eq!(relative_minimal_members(&f, &h).unwrap(), vec![ElementSet::prefix(2)]);
        let top = SetFamily::new(5, [ElementSet::full(5)]).unwrap();
        assert_eq!(relative_minimal_members(&f, &top).unwrap(), vec![ElementSet::full(5)]);
        let outside = SetFamily::new(5, [set(&[1]), ElementSet::full(5)]).unwrap();
        assert!(matches!(relative_minimal_members(&f, &outside), Err(Error::NotSubfamily { .. })));
    }

    #[test]
    fn covers_examples() {
        let up = fam(3, &[&[1], &[1, 2], &[1, 3], &[1, 2, 3]]);
        assert!(covers_under_closure(&up, &up).unwrap());
        assert!(covers_under_closure(&SetFamily::power_set(3).unwrap(), &up).unwrap());
        // closure({{1},[3]}) = {{1},{1,2},{1,3},{2,3},[3]} ⊇ up
        let h = fam(3, &[&[1], &[1, 2, 3]]);
        assert_eq!(
            closure(&h).unwrap(),
            fam(3, &[&[1], &[1, 2], &[1, 3], &[2, 3], &[1, 2, 3]])
        );
        assert!(covers_under_closure(&up, &h).unwrap());
        // closure({[n]}) is the whole power set
        let top = fam(3, &[&[1, 2, 3]]);
        assert!(covers_under_closure(&up, &top).unwrap());
        let chain = fam(3, &[&[1], &[1, 2], &[1, 2, 3]]);
        assert!(!covers_under_closure(&SetFamily::power_set(3).unwrap(), &chain).unwrap());
    }

    #[test]
    fn root_test_requires_one_dense() {
        let chain = fam(3, &[&[1], &[1, 2], &[1, 2, 3]]);
        assert_eq!(has_closure_root(&chain), Err(Error::NotOneDense));
        assert_eq!(has_closure_root(&SetFamily::power_set(3).unwrap()), Err(Error::NotOneDense));
    }

    #[test]
    fn brute_force_over_two_elements() {
        // every H ⊆ 2^[2] with closure(H) = 2^[2], checked against all 4 subfamilies
        let p = SetFamily::power_set(2).unwrap();
        let roots = brute_force_closure_roots(&p, RootSearch::default()).unwrap();
        let mut expected = Vec::new();
        for bits in 0u32..4 {
            let mut v = vec![3u32];
            if bits & 1 != 0 {
                v.push(1);
            }
            if bits & 2 != 0 {
                v.push(2);
            }
            let h = SetFamily::new(2, v).unwrap();
            if h.is_union_closed() && closure(&h).unwrap() == p {
                expected.push(h);
            }
        }
        let mut got = roots.clone();
        got.sort();
        expected.sort();
        assert_eq!(got, expected);
        // {[2]}, both principal up-sets, and 2^[2] itself
        assert_eq!(got.len(), 4);
    }

    #[test]
    fn brute_force_respects_cap() {
        let p = SetFamily::power_set(5).unwrap();
        assert_eq!(
            brute_force_closure_roots(&p, RootSearch::default()),
            Err(Error::FamilyTooLarge { size: 31, cap: 22 })
        );
    }
}
