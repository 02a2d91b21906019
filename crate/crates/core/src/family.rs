//! Canonical families of non-empty subsets of `[n]` that contain `[n]`.

use std::fmt;
use std::hash::{Hash, Hasher};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::set::{full_mask, ElementSet, MAX_UNIVERSE};

/// Membership goes through a `2^n`-bit table up to this universe size and
/// binary search above it.
pub const MAX_TABLE_UNIVERSE: u32 = 20;

/// Largest universe for which `2^n` masks may be materialized.
pub const MAX_MATERIALIZED_UNIVERSE: u32 = 24;

/// A family of non-empty subsets of `[n]` containing `[n]`, stored as a
/// strictly ascending list of masks.
///
/// Values are immutable once built. Two families are equal iff they have the
/// same universe and the same members.
#[derive(Clone)]
pub struct SetFamily {
    n: u32,
    members: Vec<u32>,
    table: Option<Vec<u64>>,
}

impl SetFamily {
    /// Validates and canonicalizes. Duplicates are dropped and members sorted;
    /// the empty set, a missing universe or an oversized mask are rejected.
    pub fn new<I>(n: u32, sets: I) -> Result<SetFamily>
    where
        I: IntoIterator,
        I::Item: Into<ElementSet>,
    {
        check_universe(n)?;
        let full = full_mask(n);
        let mut members = Vec::new();
        for s in sets {
            let m = s.into().mask();
            if m == 0 {
                return Err(Error::EmptySetPresent);
            }
            if m & !full != 0 {
                return Err(Error::MaskOutOfRange { mask: m, n });
            }
            members.push(m);
        }
        members.sort_unstable();
        members.dedup();
        if members.last() != Some(&full) {
            return Err(Error::UniverseMissing { n });
        }
        Ok(SetFamily::from_sorted(n, members))
    }

    /// Builds from masks already known to be sorted, distinct, non-empty and
    /// to include the universe.
    pub(crate) fn from_sorted(n: u32, members: Vec<u32>) -> SetFamily {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        debug_assert_eq!(members.last(), Some(&full_mask(n)));
        debug_assert!(members.first().is_some_and(|&m| m != 0));
        let table = (n <= MAX_TABLE_UNIVERSE).then(|| {
            let mut t = vec![0u64; (1usize << n).div_ceil(64)];
            for &m in &members {
                t[m as usize / 64] |= 1 << (m % 64);
            }
            t
        });
        SetFamily { n, members, table }
    }

    /// All `2^n - 1` non-empty subsets of `[n]`.
    pub fn power_set(n: u32) -> Result<SetFamily> {
        check_universe(n)?;
        if n > MAX_MATERIALIZED_UNIVERSE {
            return Err(Error::UniverseTooLarge { n, max: MAX_MATERIALIZED_UNIVERSE });
        }
        Ok(SetFamily::from_sorted(n, (1..=full_mask(n)).collect()))
    }

    pub fn universe(&self) -> u32 {
        self.n
    }

    pub fn full(&self) -> ElementSet {
        ElementSet::full(self.n)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    /// Never true: `[n]` is always a member.
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn masks(&self) -> &[u32] {
        &self.members
    }

    pub fn members(&self) -> impl ExactSizeIterator<Item = ElementSet> + '_ {
        self.members.iter().map(|&m| ElementSet::from_mask(m))
    }

    #[inline]
    pub fn contains_mask(&self, mask: u32) -> bool {
        match &self.table {
            Some(t) => {
                let i = mask as usize;
                i / 64 < t.len() && t[i / 64] >> (i % 64) & 1 == 1
            }
            None => self.members.binary_search(&mask).is_ok(),
        }
    }

    #[inline]
    pub fn contains(&self, set: ElementSet) -> bool {
        self.contains_mask(set.mask())
    }

    /// Index of a member in canonical order.
    pub fn index_of(&self, set: ElementSet) -> Option<usize> {
        self.members.binary_search(&set.mask()).ok()
    }

    pub fn is_power_set(&self) -> bool {
        self.n < 32 && self.members.len() as u64 == (1u64 << self.n) - 1
    }

    /// Every member of `self` is a member of `other` (same universe).
    pub fn is_subfamily_of(&self, other: &SetFamily) -> bool {
        self.n == other.n && self.members.iter().all(|&m| other.contains_mask(m))
    }

    /// True iff every pairwise union of members is a member.
    pub fn is_union_closed(&self) -> bool {
        self.union_violation().is_none()
    }

    /// First pair of members (in canonical order) whose union is missing.
    pub fn union_violation(&self) -> Option<(ElementSet, ElementSet)> {
        let ms = &self.members;
        for (i, &a) in ms.iter().enumerate() {
            for &b in &ms[i + 1..] {
                let u = a | b;
                if u != a && u != b && !self.contains_mask(u) {
                    return Some((a.into(), b.into()));
                }
            }
        }
        None
    }

    /// Errors with [`Error::NotUnionClosed`] naming the offending pair.
    pub fn require_union_closed(&self) -> Result<()> {
        match self.union_violation() {
            None => Ok(()),
            Some((a, b)) => Err(Error::NotUnionClosed { a: a.to_vec(), b: b.to_vec() }),
        }
    }

    /// Closed under supersets. One-element extensions suffice by induction.
    pub fn is_up_set(&self) -> bool {
        let full = full_mask(self.n);
        self.members.iter().all(|&a| {
            let mut missing = full & !a;
            while missing != 0 {
                let bit = missing & missing.wrapping_neg();
                if !self.contains_mask(a | bit) {
                    return false;
                }
                missing &= missing - 1;
            }
            true
        })
    }

    /// Members of size exactly `k`.
    pub fn count_of_size(&self, k: u32) -> usize {
        self.members.iter().filter(|m| m.count_ones() == k).count()
    }

    /// Per-element membership counts.
    pub fn statistics(&self) -> FamilyStatistics {
        let mut frequencies = vec![0u64; self.n as usize];
        for &m in &self.members {
            let mut r = m;
            while r != 0 {
                frequencies[r.trailing_zeros() as usize] += 1;
                r &= r - 1;
            }
        }
        // first element attaining the maximum
        let (best, _) = frequencies
            .iter()
            .enumerate()
            .fold((0usize, 0u64), |(bi, bv), (i, &v)| if v > bv { (i, v) } else { (bi, bv) });
        FamilyStatistics {
            size: self.members.len() as u64,
            frequencies,
            max_frequency_element: best as u32 + 1,
        }
    }

    /// Lexicographically least member list over all `n!` relabelings.
    pub fn canonical_iso_form(&self) -> Result<SetFamily> {
        crate::iso::canonical_form(self)
    }

    /// Re-embeds the same members in a larger universe, adding `[n]`.
    pub(crate) fn lift_masks(&self, n: u32) -> Vec<u32> {
        let mut v = self.members.clone();
        v.push(full_mask(n));
        v.sort_unstable();
        v.dedup();
        v
    }
}

fn check_universe(n: u32) -> Result<()> {
    if (1..=MAX_UNIVERSE).contains(&n) {
        Ok(())
    } else {
        Err(Error::UniverseOutOfRange { n, max: MAX_UNIVERSE })
    }
}

/// Errors unless `n <= max`.
pub(crate) fn require_universe_at_most(n: u32, max: u32) -> Result<()> {
    if n > max {
        Err(Error::UniverseTooLarge { n, max })
    } else {
        Ok(())
    }
}

impl PartialEq for SetFamily {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.members == other.members
    }
}

impl Eq for SetFamily {}

impl Hash for SetFamily {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.members.hash(state);
    }
}

impl PartialOrd for SetFamily {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SetFamily {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.n, &self.members).cmp(&(other.n, &other.members))
    }
}

impl fmt::Debug for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SetFamily[{}]", self.n)?;
        f.debug_set().entries(self.members()).finish()
    }
}

impl Serialize for SetFamily {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let sets: Vec<Vec<u32>> = self.members().map(ElementSet::to_vec).collect();
        let mut st = s.serialize_struct("SetFamily", 3)?;
        st.serialize_field("universe", &self.n)?;
        st.serialize_field("size", &self.members.len())?;
        st.serialize_field("members", &sets)?;
        st.end()
    }
}

/// Element frequencies `d_F(x)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyStatistics {
    pub size: u64,
    /// `frequencies[x - 1]` members contain element `x`.
    pub frequencies: Vec<u64>,
    /// Smallest element attaining the maximum frequency, 1-based.
    pub max_frequency_element: u32,
}

impl FamilyStatistics {
    pub fn frequency(&self, element: u32) -> u64 {
        self.frequencies[element as usize - 1]
    }

    pub fn max_frequency(&self) -> u64 {
        self.frequency(self.max_frequency_element)
    }
}
