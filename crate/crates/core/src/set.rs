use std::fmt;

use serde::{Deserialize, Serialize};

/// Largest universe a single-word mask can represent.
pub const MAX_UNIVERSE: u32 = 32;

/// A subset of `[n]`: element `i` is present iff bit `i - 1` is set.
///
/// The universe size is not stored; callers pair sets with a [`SetFamily`]
/// or an explicit `n`.
///
/// [`SetFamily`]: crate::SetFamily
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ElementSet(u32);

impl ElementSet {
    pub const EMPTY: ElementSet = ElementSet(0);

    pub const fn from_mask(mask: u32) -> Self {
        ElementSet(mask)
    }

    pub const fn mask(self) -> u32 {
        self.0
    }

    /// The full universe `[n]`.
    pub const fn full(n: u32) -> Self {
        ElementSet(full_mask(n))
    }

    /// The prefix `[k] = {1, ..., k}`; `prefix(0)` is empty.
    pub const fn prefix(k: u32) -> Self {
        ElementSet(full_mask(k))
    }

    /// Builds a set from 1-based element labels. Labels must lie in `1..=32`.
    pub fn from_elements<I: IntoIterator<Item = u32>>(elements: I) -> Self {
        let mut mask = 0u32;
        for e in elements {
            assert!((1..=MAX_UNIVERSE).contains(&e), "element {e} out of range");
            mask |= 1 << (e - 1);
        }
        ElementSet(mask)
    }

    pub const fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub const fn contains(self, element: u32) -> bool {
        element >= 1 && element <= MAX_UNIVERSE && self.0 & (1 << (element - 1)) != 0
    }

    pub const fn is_subset_of(self, other: ElementSet) -> bool {
        self.0 & other.0 == self.0
    }

    pub const fn is_strict_subset_of(self, other: ElementSet) -> bool {
        self.is_subset_of(other) && self.0 != other.0
    }

    pub const fn union(self, other: ElementSet) -> ElementSet {
        ElementSet(self.0 | other.0)
    }

    pub const fn intersection(self, other: ElementSet) -> ElementSet {
        ElementSet(self.0 & other.0)
    }

    pub const fn difference(self, other: ElementSet) -> ElementSet {
        ElementSet(self.0 & !other.0)
    }

    pub fn with(self, element: u32) -> ElementSet {
        self.union(ElementSet::from_elements([element]))
    }

    pub fn without(self, element: u32) -> ElementSet {
        self.difference(ElementSet::from_elements([element]))
    }

    /// Smallest element, 1-based.
    pub const fn min_element(self) -> Option<u32> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() + 1)
        }
    }

    /// Largest element, 1-based.
    pub const fn max_element(self) -> Option<u32> {
        if self.0 == 0 {
            None
        } else {
            Some(32 - self.0.leading_zeros())
        }
    }

    /// Elements in ascending order, 1-based.
    pub fn elements(self) -> Elements {
        Elements(self.0)
    }

    pub fn to_vec(self) -> Vec<u32> {
        self.elements().collect()
    }

    /// Applies a relabeling given as `perm[i] = image of element i + 1`, 0-based.
    pub fn relabel(self, perm: &[u32]) -> ElementSet {
        let mut out = 0u32;
        let mut m = self.0;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            out |= 1 << perm[i];
            m &= m - 1;
        }
        ElementSet(out)
    }
}

pub(crate) const fn full_mask(n: u32) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// Iterator over the 1-based elements of an [`ElementSet`].
#[derive(Clone, Debug)]
pub struct Elements(u32);

impl Iterator for Elements {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(i + 1)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for Elements {}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.elements()).finish()
    }
}

impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.elements().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl From<u32> for ElementSet {
    fn from(mask: u32) -> Self {
        ElementSet(mask)
    }
}

/// All sets of size `k` inside `[n]`, ascending by mask (Gosper's hack).
pub fn subsets_of_size(n: u32, k: u32) -> impl Iterator<Item = ElementSet> {
    let limit: u64 = 1u64 << n;
    let mut next: Option<u64> = if k > n {
        None
    } else {
        Some((1u64 << k) - 1)
    };
    std::iter::from_fn(move || {
        let cur = next?;
        if cur >= limit {
            next = None;
            return None;
        }
        next = if cur == 0 {
            None
        } else {
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            Some((((r ^ cur) >> 2) / c) | r)
        };
        Some(ElementSet(cur as u32))
    })
}
