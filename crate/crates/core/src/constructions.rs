//! Named families with known density.
//!
//! Each constructor returns a plain [`SetFamily`]. [`Construction::build`]
//! additionally attaches the expected density and `s(F)` so callers can
//! check them generically.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::{SetFamily, MAX_TABLE_UNIVERSE};
use crate::relative::up_set_generated;
use crate::set::{full_mask, ElementSet, MAX_UNIVERSE};

fn check_n(n: u32, min: u32) -> Result<()> {
    if n < min {
        return Err(Error::UniverseTooSmall { n, min });
    }
    if n > MAX_UNIVERSE {
        return Err(Error::UniverseOutOfRange { n, max: MAX_UNIVERSE });
    }
    Ok(())
}

/// `{[1], [2], …, [n]}`.
pub fn chain_family(n: u32) -> Result<SetFamily> {
    check_n(n, 1)?;
    Ok(SetFamily::from_sorted(n, (1..=n).map(full_mask).collect()))
}

/// `F ∪ {[n]}` for `F` union-closed over `[k]` and `n >= k + 2`.
pub fn lifted_family(base: &SetFamily, n: u32) -> Result<SetFamily> {
    base.require_union_closed()?;
    let k = base.universe();
    check_n(n, k + 2)?;
    Ok(SetFamily::from_sorted(n, base.lift_masks(n)))
}

/// Each element of `A` has a neighbour `i - 1` or `i + 1` in `A`.
pub fn is_path_member(set: ElementSet) -> bool {
    let m = set.mask();
    m != 0 && m & !((m << 1) | (m >> 1)) == 0
}

/// All non-empty `A ⊆ [n]` in which every element has a neighbour, i.e.
/// unions of the adjacent pairs `{i, i+1}`.
pub fn path_family(n: u32) -> Result<SetFamily> {
    check_n(n, 2)?;
    if n > MAX_TABLE_UNIVERSE {
        return Err(Error::UniverseTooLarge { n, max: MAX_TABLE_UNIVERSE });
    }
    let masks = (1..=full_mask(n)).filter(|&m| is_path_member(m.into())).collect();
    Ok(SetFamily::from_sorted(n, masks))
}

/// The adjacent pairs `{1,2}, …, {n−1,n}`.
pub fn path_generators(n: u32) -> Vec<ElementSet> {
    (1..n).map(|i| ElementSet::from_elements([i, i + 1])).collect()
}

/// The up-set generated by the adjacent pairs of `[n]`.
pub fn path_up_set(n: u32) -> Result<SetFamily> {
    check_n(n, 2)?;
    up_set_generated(&path_generators(n), n)
}

/// `{[n−2], [n] ∖ {3}, [n] ∖ {2}, [n] ∖ {1}, [n]}`: density `n − 1` but
/// `s(F) = 1`, so the chain bound is far from tight.
pub fn loose_bound_family(n: u32) -> Result<SetFamily> {
    check_n(n, 5)?;
    let full = ElementSet::full(n);
    SetFamily::new(
        n,
        [ElementSet::prefix(n - 2), full.without(3), full.without(2), full.without(1), full],
    )
}

/// `{[k−c], [k−c+1], …, [k−1], [n]}`, density `k` and `s(F) = c`.
///
/// Requires `1 <= c < k <= n − 1`. The prefixes live in `[k − 1]`, so the
/// lift needs only `n >= k + 1`.
pub fn interval_chain_family(c: u32, k: u32, n: u32) -> Result<SetFamily> {
    if c < 1 || c >= k || k + 1 > n {
        return Err(Error::InvalidParameters(format!(
            "interval chain needs 1 <= c < k <= n - 1 (got c={c}, k={k}, n={n})"
        )));
    }
    check_n(n, 2)?;
    let mut masks: Vec<u32> = (k - c..k).map(full_mask).collect();
    masks.push(full_mask(n));
    Ok(SetFamily::from_sorted(n, masks))
}

/// `2^[n−2] ∪ {[n]}`.
pub fn cube_plus_universe(n: u32) -> Result<SetFamily> {
    check_n(n, 4)?;
    if n > MAX_TABLE_UNIVERSE {
        return Err(Error::UniverseTooLarge { n, max: MAX_TABLE_UNIVERSE });
    }
    let mut masks: Vec<u32> = (1..=full_mask(n - 2)).collect();
    masks.push(full_mask(n));
    Ok(SetFamily::from_sorted(n, masks))
}

/// Uniform construction dispatch.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConstructionSpec {
    Chain { n: u32 },
    Lifted { base: SetFamily, n: u32 },
    Path { n: u32 },
    PathUpSet { n: u32 },
    LooseBound { n: u32 },
    IntervalChain { c: u32, k: u32, n: u32 },
    CubePlusUniverse { n: u32 },
    UpSet { generators: Vec<ElementSet>, n: u32 },
    PowerSet { n: u32 },
}

/// A constructed family with the density facts known for it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Construction {
    pub kind: &'static str,
    pub family: SetFamily,
    pub expected_density: Option<u32>,
    pub expected_s: Option<u32>,
}

impl ConstructionSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            ConstructionSpec::Chain { .. } => "chain",
            ConstructionSpec::Lifted { .. } => "lifted",
            ConstructionSpec::Path { .. } => "path",
            ConstructionSpec::PathUpSet { .. } => "path-upset",
            ConstructionSpec::LooseBound { .. } => "loose-bound",
            ConstructionSpec::IntervalChain { .. } => "interval-chain",
            ConstructionSpec::CubePlusUniverse { .. } => "cube-plus-universe",
            ConstructionSpec::UpSet { .. } => "up-set",
            ConstructionSpec::PowerSet { .. } => "power-set",
        }
    }

    pub fn build(&self) -> Result<Construction> {
        let (family, expected_density, expected_s) = match self {
            &ConstructionSpec::Chain { n } => {
                (chain_family(n)?, Some(n - 1), Some(n.saturating_sub(2)))
            }
            ConstructionSpec::Lifted { base, n } => {
                (lifted_family(base, *n)?, Some(base.universe() + 1), None)
            }
            &ConstructionSpec::Path { n } => {
                (path_family(n)?, (n >= 6).then_some(n - 1), None)
            }
            &ConstructionSpec::PathUpSet { n } => (path_up_set(n)?, Some(1), Some(0)),
            &ConstructionSpec::LooseBound { n } => (loose_bound_family(n)?, Some(n - 1), Some(1)),
            &ConstructionSpec::IntervalChain { c, k, n } => {
                (interval_chain_family(c, k, n)?, Some(k), Some(c))
            }
            &ConstructionSpec::CubePlusUniverse { n } => (cube_plus_universe(n)?, Some(n - 1), None),
            ConstructionSpec::UpSet { generators, n } => {
                let f = up_set_generated(generators, *n)?;
                let d = if f.is_power_set() { 0 } else { 1 };
                (f, Some(d), Some(0))
            }
            &ConstructionSpec::PowerSet { n } => (SetFamily::power_set(n)?, Some(0), Some(0)),
        };
        Ok(Construction { kind: self.kind(), family, expected_density, expected_s })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closure::{density, s_param};

    fn set(e: &[u32]) -> ElementSet {
        ElementSet::from_elements(e.iter().copied())
    }

    #[test]
    fn chain_examples() {
        assert_eq!(chain_family(1).unwrap().masks(), &[1]);
        assert_eq!(chain_family(3).unwrap().masks(), &[1, 3, 7]);
        assert_eq!(density(&chain_family(3).unwrap()).unwrap(), 2);
        assert_eq!(density(&chain_family(6).unwrap()).unwrap(), 5);
        let sizes: Vec<u32> = chain_family(7).unwrap().members().map(|s| s.len()).collect();
        assert_eq!(sizes, (1..=7).collect::<Vec<_>>());
    }

    #[test]
    fn lifted_examples() {
        let single = SetFamily::new(1, [1u32]).unwrap();
        let h = lifted_family(&single, 3).unwrap();
        assert_eq!(h.masks(), &[1, 7]);
        assert_eq!(density(&h).unwrap(), 2);
        let p2 = SetFamily::power_set(2).unwrap();
        assert_eq!(density(&lifted_family(&p2, 4).unwrap()).unwrap(), 3);
        let c2 = chain_family(2).unwrap();
        assert_eq!(density(&lifted_family(&c2, 5).unwrap()).unwrap(), 3);
        assert_eq!(lifted_family(&p2, 3), Err(Error::UniverseTooSmall { n: 3, min: 4 }));
    }

    #[test]
    fn path_examples() {
        let p3 = path_family(3).unwrap();
        assert_eq!(p3.members().collect::<Vec<_>>(), vec![set(&[1, 2]), set(&[2, 3]), set(&[1, 2, 3])]);
        assert_eq!(density(&path_family(6).unwrap()).unwrap(), 5);
        for n in 3..=10 {
            assert!(!path_family(n).unwrap().contains(set(&[1, 3])));
        }
    }

    /// Union closure of the adjacent pairs, built independently of the
    /// neighbour predicate.
    fn path_by_unions(n: u32) -> Vec<u32> {
        let gens: Vec<u32> = path_generators(n).iter().map(|g| g.mask()).collect();
        let mut seen = vec![false; 1 << n];
        for pick in 1u32..(1 << gens.len()) {
            let u = gens
                .iter()
                .enumerate()
                .filter(|(i, _)| pick >> i & 1 == 1)
                .fold(0, |acc, (_, &g)| acc | g);
            seen[u as usize] = true;
        }
        (1..(1u32 << n)).filter(|&m| seen[m as usize]).collect()
    }

    #[test]
    fn path_predicate_equals_generator_unions() {
        for n in 2..=10 {
            assert_eq!(path_family(n).unwrap().masks(), path_by_unions(n).as_slice(), "n={n}");
        }
    }

    #[test]
    fn loose_bound_examples() {
        for n in 5..=8 {
            let f = loose_bound_family(n).unwrap();
            assert_eq!(f.len(), 5);
            assert!(f.is_union_closed(), "n={n}");
        }
        for n in [5, 6] {
            let f = loose_bound_family(n).unwrap();
            assert_eq!(density(&f).unwrap(), n - 1);
            assert_eq!(s_param(&f).unwrap(), 1);
        }
        assert_eq!(loose_bound_family(4), Err(Error::UniverseTooSmall { n: 4, min: 5 }));
    }

    #[test]
    fn interval_chain_examples() {
        let f = interval_chain_family(1, 3, 5).unwrap();
        assert_eq!(f.masks(), &[0b11, 0b11111]);
        assert_eq!((density(&f).unwrap(), s_param(&f).unwrap()), (3, 1));
        let f = interval_chain_family(2, 4, 6).unwrap();
        assert_eq!(f.masks(), &[0b11, 0b111, 0b111111]);
        assert_eq!((density(&f).unwrap(), s_param(&f).unwrap()), (4, 2));
        let f = interval_chain_family(1, 2, 4).unwrap();
        assert_eq!(f.masks(), &[0b1, 0b1111]);
        assert_eq!((density(&f).unwrap(), s_param(&f).unwrap()), (2, 1));
    }

    #[test]
    fn interval_chain_at_k_equal_n_minus_one() {
        // prefixes sit in [k-1], so n = k + 1 still leaves room for the lift
        for n in 3..=7 {
            for c in 1..n - 1 {
                let f = interval_chain_family(c, n - 1, n).unwrap();
                assert_eq!(density(&f).unwrap(), n - 1, "c={c} n={n}");
                assert_eq!(s_param(&f).unwrap(), c, "c={c} n={n}");
            }
        }
        assert!(interval_chain_family(1, 5, 5).is_err());
        assert!(interval_chain_family(0, 2, 5).is_err());
        assert!(interval_chain_family(2, 2, 5).is_err());
    }

    #[test]
    fn cube_plus_universe_examples() {
        let f = cube_plus_universe(4).unwrap();
        assert_eq!(f.members().collect::<Vec<_>>(), vec![set(&[1]), set(&[2]), set(&[1, 2]), set(&[1, 2, 3, 4])]);
        assert_eq!(density(&f).unwrap(), 3);
        assert_eq!(density(&cube_plus_universe(5).unwrap()).unwrap(), 4);
        for n in 4..=9 {
            assert_eq!(cube_plus_universe(n).unwrap().len(), 1 << (n - 2));
        }
    }

    #[test]
    fn every_spec_builds_a_union_closed_family() {
        let specs = [
            ConstructionSpec::Chain { n: 5 },
            ConstructionSpec::Lifted { base: chain_family(2).unwrap(), n: 5 },
            ConstructionSpec::Path { n: 7 },
            ConstructionSpec::PathUpSet { n: 5 },
            ConstructionSpec::LooseBound { n: 6 },
            ConstructionSpec::IntervalChain { c: 2, k: 4, n: 6 },
            ConstructionSpec::CubePlusUniverse { n: 6 },
            ConstructionSpec::UpSet { generators: vec![set(&[1, 2])], n: 4 },
            ConstructionSpec::PowerSet { n: 4 },
        ];
        for spec in specs {
            let c = spec.build().unwrap();
            assert!(c.family.is_union_closed(), "{}", c.kind);
            assert!(c.family.contains(c.family.full()));
            if let Some(d) = c.expected_density {
                assert_eq!(density(&c.family).unwrap(), d, "{}", c.kind);
            }
            if let Some(s) = c.expected_s {
                assert_eq!(s_param(&c.family).unwrap(), s, "{}", c.kind);
            }
        }
    }
}
