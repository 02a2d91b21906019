//! The closure operator, iterated closures, density and the chain
//! parameter `s(F)`.
//!
//! `closure(F)` is the set of all non-empty `A` such that `F ∪ {A}` stays
//! union-closed. For a union-closed `F` that means: for every member `B`,
//! either `A ∪ B = A` or `A ∪ B ∈ F`.

use serde::Serialize;

use crate::error::Result;
use crate::exec::{self, Exec};
use crate::family::{require_universe_at_most, SetFamily, MAX_TABLE_UNIVERSE};
use crate::set::full_mask;

/// Closure scans all `2^n - 1` candidates.
pub const MAX_CLOSURE_UNIVERSE: u32 = MAX_TABLE_UNIVERSE;

pub fn closure(family: &SetFamily) -> Result<SetFamily> {
    let work = (1usize << family.universe().min(MAX_CLOSURE_UNIVERSE)) * family.len();
    closure_with(family, Exec::auto(work))
}

/// [`closure`] with an explicit execution strategy. The result does not
/// depend on `exec`.
pub fn closure_with(family: &SetFamily, exec: Exec) -> Result<SetFamily> {
    require_universe_at_most(family.universe(), MAX_CLOSURE_UNIVERSE)?;
    family.require_union_closed()?;
    Ok(closure_unchecked(family, exec))
}

/// Closure of a family already known to be union-closed with `n <= 20`.
pub(crate) fn closure_unchecked(family: &SetFamily, exec: Exec) -> SetFamily {
    let n = family.universe();
    let full = full_mask(n);
    let members = family.masks();
    let masks = exec::filter_range(exec, 1, full + 1, |a| {
        family.contains_mask(a)
            || members.iter().all(|&b| {
                let u = a | b;
                u == a || family.contains_mask(u)
            })
    });
    SetFamily::from_sorted(n, masks)
}

/// The `times`-fold closure; `times = 0` returns a copy of `family`.
pub fn iterated_closure(family: &SetFamily, times: u32) -> Result<SetFamily> {
    require_universe_at_most(family.universe(), MAX_CLOSURE_UNIVERSE)?;
    family.require_union_closed()?;
    let mut cur = family.clone();
    for _ in 0..times {
        if cur.is_power_set() {
            break;
        }
        cur = closure_unchecked(&cur, Exec::auto((1usize << cur.universe()) * cur.len()));
    }
    Ok(cur)
}

/// `F = F⁽⁰⁾ ⊊ F⁽¹⁾ ⊊ … ⊊ F⁽ᵏ⁾ = 2^[n]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosureTrace {
    pub levels: Vec<SetFamily>,
}

impl ClosureTrace {
    pub fn density(&self) -> u32 {
        self.levels.len() as u32 - 1
    }

    pub fn level(&self, i: usize) -> &SetFamily {
        &self.levels[i.min(self.levels.len() - 1)]
    }

    pub fn level_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(SetFamily::len).collect()
    }
}

pub fn closure_trace(family: &SetFamily) -> Result<ClosureTrace> {
    require_universe_at_most(family.universe(), MAX_CLOSURE_UNIVERSE)?;
    family.require_union_closed()?;
    let mut levels = vec![family.clone()];
    loop {
        let last = levels.last().unwrap();
        if last.is_power_set() {
            break;
        }
        let next = closure_unchecked(last, Exec::auto((1usize << last.universe()) * last.len()));
        debug_assert!(next.len() > last.len());
        levels.push(next);
    }
    Ok(ClosureTrace { levels })
}

/// Least `k` with `F⁽ᵏ⁾ = 2^[n]`.
pub fn density(family: &SetFamily) -> Result<u32> {
    Ok(closure_trace(family)?.density())
}

/// Smallest `t >= 1` such that every `t`-subset of `[n]` is a member.
pub fn min_full_level(family: &SetFamily) -> u32 {
    let n = family.universe();
    (1..=n)
        .find(|&t| family.count_of_size(t) as u64 == binomial(n, t))
        .unwrap_or(n)
}

/// Longest chain `A₁ ⊊ … ⊊ A_r` of members whose top `A_r` has a strict
/// superset outside the family; 0 when no member has one.
pub fn s_param(family: &SetFamily) -> Result<u32> {
    let n = family.universe();
    require_universe_at_most(n, MAX_TABLE_UNIVERSE)?;
    family.require_union_closed()?;

    // up_closed[x]: x and every superset of x are members
    let size = 1usize << n;
    let full = full_mask(n);
    let mut up_closed = vec![false; size];
    for x in (1..size).rev() {
        let xm = x as u32;
        if !family.contains_mask(xm) {
            continue;
        }
        let mut rest = full & !xm;
        let mut ok = true;
        while rest != 0 {
            let bit = rest & rest.wrapping_neg();
            if !up_closed[(xm | bit) as usize] {
                ok = false;
                break;
            }
            rest &= rest - 1;
        }
        up_closed[x] = ok;
    }
    let has_outside_superset = |a: u32| {
        let mut rest = full & !a;
        while rest != 0 {
            let bit = rest & rest.wrapping_neg();
            if !up_closed[(a | bit) as usize] {
                return true;
            }
            rest &= rest - 1;
        }
        false
    };

    // chain lengths, members in ascending popcount order
    let mut order: Vec<u32> = family.masks().to_vec();
    order.sort_by_key(|m| (m.count_ones(), *m));
    let mut longest: Vec<u32> = Vec::with_capacity(order.len());
    let mut best = 0;
    for (i, &a) in order.iter().enumerate() {
        let below = order[..i]
            .iter()
            .zip(&longest)
            .filter(|(&p, _)| p & a == p && p != a)
            .map(|(_, &l)| l)
            .max()
            .unwrap_or(0);
        let l = below + 1;
        longest.push(l);
        if l > best && has_outside_superset(a) {
            best = l;
        }
    }
    Ok(best)
}

/// Density together with the chain lower bound `s(F) + 1 <= density`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DensityReport {
    pub density: u32,
    pub s_param: u32,
    pub lower_bound: u32,
    pub bound_tight: bool,
}

pub fn density_report(family: &SetFamily) -> Result<DensityReport> {
    let density = density(family)?;
    let s = s_param(family)?;
    Ok(DensityReport {
        density,
        s_param: s,
        lower_bound: s + 1,
        bound_tight: density == s + 1,
    })
}

pub(crate) fn binomial(n: u32, k: u32) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}
