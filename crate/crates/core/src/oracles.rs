//! Case classifications that predict closure membership for two explicit
//! families, checked against directly computed closures.
//!
//! * Lift: `H = F ∪ {[n]}` for `F` union-closed over `[k]`, `n >= k + 2`.
//!   Six cases split `A` by `A₁ = A ∩ [k]` and `A₂ = A ∖ [k]` and predict
//!   whether `A ∈ H⁽ᵗ⁾` for `1 <= t <= k`.
//! * Path: `F` = unions of adjacent pairs over `[n]`, `n >= 6`. Fourteen
//!   structural cases predict whether a non-member `A` with
//!   `|A| <= n − k − 1` lies in `F⁽ᵏ⁾` for `1 <= k <= n − 5`.
//!
//! The predicates are written out literally. A subset may match several
//! cases; every report records all of them and flags mixed predictions.

use std::fmt;

use serde::Serialize;

use crate::closure::{closure_trace, density, ClosureTrace};
use crate::constructions::{is_path_member, lifted_family, path_family};
use crate::error::{Error, Result};
use crate::exec::{self, Exec};
use crate::family::{require_universe_at_most, SetFamily, MAX_TABLE_UNIVERSE};
use crate::set::{full_mask, ElementSet};

const ROMAN: [&str; 14] = [
    "i", "ii", "iii", "iv", "v", "vi", "vii", "viii", "ix", "x", "xi", "xii", "xiii", "xiv",
];

/// A case label `(i)` … `(xiv)`, stored as its 1-based number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CaseLabel(pub u8);

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", ROMAN[self.0 as usize - 1])
    }
}

impl Serialize for CaseLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// One classified subset.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseReport {
    pub subject: ElementSet,
    /// `t` for the lift, `k` for the path family.
    pub level: u32,
    /// First matching case in the classification's own order.
    pub case_label: CaseLabel,
    pub matched_cases: Vec<CaseLabel>,
    pub predicted_member: bool,
    pub computed_member: bool,
    /// All matched cases predict the same membership (and at least one matched).
    pub consistent: bool,
    pub agrees: bool,
}

impl fmt::Display for CaseReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cases: Vec<String> = self.matched_cases.iter().map(|c| c.to_string()).collect();
        write!(
            f,
            "A={} level={} case={} matched=[{}] predicted={} computed={}",
            self.subject,
            self.level,
            self.case_label,
            cases.join(","),
            if self.predicted_member { "in" } else { "out" },
            if self.computed_member { "in" } else { "out" },
        )
    }
}

fn report(
    subject: ElementSet,
    level: u32,
    matched: Vec<(CaseLabel, bool)>,
    primary: Option<CaseLabel>,
    computed_member: bool,
) -> CaseReport {
    let first = matched.first().copied();
    let consistent = first.is_some() && matched.iter().all(|&(_, p)| Some(p) == first.map(|f| f.1));
    let case_label = primary.or(first.map(|f| f.0)).unwrap_or(CaseLabel(1));
    let predicted_member = match primary {
        Some(p) => matched.iter().find(|(c, _)| *c == p).map(|x| x.1).unwrap_or(false),
        None => first.map(|f| f.1).unwrap_or(false),
    };
    CaseReport {
        subject,
        level,
        case_label,
        matched_cases: matched.iter().map(|m| m.0).collect(),
        predicted_member,
        computed_member,
        consistent,
        agrees: consistent && predicted_member == computed_member,
    }
}

fn trace_levels(trace: &ClosureTrace, upto: u32) -> Vec<SetFamily> {
    (0..=upto as usize).map(|i| trace.level(i).clone()).collect()
}

/// Cached closures for the lift `H = F ∪ {[n]}`.
#[derive(Debug, Clone)]
pub struct LiftSweep {
    k: u32,
    n: u32,
    /// `F⁽ᵗ⁾` over `[k]`, `t = 0..=k`.
    base_levels: Vec<SetFamily>,
    /// `H⁽ᵗ⁾` over `[n]`, `t = 0..=k+1`.
    lifted_levels: Vec<SetFamily>,
}

impl LiftSweep {
    pub fn new(base: &SetFamily, n: u32) -> Result<LiftSweep> {
        let k = base.universe();
        require_universe_at_most(n, MAX_TABLE_UNIVERSE)?;
        let lifted = lifted_family(base, n)?;
        let base_levels = trace_levels(&closure_trace(base)?, k);
        let lifted_levels = trace_levels(&closure_trace(&lifted)?, k + 1);
        Ok(LiftSweep { k, n, base_levels, lifted_levels })
    }

    pub fn lifted(&self) -> &SetFamily {
        &self.lifted_levels[0]
    }

    /// `H⁽ᵗ⁾`.
    pub fn lifted_level(&self, t: u32) -> &SetFamily {
        &self.lifted_levels[t as usize]
    }

    pub fn classify(&self, subject: ElementSet, t: u32) -> Result<CaseReport> {
        let (k, n) = (self.k, self.n);
        if !(1..=k).contains(&t) {
            return Err(Error::LevelOutOfRange { level: t, max: k });
        }
        let full = full_mask(n);
        let a = subject.mask();
        if a == 0 || a & !full != 0 {
            return Err(Error::MaskOutOfRange { mask: a, n });
        }
        let head = full_mask(k);
        let tail = full & !head;
        let a1 = a & head;
        let a2 = a & tail;
        let size1 = a1.count_ones();

        let base_t = &self.base_levels[t as usize];
        let base_prev = &self.base_levels[t as usize - 1];
        let lifted_prev = &self.lifted_levels[t as usize - 1];

        let mut matched = Vec::new();
        if a2 == 0 {
            let inside = base_t.contains_mask(a1);
            matched.push(if inside { (CaseLabel(1), true) } else { (CaseLabel(2), false) });
        }
        if a2 == tail {
            // E ranges over F⁽ᵗ⁻¹⁾ with E ⊄ A; E ∪ A is tested in H⁽ᵗ⁻¹⁾
            let all_in = base_prev
                .masks()
                .iter()
                .filter(|&&e| e & a != e)
                .all(|&e| lifted_prev.contains_mask(e | a));
            matched.push(if all_in { (CaseLabel(3), true) } else { (CaseLabel(4), false) });
        }
        if size1 > k - t {
            matched.push((CaseLabel(5), true));
        }
        if a2 != 0 && a2 != tail && size1 <= k - t {
            matched.push((CaseLabel(6), false));
        }
        let primary = matched.first().map(|m| m.0);
        let computed = self.lifted_levels[t as usize].contains_mask(a);
        Ok(report(subject, t, matched, primary, computed))
    }

    /// Every non-empty `A ⊆ [n]` at every level `1..=k`.
    pub fn sweep(&self, exec: Exec) -> Vec<CaseReport> {
        let full = full_mask(self.n);
        let jobs: Vec<(u32, u32)> =
            (1..=self.k).flat_map(|t| (1..=full).map(move |a| (t, a))).collect();
        exec::map_slice(exec, &jobs, |&(t, a)| self.classify(a.into(), t).unwrap())
    }
}

/// Classifies `A` at level `t` for the lift of `base` into `[n]`.
pub fn classify_lift(subject: ElementSet, t: u32, base: &SetFamily, n: u32) -> Result<CaseReport> {
    LiftSweep::new(base, n)?.classify(subject, t)
}

/// Result of a full lift sweep.
#[derive(Debug, Clone, Serialize)]
pub struct LiftVerification {
    pub k: u32,
    pub n: u32,
    pub reports: Vec<CaseReport>,
    pub density: u32,
    /// `2^[n] ∖ H⁽ᵏ⁾` is all of `2^([n]∖[k])`, or that minus `[n]∖[k]`.
    pub residual_is_tail_cube: bool,
}

/// Sweeps every `(A, t)`, then checks density `k + 1` and the shape of the
/// sets still missing at level `k`.
pub fn verify_lift(base: &SetFamily, n: u32) -> Result<LiftVerification> {
    let sweep = LiftSweep::new(base, n)?;
    let k = base.universe();
    let reports = sweep.sweep(Exec::auto(((1usize << n) * k as usize) << 6));
    if let Some(bad) = reports.iter().find(|r| !r.agrees) {
        return Err(Error::DisagreementFound(Box::new(bad.clone())));
    }
    let density = density(sweep.lifted())?;
    if density != k + 1 {
        return Err(Error::VerificationFailed(format!(
            "lift of a family over [{k}] into [{n}] has density {density}, expected {}",
            k + 1
        )));
    }
    let full = full_mask(n);
    let tail = full & !full_mask(k);
    let level_k = sweep.lifted_level(k);
    let residual: Vec<u32> = (1..=full).filter(|&m| !level_k.contains_mask(m)).collect();
    let cube: Vec<u32> = (1..=full).filter(|&m| m & tail == m).collect();
    let cube_minus_top: Vec<u32> = cube.iter().copied().filter(|&m| m != tail).collect();
    let residual_is_tail_cube = residual == cube || residual == cube_minus_top;
    if !residual_is_tail_cube {
        return Err(Error::VerificationFailed(format!(
            "sets missing from level {k} of the lift into [{n}] are not the subsets of [n]∖[k]"
        )));
    }
    Ok(LiftVerification { k, n, reports, density, residual_is_tail_cube })
}

/// Cached closures of the path family over `[n]`.
#[derive(Debug, Clone)]
pub struct PathSweep {
    n: u32,
    trace: ClosureTrace,
}

pub const MIN_PATH_UNIVERSE: u32 = 6;
pub const MAX_PATH_SWEEP_UNIVERSE: u32 = 9;

const OUT_CASES: [u8; 7] = [1, 2, 7, 8, 9, 12, 14];

impl PathSweep {
    pub fn new(n: u32) -> Result<PathSweep> {
        if n < MIN_PATH_UNIVERSE {
            return Err(Error::UniverseTooSmall { n, min: MIN_PATH_UNIVERSE });
        }
        require_universe_at_most(n, MAX_TABLE_UNIVERSE)?;
        let trace = closure_trace(&path_family(n)?)?;
        Ok(PathSweep { n, trace })
    }

    pub fn family(&self) -> &SetFamily {
        self.trace.level(0)
    }

    /// `F⁽ᵏ⁾`.
    pub fn level(&self, k: u32) -> &SetFamily {
        self.trace.level(k as usize)
    }

    pub fn density(&self) -> u32 {
        self.trace.density()
    }

    /// Indices of the matching cases `(i)`…`(xiv)`, ascending.
    pub fn matching_cases(&self, subject: ElementSet, k: u32) -> Vec<CaseLabel> {
        let n = self.n;
        let a = subject;
        let s = a.len();
        let (lo, hi) = (n - k - 1, n - k - 2);
        let has = |e: u32| a.contains(e);
        let within = |from: u32, to: u32| a.elements().all(|e| (from..=to).contains(&e));
        let meets_low = has(1) || has(2);
        let meets_high = has(n - 1) || has(n);
        let in_path = |x: ElementSet| is_path_member(x);
        let (min, max) = (a.min_element().unwrap(), a.max_element().unwrap());
        let interior = || a.elements().filter(move |&j| min < j && j < max);
        let isolated = |j: u32| !has(j - 1) && !has(j + 1);

        let mut cases = Vec::new();
        let mut push = |c: u8, hit: bool| {
            if hit {
                cases.push(CaseLabel(c));
            }
        };
        push(1, has(1) && !has(2));
        push(2, has(n) && !has(n - 1));
        push(3, has(1) && has(2) && !has(n) && s == lo);
        push(4, has(n - 1) && has(n) && !has(1) && s == lo);
        push(5, !has(1) && !has(n) && s == lo);
        push(6, has(1) && has(2) && has(n - 1) && has(n) && s == lo);
        push(7, within(1, n - 2) && meets_low && s == hi && !in_path(a.without(max)));
        push(8, within(3, n) && meets_high && s == hi && !in_path(a.without(min)));
        push(9, s == hi && meets_low && meets_high);
        push(10, within(1, n - 2) && s == hi && in_path(a.without(max)));
        push(11, within(3, n) && s == hi && in_path(a.without(min)));
        push(12, within(3, n - 2) && s == hi && interior().any(isolated));
        push(13, within(3, n - 2) && s == hi && interior().all(|j| !isolated(j)));
        push(14, s + 3 <= n - k);
        cases
    }

    pub fn classify(&self, subject: ElementSet, k: u32) -> Result<CaseReport> {
        let n = self.n;
        if k < 1 || k + 5 > n {
            return Err(Error::PreconditionViolated(format!(
                "level k={k} outside 1..={} for n={n}",
                n - 5
            )));
        }
        let a = subject.mask();
        if a == 0 || a & !full_mask(n) != 0 {
            return Err(Error::MaskOutOfRange { mask: a, n });
        }
        if self.family().contains_mask(a) {
            return Err(Error::PreconditionViolated(format!("{subject} is a member of the family")));
        }
        if subject.len() + k + 1 > n {
            return Err(Error::PreconditionViolated(format!(
                "|{subject}| = {} exceeds n - k - 1 = {}",
                subject.len(),
                n - k - 1
            )));
        }
        let matched: Vec<(CaseLabel, bool)> = self
            .matching_cases(subject, k)
            .into_iter()
            .map(|c| (c, !OUT_CASES.contains(&c.0)))
            .collect();
        let computed = self.level(k).contains_mask(a);
        Ok(report(subject, k, matched, None, computed))
    }

    /// All admissible `A` at every level `1..=max_k` (capped at `n − 5`).
    pub fn sweep(&self, max_k: u32, exec: Exec) -> Vec<CaseReport> {
        let n = self.n;
        let full = full_mask(n);
        let fam = self.family();
        let jobs: Vec<(u32, u32)> = (1..=max_k.min(n - 5))
            .flat_map(|k| {
                (1..=full)
                    .filter(move |&a| !fam.contains_mask(a) && a.count_ones() + k < n)
                    .map(move |a| (k, a))
            })
            .collect();
        exec::map_slice(exec, &jobs, |&(k, a)| self.classify(a.into(), k).unwrap())
    }
}

/// Classifies `A` at level `k` for the path family over `[n]`.
pub fn classify_path(subject: ElementSet, k: u32, n: u32) -> Result<CaseReport> {
    PathSweep::new(n)?.classify(subject, k)
}

/// Result of a full path-family sweep.
#[derive(Debug, Clone, Serialize)]
pub struct PathVerification {
    pub n: u32,
    pub max_k: u32,
    pub reports: Vec<CaseReport>,
    pub density: u32,
    /// `{3} ∈ F⁽ⁿ⁻⁴⁾`.
    pub three_in_level: bool,
    /// `{1,3,4} ∉ F⁽ⁿ⁻⁴⁾`.
    pub one_three_four_out: bool,
    /// `F⁽ⁿ⁻²⁾` is an up-set different from the power set.
    pub penultimate_is_proper_up_set: bool,
}

/// Sweeps the path family over `[n]` for `k <= min(max_k, n − 5)` and checks
/// the density and the level `n − 4` witnesses.
pub fn verify_path(n: u32, max_k: Option<u32>) -> Result<PathVerification> {
    require_universe_at_most(n, MAX_PATH_SWEEP_UNIVERSE)?;
    let sweep = PathSweep::new(n)?;
    let max_k = max_k.unwrap_or(n - 5).min(n - 5);
    let reports = sweep.sweep(max_k, Exec::auto(1 << (n + 6)));
    if let Some(bad) = reports.iter().find(|r| !r.agrees) {
        return Err(Error::DisagreementFound(Box::new(bad.clone())));
    }
    let fail = |msg: String| Err(Error::VerificationFailed(msg));

    // sizes >= n - k are in F⁽ᵏ⁾ regardless of the case analysis
    for k in 1..=max_k {
        let level = sweep.level(k);
        if let Some(m) = (1..=full_mask(n)).find(|&m| m.count_ones() + k >= n && !level.contains_mask(m)) {
            return fail(format!("{} of size >= n-k missing from level {k}", ElementSet::from(m)));
        }
    }
    let density = sweep.density();
    if density != n - 1 {
        return fail(format!("path family over [{n}] has density {density}, expected {}", n - 1));
    }
    let level = sweep.level(n - 4);
    let three_in_level = level.contains(ElementSet::from_elements([3]));
    let one_three_four_out = !level.contains(ElementSet::from_elements([1, 3, 4]));
    if !three_in_level || !one_three_four_out {
        return fail(format!("level {} witnesses fail for n={n}", n - 4));
    }
    let penultimate = sweep.level(n - 2);
    let penultimate_is_proper_up_set = penultimate.is_up_set() && !penultimate.is_power_set();
    if !penultimate_is_proper_up_set {
        return fail(format!("level {} is not a proper up-set for n={n}", n - 2));
    }
    Ok(PathVerification {
        n,
        max_k,
        reports,
        density,
        three_in_level,
        one_three_four_out,
        penultimate_is_proper_up_set,
    })
}
