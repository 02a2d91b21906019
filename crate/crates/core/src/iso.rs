use crate::error::{Error, Result};
use crate::family::SetFamily;

/// `n!` relabelings are enumerated, so the universe is capped here.
pub const MAX_ISO_UNIVERSE: u32 = 8;

/// The least sorted mask list over all relabelings of `[n]`.
pub(crate) fn canonical_form(family: &SetFamily) -> Result<SetFamily> {
    let n = family.universe();
    if n > MAX_ISO_UNIVERSE {
        return Err(Error::UniverseTooLargeForIso { n, max: MAX_ISO_UNIVERSE });
    }
    let mut best: Vec<u32> = family.masks().to_vec();
    let mut scratch = Vec::with_capacity(best.len());
    let mut perm: Vec<u32> = (0..n).collect();
    for_each_permutation(&mut perm, &mut |p| {
        scratch.clear();
        scratch.extend(family.members().map(|s| s.relabel(p).mask()));
        scratch.sort_unstable();
        if scratch < best {
            best.clone_from(&scratch);
        }
    });
    Ok(SetFamily::from_sorted(n, best))
}

/// Heap's algorithm, iterative.
fn for_each_permutation(perm: &mut [u32], visit: &mut impl FnMut(&[u32])) {
    let k = perm.len();
    let mut c = vec![0usize; k];
    visit(perm);
    let mut i = 0;
    while i < k {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            visit(perm);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// Applies a relabeling to every member.
pub fn relabel_family(family: &SetFamily, perm: &[u32]) -> SetFamily {
    let mut v: Vec<u32> = family.members().map(|s| s.relabel(perm).mask()).collect();
    v.sort_unstable();
    SetFamily::from_sorted(family.universe(), v)
}
