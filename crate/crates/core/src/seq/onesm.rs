//! One-error substring matching against a plain string, by combining forward
//! and backward longest-common-extension arrays computed from Z-arrays.

use crate::eds::Sym;

/// Z-array: `z[i]` = length of the longest common prefix of `s` and `s[i..]`,
/// with `z[0] = |s|`.
pub fn z_array(s: &[Sym]) -> Vec<u32> {
    let n = s.len();
    let mut z = vec![0u32; n];
    if n == 0 {
        return z;
    }
    z[0] = n as u32;
    let (mut l, mut r) = (0usize, 0usize);
    for i in 1..n {
        let mut k = if i < r {
            (z[i - l] as usize).min(r - i)
        } else {
            0
        };
        while i + k < n && s[k] == s[i + k] {
            k += 1;
        }
        z[i] = k as u32;
        if i + k > r {
            l = i;
            r = i + k;
        }
    }
    z
}

/// `out[i]` = longest common prefix of `p` and `t[i..]`, for `i` in `0..=|t|`
/// (the last entry is 0 by construction).
fn prefix_extensions(p: &[Sym], t: &[Sym]) -> Vec<u32> {
    let max = p.iter().chain(t.iter()).copied().max().unwrap_or(0);
    let sep = max.checked_add(1).expect("symbol space exhausted");
    let mut cat = Vec::with_capacity(p.len() + 1 + t.len());
    cat.extend_from_slice(p);
    cat.push(sep);
    cat.extend_from_slice(t);
    let z = z_array(&cat);
    let mut out = Vec::with_capacity(t.len() + 1);
    out.extend_from_slice(&z[p.len() + 1..]);
    out.push(0);
    out
}

/// `out[e]` = longest common suffix of `p` and `t[..e]`, for `e` in `0..=|t|`.
fn suffix_extensions(p: &[Sym], t: &[Sym]) -> Vec<u32> {
    let pr: Vec<Sym> = p.iter().rev().copied().collect();
    let tr: Vec<Sym> = t.iter().rev().copied().collect();
    let rev = prefix_extensions(&pr, &tr);
    (0..=t.len()).map(|e| rev[t.len() - e]).collect()
}

/// End positions (1-based, sorted) of substrings of `t` within edit distance
/// one of `p`. Only windows of length m-1, m, m+1 can qualify; a window of
/// length m-1 must exist, so the empty window is never considered.
pub fn one_sm(p: &[Sym], t: &[Sym]) -> Vec<usize> {
    assert!(!p.is_empty(), "pattern must be nonempty");
    let m = p.len();
    let n = t.len();
    let fwd = prefix_extensions(p, t);
    let bwd = suffix_extensions(p, t);
    let mut hit = vec![false; n + 1];
    // length-m window: d_H <= 1 iff the matched prefix and suffix leave at
    // most one position uncovered
    for e in m..=n {
        if fwd[e - m] as usize + bwd[e] as usize >= m - 1 {
            hit[e] = true;
        }
    }
    // length-(m-1) window: equals p with one letter deleted iff prefix and
    // suffix matches cover the whole window; extensions are capped at the
    // window length because they are measured against t, not the window
    if m >= 2 {
        let w = m - 1;
        for e in w..=n {
            let a = (fwd[e - w] as usize).min(w);
            let b = (bwd[e] as usize).min(w);
            if a + b >= m - 1 {
                hit[e] = true;
            }
        }
    }
    // length-(m+1) window: equals p with one letter inserted iff matches
    // cover all but one window position
    let w = m + 1;
    for e in w..=n {
        if fwd[e - w] as usize + bwd[e] as usize >= m {
            hit[e] = true;
        }
    }
    hit.iter()
        .enumerate()
        .filter_map(|(e, &h)| h.then_some(e))
        .collect()
}

/// End positions (1-based, sorted) of length-m substrings of `t` within
/// Hamming distance one of `p`.
pub fn one_mismatch_sm(p: &[Sym], t: &[Sym]) -> Vec<usize> {
    assert!(!p.is_empty(), "pattern must be nonempty");
    let m = p.len();
    let fwd = prefix_extensions(p, t);
    let bwd = suffix_extensions(p, t);
    (m..=t.len())
        .filter(|&e| fwd[e - m] as usize + bwd[e] as usize >= m - 1)
        .collect()
}
