//! Suffix array by prefix doubling, Kasai LCP, sparse-table RMQ, and the
//! longest-common-extension structures built from the three.

use super::SeqError;
use crate::eds::Sym;

/// Suffix array of `s`: starting positions of all suffixes in lexicographic
/// order. O(n log^2 n); every caller in this crate hands it short strings.
pub fn suffix_array(s: &[Sym]) -> Vec<u32> {
    let n = s.len();
    if n == 0 {
        return Vec::new();
    }
    let mut sa: Vec<u32> = (0..n as u32).collect();
    let mut rank: Vec<u64> = s.iter().map(|&c| u64::from(c)).collect();
    let mut next = vec![0u64; n];
    let mut k = 1usize;
    loop {
        // rank of the suffix pair (first k letters, next k letters); +1 so
        // that "runs off the end" sorts strictly before every real rank
        let key = |i: usize| {
            let second = if i + k < n { rank[i + k] + 1 } else { 0 };
            (rank[i], second)
        };
        sa.sort_unstable_by_key(|&i| key(i as usize));
        next[sa[0] as usize] = 0;
        for w in 1..n {
            let bump = u64::from(key(sa[w - 1] as usize) != key(sa[w] as usize));
            next[sa[w] as usize] = next[sa[w - 1] as usize] + bump;
        }
        rank.copy_from_slice(&next);
        if rank[sa[n - 1] as usize] as usize == n - 1 {
            return sa;
        }
        k *= 2;
    }
}

/// Kasai: `lcp[r]` is the longest common prefix of the suffixes at `sa[r]`
/// and `sa[r+1]`. Length is `n - 1` (empty for `n <= 1`).
pub fn lcp_array(s: &[Sym], sa: &[u32]) -> Vec<u32> {
    let n = s.len();
    let mut lcp = vec![0u32; n.saturating_sub(1)];
    let mut rank = vec![0u32; n];
    for (r, &p) in sa.iter().enumerate() {
        rank[p as usize] = r as u32;
    }
    let mut h = 0usize;
    for i in 0..n {
        let r = rank[i] as usize;
        if r + 1 == n {
            h = 0;
            continue;
        }
        let j = sa[r + 1] as usize;
        while i + h < n && j + h < n && s[i + h] == s[j + h] {
            h += 1;
        }
        lcp[r] = h as u32;
        h = h.saturating_sub(1);
    }
    lcp
}

/// Sparse-table range minimum over a fixed array; O(1) per query.
struct Rmq {
    // rows[j][i] = min of vals[i .. i + 2^j]
    rows: Vec<Vec<u32>>,
}

impl Rmq {
    fn new(vals: &[u32]) -> Self {
        let n = vals.len();
        let mut rows = vec![vals.to_vec()];
        let mut width = 1usize;
        while width * 2 <= n {
            let prev = rows.last().expect("at least one row");
            let row: Vec<u32> = (0..n - 2 * width + 1)
                .map(|i| prev[i].min(prev[i + width]))
                .collect();
            rows.push(row);
            width *= 2;
        }
        Rmq { rows }
    }

    /// Minimum of `vals[l..r]`; requires `l < r`.
    fn min(&self, l: usize, r: usize) -> u32 {
        debug_assert!(l < r);
        let j = (usize::BITS - 1 - (r - l).leading_zeros()) as usize;
        self.rows[j][l].min(self.rows[j][r - (1 << j)])
    }
}

/// Longest common extension between any two suffixes of one string.
pub struct Lce {
    len: usize,
    rank: Vec<u32>,
    sa: Vec<u32>,
    rmq: Option<Rmq>,
}

impl Lce {
    pub fn new(s: &[Sym]) -> Self {
        let sa = suffix_array(s);
        let mut rank = vec![0u32; s.len()];
        for (r, &p) in sa.iter().enumerate() {
            rank[p as usize] = r as u32;
        }
        let lcp = lcp_array(s, &sa);
        let rmq = if lcp.is_empty() { None } else { Some(Rmq::new(&lcp)) };
        Lce {
            len: s.len(),
            rank,
            sa,
            rmq,
        }
    }

    /// Length of the longest common prefix of the suffixes starting at `i`
    /// and `j`. Positions at or past the end behave as the empty suffix.
    pub fn lcp(&self, i: usize, j: usize) -> usize {
        if i >= self.len || j >= self.len {
            return 0;
        }
        if i == j {
            return self.len - i;
        }
        let (a, b) = {
            let (ri, rj) = (self.rank[i] as usize, self.rank[j] as usize);
            if ri < rj {
                (ri, rj)
            } else {
                (rj, ri)
            }
        };
        let rmq = self.rmq.as_ref().expect("two distinct suffixes imply n >= 2");
        rmq.min(a, b) as usize
    }

    /// Suffix starting positions in lexicographic order.
    pub fn order(&self) -> &[u32] {
        &self.sa
    }
}

/// Longest common extension across two strings: `lcp(i, j)` compares the
/// suffix of `a` at `i` with the suffix of `b` at `j`.
pub struct LceIndex {
    inner: Lce,
    a_len: usize,
}

pub fn build_lce(a: &[Sym], b: &[Sym]) -> LceIndex {
    let max = a.iter().chain(b.iter()).copied().max().unwrap_or(0);
    let sep = max.checked_add(1).expect("symbol space exhausted");
    let mut text = Vec::with_capacity(a.len() + 1 + b.len());
    text.extend_from_slice(a);
    text.push(sep);
    text.extend_from_slice(b);
    LceIndex {
        inner: Lce::new(&text),
        a_len: a.len(),
    }
}

impl LceIndex {
    /// `i` indexes into `a`, `j` into `b`; positions past either end behave
    /// as empty suffixes. The separator guarantees the result never crosses
    /// out of `a`.
    pub fn lcp(&self, i: usize, j: usize) -> usize {
        if i > self.a_len {
            return 0;
        }
        self.inner.lcp(i, self.a_len + 1 + j)
    }
}

/// Lexicographic ranks (1-based, dense, ties equal) of the requested
/// substrings `x[start..end]`. Intervals are half-open.
pub fn sorted_substrings(
    x: &[Sym],
    intervals: &[(usize, usize)],
) -> Result<Vec<u32>, SeqError> {
    for &(start, end) in intervals {
        if start > end || end > x.len() {
            return Err(SeqError::IntervalOutOfBounds {
                start,
                end,
                len: x.len(),
            });
        }
    }
    let lce = Lce::new(x);
    let compare = |&(s1, e1): &(usize, usize), &(s2, e2): &(usize, usize)| {
        let (l1, l2) = (e1 - s1, e2 - s2);
        let l = lce.lcp(s1, s2).min(l1).min(l2);
        if l < l1 && l < l2 {
            x[s1 + l].cmp(&x[s2 + l])
        } else {
            l1.cmp(&l2)
        }
    };
    let mut order: Vec<usize> = (0..intervals.len()).collect();
    order.sort_unstable_by(|&i, &j| compare(&intervals[i], &intervals[j]));
    let mut ranks = vec![0u32; intervals.len()];
    let mut current = 0u32;
    for (w, &i) in order.iter().enumerate() {
        if w == 0 || compare(&intervals[order[w - 1]], &intervals[i]).is_ne() {
            current += 1;
        }
        ranks[i] = current;
    }
    Ok(ranks)
}
