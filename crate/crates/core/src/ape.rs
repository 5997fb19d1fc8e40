//! Exact-matching machinery: the active-prefix extension kernel, discovery
//! of prefixes that start inside a segment, and per-segment propagation of
//! the exact active-prefix set with end-of-occurrence detection.

use crate::bits::PrefixSet;
use crate::eds::{Pattern, Segment, Sym};
use crate::seq::CompactedTrie;

/// Per-pattern state shared by every segment step: the compacted trie of the
/// pattern's suffixes (member id i = suffix starting at 0-based i) and the
/// KMP failure table.
pub struct ApeKernel {
    m: usize,
    syms: Vec<Sym>,
    suffixes: CompactedTrie,
    rank_pos: Vec<u32>,
    kmp_fail: Vec<u32>,
}

impl ApeKernel {
    pub fn new(pattern: &Pattern) -> ApeKernel {
        let m = pattern.m();
        assert!(m >= 1, "pattern must be nonempty");
        let syms = pattern.syms.clone();
        let members: Vec<(usize, usize)> = (0..m).map(|i| (i, m)).collect();
        let suffixes = CompactedTrie::build(&syms, &members);
        // suffixes all differ in length, so ranks are a bijection
        let mut rank_pos = vec![0u32; m + 1];
        for i in 0..m {
            rank_pos[suffixes.member_rank(i) as usize] = i as u32;
        }
        let mut kmp_fail = vec![0u32; m + 1];
        let mut k = 0usize;
        for q in 1..m {
            while k > 0 && syms[q] != syms[k] {
                k = kmp_fail[k] as usize;
            }
            if syms[q] == syms[k] {
                k += 1;
            }
            kmp_fail[q + 1] = k as u32;
        }
        ApeKernel {
            m,
            syms,
            suffixes,
            rank_pos,
            kmp_fail,
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Active-prefix extension: `v[j]` iff some `u[i]` is extended by a whole
    /// segment string to the prefix of length j; ε copies `u` into `v`.
    /// O(m² + N_i): each string is spelled once through the suffix trie, and
    /// each populated length costs one O(m) rank sweep.
    pub fn ape(&self, u: &PrefixSet, seg: &Segment) -> PrefixSet {
        let m = self.m;
        let mut v = PrefixSet::new(m);
        if seg.has_epsilon() {
            v.union_with(u);
        }
        if u.is_empty() {
            return v;
        }
        let mut by_len: Vec<Vec<(u32, u32)>> = vec![Vec::new(); m + 1];
        for s in seg.nonempty() {
            if s.len() > m {
                continue;
            }
            let mut sp = self.suffixes.speller();
            let mut iv = None;
            for &c in s {
                iv = sp.step(c);
                if iv.is_none() {
                    break;
                }
            }
            if let Some(interval) = iv {
                by_len[s.len()].push(interval);
            }
        }
        let mut diff = vec![0i32; m + 2];
        for (len, intervals) in by_len.iter().enumerate() {
            if intervals.is_empty() {
                continue;
            }
            for &(lo, hi) in intervals {
                diff[lo as usize] += 1;
                diff[hi as usize + 1] -= 1;
            }
            // ranks covered by any interval of this length mark the pattern
            // positions where such a string occurs
            let mut mask = PrefixSet::new(m);
            let mut acc = 0i32;
            for r in 1..=m {
                acc += diff[r];
                if acc > 0 {
                    mask.set(self.rank_pos[r] as usize);
                }
            }
            for &(lo, hi) in intervals {
                diff[lo as usize] = 0;
                diff[hi as usize + 1] = 0;
            }
            let mut hits = u.clone();
            hits.intersect_with(&mask);
            v.or_shifted(&hits, len);
        }
        v
    }

    /// Reference implementation of `ape` by direct slice comparison over all
    /// (set bit, string) pairs; O(m · N_i). Kept callable so the two routes
    /// can always be cross-checked.
    pub fn ape_quadratic(&self, u: &PrefixSet, seg: &Segment) -> PrefixSet {
        let m = self.m;
        let mut v = PrefixSet::new(m);
        if seg.has_epsilon() {
            v.union_with(u);
        }
        for s in seg.nonempty() {
            if s.len() > m {
                continue;
            }
            for i in u.iter() {
                if i + s.len() <= m && self.syms[i..i + s.len()] == s[..] {
                    v.set(i + s.len());
                }
            }
        }
        v
    }

    /// KMP scan of one string: sets the bit of every pattern prefix that is
    /// a suffix of `s`, and reports whether the whole pattern occurs in `s`.
    fn scan_string(&self, s: &[Sym], starts: &mut PrefixSet) -> bool {
        let mut contains = false;
        let mut state = 0usize;
        for &c in s {
            if state == self.m {
                state = self.kmp_fail[state] as usize;
            }
            while state > 0 && self.syms[state] != c {
                state = self.kmp_fail[state] as usize;
            }
            if self.syms[state] == c {
                state += 1;
            }
            if state == self.m {
                contains = true;
            }
        }
        let mut j = state;
        while j > 0 {
            starts.set(j);
            j = self.kmp_fail[j] as usize;
        }
        contains
    }

    /// Bits j where P[1..j] is a suffix of some segment string.
    pub fn start_new_prefixes(&self, seg: &Segment) -> PrefixSet {
        let mut starts = PrefixSet::new(self.m);
        for s in seg.nonempty() {
            self.scan_string(s, &mut starts);
        }
        starts
    }

    /// True iff some set bit j of `prev` is completed to the full pattern by
    /// a nonempty prefix of a segment string — the last piece of an
    /// occurrence spanning several segments. Bit 0 is honored, which error
    /// lanes need; exact sweeps never set it.
    pub fn completes_exactly(&self, prev: &PrefixSet, seg: &Segment) -> bool {
        if prev.is_empty() {
            return false;
        }
        for s in seg.nonempty() {
            let mut sp = self.suffixes.speller();
            for (t, &c) in s.iter().enumerate().take(self.m) {
                let Some((lo, hi)) = sp.step(c) else { break };
                let j = self.m - (t + 1);
                if prev.contains(j) {
                    let r = self.suffixes.member_rank(j);
                    if lo <= r && r <= hi {
                        return true;
                    }
                }
            }
        }
        false
    }

    /// One segment step of the exact sweep. `exact_end_here` is true iff the
    /// pattern occurs inside a single string, or a previously active prefix
    /// is completed by a nonempty string prefix, or the full pattern is
    /// active after this segment (which covers ε-propagated ends).
    pub fn propagate_exact(&self, ap_prev: &PrefixSet, seg: &Segment) -> (PrefixSet, bool) {
        let mut ap_next = self.ape(ap_prev, seg);
        let mut inside = false;
        let mut starts = PrefixSet::new(self.m);
        for s in seg.nonempty() {
            inside |= self.scan_string(s, &mut starts);
        }
        ap_next.union_with(&starts);
        let end =
            inside || self.completes_exactly(ap_prev, seg) || ap_next.contains(self.m);
        (ap_next, end)
    }
}
