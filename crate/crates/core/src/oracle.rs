//! Independent brute-force reference implementations.
//!
//! Everything here is deliberately dumb and shares no algorithmic code with
//! the matching engine: a quadratic edit-distance DP, an exhaustive
//! enumeration of alignments over all per-segment piece choices, and a
//! direct state-set DP over (matched prefix length, errors used) pairs.
//! These are the ground truth the engine is tested against.

use crate::bits::PrefixSet;
use crate::eds::{EdText, MatchKind, Mode, OccurrenceReport, Pattern, Sym};
use std::collections::BTreeSet;
use thiserror::Error;

/// Enumeration is exponential in segment count; anything bigger than these
/// bounds is refused rather than silently slow.
pub const DESK_MAX_N: usize = 8;
pub const DESK_MAX_STRINGS: usize = 4;
pub const DESK_MAX_LEN: usize = 5;
pub const DESK_MAX_M: usize = 12;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("instance exceeds desk-scale bounds (n ≤ {DESK_MAX_N}, ≤ {DESK_MAX_STRINGS} strings/segment, string length ≤ {DESK_MAX_LEN}, m ≤ {DESK_MAX_M})")]
    OverDeskScale,
}

fn check_desk_scale(p: &Pattern, t: &EdText) -> Result<(), OracleError> {
    let ok = p.m() <= DESK_MAX_M
        && t.n() <= DESK_MAX_N
        && t.segments.iter().all(|seg| {
            seg.strings.len() <= DESK_MAX_STRINGS
                && seg.strings.iter().all(|s| s.len() <= DESK_MAX_LEN)
        });
    if ok {
        Ok(())
    } else {
        Err(OracleError::OverDeskScale)
    }
}

/// Classic quadratic DP (unit costs, substitutions allowed).
pub fn edit_distance(a: &[Sym], b: &[Sym]) -> usize {
    let (la, lb) = (a.len(), b.len());
    let mut prev: Vec<usize> = (0..=lb).collect();
    let mut cur = vec![0usize; lb + 1];
    for i in 1..=la {
        cur[0] = i;
        for j in 1..=lb {
            let sub = prev[j - 1] + usize::from(a[i - 1] != b[j - 1]);
            cur[j] = sub.min(prev[j] + 1).min(cur[j - 1] + 1);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[lb]
}

/// Hamming distance; None when the lengths differ.
pub fn hamming_distance(a: &[Sym], b: &[Sym]) -> Option<usize> {
    if a.len() != b.len() {
        return None;
    }
    Some(a.iter().zip(b).filter(|(x, y)| x != y).count())
}

/// (j, j') span pairs per mode, exact/hamming1/edit1, in one enumeration.
pub struct EnumeratedSpans {
    pub exact: BTreeSet<(usize, usize)>,
    pub hamming: BTreeSet<(usize, usize)>,
    pub edit: BTreeSet<(usize, usize)>,
}

/// Exhaustively enumerates alignments: a span j..j', one string choice per
/// segment, a suffix trim of the first choice and a prefix trim of the last.
///
/// Conventions (shared with the engine by design, so the comparison is
/// meaningful): the first piece of a multi-segment span is a nonempty
/// suffix; middle pieces are whole strings (choosing an ε alternative is
/// allowed and consumes nothing); the last piece is a nonempty prefix, or
/// the ε alternative itself where the segment has one; a single-segment
/// span may use any substring of one alternative, including the empty one.
pub fn enumerate_all(p: &Pattern, t: &EdText) -> Result<EnumeratedSpans, OracleError> {
    check_desk_scale(p, t)?;
    let m = p.m();
    let mut out = EnumeratedSpans {
        exact: BTreeSet::new(),
        hamming: BTreeSet::new(),
        edit: BTreeSet::new(),
    };
    let mut accept = |span: (usize, usize), cand: &[Sym], out: &mut EnumeratedSpans| {
        if cand.len() + 1 < m || cand.len() > m + 1 {
            return;
        }
        if cand.len() == m {
            if p.syms == cand {
                out.exact.insert(span);
            }
            if hamming_distance(&p.syms, cand).is_some_and(|d| d <= 1) {
                out.hamming.insert(span);
            }
        }
        if edit_distance(&p.syms, cand) <= 1 {
            out.edit.insert(span);
        }
    };
    let n = t.n();
    for j in 1..=n {
        // single-segment spans: any substring of one alternative, incl. ε
        for s in &t.segments[j - 1].strings {
            for a in 0..=s.len() {
                for b in a..=s.len() {
                    accept((j, j), &s[a..b], &mut out);
                }
            }
        }
        // multi-segment spans: depth-first over piece choices
        for s in t.segments[j - 1].nonempty() {
            for ustart in 0..s.len() {
                let piece = &s[ustart..];
                if piece.len() > m + 1 {
                    continue;
                }
                dfs(p, t, j, j, piece.to_vec(), &mut accept, &mut out);
            }
        }
    }
    Ok(out)
}

fn dfs(
    p: &Pattern,
    t: &EdText,
    start: usize,
    cur: usize,
    concat: Vec<Sym>,
    accept: &mut impl FnMut((usize, usize), &[Sym], &mut EnumeratedSpans),
    out: &mut EnumeratedSpans,
) {
    let m = p.m();
    if cur >= t.n() {
        return;
    }
    let next = cur + 1;
    for s in &t.segments[next - 1].strings {
        // close the span at `next`: ε alternative ends as-is, otherwise a
        // nonempty prefix of s
        if s.is_empty() {
            accept((start, next), &concat, out);
        } else {
            for v in 1..=s.len() {
                if concat.len() + v > m + 1 {
                    break;
                }
                let mut cand = concat.clone();
                cand.extend_from_slice(&s[..v]);
                accept((start, next), &cand, out);
            }
        }
        // or keep going with the whole alternative as a middle piece
        if concat.len() + s.len() <= m + 1 {
            let mut longer = concat.clone();
            longer.extend_from_slice(s);
            dfs(p, t, start, next, longer, accept, out);
        }
    }
}

/// Enumerated spans for one mode.
pub fn enumerate_occurrences(
    p: &Pattern,
    t: &EdText,
    mode: Mode,
) -> Result<BTreeSet<(usize, usize)>, OracleError> {
    let all = enumerate_all(p, t)?;
    Ok(match mode {
        Mode::Exact => all.exact,
        Mode::Hamming1 => all.hamming,
        Mode::Edit1 => all.edit,
    })
}

/// Per-boundary state sets of the direct DP: `states[e][j]` = the length-j
/// pattern prefix is a suffix of L(T̃[1..i]) with e errors charged.
#[derive(Clone, PartialEq, Eq, Debug)]
struct Lattice {
    budget: usize,
    hamming: bool,
    // states[e][j]
    states: Vec<Vec<bool>>,
}

impl Lattice {
    fn empty(m: usize, budget: usize, hamming: bool) -> Lattice {
        Lattice {
            budget,
            hamming,
            states: vec![vec![false; m + 1]; budget + 1],
        }
    }

    fn piece_distance(&self, frag: &[Sym], s: &[Sym]) -> Option<usize> {
        if self.hamming {
            hamming_distance(frag, s)
        } else {
            Some(edit_distance(frag, s))
        }
    }

    /// One segment step: new starts from string suffixes plus extensions of
    /// carried states; ε alternatives carry states through unchanged.
    fn step(&self, p: &Pattern, seg: &crate::eds::Segment) -> Lattice {
        let m = p.m();
        let mut next = Lattice::empty(m, self.budget, self.hamming);
        if seg.has_epsilon() {
            next.states = self.states.clone();
        }
        for s in seg.nonempty() {
            // new starts: P[1..j] vs a nonempty suffix of s
            for w in 0..s.len() {
                let suf = &s[w..];
                for j in 0..=m {
                    if let Some(d) = self.piece_distance(&p.syms[..j], suf) {
                        if d <= self.budget {
                            next.states[d][j] = true;
                        }
                    }
                }
            }
            // extensions: P[j+1..j'] vs the whole of s
            for e in 0..=self.budget {
                for j in 0..=m {
                    if !self.states[e][j] {
                        continue;
                    }
                    for j2 in j..=m {
                        if let Some(d) = self.piece_distance(&p.syms[j..j2], s) {
                            if e + d <= self.budget {
                                next.states[e + d][j2] = true;
                            }
                        }
                    }
                }
            }
        }
        next
    }

    fn bits(&self, m: usize) -> PrefixSet {
        PrefixSet::from_iter(
            m,
            (0..=m).filter(|&j| self.states.iter().any(|lvl| lvl[j])),
        )
    }

    fn has_full(&self) -> bool {
        self.states.iter().any(|lvl| *lvl.last().unwrap())
    }
}

/// Did any alignment end in segment i, given the lattice at boundary i−1?
fn ends_here(p: &Pattern, seg: &crate::eds::Segment, prev: &Lattice) -> bool {
    let m = p.m();
    // easy: a substring (possibly ε) of one alternative within budget
    for s in &seg.strings {
        for a in 0..=s.len() {
            for b in a..=s.len() {
                if let Some(d) = prev.piece_distance(&p.syms, &s[a..b]) {
                    if d <= prev.budget {
                        return true;
                    }
                }
            }
        }
    }
    // completion: carried state + a nonempty prefix piece
    for s in seg.nonempty() {
        for v in 1..=s.len() {
            for e in 0..=prev.budget {
                for j in 0..=m {
                    if !prev.states[e][j] {
                        continue;
                    }
                    if let Some(d) = prev.piece_distance(&p.syms[j..], &s[..v]) {
                        if e + d <= prev.budget {
                            return true;
                        }
                    }
                }
            }
        }
    }
    // carried full match ending on an ε alternative
    seg.has_epsilon() && prev.has_full()
}

/// Per-segment (AP_i, 1-AP_i) ground truth for a mode. For Exact mode the
/// two components coincide. 1-AP uses the ≤1-budget convention, so it is a
/// superset of AP in the error modes.
pub fn oracle_ap_sets(
    p: &Pattern,
    t: &EdText,
    mode: Mode,
) -> Result<Vec<(PrefixSet, PrefixSet)>, OracleError> {
    check_desk_scale(p, t)?;
    let m = p.m();
    let mut exact = Lattice::empty(m, 0, false);
    let mut lane = Lattice::empty(m, mode.budget(), mode == Mode::Hamming1);
    let mut out = Vec::with_capacity(t.n());
    for seg in &t.segments {
        exact = exact.step(p, seg);
        lane = lane.step(p, seg);
        out.push((exact.bits(m), lane.bits(m)));
    }
    Ok(out)
}

/// End positions where some alignment within the mode's budget ends.
pub fn oracle_end_set(p: &Pattern, t: &EdText, mode: Mode) -> Result<BTreeSet<usize>, OracleError> {
    check_desk_scale(p, t)?;
    let m = p.m();
    let mut lane = Lattice::empty(m, mode.budget(), mode == Mode::Hamming1);
    let mut ends = BTreeSet::new();
    for (i, seg) in t.segments.iter().enumerate() {
        if ends_here(p, seg, &lane) {
            ends.insert(i + 1);
        }
        lane = lane.step(p, seg);
    }
    Ok(ends)
}

/// Kind-labeled report stream: one report per end segment, strongest kind
/// first (exact beats hamming1 beats edit1), in segment order.
pub fn oracle_reports(
    p: &Pattern,
    t: &EdText,
    mode: Mode,
) -> Result<Vec<OccurrenceReport>, OracleError> {
    let exact = oracle_end_set(p, t, Mode::Exact)?;
    let ham = if mode >= Mode::Hamming1 {
        oracle_end_set(p, t, Mode::Hamming1)?
    } else {
        BTreeSet::new()
    };
    let edit = if mode == Mode::Edit1 {
        oracle_end_set(p, t, Mode::Edit1)?
    } else {
        BTreeSet::new()
    };
    let mut reports = Vec::new();
    for i in 1..=t.n() {
        let kind = if exact.contains(&i) {
            Some(MatchKind::Exact)
        } else if ham.contains(&i) {
            Some(MatchKind::Hamming1)
        } else if edit.contains(&i) {
            Some(MatchKind::Edit1)
        } else {
            None
        };
        if let Some(kind) = kind {
            reports.push(OccurrenceReport {
                end_segment: i,
                kind,
            });
        }
    }
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eds::{parse_eds, remap};

    fn instance(p: &str, t: &str) -> (Pattern, EdText) {
        remap(p.as_bytes(), &parse_eds(t.as_bytes()).unwrap())
    }

    #[test]
    fn edit_distance_basics() {
        let s = |x: &str| x.bytes().map(|b| b as Sym).collect::<Vec<_>>();
        assert_eq!(edit_distance(&s("abc"), &s("abc")), 0);
        assert_eq!(edit_distance(&s("abc"), &s("axc")), 1);
        assert_eq!(edit_distance(&s("kitten"), &s("sitting")), 3);
        assert_eq!(edit_distance(&s(""), &s("abc")), 3);
        // symmetry and triangle inequality on a small sample
        let words: Vec<Vec<Sym>> = ["", "a", "ab", "ba", "abc", "bca", "aab"]
            .iter()
            .map(|w| s(w))
            .collect();
        for x in &words {
            for y in &words {
                assert_eq!(edit_distance(x, y), edit_distance(y, x));
                for z in &words {
                    assert!(edit_distance(x, z) <= edit_distance(x, y) + edit_distance(y, z));
                }
            }
        }
    }

    #[test]
    fn single_segment_identity() {
        let (p, t) = instance("abc", "{abc}");
        assert_eq!(
            enumerate_occurrences(&p, &t, Mode::Exact).unwrap(),
            BTreeSet::from([(1, 1)])
        );
    }

    #[test]
    fn mode_nesting_on_spans() {
        let (p, t) = instance("abca", "{ab,b}{c,}{a,ba}");
        let all = enumerate_all(&p, &t).unwrap();
        assert!(all.exact.is_subset(&all.hamming));
        assert!(all.hamming.is_subset(&all.edit));
    }

    #[test]
    fn epsilon_strings_do_not_spend_errors() {
        // with T̃=[{ε}] no nonempty piece exists: P=ab reaches nothing
        let (p, t) = instance("ab", "{,}");
        let sets = oracle_ap_sets(&p, &t, Mode::Edit1).unwrap();
        assert!(sets[0].0.is_empty());
        assert!(sets[0].1.is_empty());
        assert!(oracle_end_set(&p, &t, Mode::Edit1).unwrap().is_empty());
    }

    #[test]
    fn epsilon_segment_re_reports_ends() {
        let (p, t) = instance("ab", "{ab}{,x}{,y}");
        assert_eq!(
            oracle_end_set(&p, &t, Mode::Exact).unwrap(),
            BTreeSet::from([1, 2, 3])
        );
        // the x/y alternatives must not grow the exact lattice
        let sets = oracle_ap_sets(&p, &t, Mode::Exact).unwrap();
        assert_eq!(sets[2].0.iter().collect::<Vec<_>>(), vec![2]);
    }

    #[test]
    fn single_letter_pattern_edit_mode_matches_everywhere() {
        // d_E(P, ε) = 1: every segment hosts an empty-substring alignment
        let (p, t) = instance("q", "{ab}{,}{zz,w}");
        assert_eq!(
            oracle_end_set(&p, &t, Mode::Edit1).unwrap(),
            BTreeSet::from([1, 2, 3])
        );
        // hamming: length-1 pieces in segments 1 and 3; the end at 1 also
        // carries through the ε alternative to re-report at 2
        assert_eq!(
            oracle_end_set(&p, &t, Mode::Hamming1).unwrap(),
            BTreeSet::from([1, 2, 3])
        );
    }

    #[test]
    fn lattice_ends_agree_with_enumeration_on_hand_instances() {
        let cases = [
            ("abca", "{ab,b}{c,}{a,ba}"),
            ("ab", "{a}{b}{ab}"),
            ("aba", "{ab}{a}{ba}"),
            ("abc", "{x}{abc}{q,c}"),
            ("aa", "{a,}{a,}{a,}"),
            ("ab", "{ba}{ab,a}"),
        ];
        for (ps, ts) in cases {
            let (p, t) = instance(ps, ts);
            let all = enumerate_all(&p, &t).unwrap();
            for (mode, spans) in [
                (Mode::Exact, &all.exact),
                (Mode::Hamming1, &all.hamming),
                (Mode::Edit1, &all.edit),
            ] {
                let want: BTreeSet<usize> = spans.iter().map(|&(_, j2)| j2).collect();
                let got = oracle_end_set(&p, &t, mode).unwrap();
                assert_eq!(got, want, "P={} T={} mode={:?}", ps, ts, mode);
            }
        }
    }

    #[test]
    fn desk_scale_is_enforced() {
        let (p, t) = instance("aaaaaaaaaaaaa", "{a}");
        assert_eq!(
            enumerate_all(&p, &t).err(),
            Some(OracleError::OverDeskScale)
        );
    }

    #[test]
    fn reports_use_strongest_kind() {
        let (p, t) = instance("ab", "{ab}{ax,ab}{xb}");
        let reports = oracle_reports(&p, &t, Mode::Edit1).unwrap();
        let kinds: Vec<(usize, MatchKind)> =
            reports.iter().map(|r| (r.end_segment, r.kind)).collect();
        assert_eq!(kinds[0], (1, MatchKind::Exact));
        assert_eq!(kinds[1], (2, MatchKind::Exact));
        assert!(kinds.contains(&(3, MatchKind::Hamming1)));
    }
}
