//! Error inside the boundary piece of a multi-segment alignment. The piece is
//! a nonempty prefix of a segment string (occurrences ending here) or, after
//! reversing the instance, a nonempty suffix (occurrences starting here).
//! Candidate pieces of each length are grouped into a trie over the prefixes
//! and a trie over their reversals; one pattern part then probes each group
//! with a nested batch of split rectangles.

use crate::anchor::AnchorSubcase;
use crate::bits::PrefixSet;
use crate::eds::{Pattern, Segment, Sym};
use crate::geom::{nested_stab_offline, Rect};
use crate::seq::CompactedTrie;

/// The deduplicated length-μ prefixes of a segment's strings, with forward and
/// backward tries and one rank point per distinct prefix (a permutation, as
/// the offline stabbing sweep requires).
pub struct PrefixGroup {
    pub mu: usize,
    pub points: Vec<(u32, u32)>,
    trie: CompactedTrie,
    rtrie: CompactedTrie,
}

pub struct PrefixGroups {
    m: usize,
    by_mu: Vec<Option<PrefixGroup>>,
}

impl PrefixGroups {
    pub fn group(&self, mu: usize) -> Option<&PrefixGroup> {
        self.by_mu.get(mu).and_then(|g| g.as_ref())
    }
}

/// Build the groups for piece lengths 1..=m+1 (longer pieces cannot sit
/// within one error of any pattern part). All tries share one concatenated
/// backing; equal prefixes from different strings collapse to one rank.
pub fn build_prefix_groups(seg: &Segment, m: usize) -> PrefixGroups {
    let strings: Vec<&[Sym]> = seg.nonempty().collect();
    let mut backing = Vec::new();
    let mut starts = Vec::with_capacity(strings.len());
    for s in &strings {
        starts.push(backing.len());
        backing.extend_from_slice(s);
    }
    let rev_backing: Vec<Sym> = backing.iter().rev().copied().collect();
    let total = backing.len();
    let longest = strings.iter().map(|s| s.len()).max().unwrap_or(0);
    let top = longest.min(m + 1);
    let mut by_mu: Vec<Option<PrefixGroup>> = Vec::with_capacity(top + 1);
    by_mu.push(None);
    for mu in 1..=top {
        let mut members = Vec::new();
        let mut rmembers = Vec::new();
        for (idx, s) in strings.iter().enumerate() {
            if s.len() >= mu {
                members.push((starts[idx], starts[idx] + mu));
                rmembers.push((total - starts[idx] - mu, total - starts[idx]));
            }
        }
        if members.is_empty() {
            by_mu.push(None);
            continue;
        }
        let trie = CompactedTrie::build(&backing, &members);
        let rtrie = CompactedTrie::build(&rev_backing, &rmembers);
        let count = trie.rank_count() as usize;
        debug_assert_eq!(count, rtrie.rank_count() as usize);
        let mut points = vec![(0u32, 0u32); count + 1];
        for t in 0..members.len() {
            let f = trie.member_rank(t);
            points[f as usize] = (f, rtrie.member_rank(t));
        }
        points.remove(0);
        by_mu.push(Some(PrefixGroup {
            mu,
            points,
            trie,
            rtrie,
        }));
    }
    PrefixGroups { m, by_mu }
}

fn group_len(sub: AnchorSubcase, m: usize, lambda: usize) -> Option<usize> {
    let key = match sub {
        AnchorSubcase::Mismatch => m.checked_sub(lambda),
        AnchorSubcase::DeletionInP => m.checked_sub(lambda + 1),
        AnchorSubcase::InsertionInP => Some(m + 1 - lambda),
    };
    key.filter(|&k| k >= 1)
}

fn split_total(sub: AnchorSubcase, mu: usize) -> usize {
    match sub {
        AnchorSubcase::Mismatch | AnchorSubcase::InsertionInP => mu - 1,
        AnchorSubcase::DeletionInP => mu,
    }
}

/// For each λ: does some group member align with P[λ+1..m] under one error of
/// the admitted shapes? The y side spells prefixes of the reversed pattern —
/// independent of λ, so it is walked once per group; per λ the x side spells
/// P[λ+1..], yielding shrinking x-intervals against growing y-intervals.
fn scan_lambdas(
    p: &Pattern,
    groups: &PrefixGroups,
    lambdas: &[usize],
    subcases: &[AnchorSubcase],
) -> Vec<bool> {
    let m = p.m();
    debug_assert_eq!(m, groups.m);
    let rev: Vec<Sym> = p.syms.iter().rev().copied().collect();
    let mut y_ivs: Vec<Vec<Option<(u32, u32)>>> = Vec::with_capacity(groups.by_mu.len());
    for slot in &groups.by_mu {
        let Some(g) = slot else {
            y_ivs.push(Vec::new());
            continue;
        };
        let depth = g.mu.min(m);
        let mut ivs = Vec::with_capacity(depth + 1);
        let mut sp = g.rtrie.speller();
        ivs.push(sp.interval());
        for &c in rev.iter().take(depth) {
            ivs.push(sp.step(c));
        }
        y_ivs.push(ivs);
    }

    let mut hits = vec![false; lambdas.len()];
    for (slot, &lambda) in hits.iter_mut().zip(lambdas) {
        'subcase: for &sub in subcases {
            let Some(mu) = group_len(sub, m, lambda) else {
                continue;
            };
            let Some(g) = groups.group(mu) else { continue };
            let total = split_total(sub, mu);
            let y_iv = &y_ivs[mu];
            let mut rects = Vec::with_capacity(total + 1);
            let mut sp = g.trie.speller();
            let mut x_iv = sp.interval();
            for h in 0..=total {
                if h > 0 {
                    x_iv = sp.step(p.syms[lambda + h - 1]);
                }
                let Some((x1, x2)) = x_iv else { break };
                let Some((y1, y2)) = y_iv[total - h] else { continue };
                rects.push(Rect::new(x1, x2, y1, y2).expect("spelled intervals"));
            }
            if rects.is_empty() {
                continue;
            }
            let stabbed = nested_stab_offline(&g.points, &rects)
                .expect("rank points form a permutation and truncated spells stay nested");
            if stabbed.contains(&true) {
                *slot = true;
                break 'subcase;
            }
        }
    }
    hits
}

/// Does an occurrence end at this segment with its error inside the last
/// piece? The piece is a nonempty prefix of a segment string; everything
/// before it extends an exact active prefix λ.
pub fn prefix_case_report(
    ap_prev: &PrefixSet,
    groups: &PrefixGroups,
    p: &Pattern,
    subcases: &[AnchorSubcase],
) -> bool {
    let lambdas: Vec<usize> = ap_prev.iter().collect();
    scan_lambdas(p, groups, &lambdas, subcases).contains(&true)
}

/// Active-prefix bits opened by occurrences starting at this segment with the
/// error inside the first piece: bit j is set when some nonempty suffix of a
/// segment string aligns with P[1..j] under at most one admitted error.
pub fn suffix_case_contribution(
    seg: &Segment,
    p: &Pattern,
    subcases: &[AnchorSubcase],
) -> PrefixSet {
    let m = p.m();
    let mut out = PrefixSet::new(m);
    if seg.nonempty().next().is_none() {
        return out;
    }
    let rev_seg = Segment::new(
        seg.nonempty()
            .map(|s| s.iter().rev().copied().collect())
            .collect(),
    );
    let p_rev = p.reversed();
    let groups = build_prefix_groups(&rev_seg, m);
    let lambdas: Vec<usize> = (0..=m).collect();
    let hits = scan_lambdas(&p_rev, &groups, &lambdas, subcases);
    for (hat, hit) in hits.into_iter().enumerate() {
        if hit {
            out.set(m - hat);
        }
    }
    out
}
