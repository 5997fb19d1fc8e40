//! Error strictly inside a middle segment: the pattern part consumed at the
//! segment is a fragment P[λ+1..λ+μ] between an exact active prefix λ and an
//! exact continuation. Fragments are grouped by gap length μ; each segment
//! string yields one rectangle per prefix/suffix split, and a fragment is
//! extended iff its (forward rank, backward rank) point is covered.

use crate::bits::PrefixSet;
use crate::eds::{Pattern, Segment, Sym};
use crate::geom::{GridStabbing, PointEmptiness, Rect, RectStabbing};
use crate::seq::CompactedTrie;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnchorSubcase {
    /// One substituted letter: |S| = μ, matched parts h + k = μ − 1.
    Mismatch,
    /// One pattern letter unmatched: |S| = μ − 1, matched parts cover S.
    DeletionInP,
    /// One string letter unmatched: |S| = μ + 1, matched parts h + k = μ.
    InsertionInP,
}

pub const EDIT_SUBCASES: [AnchorSubcase; 3] = [
    AnchorSubcase::Mismatch,
    AnchorSubcase::DeletionInP,
    AnchorSubcase::InsertionInP,
];
pub const HAMMING_SUBCASES: [AnchorSubcase; 1] = [AnchorSubcase::Mismatch];

impl AnchorSubcase {
    /// Segment-string length that feeds a μ-group under this subcase.
    pub fn string_len(&self, mu: usize) -> Option<usize> {
        match self {
            AnchorSubcase::Mismatch => Some(mu),
            AnchorSubcase::DeletionInP => mu.checked_sub(1).filter(|&l| l >= 1),
            AnchorSubcase::InsertionInP => Some(mu + 1),
        }
    }

    /// Total matched length h + k per split for a string of this subcase.
    fn split_total(&self, s_len: usize) -> usize {
        match self {
            AnchorSubcase::Mismatch | AnchorSubcase::InsertionInP => s_len - 1,
            AnchorSubcase::DeletionInP => s_len,
        }
    }
}

/// All fragments P[λ+1..λ+μ] sharing one gap length μ, with the forward trie
/// over the fragments, the backward trie over their reversals, and one rank
/// point per fragment.
pub struct MuGroup {
    pub mu: usize,
    /// 0-based λ per fragment, ascending.
    pub lambdas: Vec<u32>,
    pub points: Vec<(u32, u32)>,
    trie: CompactedTrie,
    rtrie: CompactedTrie,
}

impl MuGroup {
    /// Rectangles contributed by one segment string: one per split (h, k),
    /// pairing the interval of fragments starting with S[1..h] against the
    /// interval of fragments ending with the last k letters of S. Splits
    /// whose spell failed on either side are dropped.
    pub fn rects_for_string(&self, s: &[Sym], subcase: AnchorSubcase) -> Vec<Rect> {
        debug_assert_eq!(Some(s.len()), subcase.string_len(self.mu));
        let total = subcase.split_total(s.len());
        let mut y_iv = Vec::with_capacity(total + 1);
        y_iv.push(self.rtrie.speller().interval());
        {
            let mut sp = self.rtrie.speller();
            for &c in s.iter().rev().take(total) {
                y_iv.push(sp.step(c));
            }
        }
        let mut out = Vec::new();
        let mut x_sp = self.trie.speller();
        let mut x_iv = x_sp.interval();
        for h in 0..=total {
            if h > 0 {
                x_iv = x_sp.step(s[h - 1]);
            }
            let Some((x1, x2)) = x_iv else { break };
            if let Some(Some((y1, y2))) = y_iv.get(total - h) {
                if x1 <= x2 && *y1 <= *y2 {
                    out.push(Rect::new(x1, x2, *y1, *y2).expect("spelled intervals"));
                }
            }
        }
        out
    }

    pub fn emptiness(&self) -> PointEmptiness {
        PointEmptiness::build(&self.points)
    }
}

/// Group the admissible (λ, ρ) pairs by μ = m − λ − ρ ≥ 1 and build the
/// per-group tries. `rhos` carries the allowed exact-suffix lengths: the
/// decision sweep derives it from the active-suffix set of the next segment,
/// reporting passes all of [0, m].
pub fn build_mu_groups(p: &Pattern, lambdas: &PrefixSet, rhos: &PrefixSet) -> Vec<MuGroup> {
    let m = p.m();
    let mut by_mu: Vec<Vec<u32>> = vec![Vec::new(); m + 1];
    for l in lambdas.iter() {
        for r in rhos.iter() {
            if l + r < m {
                by_mu[m - l - r].push(l as u32);
            }
        }
    }
    let rev: Vec<Sym> = p.syms.iter().rev().copied().collect();
    let mut groups = Vec::new();
    for (mu, lam) in by_mu.into_iter().enumerate() {
        if lam.is_empty() {
            continue;
        }
        let frags: Vec<(usize, usize)> = lam
            .iter()
            .map(|&l| (l as usize, l as usize + mu))
            .collect();
        // the reversed fragment starts at ρ = m − λ − μ in the reversed pattern
        let rfrags: Vec<(usize, usize)> = lam
            .iter()
            .map(|&l| {
                let rho = m - l as usize - mu;
                (rho, rho + mu)
            })
            .collect();
        let trie = CompactedTrie::build(&p.syms, &frags);
        let rtrie = CompactedTrie::build(&rev, &rfrags);
        let points = (0..lam.len())
            .map(|t| (trie.member_rank(t), rtrie.member_rank(t)))
            .collect();
        groups.push(MuGroup {
            mu,
            lambdas: lam,
            points,
            trie,
            rtrie,
        });
    }
    groups
}

/// Does any string admit a split whose rectangle covers a fragment point?
/// `strings` must already be filtered to the subcase's length key, and
/// `points` built from this group.
pub fn anchor_decision(
    group: &MuGroup,
    points: &PointEmptiness,
    strings: &[&[Sym]],
    subcase: AnchorSubcase,
) -> bool {
    strings.iter().any(|s| {
        group
            .rects_for_string(s, subcase)
            .iter()
            .any(|r| !points.is_empty(r))
    })
}

fn reporting_with<F>(
    groups: &[MuGroup],
    ap_prev: &PrefixSet,
    seg: &Segment,
    subcases: &[AnchorSubcase],
    m: usize,
    mut stab_group: F,
) -> PrefixSet
where
    F: FnMut(&MuGroup, &[Rect], &mut PrefixSet),
{
    let mut out = PrefixSet::new(m);
    // gap of length zero: a single spurious letter between the active prefix
    // and its exact continuation; no fragment trie is involved
    if subcases.contains(&AnchorSubcase::InsertionInP)
        && seg.nonempty().any(|s| s.len() == 1)
    {
        out.union_with(ap_prev);
    }
    for group in groups {
        let mut rects = Vec::new();
        for s in seg.nonempty() {
            for sub in subcases {
                if sub.string_len(group.mu) == Some(s.len()) {
                    rects.extend(group.rects_for_string(s, *sub));
                }
            }
        }
        if rects.is_empty() {
            continue;
        }
        stab_group(group, &rects, &mut out);
    }
    out
}

/// 1-error active-prefix bits contributed by this segment's anchor case:
/// bit λ + μ for every fragment whose point is stabbed. Spends the error
/// budget, so exact extensions (distance 0) are also admitted.
pub fn anchor_reporting(
    groups: &[MuGroup],
    ap_prev: &PrefixSet,
    seg: &Segment,
    subcases: &[AnchorSubcase],
    m: usize,
) -> PrefixSet {
    reporting_with(groups, ap_prev, seg, subcases, m, |group, rects, out| {
        let stab = RectStabbing::build(rects);
        for (t, &(x, y)) in group.points.iter().enumerate() {
            if stab.stabbed(x, y) {
                out.set(group.lambdas[t] as usize + group.mu);
            }
        }
    })
}

/// Same contract as [`anchor_reporting`], resolved through the dense
/// prefix-sum grid; outputs are bit-identical.
pub fn anchor_reporting_grid(
    groups: &[MuGroup],
    ap_prev: &PrefixSet,
    seg: &Segment,
    subcases: &[AnchorSubcase],
    m: usize,
) -> PrefixSet {
    reporting_with(groups, ap_prev, seg, subcases, m, |group, rects, out| {
        let grid = GridStabbing::build(rects.iter(), m)
            .expect("rank coordinates stay within the pattern length");
        for (t, &(x, y)) in group.points.iter().enumerate() {
            if grid.stabbed(x, y) {
                out.set(group.lambdas[t] as usize + group.mu);
            }
        }
    })
}
