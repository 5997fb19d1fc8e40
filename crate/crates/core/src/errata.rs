//! One-mismatch continuation of exact active prefixes through a segment,
//! resolved on a trie rather than by geometry. The trie holds the live
//! pattern suffixes and the segment strings; along every heavy path each
//! string hanging off a light edge is re-inserted with the diverging letter
//! corrected, so one DFS with positional bit lanes reads off every
//! (prefix, string) pair within Hamming distance one.

use crate::bits::PrefixSet;
use crate::eds::{Pattern, Segment, Sym};
use crate::seq::heavy_light;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Ident {
    /// The live pattern suffix P[j+1..m] kept alive by active-prefix bit j.
    PatternSuffix { j: u32 },
    /// The idx-th nonempty segment string in the segment's sorted order.
    SegmentString { idx: u32 },
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct ErrataLabel {
    pub source: Ident,
    /// 1-based position where the stored string differs from its source;
    /// None marks an unmodified string.
    pub pos: Option<u32>,
}

/// Half-open slice of the shared backing.
type Frag = (u32, u32);

#[derive(Clone)]
struct Node {
    parent: u32,
    edge: Vec<Frag>,
    depth: u32,
    children: Vec<(Sym, u32)>,
    labels: Vec<ErrataLabel>,
}

#[derive(Clone)]
pub struct ErrataTree {
    m: usize,
    backing: Vec<Sym>,
    nodes: Vec<Node>,
    seg_slices: Vec<Frag>,
}

fn rope_len(rope: &[Frag]) -> u32 {
    rope.iter().map(|&(a, b)| b - a).sum()
}

fn rope_letter(backing: &[Sym], rope: &[Frag], mut k: u32) -> Sym {
    for &(a, b) in rope {
        if k < b - a {
            return backing[(a + k) as usize];
        }
        k -= b - a;
    }
    unreachable!("offset beyond rope length");
}

fn rope_suffix(rope: &[Frag], mut from: u32) -> Vec<Frag> {
    let mut out = Vec::new();
    for &(a, b) in rope {
        let len = b - a;
        if from >= len {
            from -= len;
            continue;
        }
        out.push((a + from, b));
        from = 0;
    }
    out
}

fn rope_prefix(rope: &[Frag], mut upto: u32) -> Vec<Frag> {
    let mut out = Vec::new();
    for &(a, b) in rope {
        if upto == 0 {
            break;
        }
        let take = upto.min(b - a);
        out.push((a, a + take));
        upto -= take;
    }
    out
}

impl ErrataTree {
    fn new(m: usize, backing: Vec<Sym>, seg_slices: Vec<Frag>) -> ErrataTree {
        ErrataTree {
            m,
            backing,
            nodes: vec![Node {
                parent: 0,
                edge: Vec::new(),
                depth: 0,
                children: Vec::new(),
                labels: Vec::new(),
            }],
            seg_slices,
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn label_count(&self) -> usize {
        self.nodes.iter().map(|n| n.labels.len()).sum()
    }

    pub fn labels(&self) -> impl Iterator<Item = (u32, ErrataLabel)> + '_ {
        self.nodes
            .iter()
            .enumerate()
            .flat_map(|(id, n)| n.labels.iter().map(move |&lb| (id as u32, lb)))
    }

    /// Child id lists per node, in child-letter order.
    pub fn children_lists(&self) -> Vec<Vec<u32>> {
        self.nodes
            .iter()
            .map(|n| n.children.iter().map(|&(_, c)| c).collect())
            .collect()
    }

    pub fn node_string(&self, id: u32) -> Vec<Sym> {
        let mut chain = Vec::new();
        let mut cur = id;
        while cur != 0 {
            chain.push(cur);
            cur = self.nodes[cur as usize].parent;
        }
        let mut out = Vec::new();
        for node in chain.into_iter().rev() {
            for &(a, b) in &self.nodes[node as usize].edge {
                out.extend_from_slice(&self.backing[a as usize..b as usize]);
            }
        }
        out
    }

    fn source_slice(&self, source: Ident) -> Frag {
        match source {
            Ident::PatternSuffix { j } => (j, self.m as u32),
            Ident::SegmentString { idx } => self.seg_slices[idx as usize],
        }
    }

    fn is_ancestor_or_self(&self, anc: u32, node: u32) -> bool {
        let mut cur = node;
        loop {
            if cur == anc {
                return true;
            }
            if cur == 0 {
                return false;
            }
            cur = self.nodes[cur as usize].parent;
        }
    }

    fn insert(&mut self, rope: &[Frag], label: ErrataLabel) {
        let total = rope_len(rope);
        let mut cur = 0u32;
        let mut consumed = 0u32;
        while consumed < total {
            let letter = rope_letter(&self.backing, rope, consumed);
            let slot = self.nodes[cur as usize]
                .children
                .binary_search_by_key(&letter, |&(l, _)| l);
            let child = match slot {
                Err(at) => {
                    let id = self.nodes.len() as u32;
                    self.nodes.push(Node {
                        parent: cur,
                        edge: rope_suffix(rope, consumed),
                        depth: total,
                        children: Vec::new(),
                        labels: vec![label],
                    });
                    self.nodes[cur as usize].children.insert(at, (letter, id));
                    return;
                }
                Ok(at) => self.nodes[cur as usize].children[at].1,
            };
            let edge = self.nodes[child as usize].edge.clone();
            let edge_len = rope_len(&edge);
            let mut t = 0u32;
            while t < edge_len
                && consumed + t < total
                && rope_letter(&self.backing, &edge, t)
                    == rope_letter(&self.backing, rope, consumed + t)
            {
                t += 1;
            }
            if t == edge_len {
                cur = child;
                consumed += edge_len;
                continue;
            }
            // diverged (or ended) inside the edge: split at t ≥ 1
            let mid = self.nodes.len() as u32;
            let mid_depth = self.nodes[cur as usize].depth + t;
            let tail_letter = rope_letter(&self.backing, &edge, t);
            self.nodes.push(Node {
                parent: cur,
                edge: rope_prefix(&edge, t),
                depth: mid_depth,
                children: vec![(tail_letter, child)],
                labels: Vec::new(),
            });
            {
                let old = &mut self.nodes[child as usize];
                old.parent = mid;
                old.edge = rope_suffix(&edge, t);
            }
            let at = self.nodes[cur as usize]
                .children
                .iter()
                .position(|&(_, c)| c == child)
                .expect("child entry present");
            self.nodes[cur as usize].children[at] = (letter, mid);
            if consumed + t == total {
                self.nodes[mid as usize].labels.push(label);
            } else {
                let leaf = self.nodes.len() as u32;
                let leaf_letter = rope_letter(&self.backing, rope, consumed + t);
                self.nodes.push(Node {
                    parent: mid,
                    edge: rope_suffix(rope, consumed + t),
                    depth: total,
                    children: Vec::new(),
                    labels: vec![label],
                });
                let pos = self.nodes[mid as usize]
                    .children
                    .binary_search_by_key(&leaf_letter, |&(l, _)| l)
                    .expect_err("letters differ at the split point");
                self.nodes[mid as usize].children.insert(pos, (leaf_letter, leaf));
            }
            return;
        }
        self.nodes[cur as usize].labels.push(label);
    }
}

/// Trie over the live pattern suffixes {P[j+1..m] : j ∈ ap_prev} and the
/// nonempty segment strings, each terminal node labeled with its sources.
pub fn build_t0(p: &Pattern, ap_prev: &PrefixSet, seg: &Segment) -> ErrataTree {
    let m = p.m();
    let mut backing = p.syms.clone();
    let mut seg_slices = Vec::new();
    for s in seg.nonempty() {
        let a = backing.len() as u32;
        backing.extend_from_slice(s);
        seg_slices.push((a, backing.len() as u32));
    }
    let mut tree = ErrataTree::new(m, backing, seg_slices);
    for idx in 0..tree.seg_slices.len() {
        let slice = tree.seg_slices[idx];
        tree.insert(
            &[slice],
            ErrataLabel {
                source: Ident::SegmentString { idx: idx as u32 },
                pos: None,
            },
        );
    }
    for j in ap_prev.iter() {
        tree.insert(
            &[(j as u32, m as u32)],
            ErrataLabel {
                source: Ident::PatternSuffix { j: j as u32 },
                pos: None,
            },
        );
    }
    tree
}

/// For every string Y hanging off a heavy path behind a light edge, insert Y
/// with the diverging position p corrected to the heavy-path letter, labeled
/// (ι(Y), p). Enumeration runs over the original tree only; corrected strings
/// never spawn further corrections.
pub fn build_t1(t0: &ErrataTree) -> ErrataTree {
    let mut t1 = t0.clone();
    let hld = heavy_light(&t0.children_lists());
    for w in 0..t0.nodes.len() {
        let Some(heavy) = hld.heavy_child[w] else {
            continue;
        };
        let (hs, _) = t0.nodes[heavy as usize].edge[0];
        let fix: Frag = (hs, hs + 1);
        let p = t0.nodes[w].depth + 1;
        for &(_, light) in &t0.nodes[w].children {
            if light == heavy {
                continue;
            }
            let mut stack = vec![light];
            while let Some(v) = stack.pop() {
                for lb in &t0.nodes[v as usize].labels {
                    debug_assert!(lb.pos.is_none(), "enumeration walks the original tree");
                    let (ya, yb) = t0.source_slice(lb.source);
                    debug_assert!(p <= yb - ya, "divergence lies inside the string");
                    let mut rope = Vec::with_capacity(3);
                    if p > 1 {
                        rope.push((ya, ya + p - 1));
                    }
                    rope.push(fix);
                    if ya + p < yb {
                        rope.push((ya + p, yb));
                    }
                    t1.insert(
                        &rope,
                        ErrataLabel {
                            source: lb.source,
                            pos: Some(p),
                        },
                    );
                }
                stack.extend(t0.nodes[v as usize].children.iter().map(|&(_, c)| c));
            }
        }
    }
    t1
}

fn enter(
    tree: &ErrataTree,
    node: u32,
    res: &mut PrefixSet,
    v_hash: &mut PrefixSet,
    v_any: &mut PrefixSet,
    v_pos: &mut [Option<PrefixSet>],
) -> Vec<(Option<u32>, usize)> {
    let m = tree.m;
    let nd = &tree.nodes[node as usize];
    let mut undo = Vec::new();
    // string labels first: a pattern label at the same node pairs with them
    for lb in &nd.labels {
        if let Ident::SegmentString { .. } = lb.source {
            let len = nd.depth as usize;
            if len > m {
                continue;
            }
            match lb.pos {
                None => v_hash.set(len),
                Some(p) => v_pos[p as usize]
                    .get_or_insert_with(|| PrefixSet::new(m))
                    .set(len),
            }
            v_any.set(len);
            undo.push((lb.pos, len));
        }
    }
    for lb in &nd.labels {
        if let Ident::PatternSuffix { j } = lb.source {
            let j = j as usize;
            debug_assert_eq!(nd.depth as usize, m - j, "suffix length fixes the depth");
            match lb.pos {
                None => res.or_shifted(v_any, j),
                Some(p) => {
                    res.or_shifted(v_hash, j);
                    if let Some(vp) = &v_pos[p as usize] {
                        res.or_shifted(vp, j);
                    }
                }
            }
        }
    }
    undo
}

/// Bits j + |Y| for every pair (active-prefix bit j, segment string Y) with
/// d_H(P[j+1..j+|Y|], Y) ≤ 1 — a string label at an ancestor meeting a
/// pattern label below it, modified positions equal or either unmodified.
pub fn search_t1(t1: &ErrataTree) -> PrefixSet {
    let m = t1.m;
    let mut res = PrefixSet::new(m);
    let mut v_hash = PrefixSet::new(m);
    let mut v_any = PrefixSet::new(m);
    let mut v_pos: Vec<Option<PrefixSet>> = vec![None; m + 1];

    let first = enter(t1, 0, &mut res, &mut v_hash, &mut v_any, &mut v_pos);
    let mut stack: Vec<(u32, usize, Vec<(Option<u32>, usize)>)> = vec![(0, 0, first)];
    while let Some(&(node, next, _)) = stack.last() {
        match t1.nodes[node as usize].children.get(next) {
            Some(&(_, child)) => {
                stack.last_mut().expect("nonempty").1 += 1;
                let undo = enter(t1, child, &mut res, &mut v_hash, &mut v_any, &mut v_pos);
                stack.push((child, 0, undo));
            }
            None => {
                let (_, _, undo) = stack.pop().expect("nonempty");
                for (pos, len) in undo {
                    v_any.unset(len);
                    match pos {
                        None => v_hash.unset(len),
                        Some(p) => v_pos[p as usize]
                            .as_mut()
                            .expect("lane was allocated on entry")
                            .unset(len),
                    }
                }
            }
        }
    }
    debug_assert!(v_hash.is_empty(), "scratch lanes must end clean");
    debug_assert!(v_any.is_empty(), "scratch lanes must end clean");
    debug_assert!(
        v_pos.iter().flatten().all(|v| v.is_empty()),
        "scratch lanes must end clean"
    );
    res
}

/// Does the tree witness the pair (x, y): some node labeled (y, p′) lying on
/// the root path of a node labeled (x, p), with p = p′, p unmodified, or p′
/// unmodified?
pub fn node_pair_condition(t1: &ErrataTree, x: Ident, y: Ident) -> bool {
    let xs: Vec<(u32, Option<u32>)> = t1
        .labels()
        .filter(|(_, lb)| lb.source == x)
        .map(|(n, lb)| (n, lb.pos))
        .collect();
    let ys: Vec<(u32, Option<u32>)> = t1
        .labels()
        .filter(|(_, lb)| lb.source == y)
        .map(|(n, lb)| (n, lb.pos))
        .collect();
    for &(un, up) in &xs {
        for &(vn, vp) in &ys {
            let compatible = match (up, vp) {
                (Some(a), Some(b)) => a == b,
                _ => true,
            };
            if compatible && t1.is_ancestor_or_self(vn, un) {
                return true;
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::anchor::{anchor_reporting, build_mu_groups, HAMMING_SUBCASES};
    use crate::oracle::hamming_distance;
    use rand::{Rng, SeedableRng};
    use std::collections::BTreeSet;

    fn pat(s: &str) -> Pattern {
        Pattern {
            syms: s.bytes().map(Sym::from).collect(),
        }
    }

    fn seg(strings: &[&str]) -> Segment {
        Segment::new(
            strings
                .iter()
                .map(|s| s.bytes().map(Sym::from).collect())
                .collect(),
        )
    }

    fn fig5() -> (Pattern, PrefixSet, Segment) {
        let p = pat("bbaaaabababb");
        let ap = PrefixSet::from_iter(12, [1, 2, 4, 7, 8, 9]);
        (p, ap, seg(&["aaa", "bba"]))
    }

    fn psx(j: u32) -> Ident {
        Ident::PatternSuffix { j }
    }

    fn txt(idx: u32) -> Ident {
        Ident::SegmentString { idx }
    }

    #[test]
    fn base_tree_carries_one_unmodified_label_per_source() {
        let (p, ap, s) = fig5();
        let t0 = build_t0(&p, &ap, &s);
        let got: BTreeSet<(Ident, Option<u32>)> =
            t0.labels().map(|(_, lb)| (lb.source, lb.pos)).collect();
        let want: BTreeSet<(Ident, Option<u32>)> =
            [txt(0), txt(1), psx(1), psx(2), psx(4), psx(7), psx(8), psx(9)]
                .into_iter()
                .map(|i| (i, None))
                .collect();
        assert_eq!(got, want);
        assert_eq!(t0.label_count(), 8);
    }

    #[test]
    fn corrected_insertions_match_the_drawn_tree() {
        let (p, ap, s) = fig5();
        let t1 = build_t1(&build_t0(&p, &ap, &s));
        let got: BTreeSet<(Ident, u32)> = t1
            .labels()
            .filter_map(|(_, lb)| lb.pos.map(|p| (lb.source, p)))
            .collect();
        let want: BTreeSet<(Ident, u32)> = [
            (psx(4), 3),
            (psx(9), 2),
            (psx(7), 2),
            (psx(1), 1),
            (psx(8), 1),
            (txt(1), 1),
            (psx(9), 3),
            (psx(8), 3),
            (txt(1), 2),
        ]
        .into_iter()
        .collect();
        assert_eq!(got, want);
        assert_eq!(
            t1.labels().filter(|(_, lb)| lb.pos.is_some()).count(),
            9,
            "each correction inserted exactly once"
        );
    }

    #[test]
    fn corrected_node_strings_differ_from_their_source_exactly_at_pos() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(61);
        for _ in 0..200 {
            let m = rng.gen_range(1..=8);
            let p = Pattern {
                syms: (0..m).map(|_| rng.gen_range(1..=2u32)).collect(),
            };
            let ap = PrefixSet::from_iter(m, (0..m).filter(|_| rng.gen_bool(0.5)));
            let s = Segment::new(
                (0..rng.gen_range(1..=3))
                    .map(|_| {
                        (0..rng.gen_range(1..=5))
                            .map(|_| rng.gen_range(1..=2u32))
                            .collect()
                    })
                    .collect(),
            );
            let t0 = build_t0(&p, &ap, &s);
            let t1 = build_t1(&t0);
            for (node, lb) in t1.labels() {
                let Some(pos) = lb.pos else { continue };
                let stored = t1.node_string(node);
                let (a, b) = t1.source_slice(lb.source);
                let original = &t1.backing[a as usize..b as usize];
                assert_eq!(stored.len(), original.len());
                for (i, (x, y)) in stored.iter().zip(original).enumerate() {
                    if i + 1 == pos as usize {
                        assert_ne!(x, y, "corrected letter must differ");
                    } else {
                        assert_eq!(x, y, "only position {pos} may change");
                    }
                }
            }
        }
    }

    #[test]
    fn nested_prefixes_need_no_corrections() {
        let p = pat("aaa");
        let t0 = build_t0(&p, &PrefixSet::new(3), &seg(&["a", "aa", "aaa"]));
        let t1 = build_t1(&t0);
        assert_eq!(t0.label_count(), t1.label_count());
        assert_eq!(t0.node_count(), t1.node_count());
    }

    #[test]
    fn shared_string_stacks_two_labels_on_one_node() {
        let p = pat("ab");
        let ap = PrefixSet::from_iter(2, [0]);
        let t0 = build_t0(&p, &ap, &seg(&["ab"]));
        assert_eq!(t0.node_count(), 2);
        assert_eq!(t0.label_count(), 2);
        let deep: Vec<_> = t0.labels().filter(|&(n, _)| n != 0).collect();
        assert_eq!(deep.len(), 2);
    }

    #[test]
    fn label_order_inside_a_path_decides_the_pair() {
        // string above, pattern suffix below: pair counts
        let p = pat("ab");
        let ap = PrefixSet::from_iter(2, [0]);
        let t1 = build_t1(&build_t0(&p, &ap, &seg(&["a"])));
        let hits: Vec<usize> = search_t1(&t1).iter().collect();
        assert_eq!(hits, vec![1]);

        // pattern suffix at the root (empty), string below: no pair
        let ap_empty_suffix = PrefixSet::from_iter(2, [2]);
        let t1 = build_t1(&build_t0(&p, &ap_empty_suffix, &seg(&["a"])));
        assert!(search_t1(&t1).is_empty());
    }

    #[test]
    fn search_agrees_with_geometric_mismatch_contribution() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(67);
        for round in 0..500 {
            let m = rng.gen_range(1..=9);
            let p = Pattern {
                syms: (0..m).map(|_| rng.gen_range(1..=3u32)).collect(),
            };
            let ap = PrefixSet::from_iter(m, (0..=m).filter(|_| rng.gen_bool(0.4)));
            let s = Segment::new(
                (0..rng.gen_range(1..=4))
                    .map(|_| {
                        (0..rng.gen_range(0..=6))
                            .map(|_| rng.gen_range(1..=3u32))
                            .collect()
                    })
                    .collect(),
            );
            let t1 = build_t1(&build_t0(&p, &ap, &s));
            let got = search_t1(&t1);

            let groups = build_mu_groups(&p, &ap, &PrefixSet::from_iter(m, 0..=m));
            let geo = anchor_reporting(&groups, &ap, &s, &HAMMING_SUBCASES, m);
            assert_eq!(got, geo, "round {round} p={:?}", p.syms);

            let mut naive = PrefixSet::new(m);
            for j in ap.iter() {
                for y in s.nonempty() {
                    if j + y.len() <= m
                        && hamming_distance(&p.syms[j..j + y.len()], y)
                            .is_some_and(|d| d <= 1)
                    {
                        naive.set(j + y.len());
                    }
                }
            }
            assert_eq!(got, naive, "round {round}");
        }
    }

    #[test]
    fn pair_condition_mirrors_hamming_prefix_relation() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(71);
        for _ in 0..200 {
            let m = rng.gen_range(1..=6);
            let p = Pattern {
                syms: (0..m).map(|_| rng.gen_range(1..=2u32)).collect(),
            };
            let ap = PrefixSet::from_iter(m, (0..m).filter(|_| rng.gen_bool(0.5)));
            let strings: Vec<Vec<Sym>> = (0..rng.gen_range(1..=2))
                .map(|_| {
                    (0..rng.gen_range(1..=4))
                        .map(|_| rng.gen_range(1..=2u32))
                        .collect()
                })
                .collect();
            let s = Segment::new(strings);
            let t1 = build_t1(&build_t0(&p, &ap, &s));
            for j in ap.iter() {
                let x = &p.syms[j..];
                for (idx, y) in s.nonempty().enumerate() {
                    let want = y.len() <= x.len()
                        && hamming_distance(&x[..y.len()], y).is_some_and(|d| d <= 1);
                    let got =
                        node_pair_condition(&t1, psx(j as u32), txt(idx as u32));
                    assert_eq!(got, want, "j={j} y={y:?} p={:?}", p.syms);
                }
            }
        }
    }

    #[test]
    fn label_count_stays_under_the_size_bound() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(73);
        for _ in 0..300 {
            let m = rng.gen_range(1..=16);
            let p = Pattern {
                syms: (0..m).map(|_| rng.gen_range(1..=3u32)).collect(),
            };
            let ap = PrefixSet::from_iter(m, (0..m).filter(|_| rng.gen_bool(0.5)));
            let s = Segment::new(
                (0..rng.gen_range(1..=8))
                    .map(|_| {
                        (0..rng.gen_range(0..=10))
                            .map(|_| rng.gen_range(1..=3u32))
                            .collect()
                    })
                    .collect(),
            );
            let t1 = build_t1(&build_t0(&p, &ap, &s));
            let n_i = s.size_contribution();
            let bound = (m + n_i) as f64 * (((m + n_i) as f64).log2() + 1.0);
            assert!(
                (t1.label_count() as f64) <= bound,
                "labels {} exceed bound {bound}",
                t1.label_count()
            );
        }
    }
}
