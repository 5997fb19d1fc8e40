//! Compacted trie over string fragments of a shared backing text, built by
//! sorting the members and stack-merging adjacent longest common prefixes.

use super::sa::{sorted_substrings, Lce};
use crate::eds::Sym;

#[derive(Debug)]
struct Node {
    parent: u32,
    edge_start: u32,
    edge_len: u32,
    depth: u32,
    children: Vec<u32>,
    payload: Vec<u32>,
    lo: u32,
    hi: u32,
}

/// Trie over a multiset of fragments (`members`) of one backing string.
/// Equal fragments share a node and a rank; every distinct member gets a
/// rank in lexicographic order, and each node knows the rank interval
/// `[lo, hi]` of the members in its subtree (empty iff `lo > hi`).
#[derive(Debug)]
pub struct CompactedTrie {
    backing: Vec<Sym>,
    nodes: Vec<Node>,
    member_rank: Vec<u32>,
    rank_count: u32,
}

impl CompactedTrie {
    /// `members` are half-open fragments of `backing`; they do not need to
    /// be sorted or distinct. Panics if a fragment is out of bounds.
    pub fn build(backing: &[Sym], members: &[(usize, usize)]) -> CompactedTrie {
        let member_rank =
            sorted_substrings(backing, members).expect("fragment out of bounds");
        let rank_count = member_rank.iter().copied().max().unwrap_or(0);
        let mut order: Vec<usize> = (0..members.len()).collect();
        order.sort_unstable_by_key(|&i| (member_rank[i], i));

        let lce = Lce::new(backing);
        let frag_lcp = |a: (usize, usize), b: (usize, usize)| {
            lce.lcp(a.0, b.0).min(a.1 - a.0).min(b.1 - b.0)
        };

        let mut nodes = vec![Node {
            parent: 0,
            edge_start: 0,
            edge_len: 0,
            depth: 0,
            children: Vec::new(),
            payload: Vec::new(),
            lo: 1,
            hi: 0,
        }];
        // stack holds the node path of the most recently inserted member
        let mut stack: Vec<u32> = vec![0];
        let mut prev: Option<(usize, usize)> = None;
        for &id in &order {
            let (start, end) = members[id];
            let len = end - start;
            if let Some(p) = prev {
                if p.1 - p.0 == len && frag_lcp(p, (start, end)) == len {
                    // duplicate of the previous member: same node
                    let node = *stack.last().expect("stack never empty");
                    nodes[node as usize].payload.push(id as u32);
                    continue;
                }
            }
            if len == 0 {
                // the empty fragment lives at the root; it sorts first, so
                // the stack is still just the root
                nodes[0].payload.push(id as u32);
                prev = Some((start, end));
                continue;
            }
            let l = prev.map_or(0, |p| frag_lcp(p, (start, end)));
            let mut dangling: Option<u32> = None;
            while nodes[*stack.last().expect("rooted") as usize].depth as usize > l {
                dangling = stack.pop();
            }
            let top = *stack.last().expect("root has depth 0 <= l");
            let attach = if nodes[top as usize].depth as usize == l {
                top
            } else {
                // split the dangling child's incoming edge at depth l
                let child = dangling.expect("a deeper node was popped");
                let head = l as u32 - nodes[top as usize].depth;
                let mid = nodes.len() as u32;
                nodes.push(Node {
                    parent: top,
                    edge_start: nodes[child as usize].edge_start,
                    edge_len: head,
                    depth: l as u32,
                    children: vec![child],
                    payload: Vec::new(),
                    lo: 1,
                    hi: 0,
                });
                nodes[child as usize].parent = mid;
                nodes[child as usize].edge_start += head;
                nodes[child as usize].edge_len -= head;
                let slot = nodes[top as usize]
                    .children
                    .iter()
                    .position(|&c| c == child)
                    .expect("dangling node is a child of the stack top");
                nodes[top as usize].children[slot] = mid;
                stack.push(mid);
                mid
            };
            let leaf = nodes.len() as u32;
            nodes.push(Node {
                parent: attach,
                edge_start: (start + l) as u32,
                edge_len: (len - l) as u32,
                depth: len as u32,
                children: Vec::new(),
                payload: vec![id as u32],
                lo: 1,
                hi: 0,
            });
            // members arrive in ascending order, so the new child's first
            // letter is strictly larger than its siblings'
            nodes[attach as usize].children.push(leaf);
            stack.push(leaf);
            prev = Some((start, end));
        }

        let mut trie = CompactedTrie {
            backing: backing.to_vec(),
            nodes,
            member_rank,
            rank_count,
        };
        trie.fill_intervals();
        trie
    }

    fn fill_intervals(&mut self) {
        // post-order walk; child node indices are not ordered relative to
        // their parents, so an explicit stack is required
        let mut visit: Vec<(u32, bool)> = vec![(0, false)];
        while let Some((v, expanded)) = visit.pop() {
            if !expanded {
                visit.push((v, true));
                for &c in &self.nodes[v as usize].children {
                    visit.push((c, false));
                }
                continue;
            }
            let mut lo = u32::MAX;
            let mut hi = 0u32;
            for &id in &self.nodes[v as usize].payload {
                let r = self.member_rank[id as usize];
                lo = lo.min(r);
                hi = hi.max(r);
            }
            for &c in &self.nodes[v as usize].children {
                let child = &self.nodes[c as usize];
                lo = lo.min(child.lo);
                hi = hi.max(child.hi);
            }
            let node = &mut self.nodes[v as usize];
            if lo == u32::MAX {
                node.lo = 1;
                node.hi = 0;
            } else {
                node.lo = lo;
                node.hi = hi;
            }
        }
    }

    /// Lexicographic rank (1-based, ties equal) of the `id`-th input member.
    pub fn member_rank(&self, id: usize) -> u32 {
        self.member_rank[id]
    }

    /// Number of distinct members, which is also the largest rank.
    pub fn rank_count(&self) -> u32 {
        self.rank_count
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn node_interval(&self, node: u32) -> (u32, u32) {
        let n = &self.nodes[node as usize];
        (n.lo, n.hi)
    }

    pub fn node_parent(&self, node: u32) -> u32 {
        self.nodes[node as usize].parent
    }

    pub fn node_depth(&self, node: u32) -> u32 {
        self.nodes[node as usize].depth
    }

    pub fn children_of(&self, node: u32) -> &[u32] {
        &self.nodes[node as usize].children
    }

    pub fn payload_of(&self, node: u32) -> &[u32] {
        &self.nodes[node as usize].payload
    }

    /// First letter of the edge entering `node`; `None` for the root.
    pub fn edge_first_letter(&self, node: u32) -> Option<Sym> {
        let n = &self.nodes[node as usize];
        (n.edge_len > 0).then(|| self.backing[n.edge_start as usize])
    }

    pub fn speller(&self) -> Speller<'_> {
        Speller {
            trie: self,
            node: 0,
            consumed: 0,
            depth: 0,
            alive: true,
        }
    }
}

/// Incremental letter-by-letter descent. After each successful step the
/// speller reports the rank interval of members below the current position;
/// a failed step is permanent.
pub struct Speller<'a> {
    trie: &'a CompactedTrie,
    node: u32,
    consumed: u32,
    depth: u32,
    alive: bool,
}

impl<'a> Speller<'a> {
    /// Consume one letter; returns the rank interval of the subtree the
    /// descent is now in, or `None` if the descent has failed.
    pub fn step(&mut self, c: Sym) -> Option<(u32, u32)> {
        if !self.alive {
            return None;
        }
        let nd = &self.trie.nodes[self.node as usize];
        if self.consumed < nd.edge_len {
            if self.trie.backing[(nd.edge_start + self.consumed) as usize] == c {
                self.consumed += 1;
                self.depth += 1;
                return Some((nd.lo, nd.hi));
            }
            self.alive = false;
            return None;
        }
        let found = nd.children.binary_search_by_key(&c, |&ch| {
            self.trie
                .edge_first_letter(ch)
                .expect("non-root edges are nonempty")
        });
        match found {
            Ok(k) => {
                self.node = nd.children[k];
                self.consumed = 1;
                self.depth += 1;
                let entered = &self.trie.nodes[self.node as usize];
                Some((entered.lo, entered.hi))
            }
            Err(_) => {
                self.alive = false;
                None
            }
        }
    }

    pub fn alive(&self) -> bool {
        self.alive
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    /// Current rank interval (the root interval before any step), or `None`
    /// after a failure.
    pub fn interval(&self) -> Option<(u32, u32)> {
        self.alive.then(|| {
            let n = &self.trie.nodes[self.node as usize];
            (n.lo, n.hi)
        })
    }

    /// Member ids whose string ends exactly at the current position (empty
    /// mid-edge or after failure).
    pub fn at_payload(&self) -> &[u32] {
        if !self.alive {
            return &[];
        }
        let nd = &self.trie.nodes[self.node as usize];
        if self.consumed == nd.edge_len {
            &nd.payload
        } else {
            &[]
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn syms(s: &str) -> Vec<Sym> {
        s.bytes().map(Sym::from).collect()
    }

    /// Backing + fragment list from whole strings, one fragment per string.
    fn from_strings(strs: &[&str]) -> (Vec<Sym>, Vec<(usize, usize)>) {
        let mut backing = Vec::new();
        let mut members = Vec::new();
        for s in strs {
            let start = backing.len();
            backing.extend(syms(s));
            members.push((start, backing.len()));
        }
        (backing, members)
    }

    fn spell_str<'a>(trie: &'a CompactedTrie, s: &str) -> Speller<'a> {
        let mut sp = trie.speller();
        for c in syms(s) {
            sp.step(c);
        }
        sp
    }

    #[test]
    fn four_string_trie_intervals() {
        let (backing, members) = from_strings(&["baa", "aaa", "aba", "bab"]);
        let trie = CompactedTrie::build(&backing, &members);
        assert_eq!(trie.rank_count(), 4);
        // ranks follow lexicographic order: aaa=1, aba=2, baa=3, bab=4
        assert_eq!(trie.member_rank(1), 1);
        assert_eq!(trie.member_rank(2), 2);
        assert_eq!(trie.member_rank(0), 3);
        assert_eq!(trie.member_rank(3), 4);

        let sp = spell_str(&trie, "aa");
        assert_eq!(sp.interval(), Some((1, 1)));

        let sp = spell_str(&trie, "bb");
        assert!(!sp.alive());
        assert_eq!(sp.interval(), None);

        assert_eq!(trie.speller().interval(), Some((1, 4)));
    }

    #[test]
    fn duplicates_share_a_node_and_rank() {
        let (backing, members) = from_strings(&["ana", "banana", "ana"]);
        let trie = CompactedTrie::build(&backing, &members);
        assert_eq!(trie.rank_count(), 2);
        assert_eq!(trie.member_rank(0), trie.member_rank(2));
        let sp = spell_str(&trie, "ana");
        let payload = sp.at_payload();
        assert_eq!(payload, &[0, 2]);
    }

    #[test]
    fn member_that_is_a_prefix_of_another_keeps_its_payload() {
        let (backing, members) = from_strings(&["ab", "abc"]);
        let trie = CompactedTrie::build(&backing, &members);
        let sp = spell_str(&trie, "ab");
        assert_eq!(sp.at_payload(), &[0]);
        assert_eq!(sp.interval(), Some((1, 2)));
        let sp = spell_str(&trie, "abc");
        assert_eq!(sp.at_payload(), &[1]);
        assert_eq!(sp.interval(), Some((2, 2)));
    }

    #[test]
    fn empty_fragment_lives_at_the_root() {
        let backing = syms("xy");
        let trie = CompactedTrie::build(&backing, &[(0, 0), (0, 2)]);
        assert_eq!(trie.member_rank(0), 1);
        assert_eq!(trie.member_rank(1), 2);
        assert_eq!(trie.payload_of(0), &[0]);
        assert_eq!(trie.speller().interval(), Some((1, 2)));
    }

    #[test]
    fn empty_trie_has_empty_root_interval() {
        let trie = CompactedTrie::build(&[], &[]);
        let (lo, hi) = trie.node_interval(0);
        assert!(lo > hi);
        let mut sp = trie.speller();
        assert_eq!(sp.step(1), None);
    }

    fn check_structural_invariants(trie: &CompactedTrie) {
        for v in 0..trie.node_count() as u32 {
            let kids = trie.children_of(v);
            // no unary nodes without payload (root exempt)
            if v != 0 && kids.len() == 1 {
                assert!(!trie.payload_of(v).is_empty(), "unary node {v} lacks payload");
            }
            // children sorted strictly by first edge letter
            for w in kids.windows(2) {
                let a = trie.edge_first_letter(w[0]).unwrap();
                let b = trie.edge_first_letter(w[1]).unwrap();
                assert!(a < b, "children out of order");
            }
            // interval nesting
            let (lo, hi) = trie.node_interval(v);
            for &c in kids {
                let (clo, chi) = trie.node_interval(c);
                assert!(lo <= clo && chi <= hi, "child interval escapes parent");
            }
        }
    }

    #[test]
    fn random_tries_preserve_invariants_and_spell_their_members() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let sigma = rng.gen_range(1..=3u32);
            let count = rng.gen_range(1..=12);
            let mut backing = Vec::new();
            let mut members = Vec::new();
            for _ in 0..count {
                let len = rng.gen_range(0..=6);
                let start = backing.len();
                for _ in 0..len {
                    backing.push(rng.gen_range(0..sigma));
                }
                members.push((start, backing.len()));
            }
            let trie = CompactedTrie::build(&backing, &members);
            check_structural_invariants(&trie);
            for (id, &(s, e)) in members.iter().enumerate() {
                let mut sp = trie.speller();
                for &c in &backing[s..e] {
                    assert!(sp.step(c).is_some(), "member must spell through");
                }
                assert_eq!(sp.depth() as usize, e - s);
                assert!(
                    sp.at_payload().contains(&(id as u32)),
                    "member must end at its payload node"
                );
                // the interval at the end of a member's descent contains
                // exactly the members having it as a prefix
                let (lo, hi) = sp.interval().unwrap();
                let r = trie.member_rank(id);
                assert!(lo <= r && r <= hi);
                for (jd, &(s2, e2)) in members.iter().enumerate() {
                    let r2 = trie.member_rank(jd);
                    let is_ext = e2 - s2 >= e - s && backing[s2..e2].starts_with(&backing[s..e]);
                    assert_eq!(
                        lo <= r2 && r2 <= hi,
                        is_ext,
                        "interval must match prefix-extension set"
                    );
                }
            }
        }
    }

    #[test]
    fn spelling_reports_intervals_matching_naive_prefix_filter() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(19);
        for _ in 0..300 {
            let count = rng.gen_range(1..=8);
            let mut backing = Vec::new();
            let mut members = Vec::new();
            for _ in 0..count {
                let len = rng.gen_range(1..=5);
                let start = backing.len();
                for _ in 0..len {
                    backing.push(rng.gen_range(0..2u32));
                }
                members.push((start, backing.len()));
            }
            let trie = CompactedTrie::build(&backing, &members);
            let probe: Vec<Sym> = (0..rng.gen_range(0..=6)).map(|_| rng.gen_range(0..2u32)).collect();
            let mut sp = trie.speller();
            let mut alive_prefix = 0usize;
            for (k, &c) in probe.iter().enumerate() {
                if sp.step(c).is_some() {
                    alive_prefix = k + 1;
                } else {
                    break;
                }
            }
            let matching: Vec<u32> = members
                .iter()
                .enumerate()
                .filter(|(_, &(s, e))| {
                    backing[s..e].starts_with(&probe[..alive_prefix])
                })
                .map(|(id, _)| trie.member_rank(id))
                .collect();
            match sp.interval() {
                Some((lo, hi)) => {
                    let lo2 = matching.iter().copied().min().unwrap();
                    let hi2 = matching.iter().copied().max().unwrap();
                    assert_eq!((lo, hi), (lo2, hi2));
                }
                None => {
                    // descent failed strictly inside probe: no member starts
                    // with the prefix extended by the letter that failed
                    let extended = &probe[..alive_prefix + 1];
                    assert!(
                        members
                            .iter()
                            .all(|&(s, e)| !backing[s..e].starts_with(extended)),
                        "descent failed although a member extends the probe"
                    );
                    let _ = matching;
                }
            }
        }
    }
}
