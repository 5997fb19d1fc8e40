//! `PrefixSet`: a bit vector over prefix lengths `[0, m]`.
//!
//! Houses the active-prefix style sets. Index j set means "the length-j
//! prefix is active". Index 0 is reserved for states that have consumed no
//! pattern letters (used by the edit lane for leading insertions); the
//! plain active-prefix sets only ever populate `[1, m]`.

/// Bit set over `0..=m`, word-packed. The only bulk operation the matching
/// engine needs besides union is the shifted OR.
#[derive(Clone, PartialEq, Eq)]
pub struct PrefixSet {
    m: usize,
    words: Vec<u64>,
}

impl PrefixSet {
    /// Empty set over indices `0..=m`.
    pub fn new(m: usize) -> Self {
        PrefixSet {
            m,
            words: vec![0u64; m / 64 + 1],
        }
    }

    pub fn from_iter<I: IntoIterator<Item = usize>>(m: usize, it: I) -> Self {
        let mut s = PrefixSet::new(m);
        for j in it {
            s.set(j);
        }
        s
    }

    /// Largest admissible index (the pattern length).
    pub fn max_index(&self) -> usize {
        self.m
    }

    pub fn set(&mut self, j: usize) {
        assert!(j <= self.m, "index {} out of range 0..={}", j, self.m);
        self.words[j / 64] |= 1u64 << (j % 64);
    }

    pub fn unset(&mut self, j: usize) {
        assert!(j <= self.m, "index {} out of range 0..={}", j, self.m);
        self.words[j / 64] &= !(1u64 << (j % 64));
    }

    pub fn contains(&self, j: usize) -> bool {
        j <= self.m && self.words[j / 64] >> (j % 64) & 1 == 1
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn clear(&mut self) {
        for w in &mut self.words {
            *w = 0;
        }
    }

    pub fn union_with(&mut self, other: &PrefixSet) {
        assert_eq!(self.m, other.m);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &PrefixSet) {
        assert_eq!(self.m, other.m);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    /// `self |= other << k`; bits shifted past index m are dropped.
    pub fn or_shifted(&mut self, other: &PrefixSet, k: usize) {
        assert_eq!(self.m, other.m);
        if k > self.m {
            return;
        }
        let (wshift, bshift) = (k / 64, (k % 64) as u32);
        let nw = self.words.len();
        for (i, &w) in other.words.iter().enumerate() {
            if w == 0 {
                continue;
            }
            let t = i + wshift;
            if t < nw {
                self.words[t] |= w << bshift;
            }
            if bshift > 0 && t + 1 < nw {
                self.words[t + 1] |= w >> (64 - bshift);
            }
        }
        self.mask_tail();
    }

    /// Indices of set bits in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + b)
                }
            })
        })
    }

    fn mask_tail(&mut self) {
        let last = self.words.len() - 1;
        let used = self.m % 64 + 1;
        if used < 64 {
            self.words[last] &= (1u64 << used) - 1;
        }
    }
}

impl std::fmt::Debug for PrefixSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
