//! Seeded random instance generation, with optional pattern planting.
//!
//! Used by the CLI `gen` subcommand and by the randomized test batteries.
//! Everything is deterministic for a fixed seed (ChaCha8).

use crate::eds::EdBytes;
use rand::Rng;

#[derive(Clone, Debug)]
pub struct GenConfig {
    pub max_n: usize,
    pub max_strings: usize,
    pub max_len: usize,
    pub alphabet: Vec<u8>,
    pub eps_prob: f64,
}

impl GenConfig {
    /// The desk-scale shape the oracle batteries run at.
    pub fn desk() -> GenConfig {
        GenConfig {
            max_n: 6,
            max_strings: 3,
            max_len: 4,
            alphabet: b"abcd".to_vec(),
            eps_prob: 0.15,
        }
    }
}

pub fn random_pattern(max_m: usize, alphabet: &[u8], rng: &mut impl Rng) -> Vec<u8> {
    let m = rng.gen_range(1..=max_m);
    (0..m).map(|_| alphabet[rng.gen_range(0..alphabet.len())]).collect()
}

pub fn random_text(cfg: &GenConfig, rng: &mut impl Rng) -> EdBytes {
    let n = rng.gen_range(1..=cfg.max_n);
    let mut segments = Vec::with_capacity(n);
    for _ in 0..n {
        let k = rng.gen_range(1..=cfg.max_strings);
        let mut seg: Vec<Vec<u8>> = Vec::with_capacity(k);
        for _ in 0..k {
            if rng.gen_bool(cfg.eps_prob) {
                seg.push(Vec::new());
            } else {
                let len = rng.gen_range(1..=cfg.max_len);
                seg.push(
                    (0..len)
                        .map(|_| cfg.alphabet[rng.gen_range(0..cfg.alphabet.len())])
                        .collect(),
                );
            }
        }
        seg.sort();
        seg.dedup();
        segments.push(seg);
    }
    EdBytes { segments }
}

/// Error planted into the embedded pattern copy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Injected {
    None,
    Substitution,
    Deletion,
    Insertion,
}

/// Embeds (a possibly one-error copy of) the pattern along a
/// segment-respecting path: a suffix piece, whole middle pieces, a prefix
/// piece. Mutated segments stay within the config's caps. Returns false when
/// the variant cannot be split to fit (text too short for the piece cap).
pub fn plant(
    text: &mut EdBytes,
    pattern: &[u8],
    inject: Injected,
    cfg: &GenConfig,
    rng: &mut impl Rng,
) -> bool {
    let mut copy = pattern.to_vec();
    match inject {
        Injected::None => {}
        Injected::Substitution => {
            if cfg.alphabet.len() < 2 || copy.is_empty() {
                return false;
            }
            let pos = rng.gen_range(0..copy.len());
            let old = copy[pos];
            loop {
                let c = cfg.alphabet[rng.gen_range(0..cfg.alphabet.len())];
                if c != old {
                    copy[pos] = c;
                    break;
                }
            }
        }
        Injected::Deletion => {
            if copy.len() <= 1 {
                return false;
            }
            let pos = rng.gen_range(0..copy.len());
            copy.remove(pos);
        }
        Injected::Insertion => {
            let pos = rng.gen_range(0..=copy.len());
            let c = cfg.alphabet[rng.gen_range(0..cfg.alphabet.len())];
            copy.insert(pos, c);
        }
    }
    let n = text.segments.len();
    let len = copy.len();
    let min_q = len.div_ceil(cfg.max_len);
    if min_q > n || len == 0 {
        return false;
    }
    let q = rng.gen_range(min_q.max(1)..=n.min(len));
    let start = rng.gen_range(0..=n - q);
    // random composition of len into q parts, each within [1, max_len]
    let mut parts = vec![1usize; q];
    let mut excess = len - q;
    while excess > 0 {
        let i = rng.gen_range(0..q);
        if parts[i] < cfg.max_len {
            parts[i] += 1;
            excess -= 1;
        }
    }
    let mut off = 0usize;
    for (t, &part) in parts.iter().enumerate() {
        let mut piece = copy[off..off + part].to_vec();
        off += part;
        let pad = cfg.max_len - piece.len();
        if t == 0 && pad > 0 {
            // first piece is a suffix: random prefix padding
            let extra = rng.gen_range(0..=pad);
            for _ in 0..extra {
                piece.insert(0, cfg.alphabet[rng.gen_range(0..cfg.alphabet.len())]);
            }
        } else if t == q - 1 && pad > 0 {
            let extra = rng.gen_range(0..=pad);
            for _ in 0..extra {
                piece.push(cfg.alphabet[rng.gen_range(0..cfg.alphabet.len())]);
            }
        }
        let seg = &mut text.segments[start + t];
        if seg.len() < cfg.max_strings {
            seg.push(piece);
        } else {
            let victim = rng.gen_range(0..seg.len());
            seg[victim] = piece;
        }
        seg.sort();
        seg.dedup();
    }
    true
}

/// One segment of the scaling corpus: exactly `per_seg` size units, two-ish
/// strings, pattern fragments sprinkled in so the active-prefix lattice
/// stays populated at every size.
fn scaling_segment(pattern: &[u8], per_seg: usize, rng: &mut impl Rng) -> Vec<Vec<u8>> {
    let mut budget = per_seg;
    let mut seg: Vec<Vec<u8>> = Vec::new();
    if rng.gen_bool(0.08) {
        seg.push(Vec::new());
        budget -= 1;
    }
    let k = rng.gen_range(1..=3.min(budget));
    // composition of `budget` into k nonempty parts
    let mut parts = vec![1usize; k];
    for _ in 0..budget - k {
        parts[rng.gen_range(0..k)] += 1;
    }
    for part in parts {
        let mut s: Vec<u8> = (0..part).map(|_| b"ab"[rng.gen_range(0..2)]).collect();
        if rng.gen_bool(0.6) {
            // overwrite a slice with a pattern fragment
            let flen = rng.gen_range(1..=pattern.len().min(part));
            let foff = rng.gen_range(0..=pattern.len() - flen);
            let at = rng.gen_range(0..=part - flen);
            s[at..at + flen].copy_from_slice(&pattern[foff..foff + flen]);
        }
        seg.push(s);
    }
    seg.sort();
    seg.dedup();
    seg
}

/// Scaling-corpus instance: m=32 pattern over {a,b}, `total_size / 64`
/// segments of size exactly 64 each.
pub fn scaling_instance(total_size: usize, rng: &mut impl Rng) -> (Vec<u8>, EdBytes) {
    assert!(
        total_size.is_multiple_of(64),
        "total size must be a multiple of 64"
    );
    let pattern: Vec<u8> = (0..32).map(|_| b"ab"[rng.gen_range(0..2)]).collect();
    let n = total_size / 64;
    let segments = (0..n).map(|_| scaling_segment(&pattern, 64, rng)).collect();
    (pattern, EdBytes { segments })
}
