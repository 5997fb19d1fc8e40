//! ED-string data model, the `.eds` text format, alphabet remapping, and the
//! reverse transform.
//!
//! Matching never runs on raw bytes: `remap` turns the pattern into ranks
//! `[1, σ]` (order-preserving) and every text letter that does not occur in
//! the pattern into the single sentinel `m+1`. Two text letters foreign to
//! the pattern are indistinguishable to every comparison the matcher makes,
//! so collapsing them is lossless for reports.

use std::collections::BTreeSet;
use thiserror::Error;

/// Remapped alphabet symbol; values are in `[1, m+1]`.
pub type Sym = u32;

/// Pattern over the remapped alphabet; `m ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pattern {
    pub syms: Vec<Sym>,
}

impl Pattern {
    pub fn m(&self) -> usize {
        self.syms.len()
    }

    pub fn reversed(&self) -> Pattern {
        let mut syms = self.syms.clone();
        syms.reverse();
        Pattern { syms }
    }
}

/// One segment: a sorted, duplicate-free set of strings; `[]` encodes ε.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub strings: Vec<Vec<Sym>>,
}

impl Segment {
    /// Sorts and deduplicates; panics on an empty set (the model requires
    /// at least one alternative per segment).
    pub fn new(mut strings: Vec<Vec<Sym>>) -> Segment {
        assert!(!strings.is_empty(), "segment must hold at least one string");
        strings.sort();
        strings.dedup();
        Segment { strings }
    }

    pub fn has_epsilon(&self) -> bool {
        self.strings.first().is_some_and(|s| s.is_empty())
    }

    /// The nonempty alternatives.
    pub fn nonempty(&self) -> impl Iterator<Item = &[Sym]> + Clone {
        self.strings.iter().filter(|s| !s.is_empty()).map(|s| &s[..])
    }

    /// Total string length with ε counted as 1.
    pub fn size_contribution(&self) -> usize {
        self.strings.iter().map(|s| s.len().max(1)).sum()
    }
}

/// An ED text over the remapped alphabet: n segments of total size N.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdText {
    pub segments: Vec<Segment>,
}

impl EdText {
    pub fn n(&self) -> usize {
        self.segments.len()
    }

    /// N = Σ size_contribution (ε counts 1).
    pub fn size(&self) -> usize {
        self.segments.iter().map(|s| s.size_contribution()).sum()
    }

    /// Segment order reversed and every string reversed; an involution.
    pub fn reversed(&self) -> EdText {
        EdText {
            segments: self
                .segments
                .iter()
                .rev()
                .map(|seg| {
                    Segment::new(
                        seg.strings
                            .iter()
                            .map(|s| s.iter().rev().copied().collect())
                            .collect(),
                    )
                })
                .collect(),
        }
    }

    /// Text truncated to its first `i` segments (for on-line replay checks).
    pub fn prefix(&self, i: usize) -> EdText {
        EdText {
            segments: self.segments[..i].to_vec(),
        }
    }
}

/// Matching regime: exact, Hamming distance ≤ 1, or edit distance ≤ 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Mode {
    Exact,
    Hamming1,
    Edit1,
}

impl Mode {
    /// Error budget the mode admits.
    pub fn budget(self) -> usize {
        match self {
            Mode::Exact => 0,
            Mode::Hamming1 | Mode::Edit1 => 1,
        }
    }
}

/// Strongest claim that holds for a reported end position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum MatchKind {
    Exact,
    Hamming1,
    Edit1,
}

impl std::fmt::Display for MatchKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            MatchKind::Exact => "exact",
            MatchKind::Hamming1 => "hamming1",
            MatchKind::Edit1 => "edit1",
        })
    }
}

/// One reported occurrence end: segment index j' (1-based) plus the
/// strongest kind that ends there. At most one report per end segment.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OccurrenceReport {
    pub end_segment: usize,
    pub kind: MatchKind,
}

/// Parsed `.eds` text, still over raw bytes (no pattern known yet).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdBytes {
    pub segments: Vec<Vec<Vec<u8>>>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("byte {offset}: unexpected {found:?}")]
    Unexpected { offset: usize, found: char },
    #[error("byte {offset}: '{{' opened here is never closed")]
    UnclosedGroup { offset: usize },
    #[error("byte {offset}: empty segment `{{}}` (write `{{,}}` for an epsilon-only segment)")]
    EmptySegment { offset: usize },
    #[error("text holds no segments")]
    EmptyText,
}

/// Parses the `.eds` format.
///
/// `{a,b,...}` is one segment; an empty alternative denotes ε. A maximal
/// bare run of letters is a singleton segment. ASCII whitespace is never a
/// letter: it separates runs at the top level and is skipped inside groups.
/// `{}` is rejected; ε-only segments are written `{,}`.
pub fn parse_eds(input: &[u8]) -> Result<EdBytes, ParseError> {
    let mut segments: Vec<Vec<Vec<u8>>> = Vec::new();
    let mut i = 0usize;
    let n = input.len();
    while i < n {
        let b = input[i];
        match b {
            b'{' => {
                let open = i;
                i += 1;
                let mut alts: BTreeSet<Vec<u8>> = BTreeSet::new();
                let mut cur: Vec<u8> = Vec::new();
                let mut saw_comma = false;
                loop {
                    if i >= n {
                        return Err(ParseError::UnclosedGroup { offset: open });
                    }
                    match input[i] {
                        b'}' => {
                            if !saw_comma && cur.is_empty() {
                                return Err(ParseError::EmptySegment { offset: open });
                            }
                            alts.insert(std::mem::take(&mut cur));
                            i += 1;
                            break;
                        }
                        b',' => {
                            saw_comma = true;
                            alts.insert(std::mem::take(&mut cur));
                            i += 1;
                        }
                        b'{' => {
                            return Err(ParseError::Unexpected {
                                offset: i,
                                found: '{',
                            })
                        }
                        c if c.is_ascii_whitespace() => i += 1,
                        c => {
                            cur.push(c);
                            i += 1;
                        }
                    }
                }
                segments.push(alts.into_iter().collect());
            }
            b'}' | b',' => {
                return Err(ParseError::Unexpected {
                    offset: i,
                    found: b as char,
                })
            }
            c if c.is_ascii_whitespace() => i += 1,
            _ => {
                // bare run: one singleton segment
                let start = i;
                while i < n && !matches!(input[i], b'{' | b'}' | b',') && !input[i].is_ascii_whitespace()
                {
                    i += 1;
                }
                segments.push(vec![input[start..i].to_vec()]);
            }
        }
    }
    if segments.is_empty() {
        return Err(ParseError::EmptyText);
    }
    Ok(EdBytes { segments })
}

/// Canonical serialization: every segment braced, alternatives sorted, ε as
/// an empty alternative. Reparsing a serialized text yields the same value.
pub fn serialize_eds(text: &EdBytes) -> String {
    let mut out = String::new();
    for seg in &text.segments {
        out.push('{');
        let mut sorted: Vec<&Vec<u8>> = seg.iter().collect();
        sorted.sort();
        sorted.dedup();
        // lone ε still needs a comma so the group is not the illegal `{}`
        if sorted.len() == 1 && sorted[0].is_empty() {
            out.push(',');
        }
        for (k, alt) in sorted.iter().enumerate() {
            if k > 0 {
                out.push(',');
            }
            out.push_str(std::str::from_utf8(alt).expect("letters are ASCII in serialized texts"));
        }
        out.push('}');
    }
    out
}

/// Order-preserving pattern ranks plus the sentinel for foreign letters.
pub struct Alphabet {
    rank: [Sym; 256],
    sentinel: Sym,
    pub sigma: usize,
}

impl Alphabet {
    pub fn from_pattern(pattern: &[u8]) -> Alphabet {
        assert!(!pattern.is_empty(), "pattern must be nonempty");
        let distinct: BTreeSet<u8> = pattern.iter().copied().collect();
        let mut rank = [0 as Sym; 256];
        for (i, b) in distinct.iter().enumerate() {
            rank[*b as usize] = (i + 1) as Sym;
        }
        Alphabet {
            rank,
            sentinel: (pattern.len() + 1) as Sym,
            sigma: distinct.len(),
        }
    }

    pub fn map_letter(&self, b: u8) -> Sym {
        match self.rank[b as usize] {
            0 => self.sentinel,
            r => r,
        }
    }
}

/// Remaps pattern and text into the integer alphabet `[1, m+1]`.
pub fn remap(pattern: &[u8], text: &EdBytes) -> (Pattern, EdText) {
    let ab = Alphabet::from_pattern(pattern);
    let p = Pattern {
        syms: pattern.iter().map(|&b| ab.map_letter(b)).collect(),
    };
    let t = EdText {
        segments: text
            .segments
            .iter()
            .map(|seg| {
                Segment::new(
                    seg.iter()
                        .map(|s| s.iter().map(|&b| ab.map_letter(b)).collect())
                        .collect(),
                )
            })
            .collect(),
    };
    (p, t)
}
