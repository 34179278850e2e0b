//! Words over a countable alphabet, contents, and content classes.
//!
//! Letters are indexed from 1 and rendered `a…z` for indices up to 26 and
//! `xN` beyond.  The *content* of a word records how often each letter
//! occurs; two words are *balanced* when their contents coincide.  All the
//! heavier machinery in this crate works inside one finite content class
//! at a time, so this module also provides exhaustive, lexicographically
//! ordered enumeration of such classes under explicit size caps.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Default cap on the total number of letters of an enumerated content.
pub const MAX_CONTENT_TOTAL: u32 = 12;
/// Default cap on the number of words in an enumerated content class.
pub const MAX_CLASS_SIZE: u64 = 1_000_000;

/// A letter of the alphabet, indexed from 1.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(u32);

impl Letter {
    /// Letter with the given 1-based index.  Index 0 is not a letter.
    pub fn new(index: u32) -> Self {
        assert!(index >= 1, "letter indices start at 1");
        Letter(index)
    }

    pub fn index(self) -> u32 {
        self.0
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 <= 26 {
            write!(f, "{}", (b'a' + (self.0 - 1) as u8) as char)
        } else {
            write!(f, "x{}", self.0)
        }
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Letter({self})")
    }
}

/// A nonempty finite sequence of letters.
///
/// The derived order is lexicographic by letter index, which is also the
/// enumeration order of content classes.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::EmptyWord);
        }
        Ok(Word(letters))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn first(&self) -> Letter {
        self.0[0]
    }

    pub fn last(&self) -> Letter {
        *self.0.last().expect("words are nonempty")
    }

    /// The mirror image of the word.
    pub fn reverse(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        parse_word(s)
    }
}

fn parse_letters(s: &str) -> Result<Vec<Letter>> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if !c.is_ascii_lowercase() {
            return Err(Error::UnknownSymbol {
                symbol: c,
                position: i,
            });
        }
        // Greedy `xN` token: an `x` immediately followed by digits is the
        // letter with index N, so `x12` is one letter, not three.
        if c == 'x' && i + 1 < bytes.len() && bytes[i + 1].is_ascii_digit() {
            let start = i + 1;
            let mut j = start;
            while j < bytes.len() && bytes[j].is_ascii_digit() {
                j += 1;
            }
            let token = &s[i..j];
            let n: u32 = s[start..j]
                .parse()
                .map_err(|_| Error::InvalidLetterIndex {
                    token: token.to_string(),
                })?;
            if n == 0 {
                return Err(Error::InvalidLetterIndex {
                    token: token.to_string(),
                });
            }
            out.push(Letter(n));
            i = j;
        } else {
            out.push(Letter(c as u32 - 'a' as u32 + 1));
            i += 1;
        }
    }
    Ok(out)
}

/// Parses a word: a string of letter tokens, either single lowercase
/// letters or `xN` with `N ≥ 1`.  Surrounding whitespace is ignored.
pub fn parse_word(s: &str) -> Result<Word> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::EmptyWord);
    }
    Word::new(parse_letters(s)?)
}

/// The content of a word: each occurring letter with its multiplicity.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Content(BTreeMap<Letter, u32>);

impl Content {
    /// Content of a word.
    pub fn of(w: &Word) -> Content {
        let mut map = BTreeMap::new();
        for &l in w.letters() {
            *map.entry(l).or_insert(0) += 1;
        }
        Content(map)
    }

    /// Content from explicit (letter, multiplicity) pairs.
    pub fn from_entries(entries: impl IntoIterator<Item = (Letter, u32)>) -> Result<Content> {
        let mut map = BTreeMap::new();
        for (l, m) in entries {
            if m == 0 {
                return Err(Error::Parse(format!("letter {l} has multiplicity 0")));
            }
            if map.insert(l, m).is_some() {
                return Err(Error::Parse(format!("letter {l} listed twice")));
            }
        }
        if map.is_empty() {
            return Err(Error::Parse("empty content".to_string()));
        }
        Ok(Content(map))
    }

    /// The canonical content of a partition: letter `i` occurs `λ_i` times.
    pub fn canonical(p: &Partition) -> Content {
        Content(
            p.parts()
                .iter()
                .enumerate()
                .map(|(i, &m)| (Letter(i as u32 + 1), m))
                .collect(),
        )
    }

    /// Total number of letters, multiplicities counted.
    pub fn total(&self) -> u32 {
        self.0.values().sum()
    }

    /// Number of distinct letters.
    pub fn distinct(&self) -> usize {
        self.0.len()
    }

    /// Multiplicity of a letter, 0 if absent.
    pub fn multiplicity(&self, l: Letter) -> u32 {
        self.0.get(&l).copied().unwrap_or(0)
    }

    /// Letters in increasing order.
    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        self.0.keys().copied()
    }

    /// (letter, multiplicity) pairs in increasing letter order.
    pub fn entries(&self) -> impl Iterator<Item = (Letter, u32)> + '_ {
        self.0.iter().map(|(&l, &m)| (l, m))
    }

    /// Multiplicities sorted in non-increasing order.
    pub fn partition(&self) -> Partition {
        let mut parts: Vec<u32> = self.0.values().copied().collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }
}

impl fmt::Display for Content {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (l, m) in &self.0 {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{l}:{m}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Content {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Content({self})")
    }
}

impl FromStr for Content {
    type Err = Error;

    /// Parses `"x:2,y:1"` style content text.
    fn from_str(s: &str) -> Result<Content> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty content".to_string()));
        }
        let mut entries = Vec::new();
        for part in s.split(',') {
            let part = part.trim();
            let (letter_text, mult_text) = part
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("expected letter:count, got {part:?}")))?;
            let letters = parse_letters(letter_text.trim())?;
            if letters.len() != 1 {
                return Err(Error::Parse(format!(
                    "expected a single letter, got {letter_text:?}"
                )));
            }
            let mult: u32 = mult_text
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad multiplicity {mult_text:?}")))?;
            entries.push((letters[0], mult));
        }
        Content::from_entries(entries)
    }
}

/// A partition: a nonempty, non-increasing sequence of positive integers.
///
/// Partitions index content classes up to renaming of letters; a partition
/// with a single component is admitted as the degenerate one-letter case.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::Parse("empty partition".to_string()));
        }
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::Parse("partition components must be positive".to_string()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parse(
                "partition components must be non-increasing".to_string(),
            ));
        }
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for p in &self.0 {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition({self})")
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses `"3,2,1"` style partition text.
    fn from_str(s: &str) -> Result<Partition> {
        let parts = s
            .trim()
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad partition component {p:?}")))
            })
            .collect::<Result<Vec<u32>>>()?;
        Partition::new(parts)
    }
}

/// Do two words have the same content?
pub fn is_balanced(u: &Word, v: &Word) -> bool {
    Content::of(u) == Content::of(v)
}

/// Does the letter occur exactly once?  Errors when it does not occur.
pub fn is_simple(l: Letter, w: &Word) -> Result<bool> {
    match Content::of(w).multiplicity(l) {
        0 => Err(Error::LetterAbsent {
            letter: l.to_string(),
            word: w.to_string(),
        }),
        m => Ok(m == 1),
    }
}

/// Caps applied when a content class is enumerated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationCaps {
    /// Maximum total number of letters of the content.
    pub max_total: u32,
    /// Maximum number of words in the class.
    pub max_class_size: u64,
}

impl Default for EnumerationCaps {
    fn default() -> Self {
        EnumerationCaps {
            max_total: MAX_CONTENT_TOTAL,
            max_class_size: MAX_CLASS_SIZE,
        }
    }
}

/// Number of words with the given content (a multinomial coefficient).
///
/// Exact for totals up to 20; all callers stay far below that.
pub fn class_size(c: &Content) -> u64 {
    let total = c.total() as u128;
    debug_assert!(total <= 20, "class_size is exact for totals <= 20 only");
    let mut numer: u128 = 1;
    for i in 2..=total {
        numer *= i;
    }
    let mut denom: u128 = 1;
    for (_, m) in c.entries() {
        for i in 2..=m as u128 {
            denom *= i;
        }
    }
    (numer / denom) as u64
}

/// All words with the given content, in lexicographic order, with an
/// index for constant-time lookup.
#[derive(Clone, Debug)]
pub struct WordClass {
    content: Content,
    words: Vec<Word>,
    index: HashMap<Word, usize>,
}

impl WordClass {
    pub fn content(&self) -> &Content {
        &self.content
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn word(&self, i: usize) -> &Word {
        &self.words[i]
    }

    /// Position of a word in the enumeration, `None` if its content differs.
    pub fn index_of(&self, w: &Word) -> Option<usize> {
        self.index.get(w).copied()
    }
}

/// Enumerates the content class of `c` under the default caps.
pub fn enumerate_words(c: &Content) -> Result<WordClass> {
    enumerate_words_capped(c, &EnumerationCaps::default())
}

/// Enumerates the content class of `c` under explicit caps.
pub fn enumerate_words_capped(c: &Content, caps: &EnumerationCaps) -> Result<WordClass> {
    let total = c.total();
    if total > caps.max_total {
        return Err(Error::SizeCapExceeded {
            what: "content total",
            value: total as u64,
            cap: caps.max_total as u64,
        });
    }
    let size = class_size(c);
    if size > caps.max_class_size {
        return Err(Error::SizeCapExceeded {
            what: "content class size",
            value: size,
            cap: caps.max_class_size,
        });
    }

    let letters: Vec<Letter> = c.letters().collect();
    let mut remaining: Vec<u32> = letters.iter().map(|&l| c.multiplicity(l)).collect();
    let mut words = Vec::with_capacity(size as usize);
    let mut prefix: Vec<Letter> = Vec::with_capacity(total as usize);
    fill(&letters, &mut remaining, &mut prefix, total as usize, &mut words);
    debug_assert_eq!(words.len() as u64, size);

    let index = words
        .iter()
        .enumerate()
        .map(|(i, w)| (w.clone(), i))
        .collect();
    Ok(WordClass {
        content: c.clone(),
        words,
        index,
    })
}

fn fill(
    letters: &[Letter],
    remaining: &mut [u32],
    prefix: &mut Vec<Letter>,
    total: usize,
    out: &mut Vec<Word>,
) {
    if prefix.len() == total {
        out.push(Word(prefix.clone()));
        return;
    }
    // Letters are tried in increasing order, so the output is lexicographic.
    for i in 0..letters.len() {
        if remaining[i] == 0 {
            continue;
        }
        remaining[i] -= 1;
        prefix.push(letters[i]);
        fill(letters, remaining, prefix, total, out);
        prefix.pop();
        remaining[i] += 1;
    }
}
