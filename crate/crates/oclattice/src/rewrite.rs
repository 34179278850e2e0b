//! Substitution-instance matching and rewrite closure on content classes.
//!
//! A balanced identity rewrites a word by replacing a substitution instance
//! of one side with the matching instance of the other side; since both
//! sides have the same content, the word's content never changes.  On a
//! fixed content class, the reflexive-symmetric-transitive closure of
//! one-step rewriting is therefore computable as the connected components
//! of a finite graph; [`phi_lambda`] computes exactly that, and
//! [`derivable`] answers single identity-derivability queries with it.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::words::{
    enumerate_words_capped, is_balanced, parse_word, Content, EnumerationCaps, Letter, Word,
    WordClass,
};

/// Longest pattern `match_pattern` accepts; backtracking cost grows
/// exponentially with pattern length, so longer patterns are rejected.
pub const MAX_PATTERN_LEN: usize = 16;

/// An identity `lhs = rhs` between two words.
///
/// Nothing is assumed about the sides here; closure computations insist on
/// balance and reject unbalanced identities when they are used.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Identity {
    lhs: Word,
    rhs: Word,
}

impl Identity {
    pub fn new(lhs: Word, rhs: Word) -> Identity {
        Identity { lhs, rhs }
    }

    /// Parses both sides from word text.
    pub fn parse(lhs: &str, rhs: &str) -> Result<Identity> {
        Ok(Identity::new(parse_word(lhs)?, parse_word(rhs)?))
    }

    /// Parses a `"<word> = <word>"` line.
    pub fn parse_line(line: &str) -> Result<Identity> {
        let mut sides = line.split('=');
        match (sides.next(), sides.next(), sides.next()) {
            (Some(l), Some(r), None) => Identity::parse(l.trim(), r.trim()),
            _ => Err(Error::Parse(format!(
                "expected \"<word> = <word>\", got {line:?}"
            ))),
        }
    }

    pub fn lhs(&self) -> &Word {
        &self.lhs
    }

    pub fn rhs(&self) -> &Word {
        &self.rhs
    }

    /// Do both sides have the same content?
    pub fn is_balanced(&self) -> bool {
        is_balanced(&self.lhs, &self.rhs)
    }

    /// The mirror-image identity, both sides reversed.
    pub fn reversed(&self) -> Identity {
        Identity::new(self.lhs.reverse(), self.rhs.reverse())
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

impl fmt::Debug for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Identity({self})")
    }
}

/// A finite set of identities, optionally named.
///
/// The empty presentation is allowed and presents the variety of all
/// semigroups (no rewrites apply).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    identities: Vec<Identity>,
    name: Option<String>,
}

impl Presentation {
    pub fn new(identities: Vec<Identity>, name: Option<String>) -> Presentation {
        Presentation { identities, name }
    }

    /// Parses presentation text: one `"<word> = <word>"` identity per line,
    /// with blank lines and lines starting with `#` ignored.
    pub fn parse_text(text: &str, name: Option<String>) -> Result<Presentation> {
        let mut identities = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            identities.push(Identity::parse_line(line)?);
        }
        Ok(Presentation { identities, name })
    }

    pub fn identities(&self) -> &[Identity] {
        &self.identities
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn named(mut self, name: &str) -> Presentation {
        self.name = Some(name.to_string());
        self
    }

    pub fn is_empty(&self) -> bool {
        self.identities.is_empty()
    }

    /// Errors with the first unbalanced identity, if any.
    pub fn check_balanced(&self) -> Result<()> {
        for id in &self.identities {
            if !id.is_balanced() {
                return Err(Error::UnbalancedIdentity {
                    identity: id.to_string(),
                });
            }
        }
        Ok(())
    }

    /// The dual presentation: every identity reversed.
    pub fn reversed(&self) -> Presentation {
        Presentation {
            identities: self.identities.iter().map(Identity::reversed).collect(),
            name: None,
        }
    }

    /// Both identity sets together, unnamed.
    pub fn union(&self, other: &Presentation) -> Presentation {
        let mut identities = self.identities.clone();
        for id in &other.identities {
            if !identities.contains(id) {
                identities.push(id.clone());
            }
        }
        Presentation {
            identities,
            name: None,
        }
    }

    /// Order-insensitive key identifying the identity set, for memoization.
    pub(crate) fn cache_key(&self) -> String {
        let mut parts: Vec<String> = self.identities.iter().map(|id| id.to_string()).collect();
        parts.sort();
        parts.dedup();
        parts.join(";")
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(name) = &self.name {
            return write!(f, "{name}");
        }
        write!(f, "{{")?;
        for (i, id) in self.identities.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{id}")?;
        }
        write!(f, "}}")
    }
}

/// One occurrence of a substitution instance of a pattern inside a target
/// word: the instance spans `target[start..end]` and `substitution` maps
/// each pattern letter to the nonempty word it stands for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Match {
    pub start: usize,
    pub end: usize,
    pub substitution: BTreeMap<Letter, Word>,
}

impl Match {
    /// Replaces the matched span of `target` by the substitution instance
    /// of `replacement`.
    ///
    /// Panics if `replacement` uses a letter the match did not bind; with
    /// balanced identities both sides use the same letters, so rewriting
    /// never hits this.
    pub fn apply(&self, target: &Word, replacement: &Word) -> Word {
        let mut letters: Vec<Letter> = target.letters()[..self.start].to_vec();
        for l in replacement.letters() {
            let image = self
                .substitution
                .get(l)
                .unwrap_or_else(|| panic!("letter {l} unbound in match"));
            letters.extend_from_slice(image.letters());
        }
        letters.extend_from_slice(&target.letters()[self.end..]);
        Word::new(letters).expect("replacement instances are nonempty")
    }
}

/// Calls `f` for every substitution instance of `pattern` inside `target`,
/// ordered by start index and then by cut points lexicographically.
pub(crate) fn for_each_match(
    pattern: &Word,
    target: &Word,
    f: &mut dyn FnMut(Match),
) -> Result<()> {
    if pattern.len() > MAX_PATTERN_LEN {
        return Err(Error::PatternTooLong {
            pattern_len: pattern.len(),
            limit: MAX_PATTERN_LEN,
        });
    }
    if pattern.len() > target.len() {
        return Err(Error::PatternTooLong {
            pattern_len: pattern.len(),
            limit: target.len(),
        });
    }

    // Pattern letters renumbered 0..d for array-indexed bindings.
    let pat = pattern.letters();
    let mut letter_ids: Vec<Letter> = Vec::new();
    let slots: Vec<usize> = pat
        .iter()
        .map(|&l| {
            letter_ids.iter().position(|&x| x == l).unwrap_or_else(|| {
                letter_ids.push(l);
                letter_ids.len() - 1
            })
        })
        .collect();

    let tgt = target.letters();
    for start in 0..=tgt.len() - pat.len() {
        let mut bindings: Vec<Option<(usize, usize)>> = vec![None; letter_ids.len()];
        descend(
            &slots,
            tgt,
            start,
            0,
            start,
            &mut bindings,
            &mut |end, bindings| {
                let substitution = letter_ids
                    .iter()
                    .zip(bindings.iter())
                    .map(|(&l, b)| {
                        let (s, e) = b.expect("all letters bound at full match");
                        (l, Word::new(tgt[s..e].to_vec()).expect("bindings are nonempty"))
                    })
                    .collect();
                f(Match {
                    start,
                    end,
                    substitution,
                });
            },
        );
    }
    Ok(())
}

/// Backtracking over block lengths; `pi` indexes the pattern slots, `ti`
/// the target.  Unbound letters try shorter blocks first, which yields the
/// documented lexicographic-by-cut-points order.
fn descend(
    slots: &[usize],
    tgt: &[Letter],
    start: usize,
    pi: usize,
    ti: usize,
    bindings: &mut Vec<Option<(usize, usize)>>,
    emit: &mut dyn FnMut(usize, &[Option<(usize, usize)>]),
) {
    if pi == slots.len() {
        emit(ti, bindings);
        return;
    }
    let slot = slots[pi];
    if let Some((s, e)) = bindings[slot] {
        let len = e - s;
        if ti + len <= tgt.len() && tgt[s..e] == tgt[ti..ti + len] {
            descend(slots, tgt, start, pi + 1, ti + len, bindings, emit);
        }
        return;
    }
    // Leave at least one target letter for each remaining unbound slot and
    // the exact bound length for slots already fixed.
    let mut reserved = 0;
    let mut seen = vec![false; bindings.len()];
    for &s in &slots[pi + 1..] {
        reserved += match bindings[s] {
            Some((bs, be)) => be - bs,
            None if s == slot || seen[s] => {
                // This very slot repeats later, or an unbound slot repeats:
                // we cannot know its final length yet, reserve one letter.
                1
            }
            None => 1,
        };
        seen[s] = true;
    }
    let max_len = tgt.len().saturating_sub(ti + reserved);
    for len in 1..=max_len {
        bindings[slot] = Some((ti, ti + len));
        descend(slots, tgt, start, pi + 1, ti + len, bindings, emit);
    }
    bindings[slot] = None;
}

/// All substitution instances of `pattern` inside `target`, ordered by
/// start index, then by cut points lexicographically.
pub fn match_pattern(pattern: &Word, target: &Word) -> Result<Vec<Match>> {
    let mut out = Vec::new();
    for_each_match(pattern, target, &mut |m| out.push(m))?;
    Ok(out)
}

/// Calls `f` for every word reachable from `w` by one identity application
/// in either direction.  Identities with sides longer than `w` cannot
/// match and are skipped.
pub(crate) fn for_each_neighbor(
    w: &Word,
    sigma: &Presentation,
    f: &mut dyn FnMut(Word),
) -> Result<()> {
    sigma.check_balanced()?;
    for id in sigma.identities() {
        if id.lhs() == id.rhs() {
            continue;
        }
        for (src, dst) in [(id.lhs(), id.rhs()), (id.rhs(), id.lhs())] {
            if src.len() > w.len() {
                continue;
            }
            for_each_match(src, w, &mut |m| f(m.apply(w, dst)))?;
        }
    }
    Ok(())
}

/// The set of words one rewrite step away from `w` under `sigma`.
pub fn rewrite_neighbors(w: &Word, sigma: &Presentation) -> Result<BTreeSet<Word>> {
    let mut out = BTreeSet::new();
    for_each_neighbor(w, sigma, &mut |n| {
        if &n != w {
            out.insert(n);
        }
    })?;
    Ok(out)
}

/// Union-find with path halving and union by size.
pub(crate) struct UnionFind {
    parent: Vec<usize>,
    size: Vec<u32>,
    components: usize,
}

impl UnionFind {
    pub fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
            components: n,
        }
    }

    pub fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        self.components -= 1;
    }

    pub fn components(&self) -> usize {
        self.components
    }

    pub fn class_labels(&mut self) -> Vec<u32> {
        (0..self.parent.len()).map(|i| self.find(i) as u32).collect()
    }
}

/// An equivalence relation on `{0, …, n-1}` in canonical form: class ids
/// are assigned contiguously from 0 in order of first appearance, so equal
/// relations compare equal structurally.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteEquivalence {
    class_of: Vec<u32>,
    class_count: u32,
}

impl FiniteEquivalence {
    /// Builds from arbitrary class labels, renumbering canonically.
    pub fn from_class_of(labels: &[u32]) -> FiniteEquivalence {
        let mut renumber: HashMap<u32, u32> = HashMap::new();
        let mut class_of = Vec::with_capacity(labels.len());
        for &l in labels {
            let next = renumber.len() as u32;
            class_of.push(*renumber.entry(l).or_insert(next));
        }
        FiniteEquivalence {
            class_of,
            class_count: renumber.len() as u32,
        }
    }

    /// The identity relation: every element alone.
    pub fn identity(n: usize) -> FiniteEquivalence {
        FiniteEquivalence {
            class_of: (0..n as u32).collect(),
            class_count: n as u32,
        }
    }

    /// The full relation: one class (empty when `n = 0`).
    pub fn full(n: usize) -> FiniteEquivalence {
        FiniteEquivalence {
            class_of: vec![0; n],
            class_count: if n == 0 { 0 } else { 1 },
        }
    }

    pub fn size(&self) -> usize {
        self.class_of.len()
    }

    pub fn class_count(&self) -> usize {
        self.class_count as usize
    }

    pub fn class_id(&self, i: usize) -> u32 {
        self.class_of[i]
    }

    pub fn same(&self, i: usize, j: usize) -> bool {
        self.class_of[i] == self.class_of[j]
    }

    pub fn is_identity(&self) -> bool {
        self.class_count as usize == self.class_of.len()
    }

    pub fn is_full(&self) -> bool {
        self.class_count <= 1
    }

    /// Classes as sorted member lists, in class-id order.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.class_count as usize];
        for (i, &c) in self.class_of.iter().enumerate() {
            out[c as usize].push(i);
        }
        out
    }

    /// Is every class of `self` contained in a class of `other`?
    pub fn refines(&self, other: &FiniteEquivalence) -> bool {
        assert_eq!(self.size(), other.size(), "relations on different sets");
        let mut image: Vec<Option<u32>> = vec![None; self.class_count as usize];
        for (i, &c) in self.class_of.iter().enumerate() {
            match image[c as usize] {
                None => image[c as usize] = Some(other.class_of[i]),
                Some(o) if o == other.class_of[i] => {}
                Some(_) => return false,
            }
        }
        true
    }

    /// The smallest equivalence containing both relations.
    pub fn join(&self, other: &FiniteEquivalence) -> FiniteEquivalence {
        assert_eq!(self.size(), other.size(), "relations on different sets");
        let n = self.size();
        let mut uf = UnionFind::new(n);
        let mut first_self: Vec<Option<usize>> = vec![None; self.class_count as usize];
        let mut first_other: Vec<Option<usize>> = vec![None; other.class_count as usize];
        for i in 0..n {
            match first_self[self.class_of[i] as usize] {
                None => first_self[self.class_of[i] as usize] = Some(i),
                Some(j) => uf.union(i, j),
            }
            match first_other[other.class_of[i] as usize] {
                None => first_other[other.class_of[i] as usize] = Some(i),
                Some(j) => uf.union(i, j),
            }
        }
        FiniteEquivalence::from_class_of(&uf.class_labels())
    }

    /// The intersection of the two relations.
    pub fn meet(&self, other: &FiniteEquivalence) -> FiniteEquivalence {
        assert_eq!(self.size(), other.size(), "relations on different sets");
        let mut renumber: HashMap<(u32, u32), u32> = HashMap::new();
        let labels: Vec<u32> = (0..self.size())
            .map(|i| {
                let key = (self.class_of[i], other.class_of[i]);
                let next = renumber.len() as u32;
                *renumber.entry(key).or_insert(next)
            })
            .collect();
        FiniteEquivalence::from_class_of(&labels)
    }

    /// The image relation under a bijection of the index set: `i` and `j`
    /// are related in the result iff their preimages are related here.
    /// `perm[i]` is the image of `i`.
    pub fn permuted(&self, perm: &[usize]) -> FiniteEquivalence {
        assert_eq!(perm.len(), self.size(), "permutation of a different set");
        let mut labels = vec![0u32; self.size()];
        for (i, &c) in self.class_of.iter().enumerate() {
            labels[perm[i]] = c;
        }
        FiniteEquivalence::from_class_of(&labels)
    }

    /// Is the relation preserved by the bijection `perm`?
    pub fn is_stable_under(&self, perm: &[usize]) -> bool {
        &self.permuted(perm) == self
    }

    /// Member-list notation, e.g. `01|2` (or `0,1|2` past ten elements,
    /// where single digits would be ambiguous).
    pub fn block_string(&self) -> String {
        let sep = if self.size() > 10 { "," } else { "" };
        self.classes()
            .iter()
            .map(|members| {
                members
                    .iter()
                    .map(|m| m.to_string())
                    .collect::<Vec<_>>()
                    .join(sep)
            })
            .collect::<Vec<_>>()
            .join("|")
    }
}

/// φ on an already-enumerated content class: connected components of the
/// one-step rewrite graph.
pub fn phi_lambda_on(sigma: &Presentation, class: &WordClass) -> Result<FiniteEquivalence> {
    sigma.check_balanced()?;
    let n = class.len();
    let mut uf = UnionFind::new(n);
    'outer: for i in 0..n {
        let mut err = None;
        for_each_neighbor(class.word(i), sigma, &mut |neighbor| {
            match class.index_of(&neighbor) {
                Some(j) => uf.union(i, j),
                // Balanced rewriting preserves content, so the neighbor is
                // always in the class; defend against future bugs anyway.
                None => err = Some(neighbor),
            }
        })?;
        if let Some(neighbor) = err {
            unreachable!("rewrite left the content class: {neighbor}");
        }
        if uf.components() == 1 {
            break 'outer;
        }
    }
    Ok(FiniteEquivalence::from_class_of(&uf.class_labels()))
}

/// The restriction of the presented variety's fully invariant congruence
/// to the content class of `c`, under default enumeration caps.
pub fn phi_lambda(sigma: &Presentation, c: &Content) -> Result<FiniteEquivalence> {
    phi_lambda_capped(sigma, c, &EnumerationCaps::default())
}

/// As [`phi_lambda`] with explicit caps.
pub fn phi_lambda_capped(
    sigma: &Presentation,
    c: &Content,
    caps: &EnumerationCaps,
) -> Result<FiniteEquivalence> {
    Ok(phi_closure_cached(sigma, c, caps)?.phi.clone())
}

/// A memoized closure: the enumerated class together with φ on it.
#[derive(Debug)]
pub struct PhiClosure {
    pub class: WordClass,
    pub phi: FiniteEquivalence,
}

type PhiCache = HashMap<(String, String, u32, u64), Arc<PhiClosure>>;

static PHI_CACHE: OnceLock<Mutex<PhiCache>> = OnceLock::new();

/// Cache size at which the φ memo is simply cleared; closures are cheap to
/// recompute relative to holding many large classes in memory.
const PHI_CACHE_LIMIT: usize = 64;

/// Computes (or recalls) the enumerated class of `c` and φ on it.
///
/// Results are memoized process-wide, keyed by the identity set, the
/// content, and the caps; concurrent callers may duplicate a computation
/// but always observe consistent results.
pub fn phi_closure_cached(
    sigma: &Presentation,
    c: &Content,
    caps: &EnumerationCaps,
) -> Result<Arc<PhiClosure>> {
    let key = (
        sigma.cache_key(),
        c.to_string(),
        caps.max_total,
        caps.max_class_size,
    );
    let cache = PHI_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&key) {
        return Ok(Arc::clone(hit));
    }
    let class = enumerate_words_capped(c, caps)?;
    let phi = phi_lambda_on(sigma, &class)?;
    let closure = Arc::new(PhiClosure { class, phi });
    let mut cache = cache.lock().unwrap();
    if cache.len() >= PHI_CACHE_LIMIT {
        cache.clear();
    }
    cache.insert(key, Arc::clone(&closure));
    Ok(closure)
}

/// Does the identity u = v follow from `sigma`?
///
/// Unbalanced queries are immediately false: balanced identities only ever
/// derive balanced identities.  Balanced queries reduce to one φ lookup on
/// the common content class.
pub fn derivable(sigma: &Presentation, u: &Word, v: &Word) -> Result<bool> {
    if !is_balanced(u, v) {
        return Ok(false);
    }
    if u == v {
        return Ok(true);
    }
    let closure = phi_closure_cached(sigma, &Content::of(u), &EnumerationCaps::default())?;
    let i = closure.class.index_of(u).expect("u is in its content class");
    let j = closure.class.index_of(v).expect("v is in its content class");
    Ok(closure.phi.same(i, j))
}
