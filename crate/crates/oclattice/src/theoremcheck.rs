//! The decidable classification criterion and the counting bounds behind
//! it.
//!
//! For a finite balanced presentation, the congruence lattices of all its
//! quotient G-sets satisfy a common nontrivial lattice identity exactly
//! when the presented variety is permutative and contains none of LZ, RZ,
//! X, X-dual.  [`check_criterion`] decides the right-hand side (up to a
//! search bound for permutativity, which is only semidecidable at desk
//! scale), and the remaining functions compute the witnesses and numeric
//! bounds used by the counting argument: derivability of the power-block
//! swap identities, the least P_k level, end-segment normal forms, and
//! the class-count bound over one content class.

use std::collections::{HashMap, HashSet};

use num_bigint::BigUint;
use num_traits::One;

use crate::deciders::{contains_fixed, FixedVariety};
use crate::error::{Error, Result};
use crate::gsets::Perm;
use crate::rewrite::{derivable, phi_closure_cached, Identity, Presentation};
use crate::words::{Content, EnumerationCaps, Letter, Partition, Word};

/// Search ceiling for permutation identities: content 1^n grows as n!.
pub const MAX_PERMUTATIVITY_N: usize = 7;

/// Ceiling on materializing the cardinality bound 2^(N²), in bits.
const MAX_CARD_BOUND_BITS: u64 = 10_000_000;

/// A permutation identity derivable from the presentation: the identity
/// `x_1 x_2 … x_n = x_{g(1)} x_{g(2)} … x_{g(n)}` with `g` non-trivial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermutativityWitness {
    pub n: usize,
    pub g: Perm,
}

impl PermutativityWitness {
    /// The two sides of the witnessed identity.
    pub fn identity_words(&self) -> (Word, Word) {
        let lhs = Word::new((1..=self.n as u32).map(Letter::new).collect())
            .expect("witness levels are at least 2");
        let rhs = Word::new(
            (0..self.n)
                .map(|i| Letter::new(self.g.apply(i) as u32 + 1))
                .collect(),
        )
        .expect("witness levels are at least 2");
        (lhs, rhs)
    }
}

/// Outcome of the bounded permutativity search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Permutativity {
    Yes(PermutativityWitness),
    /// No permutation identity of length ≤ bound is derivable; the
    /// variety may still be permutative at a longer length.
    NoUpTo(usize),
}

/// Three-valued verdict of the classification criterion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    True,
    False,
    Unknown,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::True => write!(f, "true"),
            Verdict::False => write!(f, "false"),
            Verdict::Unknown => write!(f, "unknown"),
        }
    }
}

/// The full outcome of [`check_criterion`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionReport {
    pub permutative: Permutativity,
    pub contains_lz: bool,
    pub contains_rz: bool,
    pub contains_x: bool,
    pub contains_xdual: bool,
    pub verdict: Verdict,
}

/// Is every identity of the presentation balanced?  Balanced systems hold
/// in every commutative semigroup, so they present exactly the varieties
/// containing COM.
pub fn is_overcommutative(sigma: &Presentation) -> bool {
    sigma.check_balanced().is_ok()
}

/// Bounded search for a permutation identity.
///
/// The presented variety satisfies a permutation identity of length n
/// exactly when the rewrite closure on the content with n distinct
/// letters, each occurring once, identifies two distinct words.  Because
/// that closure is stable under all letter renamings, it identifies two
/// words iff it identifies the sorted word `x_1 x_2 … x_n` with something,
/// and the partner word spells out the permutation.
pub fn is_permutative(sigma: &Presentation, n_max: usize) -> Result<Permutativity> {
    if n_max > MAX_PERMUTATIVITY_N {
        return Err(Error::SizeCapExceeded {
            what: "permutativity search bound",
            value: n_max as u64,
            cap: MAX_PERMUTATIVITY_N as u64,
        });
    }
    for n in 2..=n_max {
        let p = Partition::new(vec![1; n]).expect("1^n is a partition");
        let closure = phi_closure_cached(
            sigma,
            &Content::canonical(&p),
            &EnumerationCaps::default(),
        )?;
        if closure.phi.is_identity() {
            continue;
        }
        // The sorted word is lexicographically least, hence index 0.
        let partner = (1..closure.class.len())
            .find(|&j| closure.phi.same(0, j))
            .expect("a non-identity stable relation collapses the sorted word");
        let v = closure.class.word(partner);
        let images: Vec<u32> = v.letters().iter().map(|l| l.index() - 1).collect();
        let g = Perm::from_images(&images).expect("square-free full-content words are permutations");
        return Ok(Permutativity::Yes(PermutativityWitness { n, g }));
    }
    Ok(Permutativity::NoUpTo(n_max))
}

/// The least k ≤ k_max whose block-transposition identity (two adjacent
/// letters swapped between a length-k prefix and suffix) is derivable;
/// `None` if none is found within the bound.
pub fn least_pk(sigma: &Presentation, k_max: u32) -> Result<Option<u32>> {
    for k in 0..=k_max {
        let p = FixedVariety::Pk(k).defining_presentation();
        let id = &p.identities()[0];
        if derivable(sigma, id.lhs(), id.rhs())? {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// The identity `x^n y^n z^n = y^n x^n z^n`, spelt over letters a, b, c.
pub fn power_block_swap_identity(n: u32) -> Identity {
    let block = |l: u32, times: u32| std::iter::repeat(Letter::new(l)).take(times as usize);
    let side = |first: u32, second: u32| {
        Word::new(
            block(first, n)
                .chain(block(second, n))
                .chain(block(3, n))
                .collect(),
        )
        .expect("n >= 1")
    };
    Identity::new(side(1, 2), side(2, 1))
}

/// Is the power-block swap identity at level n derivable?
pub fn power_block_swap_holds(sigma: &Presentation, n: u32) -> Result<bool> {
    assert!(n >= 1, "levels start at 1");
    let id = power_block_swap_identity(n);
    derivable(sigma, id.lhs(), id.rhs())
}

/// The identity `x t x^{n-1} y^n z^n = y t y^{n-1} x^n z^n`, spelt over
/// letters a, b, c with marker d.
pub fn marked_power_block_swap_identity(n: u32) -> Identity {
    let block = |l: u32, times: u32| std::iter::repeat(Letter::new(l)).take(times as usize);
    let side = |first: u32, second: u32| {
        Word::new(
            block(first, 1)
                .chain(block(4, 1))
                .chain(block(first, n - 1))
                .chain(block(second, n))
                .chain(block(3, n))
                .collect(),
        )
        .expect("n >= 1")
    };
    Identity::new(side(1, 2), side(2, 1))
}

/// Is the marked power-block swap identity at level n derivable?
pub fn marked_power_block_swap_holds(sigma: &Presentation, n: u32) -> Result<bool> {
    assert!(n >= 1, "levels start at 1");
    let id = marked_power_block_swap_identity(n);
    derivable(sigma, id.lhs(), id.rhs())
}

/// Decides the classification criterion: permutative and containing none
/// of LZ, RZ, X, X-dual.
///
/// A presentation with an unbalanced identity is rejected outright (the
/// criterion is about overcommutative varieties).  When the bounded
/// permutativity search is exhausted the verdict is `Unknown`, whatever
/// the containment flags say: a definite `False` needs a definitely
/// permutative variety containing one of the four, and a definite `True`
/// needs the witness.  The flags are still reported truthfully — notably,
/// the empty presentation contains all four varieties but stays `Unknown`.
pub fn check_criterion(sigma: &Presentation, n_max: usize) -> Result<CriterionReport> {
    if let Err(Error::UnbalancedIdentity { identity }) = sigma.check_balanced() {
        return Err(Error::NotOvercommutative { identity });
    }
    let permutative = is_permutative(sigma, n_max)?;
    let contains_lz = contains_fixed(sigma, FixedVariety::Lz);
    let contains_rz = contains_fixed(sigma, FixedVariety::Rz);
    let contains_x = contains_fixed(sigma, FixedVariety::X);
    let contains_xdual = contains_fixed(sigma, FixedVariety::XDual);
    let verdict = match &permutative {
        Permutativity::NoUpTo(_) => Verdict::Unknown,
        Permutativity::Yes(_) => {
            if contains_lz || contains_rz || contains_x || contains_xdual {
                Verdict::False
            } else {
                Verdict::True
            }
        }
    };
    Ok(CriterionReport {
        permutative,
        contains_lz,
        contains_rz,
        contains_x,
        contains_xdual,
        verdict,
    })
}

/// The numeric bounds of the counting argument at P_k level k and swap
/// level n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundParams {
    pub k: u32,
    pub n: u32,
    /// N = (4k(2n+k−1)+2)^{2k}: bound on the points of one quotient.
    pub big_n: BigUint,
    /// log₂ of the cardinality bound on one congruence lattice, i.e. N².
    pub card_bound_log2: BigUint,
}

/// Evaluates the bound formulas exactly.
pub fn bound_params(k: u32, n: u32) -> BoundParams {
    assert!(n >= 1, "levels start at 1");
    let base = BigUint::from(4u64 * k as u64 * (2 * n as u64 + k as u64 - 1) + 2);
    let big_n = base.pow(2 * k);
    let card_bound_log2 = big_n.pow(2);
    BoundParams {
        k,
        n,
        big_n,
        card_bound_log2,
    }
}

impl BoundParams {
    /// The cardinality bound 2^(N²) itself.  Errors instead of
    /// materializing numbers beyond ~10^7 bits (k ≥ 2 already needs
    /// gigabytes).
    pub fn card_bound(&self) -> Result<BigUint> {
        let bits = &self.card_bound_log2;
        if bits > &BigUint::from(MAX_CARD_BOUND_BITS) {
            return Err(Error::SizeCapExceeded {
                what: "cardinality bound bits",
                value: u64::try_from(bits).unwrap_or(u64::MAX),
                cap: MAX_CARD_BOUND_BITS,
            });
        }
        let shift = u64::try_from(bits).expect("under the bit cap");
        Ok(BigUint::one() << shift)
    }

    /// Bit length of the cardinality bound: N² + 1.
    pub fn card_bound_bits(&self) -> BigUint {
        &self.card_bound_log2 + 1u32
    }
}

/// A word split into a length-k prefix, a nonempty middle, and a
/// length-k suffix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LmrSplit {
    pub left: Vec<Letter>,
    pub middle: Word,
    pub right: Vec<Letter>,
}

/// Splits off both length-k end segments; the middle must be nonempty.
pub fn lmr_split(w: &Word, k: usize) -> Result<LmrSplit> {
    if w.len() < 2 * k + 1 {
        return Err(Error::WordTooShort {
            len: w.len(),
            need: 2 * k + 1,
        });
    }
    let ls = w.letters();
    Ok(LmrSplit {
        left: ls[..k].to_vec(),
        middle: Word::new(ls[k..ls.len() - k].to_vec()).expect("middle is nonempty"),
        right: ls[ls.len() - k..].to_vec(),
    })
}

/// The up-to-two letters of highest multiplicity, ties broken toward the
/// smaller letter index.
fn heaviest_two(c: &Content) -> Vec<Letter> {
    let mut letters: Vec<(Letter, u32)> = c.entries().collect();
    letters.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    letters.into_iter().take(2).map(|(l, _)| l).collect()
}

/// Do both end segments avoid heavy letters?  A letter is heavy when its
/// multiplicity in the whole word is at least n+2k; the two heaviest
/// letters are exempt.
pub fn ends_avoid_heavy_letters(w: &Word, k: usize, n: u32) -> Result<bool> {
    let split = lmr_split(w, k)?;
    let content = Content::of(w);
    let exempt = heaviest_two(&content);
    let threshold = n + 2 * k as u32;
    Ok(split
        .left
        .iter()
        .chain(split.right.iter())
        .all(|l| exempt.contains(l) || content.multiplicity(*l) < threshold))
}

/// A member of w's rewrite class whose end segments avoid heavy letters.
///
/// Under the criterion's premises (the variety is below some P_k and
/// satisfies the swap identities at level n) such a member always exists;
/// its absence is reported as a loud error because it would contradict
/// the counting argument, not as a normal outcome.
pub fn normalize_ends(sigma: &Presentation, w: &Word, k: usize, n: u32) -> Result<Word> {
    let closure = phi_closure_cached(sigma, &Content::of(w), &EnumerationCaps::default())?;
    let i = closure.class.index_of(w).expect("w lies in its own content class");
    for j in 0..closure.class.len() {
        // Scanning in enumeration order returns the lex-least normal form.
        if closure.phi.same(i, j) && ends_avoid_heavy_letters(closure.class.word(j), k, n)? {
            return Ok(closure.class.word(j).clone());
        }
    }
    Err(Error::NoNormalFormFound {
        word: w.to_string(),
        k,
        n,
    })
}

/// Outcome of [`verify_class_bound`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassBoundCheck {
    /// Number of rewrite classes on the content.
    pub class_count: usize,
    /// Number of distinct (prefix, suffix) end-segment pairs among the
    /// words whose ends avoid heavy letters.
    pub boundary_count: usize,
    /// The formula bound N for these (k, n).
    pub big_n: BigUint,
}

/// Verifies the counting argument on one content class.
///
/// Exhaustively checks that words sharing both end segments are
/// rewrite-equivalent, that every class contains a word whose ends avoid
/// heavy letters, and that therefore the class count is at most the
/// boundary count (which in turn is at most a^{2k} for a the number of
/// letters allowed in end segments).  The first two checks fail loudly —
/// under the stated premises a failure refutes the argument, so it is
/// never reported as a normal result.
pub fn verify_class_bound(
    sigma: &Presentation,
    c: &Content,
    k: usize,
    n: u32,
) -> Result<ClassBoundCheck> {
    if c.total() as usize <= 2 * k + 1 {
        return Err(Error::WordTooShort {
            len: c.total() as usize,
            need: 2 * k + 2,
        });
    }
    let closure = phi_closure_cached(sigma, c, &EnumerationCaps::default())?;
    let class = &closure.class;
    let phi = &closure.phi;

    // Same end segments must mean same class.
    let mut by_ends: HashMap<(Vec<Letter>, Vec<Letter>), usize> = HashMap::new();
    for i in 0..class.len() {
        let split = lmr_split(class.word(i), k)?;
        match by_ends.insert((split.left, split.right), i) {
            Some(j) if !phi.same(i, j) => {
                return Err(Error::BoundaryPropertyViolated {
                    w1: class.word(j).to_string(),
                    w2: class.word(i).to_string(),
                });
            }
            _ => {}
        }
    }

    // Every class needs a member whose ends avoid heavy letters; count
    // the distinct end pairs among those members.
    let mut class_has_normal_form = vec![false; phi.class_count()];
    let mut boundaries: HashSet<(Vec<Letter>, Vec<Letter>)> = HashSet::new();
    for i in 0..class.len() {
        if ends_avoid_heavy_letters(class.word(i), k, n)? {
            class_has_normal_form[phi.class_id(i) as usize] = true;
            let split = lmr_split(class.word(i), k)?;
            boundaries.insert((split.left, split.right));
        }
    }
    if let Some(missing) = class_has_normal_form.iter().position(|&ok| !ok) {
        let rep = phi.classes()[missing][0];
        return Err(Error::NoNormalFormFound {
            word: class.word(rep).to_string(),
            k,
            n,
        });
    }

    let class_count = phi.class_count();
    let boundary_count = boundaries.len();
    assert!(
        class_count <= boundary_count,
        "end-segment counting is inconsistent: {class_count} classes, {boundary_count} boundaries"
    );
    let exempt = heaviest_two(c);
    let threshold = n + 2 * k as u32;
    let allowed = c
        .letters()
        .filter(|l| exempt.contains(l) || c.multiplicity(*l) < threshold)
        .count() as u128;
    let boundary_cap = allowed.pow(2 * k as u32);
    assert!(
        boundary_count as u128 <= boundary_cap,
        "more end-segment pairs than the allowed letters can spell"
    );

    Ok(ClassBoundCheck {
        class_count,
        boundary_count,
        big_n: bound_params(k as u32, n).big_n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::parse_word;

    fn w(s: &str) -> Word {
        parse_word(s).unwrap()
    }

    fn sigma(text: &str) -> Presentation {
        Presentation::parse_text(text, None).unwrap()
    }

    fn empty() -> Presentation {
        Presentation::new(vec![], None)
    }

    #[test]
    fn overcommutativity() {
        assert!(is_overcommutative(&sigma("xy = yx")));
        assert!(!is_overcommutative(&sigma("xy = x")));
        assert!(is_overcommutative(&sigma("xxy = yxx\nxyz = xzy")));
        assert!(is_overcommutative(&empty()));
    }

    #[test]
    fn permutativity_of_commutativity() {
        match is_permutative(&sigma("xy = yx"), 6).unwrap() {
            Permutativity::Yes(witness) => {
                assert_eq!(witness.n, 2);
                assert_eq!(witness.g.cycles_string(), "(1 2)");
                let (lhs, rhs) = witness.identity_words();
                assert_eq!((lhs, rhs), (w("ab"), w("ba")));
            }
            other => panic!("expected a witness, got {other:?}"),
        }
    }

    #[test]
    fn permutativity_of_the_two_identity_example() {
        match is_permutative(&sigma("xxy = yxx\nxyz = xzy"), 6).unwrap() {
            Permutativity::Yes(witness) => {
                assert_eq!(witness.n, 3);
                // Fixes 1, swaps 2 and 3.
                assert_eq!(witness.g.cycles_string(), "(2 3)");
                let (lhs, rhs) = witness.identity_words();
                assert!(derivable(&sigma("xxy = yxx\nxyz = xzy"), &lhs, &rhs).unwrap());
            }
            other => panic!("expected a witness, got {other:?}"),
        }
    }

    #[test]
    fn permutativity_search_exhausts_on_free() {
        assert_eq!(
            is_permutative(&empty(), 5).unwrap(),
            Permutativity::NoUpTo(5)
        );
        assert!(matches!(
            is_permutative(&empty(), 8),
            Err(Error::SizeCapExceeded { .. })
        ));
    }

    #[test]
    fn least_pk_examples() {
        assert_eq!(least_pk(&sigma("xyz = xzy"), 3).unwrap(), Some(1));
        assert_eq!(least_pk(&sigma("xy = yx"), 3).unwrap(), Some(0));
        assert_eq!(least_pk(&empty(), 2).unwrap(), None);
        assert_eq!(least_pk(&sigma("xxy = yxx\nxyz = xzy"), 3).unwrap(), Some(1));
    }

    #[test]
    fn swap_identity_shapes() {
        assert_eq!(power_block_swap_identity(2).to_string(), "aabbcc = bbaacc");
        assert_eq!(power_block_swap_identity(1).to_string(), "abc = bac");
        assert_eq!(
            marked_power_block_swap_identity(2).to_string(),
            "adabbcc = bdbaacc"
        );
        assert_eq!(marked_power_block_swap_identity(1).to_string(), "adbc = bdac");
        assert!(power_block_swap_identity(3).is_balanced());
        assert!(marked_power_block_swap_identity(3).is_balanced());
    }

    #[test]
    fn swap_identities_under_commutativity() {
        for n in 1..=2 {
            assert!(power_block_swap_holds(&sigma("xy = yx"), n).unwrap());
            assert!(marked_power_block_swap_holds(&sigma("xy = yx"), n).unwrap());
        }
    }

    #[test]
    fn swap_identities_fail_without_rewrites() {
        assert!(!power_block_swap_holds(&empty(), 2).unwrap());
        assert!(!marked_power_block_swap_holds(&empty(), 2).unwrap());
    }

    #[test]
    fn power_swap_fails_under_tail_swap_alone() {
        // The only identity keeps the first letter fixed, and the two
        // sides of the swap start differently.
        assert!(!power_block_swap_holds(&sigma("xyz = xzy"), 2).unwrap());
    }

    #[test]
    fn two_identity_example_satisfies_swaps_at_two() {
        let s = sigma("xxy = yxx\nxyz = xzy");
        assert!(power_block_swap_holds(&s, 2).unwrap());
        assert!(marked_power_block_swap_holds(&s, 2).unwrap());
    }

    #[test]
    fn criterion_verdicts() {
        let report = check_criterion(&sigma("xy = yx"), 6).unwrap();
        assert_eq!(report.verdict, Verdict::True);
        assert!(!report.contains_lz && !report.contains_rz);
        assert!(!report.contains_x && !report.contains_xdual);

        let report = check_criterion(&sigma("xyz = xzy"), 6).unwrap();
        assert_eq!(report.verdict, Verdict::False);
        assert!(report.contains_lz);

        let report = check_criterion(&sigma("xxy = yxx\nxyz = xzy"), 6).unwrap();
        assert_eq!(report.verdict, Verdict::True);

        // The empty presentation contains everything, but the verdict
        // stays unknown because permutativity was not settled.
        let report = check_criterion(&empty(), 6).unwrap();
        assert_eq!(report.verdict, Verdict::Unknown);
        assert!(report.contains_lz && report.contains_x);
        assert_eq!(report.permutative, Permutativity::NoUpTo(6));

        assert!(matches!(
            check_criterion(&sigma("xy = x"), 6),
            Err(Error::NotOvercommutative { .. })
        ));
    }

    #[test]
    fn bound_values() {
        let b = bound_params(1, 2);
        assert_eq!(b.big_n, BigUint::from(324u32));
        assert_eq!(b.card_bound_log2, BigUint::from(104976u32));
        assert_eq!(b.card_bound_bits(), BigUint::from(104977u32));
        assert_eq!(b.card_bound().unwrap().bits(), 104977);

        let b = bound_params(1, 1);
        assert_eq!(b.big_n, BigUint::from(100u32));

        let b = bound_params(0, 1);
        assert_eq!(b.big_n, BigUint::one());
        assert_eq!(b.card_bound().unwrap(), BigUint::from(2u32));
    }

    #[test]
    fn bounds_monotone_for_positive_k() {
        for k in 1..=3u32 {
            for n in 1..=3u32 {
                let here = bound_params(k, n);
                assert!(bound_params(k + 1, n).big_n > here.big_n);
                assert!(bound_params(k, n + 1).big_n > here.big_n);
            }
        }
    }

    #[test]
    fn card_bound_refuses_gigabyte_numbers() {
        // k = 2, n = 1: N = 26^4, N² ≈ 2·10^11 bits.
        assert!(matches!(
            bound_params(2, 1).card_bound(),
            Err(Error::SizeCapExceeded { .. })
        ));
        assert_eq!(
            bound_params(2, 1).big_n,
            BigUint::from(26u32).pow(4)
        );
    }

    #[test]
    fn lmr_examples() {
        let s = lmr_split(&w("xxyyzz"), 2).unwrap();
        assert_eq!(s.left, w("xx").letters());
        assert_eq!(s.middle, w("yy"));
        assert_eq!(s.right, w("zz").letters());

        let s = lmr_split(&w("xyz"), 1).unwrap();
        assert_eq!((s.left.len(), s.right.len()), (1, 1));
        assert_eq!(s.middle, w("y"));

        let s = lmr_split(&w("xyz"), 0).unwrap();
        assert!(s.left.is_empty() && s.right.is_empty());
        assert_eq!(s.middle, w("xyz"));

        assert!(matches!(
            lmr_split(&w("xy"), 1),
            Err(Error::WordTooShort { len: 2, need: 3 })
        ));
    }

    #[test]
    fn heavy_letter_condition() {
        // All multiplicities below the threshold: trivially fine.
        assert!(ends_avoid_heavy_letters(&w("xxyyzz"), 1, 2).unwrap());
        // z is as heavy as the two heaviest but loses the index
        // tie-break, so it may not stand at the ends.
        let heavy = w("zzzzaaaabbbb");
        assert!(!ends_avoid_heavy_letters(&heavy, 1, 2).unwrap());
        // The two heaviest letters themselves are exempt.
        assert!(ends_avoid_heavy_letters(&w("aaaabbbb"), 1, 2).unwrap());
        // Same heavy content, but with light ends.
        let ok = w("caaaabbbbc");
        assert!(ends_avoid_heavy_letters(&ok, 1, 2).unwrap());
    }

    #[test]
    fn normal_forms_under_commutativity() {
        // k = 0 makes the condition vacuous, so the lex-least class
        // member — the sorted word — is the normal form.
        assert_eq!(normalize_ends(&sigma("xy = yx"), &w("zyx"), 0, 1).unwrap(), w("xyz"));
        assert_eq!(normalize_ends(&sigma("xy = yx"), &w("bab"), 0, 1).unwrap(), w("abb"));
    }

    #[test]
    fn normal_forms_absent_without_rewrites() {
        // Under the free variety every class is a singleton, so a word
        // whose ends are stuck with a heavy letter (c occurs 4 ≥ n+2k
        // times and loses the exemption tie-break) has no normal form.
        let bad = w("ccccaaaabbbb");
        assert!(matches!(
            normalize_ends(&empty(), &bad, 1, 2),
            Err(Error::NoNormalFormFound { .. })
        ));
    }

    #[test]
    fn class_bound_for_commutativity() {
        let check = verify_class_bound(&sigma("xy = yx"), &"a:2,b:1".parse().unwrap(), 0, 1).unwrap();
        assert_eq!(check.class_count, 1);
        assert_eq!(check.boundary_count, 1);
        assert_eq!(check.big_n, BigUint::one());
    }

    #[test]
    fn class_bound_matches_prefix_suffix_fibers() {
        // For the pure block-transposition presentation the classes are
        // exactly the (first letter, last letter) fibers.
        let p1 = FixedVariety::Pk(1).defining_presentation();
        let check = verify_class_bound(&p1, &"x:2,y:1,z:1".parse().unwrap(), 1, 1).unwrap();
        assert_eq!(check.class_count, 7);
        assert_eq!(check.boundary_count, 7);
    }

    #[test]
    fn class_bound_for_the_two_identity_example() {
        let s = sigma("xxy = yxx\nxyz = xzy");
        let check = verify_class_bound(&s, &"x:2,y:2,z:2".parse().unwrap(), 1, 2).unwrap();
        assert!(check.class_count <= check.boundary_count);
        assert_eq!(check.big_n, BigUint::from(324u32));
    }

    #[test]
    fn class_bound_rejects_short_contents() {
        assert!(matches!(
            verify_class_bound(&sigma("xy = yx"), &"a:1,b:1,c:1".parse().unwrap(), 1, 1),
            Err(Error::WordTooShort { .. })
        ));
    }

    #[test]
    fn boundary_property_fails_for_free_variety() {
        // Without any identities, distinct words sharing their ends stay
        // in distinct classes, and the checker says so loudly.
        assert!(matches!(
            verify_class_bound(&empty(), &"x:2,y:2".parse().unwrap(), 1, 1),
            Err(Error::BoundaryPropertyViolated { .. })
        ));
    }
}
