//! Permutation groups, G-sets, and their congruence lattices.
//!
//! The group attached to a partition λ with m components is the stabilizer
//! of the component vector inside S_m — a direct product of symmetric
//! groups on the blocks of equal components.  It acts on a content class
//! by renaming letters, and because rewrite closures are stable under
//! renaming, the action descends to the quotient by [`phi_lambda`]
//! ([`quotient_gset`]).  Congruences of the resulting finite G-set are the
//! action-stable equivalences; [`congruence_lattice`] enumerates them all
//! as the join-closure of the principal ones.
//!
//! [`phi_lambda`]: crate::rewrite::phi_lambda

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::lattices::FiniteLattice;
use crate::rewrite::{phi_closure_cached, FiniteEquivalence, Presentation, UnionFind};
use crate::words::{Content, EnumerationCaps, Letter, Partition, Word};

/// Largest supported permutation degree; groups are stored by full
/// element enumeration, so 8! = 40320 elements is the ceiling.
pub const MAX_DEGREE: usize = 8;

/// Default cap on the number of congruences enumerated for one G-set.
pub const MAX_CONGRUENCES: usize = 100_000;

/// Cap on group-order × point-count for one quotient action table.
const MAX_ACTION_ENTRIES: u64 = 100_000_000;

/// A permutation of `{0, …, degree-1}`, stored by its image vector.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm {
    images: Vec<u32>,
}

impl Perm {
    pub fn identity(degree: usize) -> Perm {
        Perm {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds from 0-based images; must be a bijection.
    pub fn from_images(images: &[u32]) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &im in images {
            if im as usize >= n || seen[im as usize] {
                return Err(Error::InvalidAction {
                    reason: format!("images {images:?} are not a permutation"),
                });
            }
            seen[im as usize] = true;
        }
        Ok(Perm {
            images: images.to_vec(),
        })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of a 0-based point.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.degree(), other.degree(), "degrees differ");
        Perm {
            images: other.images.iter().map(|&i| self.images[i as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0u32; self.images.len()];
        for (i, &im) in self.images.iter().enumerate() {
            images[im as usize] = i as u32;
        }
        Perm { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &im)| i as u32 == im)
    }

    /// Cycle notation on 1-based points, fixed points omitted; the
    /// identity renders as `()`.
    pub fn cycles_string(&self) -> String {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = String::new();
        for start in 0..n {
            if seen[start] || self.apply(start) == start {
                seen[start] = true;
                continue;
            }
            out.push('(');
            let mut i = start;
            loop {
                seen[i] = true;
                out.push_str(&(i + 1).to_string());
                i = self.apply(i);
                if i == start {
                    break;
                }
                out.push(' ');
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cycles_string())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm({})", self.cycles_string())
    }
}

/// A permutation group given by its full, sorted element list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermGroup {
    degree: usize,
    elements: Vec<Perm>,
}

impl PermGroup {
    /// Builds from an explicit element list, checking that it contains the
    /// identity and is closed under composition (which, for a finite set,
    /// also gives inverses).  Cost is quadratic in the element count.
    pub fn from_elements(degree: usize, elements: Vec<Perm>) -> Result<PermGroup> {
        let mut elements = elements;
        elements.sort();
        elements.dedup();
        if elements.iter().any(|p| p.degree() != degree) {
            return Err(Error::InvalidAction {
                reason: "element of wrong degree".to_string(),
            });
        }
        if elements.first() != Some(&Perm::identity(degree)) {
            return Err(Error::InvalidAction {
                reason: "missing identity element".to_string(),
            });
        }
        for a in &elements {
            for b in &elements {
                let c = a.compose(b);
                if elements.binary_search(&c).is_err() {
                    return Err(Error::InvalidAction {
                        reason: format!("not closed: {a} ∘ {b} = {c} is missing"),
                    });
                }
            }
        }
        Ok(PermGroup { degree, elements })
    }

    /// Internal constructor for sets known to be groups.
    fn from_elements_unchecked(degree: usize, mut elements: Vec<Perm>) -> PermGroup {
        elements.sort();
        debug_assert!(elements.first() == Some(&Perm::identity(degree)));
        PermGroup { degree, elements }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Elements in sorted order; the identity is always first.
    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element_index(&self, p: &Perm) -> Option<usize> {
        self.elements.binary_search(p).ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }
}

fn check_degree(degree: usize) -> Result<()> {
    if degree > MAX_DEGREE {
        return Err(Error::DegreeCapExceeded {
            degree,
            cap: MAX_DEGREE,
        });
    }
    Ok(())
}

fn all_perms(degree: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut images: Vec<u32> = (0..degree as u32).collect();
    permute(&mut images, 0, &mut out);
    out
}

fn permute(images: &mut Vec<u32>, at: usize, out: &mut Vec<Perm>) {
    if at == images.len() {
        out.push(Perm {
            images: images.clone(),
        });
        return;
    }
    for i in at..images.len() {
        images.swap(at, i);
        permute(images, at + 1, out);
        images.swap(at, i);
    }
}

/// The full symmetric group on `{0, …, n-1}`.
pub fn symmetric_group(n: usize) -> Result<PermGroup> {
    check_degree(n)?;
    Ok(PermGroup::from_elements_unchecked(n, all_perms(n)))
}

/// The stabilizer of the component vector of `p` inside the symmetric
/// group on its positions: all g with `p[i] = p[g(i)]`.  Equals the direct
/// product of symmetric groups on the blocks of equal components.
pub fn g_lambda(p: &Partition) -> Result<PermGroup> {
    let m = p.len();
    check_degree(m)?;
    let parts = p.parts();
    let elements = all_perms(m)
        .into_iter()
        .filter(|g| (0..m).all(|i| parts[i] == parts[g.apply(i)]))
        .collect();
    Ok(PermGroup::from_elements_unchecked(m, elements))
}

/// Adjacent transpositions of equal components; these generate the
/// stabilizer product and suffice for stability checks.
fn block_transpositions(p: &Partition) -> Vec<Perm> {
    let parts = p.parts();
    let mut out = Vec::new();
    for i in 0..parts.len().saturating_sub(1) {
        if parts[i] == parts[i + 1] {
            let mut images: Vec<u32> = (0..parts.len() as u32).collect();
            images.swap(i, i + 1);
            out.push(Perm { images });
        }
    }
    out
}

/// Renames each letter `x_i` of `w` to `x_{g(i)}` (letters are 1-based,
/// so letter i moves under the permutation of position i-1).
pub fn act_on_word(g: &Perm, w: &Word) -> Result<Word> {
    let letters = w
        .letters()
        .iter()
        .map(|&l| {
            let i = l.index();
            if i as usize > g.degree() {
                return Err(Error::DegreeMismatch {
                    degree: g.degree(),
                    letter_index: i,
                });
            }
            Ok(Letter::new(g.apply(i as usize - 1) as u32 + 1))
        })
        .collect::<Result<Vec<Letter>>>()?;
    Word::new(letters)
}

/// A finite set with a permutation-group action, stored as one row of
/// point images per group element.
#[derive(Clone, Debug)]
pub struct GSet {
    group: PermGroup,
    size: usize,
    action: Vec<Vec<u32>>,
    labels: Option<Vec<String>>,
}

impl GSet {
    /// Builds from explicit rows (one per group element, in the group's
    /// element order).  Each row must be a bijection and the identity
    /// element's row must fix every point; the full homomorphism property
    /// is checked separately by [`GSet::validate_action`].
    pub fn new(
        group: PermGroup,
        action: Vec<Vec<u32>>,
        labels: Option<Vec<String>>,
    ) -> Result<GSet> {
        if action.len() != group.order() {
            return Err(Error::InvalidAction {
                reason: format!(
                    "{} rows for a group of order {}",
                    action.len(),
                    group.order()
                ),
            });
        }
        let size = action.first().map_or(0, |r| r.len());
        if size == 0 {
            return Err(Error::InvalidAction {
                reason: "empty point set".to_string(),
            });
        }
        for row in &action {
            let mut seen = vec![false; size];
            if row.len() != size {
                return Err(Error::InvalidAction {
                    reason: "rows of unequal length".to_string(),
                });
            }
            for &im in row {
                if im as usize >= size || seen[im as usize] {
                    return Err(Error::InvalidAction {
                        reason: format!("row {row:?} is not a bijection"),
                    });
                }
                seen[im as usize] = true;
            }
        }
        if action[0].iter().enumerate().any(|(i, &im)| im as usize != i) {
            return Err(Error::InvalidAction {
                reason: "identity element does not act trivially".to_string(),
            });
        }
        if let Some(ls) = &labels {
            if ls.len() != size {
                return Err(Error::InvalidAction {
                    reason: "label count differs from point count".to_string(),
                });
            }
        }
        Ok(GSet {
            group,
            size,
            action,
            labels,
        })
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// The image of `point` under the group element with this index.
    pub fn apply(&self, element_index: usize, point: usize) -> usize {
        self.action[element_index][point] as usize
    }

    /// One row of the action table.
    pub fn row(&self, element_index: usize) -> &[u32] {
        &self.action[element_index]
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, point: usize) -> String {
        match &self.labels {
            Some(ls) => ls[point].clone(),
            None => point.to_string(),
        }
    }

    /// Full homomorphism check: `(g ∘ h)·x = g·(h·x)` for all g, h, x.
    /// Quadratic in group order; intended for tests and small groups.
    pub fn validate_action(&self) -> Result<()> {
        let els = self.group.elements();
        for (gi, g) in els.iter().enumerate() {
            for (hi, h) in els.iter().enumerate() {
                let gh = g.compose(h);
                let ghi = self.group.element_index(&gh).ok_or_else(|| {
                    Error::InvalidAction {
                        reason: format!("group not closed under {g} ∘ {h}"),
                    }
                })?;
                for x in 0..self.size {
                    if self.apply(ghi, x) != self.apply(gi, self.apply(hi, x)) {
                        return Err(Error::InvalidAction {
                            reason: format!("action not a homomorphism at g={g}, h={h}, x={x}"),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Orbit of a point, sorted.
    pub fn orbit(&self, point: usize) -> Vec<usize> {
        let mut in_orbit = vec![false; self.size];
        for row in &self.action {
            in_orbit[row[point] as usize] = true;
        }
        // Rows cover the whole group, so one sweep suffices: the orbit is
        // {g·point} over all g.
        (0..self.size).filter(|&i| in_orbit[i]).collect()
    }
}

/// The quotient of a content class by the rewrite closure, with the
/// letter-renaming action, under default caps.
pub fn quotient_gset(sigma: &Presentation, p: &Partition) -> Result<GSet> {
    quotient_gset_capped(sigma, p, &EnumerationCaps::default())
}

/// As [`quotient_gset`] with explicit enumeration caps.
///
/// Stability of the rewrite closure under the renaming action is a
/// theorem (renaming letters maps derivations to derivations whenever the
/// renaming preserves the content); it is nevertheless asserted on a
/// generating set, so a violation panics rather than producing a G-set
/// that is silently not a G-set.
pub fn quotient_gset_capped(
    sigma: &Presentation,
    p: &Partition,
    caps: &EnumerationCaps,
) -> Result<GSet> {
    let content = Content::canonical(p);
    let closure = phi_closure_cached(sigma, &content, caps)?;
    let class = &closure.class;
    let phi = &closure.phi;
    let group = g_lambda(p)?;

    let entries = group.order() as u64 * phi.class_count() as u64;
    if entries > MAX_ACTION_ENTRIES {
        return Err(Error::SizeCapExceeded {
            what: "action table entries",
            value: entries,
            cap: MAX_ACTION_ENTRIES,
        });
    }

    // Index permutation of the whole word class induced by g.
    let word_perm = |g: &Perm| -> Vec<usize> {
        (0..class.len())
            .map(|i| {
                let image = act_on_word(g, class.word(i)).expect("letters within degree");
                class
                    .index_of(&image)
                    .expect("renaming by the stabilizer preserves content")
            })
            .collect()
    };

    for t in block_transpositions(p) {
        assert!(
            phi.is_stable_under(&word_perm(&t)),
            "rewrite closure not stable under letter renaming {t}"
        );
    }

    // Lex-least representative per class; rows act on representatives.
    let classes = phi.classes();
    let reps: Vec<&Word> = classes.iter().map(|members| class.word(members[0])).collect();
    let labels: Vec<String> = reps.iter().map(|w| w.to_string()).collect();
    let action = group
        .elements()
        .iter()
        .map(|g| {
            reps.iter()
                .map(|rep| {
                    let image = act_on_word(g, rep).expect("letters within degree");
                    let idx = class.index_of(&image).expect("renaming preserves content");
                    phi.class_id(idx)
                })
                .collect()
        })
        .collect();
    GSet::new(group, action, Some(labels))
}

/// An action-stable equivalence on a G-set's points.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Congruence {
    relation: FiniteEquivalence,
}

impl Congruence {
    /// Wraps an equivalence after checking stability under every group
    /// element's row.
    pub fn new(a: &GSet, relation: FiniteEquivalence) -> Result<Congruence> {
        if relation.size() != a.size() {
            return Err(Error::UnstableEquivalence);
        }
        for ei in 0..a.group().order() {
            let row: Vec<usize> = a.row(ei).iter().map(|&x| x as usize).collect();
            if !relation.is_stable_under(&row) {
                return Err(Error::UnstableEquivalence);
            }
        }
        Ok(Congruence { relation })
    }

    pub fn relation(&self) -> &FiniteEquivalence {
        &self.relation
    }

    pub fn class_count(&self) -> usize {
        self.relation.class_count()
    }
}

/// The smallest congruence of `a` identifying `i` and `j`: the
/// equivalence closure of `{(g·i, g·j) | g}`.
pub fn principal_congruence(a: &GSet, i: usize, j: usize) -> Congruence {
    let mut uf = UnionFind::new(a.size());
    for ei in 0..a.group().order() {
        uf.union(a.apply(ei, i), a.apply(ei, j));
    }
    let relation = FiniteEquivalence::from_class_of(&uf.class_labels());
    debug_assert!(Congruence::new(a, relation.clone()).is_ok());
    Congruence { relation }
}

/// All congruences of `a`, as the join-closure of the principal ones.
///
/// Every congruence is the join of the principal congruences of its
/// related pairs, so the closure enumerates Con(a) exactly.  Errors when
/// more than `cap` congruences appear.
pub fn congruences(a: &GSet, cap: usize) -> Result<Vec<Congruence>> {
    fn push(
        seen: &mut HashSet<FiniteEquivalence>,
        found: &mut Vec<FiniteEquivalence>,
        e: FiniteEquivalence,
    ) -> bool {
        if !seen.insert(e.clone()) {
            return false;
        }
        found.push(e);
        true
    }

    let n = a.size();
    let mut seen: HashSet<FiniteEquivalence> = HashSet::new();
    let mut found: Vec<FiniteEquivalence> = Vec::new();
    push(&mut seen, &mut found, FiniteEquivalence::identity(n));
    for i in 0..n {
        for j in i + 1..n {
            push(&mut seen, &mut found, principal_congruence(a, i, j).relation);
        }
    }
    if found.len() > cap {
        return Err(Error::LatticeCapExceeded { cap });
    }

    // Worklist closure under pairwise joins: joining each new element
    // against everything already found reaches every finite join.
    let mut next = 0;
    while next < found.len() {
        let current = found[next].clone();
        let mut fresh = Vec::new();
        for other in &found {
            let join = current.join(other);
            if !seen.contains(&join) {
                fresh.push(join);
            }
        }
        for e in fresh {
            if push(&mut seen, &mut found, e) && found.len() > cap {
                return Err(Error::LatticeCapExceeded { cap });
            }
        }
        next += 1;
    }

    Ok(found
        .into_iter()
        .map(|relation| Congruence { relation })
        .collect())
}

/// Con(a) as an explicit finite lattice, under the default congruence cap.
pub fn congruence_lattice(a: &GSet) -> Result<FiniteLattice> {
    congruence_lattice_capped(a, MAX_CONGRUENCES)
}

/// As [`congruence_lattice`] with an explicit cap.
///
/// Elements are sorted with the identity relation first and the full
/// relation last (descending class count, then class vector); the order
/// is refinement, meet is intersection, join is the transitive closure of
/// the union.
pub fn congruence_lattice_capped(a: &GSet, cap: usize) -> Result<FiniteLattice> {
    let mut relations: Vec<FiniteEquivalence> = congruences(a, cap)?
        .into_iter()
        .map(|c| c.relation)
        .collect();
    relations.sort_by(|x, y| {
        y.class_count()
            .cmp(&x.class_count())
            .then_with(|| (0..x.size()).map(|i| x.class_id(i)).cmp((0..y.size()).map(|i| y.class_id(i))))
    });

    let index: HashMap<&FiniteEquivalence, u32> =
        relations.iter().zip(0u32..).collect();
    let n = relations.len();
    let mut leq = vec![false; n * n];
    for (i, x) in relations.iter().enumerate() {
        for (j, y) in relations.iter().enumerate() {
            leq[i * n + j] = x.refines(y);
        }
    }
    let mut join = vec![0u32; n * n];
    let mut meet = vec![0u32; n * n];
    for i in 0..n {
        for j in 0..=i {
            let jn = index[&relations[i].join(&relations[j])];
            let mt = index[&relations[i].meet(&relations[j])];
            join[i * n + j] = jn;
            join[j * n + i] = jn;
            meet[i * n + j] = mt;
            meet[j * n + i] = mt;
        }
    }
    let labels = relations.iter().map(FiniteEquivalence::block_string).collect();
    FiniteLattice::from_parts(n, leq, join, meet, Some(labels))
}

/// Is the action transitive with every non-identity element fixed-point
/// free?  (Equivalently: the G-set is isomorphic to G acting on itself.)
pub fn is_regular(a: &GSet) -> bool {
    if a.orbit(0).len() != a.size() {
        return false;
    }
    for ei in 1..a.group().order() {
        // Elements are sorted with the identity at index 0.
        if a.row(ei).iter().enumerate().any(|(i, &im)| im as usize == i) {
            return false;
        }
    }
    true
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

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    /// The natural S_n-set: S_n permuting {0, …, n-1}.
    fn natural_gset(n: usize) -> GSet {
        let group = symmetric_group(n).unwrap();
        let action = group
            .elements()
            .iter()
            .map(|g| (0..n).map(|i| g.apply(i) as u32).collect())
            .collect();
        GSet::new(group, action, None).unwrap()
    }

    /// n points with only the trivial group acting.
    fn rigid_gset(n: usize) -> GSet {
        let group = symmetric_group(1).unwrap();
        GSet::new(group, vec![(0..n as u32).collect()], None).unwrap()
    }

    /// The regular G-set: G acting on itself by left translation.
    fn regular_gset(group: PermGroup) -> GSet {
        let action = group
            .elements()
            .iter()
            .map(|g| {
                group
                    .elements()
                    .iter()
                    .map(|h| group.element_index(&g.compose(h)).unwrap() as u32)
                    .collect()
            })
            .collect();
        GSet::new(group, action, None).unwrap()
    }

    #[test]
    fn perm_basics() {
        let id = Perm::identity(3);
        assert!(id.is_identity());
        assert_eq!(id.cycles_string(), "()");
        let swap = Perm::from_images(&[1, 0, 2]).unwrap();
        assert_eq!(swap.cycles_string(), "(1 2)");
        let cycle = Perm::from_images(&[1, 2, 0]).unwrap();
        assert_eq!(cycle.cycles_string(), "(1 2 3)");
        assert_eq!(cycle.inverse().cycles_string(), "(1 3 2)");
        assert!(cycle.compose(&cycle.inverse()).is_identity());
        // compose applies the right factor first.
        let t01 = Perm::from_images(&[1, 0, 2]).unwrap();
        let t12 = Perm::from_images(&[0, 2, 1]).unwrap();
        assert_eq!(t01.compose(&t12).apply(1), 2);
        assert_eq!(t12.compose(&t01).apply(1), 0);
        assert!(Perm::from_images(&[0, 0, 1]).is_err());
        assert!(Perm::from_images(&[0, 3]).is_err());
    }

    #[test]
    fn symmetric_group_orders() {
        for (n, order) in [(1, 1), (2, 2), (3, 6), (4, 24)] {
            let g = symmetric_group(n).unwrap();
            assert_eq!(g.order(), order);
            assert!(g.elements()[0].is_identity());
        }
        assert!(matches!(
            symmetric_group(9),
            Err(Error::DegreeCapExceeded { degree: 9, cap: 8 })
        ));
    }

    #[test]
    fn group_validation() {
        let id = Perm::identity(2);
        let swap = Perm::from_images(&[1, 0]).unwrap();
        assert!(PermGroup::from_elements(2, vec![id.clone(), swap.clone()]).is_ok());
        assert!(PermGroup::from_elements(2, vec![swap.clone()]).is_err());
        let c3 = Perm::from_images(&[1, 2, 0]).unwrap();
        // {id, c3} misses c3², so it is not closed.
        assert!(PermGroup::from_elements(3, vec![Perm::identity(3), c3.clone()]).is_err());
        assert!(PermGroup::from_elements(
            3,
            vec![Perm::identity(3), c3.clone(), c3.compose(&c3)]
        )
        .is_ok());
    }

    #[test]
    fn stabilizer_orders() {
        assert_eq!(g_lambda(&part("2,1")).unwrap().order(), 1);
        assert_eq!(g_lambda(&part("1,1,1")).unwrap().order(), 6);
        assert_eq!(g_lambda(&part("2,2,1")).unwrap().order(), 2);
        assert_eq!(g_lambda(&part("3,3,2,2,2")).unwrap().order(), 2 * 6);
        assert_eq!(g_lambda(&part("1")).unwrap().order(), 1);
        // Every element fixes the component vector.
        let p = part("2,2,1");
        for g in g_lambda(&p).unwrap().elements() {
            for i in 0..p.len() {
                assert_eq!(p.parts()[i], p.parts()[g.apply(i)]);
            }
        }
    }

    #[test]
    fn renaming_action_on_words() {
        let swap12 = Perm::from_images(&[1, 0]).unwrap();
        // Letters a=1, b=2 under the swap of positions 1, 2.
        assert_eq!(act_on_word(&swap12, &w("aab")).unwrap(), w("bba"));
        let id = Perm::identity(3);
        assert_eq!(act_on_word(&id, &w("abc")).unwrap(), w("abc"));
        let cycle = Perm::from_images(&[1, 2, 0]).unwrap();
        assert_eq!(act_on_word(&cycle, &w("abc")).unwrap(), w("bca"));
        assert!(matches!(
            act_on_word(&swap12, &w("abc")),
            Err(Error::DegreeMismatch { degree: 2, letter_index: 3 })
        ));
    }

    #[test]
    fn quotient_by_first_letter_classes() {
        let a = quotient_gset(&sigma("xxy = yxx\nxyz = xzy"), &part("1,1,1")).unwrap();
        assert_eq!(a.size(), 3);
        assert_eq!(a.group().order(), 6);
        a.validate_action().unwrap();
        assert_eq!(a.labels().unwrap(), &["abc", "bac", "cab"]);
        // The induced action permutes first-letter fibers naturally: it is
        // transitive but transpositions fix a point.
        assert_eq!(a.orbit(0), vec![0, 1, 2]);
        assert!(!is_regular(&a));
    }

    #[test]
    fn quotient_of_free_class_is_regular() {
        let a = quotient_gset(&Presentation::new(vec![], None), &part("1,1,1")).unwrap();
        assert_eq!(a.size(), 6);
        assert!(is_regular(&a));
        a.validate_action().unwrap();
    }

    #[test]
    fn quotient_singleton() {
        let a = quotient_gset(&sigma("xy = yx"), &part("2,1")).unwrap();
        assert_eq!(a.size(), 1);
        assert!(a.group().is_trivial());
        assert!(is_regular(&a));
    }

    #[test]
    fn quotient_keeps_size_without_identities() {
        for p in ["2,1", "2,2", "3,1"] {
            let p = part(p);
            let a = quotient_gset(&Presentation::new(vec![], None), &p).unwrap();
            let class = crate::words::enumerate_words(&Content::canonical(&p)).unwrap();
            assert_eq!(a.size(), class.len());
        }
    }

    #[test]
    fn gset_validation_rejects_bad_tables() {
        let group = symmetric_group(2).unwrap();
        // Wrong row count.
        assert!(GSet::new(group.clone(), vec![vec![0, 1]], None).is_err());
        // Non-bijective row.
        assert!(GSet::new(group.clone(), vec![vec![0, 1], vec![0, 0]], None).is_err());
        // Identity row must fix points.
        assert!(GSet::new(group.clone(), vec![vec![1, 0], vec![0, 1]], None).is_err());
        // A consistent table passes, and validates as a homomorphism.
        let a = GSet::new(group, vec![vec![0, 1], vec![1, 0]], None).unwrap();
        a.validate_action().unwrap();
    }

    #[test]
    fn principal_congruences() {
        let a = natural_gset(3);
        let delta = principal_congruence(&a, 1, 1);
        assert!(delta.relation().is_identity());
        // Any non-diagonal pair in the natural set generates everything.
        let full = principal_congruence(&a, 0, 1);
        assert!(full.relation().is_full());

        let r = rigid_gset(3);
        let pc = principal_congruence(&r, 0, 1);
        assert_eq!(pc.relation(), &FiniteEquivalence::from_class_of(&[0, 0, 1]));
    }

    #[test]
    fn congruence_stability_validation() {
        let a = natural_gset(3);
        assert!(Congruence::new(&a, FiniteEquivalence::identity(3)).is_ok());
        assert!(Congruence::new(&a, FiniteEquivalence::full(3)).is_ok());
        assert!(matches!(
            Congruence::new(&a, FiniteEquivalence::from_class_of(&[0, 0, 1])),
            Err(Error::UnstableEquivalence)
        ));
        assert!(matches!(
            Congruence::new(&a, FiniteEquivalence::identity(4)),
            Err(Error::UnstableEquivalence)
        ));
    }

    /// All stable equivalences by brute force over set partitions.
    fn oracle_congruences(a: &GSet) -> Vec<FiniteEquivalence> {
        fn rgs(labels: &mut Vec<u32>, at: usize, max: u32, out: &mut Vec<FiniteEquivalence>) {
            if at == labels.len() {
                out.push(FiniteEquivalence::from_class_of(labels));
                return;
            }
            for l in 0..=max {
                labels[at] = l;
                rgs(labels, at + 1, max.max(l + 1), out);
            }
        }
        let mut all = Vec::new();
        rgs(&mut vec![0; a.size()], 0, 0, &mut all);
        all.retain(|e| Congruence::new(a, e.clone()).is_ok());
        all
    }

    #[test]
    fn closure_matches_brute_force() {
        let cases: Vec<GSet> = vec![
            natural_gset(3),
            natural_gset(4),
            rigid_gset(4),
            regular_gset(symmetric_group(3).unwrap()),
            quotient_gset(&sigma("xxy = yxx\nxyz = xzy"), &part("1,1,1,1")).unwrap(),
        ];
        for a in &cases {
            let mut fast: Vec<FiniteEquivalence> = congruences(a, MAX_CONGRUENCES)
                .unwrap()
                .into_iter()
                .map(|c| c.relation)
                .collect();
            let mut slow = oracle_congruences(a);
            fast.sort_by_key(|e| (0..e.size()).map(|i| e.class_id(i)).collect::<Vec<_>>());
            slow.sort_by_key(|e| (0..e.size()).map(|i| e.class_id(i)).collect::<Vec<_>>());
            assert_eq!(fast, slow, "size {}", a.size());
        }
    }

    #[test]
    fn congruence_lattice_examples() {
        // Regular S_3-set: 6 congruences, matching the 6 subgroups of S_3.
        let l = congruence_lattice(&regular_gset(symmetric_group(3).unwrap())).unwrap();
        assert_eq!(l.size(), 6);

        // Trivial group on 3 points: the 5 partitions of a 3-set.
        let l = congruence_lattice(&rigid_gset(3)).unwrap();
        assert_eq!(l.size(), 5);
        assert_eq!(l.label(l.bottom()), "0|1|2");
        assert_eq!(l.label(l.top()), "012");

        // Natural S_n-set: only the two trivial congruences.
        for n in 2..=4 {
            let l = congruence_lattice(&natural_gset(n)).unwrap();
            assert_eq!(l.size(), 2);
        }
    }

    #[test]
    fn congruence_cap_is_enforced() {
        assert!(matches!(
            congruence_lattice_capped(&rigid_gset(4), 10),
            Err(Error::LatticeCapExceeded { cap: 10 })
        ));
    }

    #[test]
    fn regularity_examples() {
        assert!(is_regular(&regular_gset(symmetric_group(3).unwrap())));
        assert!(!is_regular(&natural_gset(3)));
        assert!(is_regular(&rigid_gset(1)));
        assert!(!is_regular(&rigid_gset(2)));
    }
}
