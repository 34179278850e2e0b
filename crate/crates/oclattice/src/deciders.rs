//! Word-problem deciders for a handful of fixed varieties.
//!
//! Each decider answers "does the identity u = v hold in this variety?" in
//! time linear in the word lengths, with no closure computation.  The
//! characterizations used here are cross-checked elsewhere against the
//! rewrite-closure oracle ([`crate::rewrite::derivable`]), exhaustively on
//! small content classes.

use std::fmt;

use crate::rewrite::{Identity, Presentation};
use crate::words::{is_balanced, Letter, Word};

/// One of the concrete varieties with a known fast word problem.
///
/// `Pk(k)` is the variety of semigroups satisfying every balanced identity
/// whose sides agree on their first `k` and last `k` letters; `Pk(0)` is
/// the variety of commutative semigroups.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FixedVariety {
    Com,
    Lz,
    Rz,
    X,
    XDual,
    Pk(u32),
}

impl fmt::Display for FixedVariety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FixedVariety::Com => write!(f, "COM"),
            FixedVariety::Lz => write!(f, "LZ"),
            FixedVariety::Rz => write!(f, "RZ"),
            FixedVariety::X => write!(f, "X"),
            FixedVariety::XDual => write!(f, "X-dual"),
            FixedVariety::Pk(k) => write!(f, "P_{k}"),
        }
    }
}

impl FixedVariety {
    /// A finite presentation defining the variety.
    pub fn defining_presentation(self) -> Presentation {
        fn ident(lhs: &str, rhs: &str) -> Identity {
            Identity::parse(lhs, rhs).expect("built-in identities parse")
        }
        match self {
            FixedVariety::Com => {
                Presentation::new(vec![ident("xy", "yx")], Some("COM".to_string()))
            }
            FixedVariety::Lz => Presentation::new(vec![ident("xy", "x")], Some("LZ".to_string())),
            FixedVariety::Rz => Presentation::new(vec![ident("xy", "y")], Some("RZ".to_string())),
            FixedVariety::X => Presentation::new(
                vec![
                    ident("xyzt", "xytz"),
                    ident("xxyy", "yyxx"),
                    ident("yyxx", "xyxy"),
                ],
                Some("X".to_string()),
            ),
            FixedVariety::XDual => FixedVariety::X
                .defining_presentation()
                .reversed()
                .named("X-dual"),
            FixedVariety::Pk(k) => {
                // a_1 … a_k  y z  b_1 … b_k  =  a_1 … a_k  z y  b_1 … b_k,
                // spelt with 2k+2 distinct letters.
                let k = k as usize;
                let prefix: Vec<Letter> = (1..=k).map(|i| Letter::new(i as u32)).collect();
                let suffix: Vec<Letter> = (k + 3..=2 * k + 2).map(|i| Letter::new(i as u32)).collect();
                let y = Letter::new(k as u32 + 1);
                let z = Letter::new(k as u32 + 2);
                let side = |a: Letter, b: Letter| {
                    let mut ls = prefix.clone();
                    ls.push(a);
                    ls.push(b);
                    ls.extend_from_slice(&suffix);
                    Word::new(ls).expect("nonempty by construction")
                };
                Presentation::new(
                    vec![Identity::new(side(y, z), side(z, y))],
                    Some(format!("P_{k}")),
                )
            }
        }
    }
}

/// Does u = v hold in every commutative semigroup?
pub fn holds_in_com(u: &Word, v: &Word) -> bool {
    is_balanced(u, v)
}

/// Does u = v hold in every left-zero semigroup?
pub fn holds_in_lz(u: &Word, v: &Word) -> bool {
    u.first() == v.first()
}

/// Does u = v hold in every right-zero semigroup?
pub fn holds_in_rz(u: &Word, v: &Word) -> bool {
    u.last() == v.last()
}

fn is_multiple(l: Letter, w: &Word) -> bool {
    w.letters().iter().filter(|&&x| x == l).count() >= 2
}

/// Does u = v hold in X, the variety generated by the identities
/// `xyzt = xytz` and `x²y² = y²x² = (xy)²`?
///
/// The identity must be balanced and satisfy one of: the sides are equal;
/// the sides share both their first and their second letters; the sides
/// share their first letter and each side's second letter occurs at least
/// twice in that side; or in each side both the first and the second letter
/// occur at least twice.  Length-1 words can only match the first case.
pub fn holds_in_x(u: &Word, v: &Word) -> bool {
    if !is_balanced(u, v) {
        return false;
    }
    if u == v {
        return true;
    }
    if u.len() < 2 {
        // Balanced length-1 words are already equal.
        return false;
    }
    let (u1, u2) = (u.letters()[0], u.letters()[1]);
    let (v1, v2) = (v.letters()[0], v.letters()[1]);
    if u1 == v1 && u2 == v2 {
        return true;
    }
    if u1 == v1 && is_multiple(u2, u) && is_multiple(v2, v) {
        return true;
    }
    is_multiple(u1, u) && is_multiple(u2, u) && is_multiple(v1, v) && is_multiple(v2, v)
}

/// Does u = v hold in the variety dual to X?
pub fn holds_in_x_dual(u: &Word, v: &Word) -> bool {
    holds_in_x(&u.reverse(), &v.reverse())
}

/// Does u = v hold in P_k?
///
/// Short identities (sides of length at most 2k+1) hold only trivially;
/// longer ones hold exactly when they are balanced and the sides agree on
/// their first k and last k letters.
pub fn holds_in_pk(u: &Word, v: &Word, k: u32) -> bool {
    if !is_balanced(u, v) {
        return false;
    }
    let k = k as usize;
    if u.len() <= 2 * k + 1 {
        return u == v;
    }
    let (ul, vl) = (u.letters(), v.letters());
    ul[..k] == vl[..k] && ul[ul.len() - k..] == vl[vl.len() - k..]
}

/// Does u = v hold in the given fixed variety?
pub fn holds_in(f: FixedVariety, u: &Word, v: &Word) -> bool {
    match f {
        FixedVariety::Com => holds_in_com(u, v),
        FixedVariety::Lz => holds_in_lz(u, v),
        FixedVariety::Rz => holds_in_rz(u, v),
        FixedVariety::X => holds_in_x(u, v),
        FixedVariety::XDual => holds_in_x_dual(u, v),
        FixedVariety::Pk(k) => holds_in_pk(u, v, k),
    }
}

/// Is the fixed variety contained in the variety presented by `sigma`?
///
/// Containment holds exactly when every defining identity of `sigma` is an
/// identity of the fixed variety: the equational theory of the fixed
/// variety is fully invariant, so containing the generators of `sigma`'s
/// theory is the same as containing the whole theory.
pub fn contains_fixed(sigma: &Presentation, f: FixedVariety) -> bool {
    sigma
        .identities()
        .iter()
        .all(|id| holds_in(f, id.lhs(), id.rhs()))
}
