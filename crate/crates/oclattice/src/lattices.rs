//! Finite lattices as explicit order/join/meet tables, with identity
//! evaluation, duals, products, partition and subgroup lattices,
//! isomorphism testing, and sublattice embedding.
//!
//! Everything here is table-driven: the lattices arising from congruence
//! computations are small, and full tables keep joins and meets O(1) in
//! the inner loops of identity evaluation.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gsets::{symmetric_group, Perm};
use crate::rewrite::FiniteEquivalence;

/// Cap on assignments swept by one identity evaluation.
pub const MAX_ASSIGNMENTS: u128 = 10_000_000;

/// Cap on the base-set size of [`partition_lattice`] (Bell(8) = 4140).
pub const MAX_PARTITION_BASE: usize = 8;

/// Cap on `n` for [`subgroup_lattice_sym`].
pub const MAX_SUBGROUP_SYM: usize = 4;

/// Cap on the element count of a [`direct_product`].
pub const MAX_PRODUCT_SIZE: usize = 4096;

/// Cap on input sizes for [`are_isomorphic`].
pub const MAX_ISO_SIZE: usize = 100;

/// Caps on the two inputs of [`embeds_into`].
pub const MAX_EMBED_SMALL: usize = 8;
pub const MAX_EMBED_LARGE: usize = 50;

/// A finite lattice with explicit ≤, join, and meet tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteLattice {
    size: usize,
    leq: Vec<bool>,
    join: Vec<u32>,
    meet: Vec<u32>,
    labels: Option<Vec<String>>,
    bottom: usize,
    top: usize,
}

impl FiniteLattice {
    /// Builds from precomputed tables.
    ///
    /// Validation is quadratic: the order must be reflexive and
    /// antisymmetric, join/meet must be commutative, consistent with the
    /// order (`x ≤ y` iff `x ∨ y = y` iff `x ∧ y = x`), and produce
    /// upper/lower bounds; a bottom and top must exist.  Builders in this
    /// crate produce tables that are correct by construction; full
    /// least-upper-bound verification is done by [`FiniteLattice::from_leq`].
    pub fn from_parts(
        size: usize,
        leq: Vec<bool>,
        join: Vec<u32>,
        meet: Vec<u32>,
        labels: Option<Vec<String>>,
    ) -> Result<FiniteLattice> {
        let fail = |reason: &str| Error::InvalidLattice {
            reason: reason.to_string(),
        };
        if size == 0 {
            return Err(fail("lattices are nonempty"));
        }
        if leq.len() != size * size || join.len() != size * size || meet.len() != size * size {
            return Err(fail("table dimensions do not match size"));
        }
        if let Some(ls) = &labels {
            if ls.len() != size {
                return Err(fail("label count does not match size"));
            }
        }
        let at = |t: &[u32], x: usize, y: usize| t[x * size + y] as usize;
        for x in 0..size {
            if !leq[x * size + x] {
                return Err(fail("order not reflexive"));
            }
            for y in 0..size {
                if x != y && leq[x * size + y] && leq[y * size + x] {
                    return Err(fail("order not antisymmetric"));
                }
                let (j, m) = (at(&join, x, y), at(&meet, x, y));
                if j >= size || m >= size {
                    return Err(fail("join/meet entry out of range"));
                }
                if j != at(&join, y, x) || m != at(&meet, y, x) {
                    return Err(fail("join/meet not commutative"));
                }
                if !(leq[x * size + j] && leq[y * size + j]) {
                    return Err(fail("join not an upper bound"));
                }
                if !(leq[m * size + x] && leq[m * size + y]) {
                    return Err(fail("meet not a lower bound"));
                }
                if leq[x * size + y] != (j == y) || leq[x * size + y] != (m == x) {
                    return Err(fail("join/meet inconsistent with order"));
                }
            }
        }
        let bottom = (0..size)
            .find(|&b| (0..size).all(|y| leq[b * size + y]))
            .ok_or_else(|| fail("no bottom element"))?;
        let top = (0..size)
            .find(|&t| (0..size).all(|y| leq[y * size + t]))
            .ok_or_else(|| fail("no top element"))?;
        Ok(FiniteLattice {
            size,
            leq,
            join,
            meet,
            labels,
            bottom,
            top,
        })
    }

    /// Builds from an order table alone, computing joins and meets and
    /// verifying they exist uniquely (the full lattice property).  Cubic
    /// via bitset rows; intended for imports and hand-built lattices.
    pub fn from_leq(size: usize, leq: Vec<bool>, labels: Option<Vec<String>>) -> Result<FiniteLattice> {
        let fail = |reason: &str| Error::InvalidLattice {
            reason: reason.to_string(),
        };
        if size == 0 {
            return Err(fail("lattices are nonempty"));
        }
        if leq.len() != size * size {
            return Err(fail("table dimensions do not match size"));
        }
        let words = size.div_ceil(64);
        // up[x] = bitset of {y : x ≤ y}, down[x] = bitset of {y : y ≤ x}.
        let mut up = vec![vec![0u64; words]; size];
        let mut down = vec![vec![0u64; words]; size];
        for x in 0..size {
            if !leq[x * size + x] {
                return Err(fail("order not reflexive"));
            }
            for y in 0..size {
                if leq[x * size + y] {
                    if x != y && leq[y * size + x] {
                        return Err(fail("order not antisymmetric"));
                    }
                    up[x][y / 64] |= 1 << (y % 64);
                    down[y][x / 64] |= 1 << (x % 64);
                }
            }
        }
        for x in 0..size {
            for y in 0..size {
                if leq[x * size + y] {
                    // Transitivity: up(y) ⊆ up(x).
                    if up[y].iter().zip(&up[x]).any(|(a, b)| a & !b != 0) {
                        return Err(fail("order not transitive"));
                    }
                }
            }
        }

        let least_of = |bound: &[u64], sets: &[Vec<u64>]| -> Option<usize> {
            // The least element of `bound`: the member whose up-set (resp.
            // down-set for greatest) covers the whole bound set.
            (0..size)
                .filter(|&z| bound[z / 64] >> (z % 64) & 1 == 1)
                .find(|&z| bound.iter().zip(&sets[z]).all(|(b, s)| b & !s == 0))
        };
        let mut join = vec![0u32; size * size];
        let mut meet = vec![0u32; size * size];
        let mut ub = vec![0u64; words];
        let mut lb = vec![0u64; words];
        for x in 0..size {
            for y in 0..=x {
                for w in 0..words {
                    ub[w] = up[x][w] & up[y][w];
                    lb[w] = down[x][w] & down[y][w];
                }
                let j = least_of(&ub, &up)
                    .ok_or_else(|| fail(&format!("elements {x} and {y} have no join")))?;
                let m = least_of(&lb, &down)
                    .ok_or_else(|| fail(&format!("elements {x} and {y} have no meet")))?;
                join[x * size + y] = j as u32;
                join[y * size + x] = j as u32;
                meet[x * size + y] = m as u32;
                meet[y * size + x] = m as u32;
            }
        }
        FiniteLattice::from_parts(size, leq, join, meet, labels)
    }

    /// Builds from covering pairs `(lower, upper)`: the order is the
    /// reflexive-transitive closure.  Convenient for hand-built examples.
    pub fn from_covers(size: usize, covers: &[(usize, usize)], labels: Option<Vec<String>>) -> Result<FiniteLattice> {
        let mut leq = vec![false; size * size];
        for x in 0..size {
            leq[x * size + x] = true;
        }
        for &(a, b) in covers {
            if a >= size || b >= size {
                return Err(Error::InvalidLattice {
                    reason: format!("cover ({a}, {b}) out of range"),
                });
            }
            leq[a * size + b] = true;
        }
        // Floyd–Warshall closure.
        for k in 0..size {
            for x in 0..size {
                if leq[x * size + k] {
                    for y in 0..size {
                        if leq[k * size + y] {
                            leq[x * size + y] = true;
                        }
                    }
                }
            }
        }
        FiniteLattice::from_leq(size, leq, labels)
    }

    /// The n-element chain 0 < 1 < … < n-1.
    pub fn chain(n: usize) -> FiniteLattice {
        assert!(n >= 1, "lattices are nonempty");
        let mut leq = vec![false; n * n];
        let mut join = vec![0u32; n * n];
        let mut meet = vec![0u32; n * n];
        for x in 0..n {
            for y in 0..n {
                leq[x * n + y] = x <= y;
                join[x * n + y] = x.max(y) as u32;
                meet[x * n + y] = x.min(y) as u32;
            }
        }
        FiniteLattice {
            size: n,
            leq,
            join,
            meet,
            labels: None,
            bottom: 0,
            top: n - 1,
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x * self.size + y]
    }

    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join[x * self.size + y] as usize
    }

    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x * self.size + y] as usize
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, x: usize) -> String {
        match &self.labels {
            Some(ls) => ls[x].clone(),
            None => x.to_string(),
        }
    }

    /// Elements covering the bottom.
    pub fn atoms(&self) -> Vec<usize> {
        (0..self.size)
            .filter(|&a| {
                a != self.bottom
                    && self.leq(self.bottom, a)
                    && (0..self.size).all(|z| {
                        !(z != self.bottom && z != a && self.leq(self.bottom, z) && self.leq(z, a))
                    })
            })
            .collect()
    }

    /// The dual lattice: order reversed, join and meet exchanged.
    pub fn dual(&self) -> FiniteLattice {
        let n = self.size;
        let mut leq = vec![false; n * n];
        for x in 0..n {
            for y in 0..n {
                leq[x * n + y] = self.leq(y, x);
            }
        }
        FiniteLattice {
            size: n,
            leq,
            join: self.meet.clone(),
            meet: self.join.clone(),
            labels: self.labels.clone(),
            bottom: self.top,
            top: self.bottom,
        }
    }

    /// Longest chain length minus one, bottom to top.
    pub fn height(&self) -> usize {
        // Longest path in the order DAG, by increasing down-set size.
        let mut order: Vec<usize> = (0..self.size).collect();
        let downs: Vec<usize> = (0..self.size)
            .map(|x| (0..self.size).filter(|&y| self.leq(y, x)).count())
            .collect();
        order.sort_by_key(|&x| downs[x]);
        let mut best = vec![0usize; self.size];
        for &x in &order {
            for y in 0..self.size {
                if y != x && self.leq(y, x) {
                    best[x] = best[x].max(best[y] + 1);
                }
            }
        }
        best[self.top]
    }

    pub fn to_export(&self) -> LatticeExport {
        let rows = (0..self.size)
            .map(|x| (0..self.size).map(|y| u8::from(self.leq(x, y))).collect())
            .collect();
        LatticeExport {
            size: self.size,
            leq: rows,
            labels: self.labels.clone(),
        }
    }

    pub fn from_export(e: &LatticeExport) -> Result<FiniteLattice> {
        let mut leq = Vec::with_capacity(e.size * e.size);
        if e.leq.len() != e.size || e.leq.iter().any(|row| row.len() != e.size) {
            return Err(Error::InvalidLattice {
                reason: "export table dimensions do not match size".to_string(),
            });
        }
        for row in &e.leq {
            for &cell in row {
                leq.push(cell != 0);
            }
        }
        FiniteLattice::from_leq(e.size, leq, e.labels.clone())
    }
}

/// Interchange format: the order table as 0/1 rows plus optional labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeExport {
    pub size: usize,
    pub leq: Vec<Vec<u8>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

/// A term in the language of lattices: variables, joins, and meets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeTerm {
    Var(usize),
    Join(Box<LatticeTerm>, Box<LatticeTerm>),
    Meet(Box<LatticeTerm>, Box<LatticeTerm>),
}

impl LatticeTerm {
    pub fn var(i: usize) -> LatticeTerm {
        LatticeTerm::Var(i)
    }

    pub fn join(self, other: LatticeTerm) -> LatticeTerm {
        LatticeTerm::Join(Box::new(self), Box::new(other))
    }

    pub fn meet(self, other: LatticeTerm) -> LatticeTerm {
        LatticeTerm::Meet(Box::new(self), Box::new(other))
    }

    /// One more than the largest variable index used.
    pub fn num_vars(&self) -> usize {
        match self {
            LatticeTerm::Var(i) => i + 1,
            LatticeTerm::Join(a, b) | LatticeTerm::Meet(a, b) => a.num_vars().max(b.num_vars()),
        }
    }

    /// Evaluates in `l` under the assignment `vars[i]`.
    pub fn eval(&self, l: &FiniteLattice, vars: &[usize]) -> usize {
        match self {
            LatticeTerm::Var(i) => vars[*i],
            LatticeTerm::Join(a, b) => l.join(a.eval(l, vars), b.eval(l, vars)),
            LatticeTerm::Meet(a, b) => l.meet(a.eval(l, vars), b.eval(l, vars)),
        }
    }

    /// Joins and meets interchanged throughout.
    pub fn dual(&self) -> LatticeTerm {
        match self {
            LatticeTerm::Var(i) => LatticeTerm::Var(*i),
            LatticeTerm::Join(a, b) => LatticeTerm::Meet(Box::new(a.dual()), Box::new(b.dual())),
            LatticeTerm::Meet(a, b) => LatticeTerm::Join(Box::new(a.dual()), Box::new(b.dual())),
        }
    }
}

impl fmt::Display for LatticeTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeTerm::Var(i) => match i {
                0 => write!(f, "x"),
                1 => write!(f, "y"),
                2 => write!(f, "z"),
                3 => write!(f, "w"),
                _ => write!(f, "v{i}"),
            },
            LatticeTerm::Join(a, b) => write!(f, "({a} ∨ {b})"),
            LatticeTerm::Meet(a, b) => write!(f, "({a} ∧ {b})"),
        }
    }
}

/// An identity between two lattice terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeIdentity {
    pub lhs: LatticeTerm,
    pub rhs: LatticeTerm,
}

impl LatticeIdentity {
    pub fn new(lhs: LatticeTerm, rhs: LatticeTerm) -> LatticeIdentity {
        LatticeIdentity { lhs, rhs }
    }

    pub fn num_vars(&self) -> usize {
        self.lhs.num_vars().max(self.rhs.num_vars())
    }

    pub fn dual(&self) -> LatticeIdentity {
        LatticeIdentity {
            lhs: self.lhs.dual(),
            rhs: self.rhs.dual(),
        }
    }

    /// x ∧ (y ∨ z) = (x ∧ y) ∨ (x ∧ z).
    pub fn distributive_law() -> LatticeIdentity {
        use LatticeTerm as T;
        LatticeIdentity::new(
            T::var(0).meet(T::var(1).join(T::var(2))),
            T::var(0).meet(T::var(1)).join(T::var(0).meet(T::var(2))),
        )
    }

    /// x ∧ (y ∨ (x ∧ z)) = (x ∧ y) ∨ (x ∧ z).
    pub fn modular_law() -> LatticeIdentity {
        use LatticeTerm as T;
        LatticeIdentity::new(
            T::var(0).meet(T::var(1).join(T::var(0).meet(T::var(2)))),
            T::var(0).meet(T::var(1)).join(T::var(0).meet(T::var(2))),
        )
    }
}

impl fmt::Display for LatticeIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

/// Does the identity hold under every assignment of lattice elements to
/// its variables?  Sweeps size^vars assignments, capped.
pub fn satisfies_identity(l: &FiniteLattice, id: &LatticeIdentity) -> Result<bool> {
    let vars = id.num_vars();
    let mut count: u128 = 1;
    for _ in 0..vars {
        count = count.saturating_mul(l.size() as u128);
        if count > MAX_ASSIGNMENTS {
            return Err(Error::AssignmentCapExceeded {
                count,
                cap: MAX_ASSIGNMENTS,
            });
        }
    }
    let mut assignment = vec![0usize; vars];
    loop {
        if id.lhs.eval(l, &assignment) != id.rhs.eval(l, &assignment) {
            return Ok(false);
        }
        // Odometer increment.
        let mut at = 0;
        loop {
            if at == vars {
                return Ok(true);
            }
            assignment[at] += 1;
            if assignment[at] < l.size() {
                break;
            }
            assignment[at] = 0;
            at += 1;
        }
    }
}

/// Does the distributive law hold?
pub fn is_distributive(l: &FiniteLattice) -> Result<bool> {
    satisfies_identity(l, &LatticeIdentity::distributive_law())
}

/// Does the modular law hold?
pub fn is_modular(l: &FiniteLattice) -> Result<bool> {
    satisfies_identity(l, &LatticeIdentity::modular_law())
}

/// The lattice of all equivalence relations on an n-element set, ordered
/// by refinement; identity relation at the bottom, full relation on top.
pub fn partition_lattice(n: usize) -> Result<FiniteLattice> {
    if n == 0 || n > MAX_PARTITION_BASE {
        return Err(Error::SizeCapExceeded {
            what: "partition lattice base set",
            value: n as u64,
            cap: MAX_PARTITION_BASE as u64,
        });
    }
    // All partitions via restricted-growth strings.
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
    let mut relations = Vec::new();
    rgs(&mut vec![0; n], 0, 0, &mut relations);
    relations.sort_by(|x, y| {
        y.class_count().cmp(&x.class_count()).then_with(|| {
            (0..n)
                .map(|i| x.class_id(i))
                .cmp((0..n).map(|i| y.class_id(i)))
        })
    });

    let index: HashMap<&FiniteEquivalence, u32> = relations.iter().zip(0u32..).collect();
    let b = relations.len();
    let mut leq = vec![false; b * b];
    for (i, x) in relations.iter().enumerate() {
        for (j, y) in relations.iter().enumerate() {
            leq[i * b + j] = x.refines(y);
        }
    }
    let mut join = vec![0u32; b * b];
    let mut meet = vec![0u32; b * b];
    for i in 0..b {
        for j in 0..=i {
            let jn = index[&relations[i].join(&relations[j])];
            let mt = index[&relations[i].meet(&relations[j])];
            join[i * b + j] = jn;
            join[j * b + i] = jn;
            meet[i * b + j] = mt;
            meet[j * b + i] = mt;
        }
    }
    let labels = relations.iter().map(FiniteEquivalence::block_string).collect();
    FiniteLattice::from_parts(b, leq, join, meet, Some(labels))
}

/// The subgroup lattice of the symmetric group S_n, ordered by inclusion.
///
/// Subgroups are found as the join-closure of the cyclic subgroups; every
/// subgroup is the join of the cyclic subgroups of its elements, so the
/// closure is exhaustive.
pub fn subgroup_lattice_sym(n: usize) -> Result<FiniteLattice> {
    if n == 0 || n > MAX_SUBGROUP_SYM {
        return Err(Error::SizeCapExceeded {
            what: "subgroup lattice symmetric degree",
            value: n as u64,
            cap: MAX_SUBGROUP_SYM as u64,
        });
    }
    let g = symmetric_group(n)?;
    let els = g.elements();
    let order = els.len();
    debug_assert!(order <= 64, "subgroup masks are u64");
    let index_of = |p: &Perm| g.element_index(p).expect("closed") as u64;

    // Closure of a subset mask under multiplication.
    let generate = |mut mask: u64| -> u64 {
        mask |= 1; // identity has index 0 in the sorted element list
        loop {
            let mut grown = mask;
            for a in 0..order {
                if mask >> a & 1 == 0 {
                    continue;
                }
                for b in 0..order {
                    if mask >> b & 1 == 1 {
                        grown |= 1 << index_of(&els[a].compose(&els[b]));
                    }
                }
            }
            if grown == mask {
                return mask;
            }
            mask = grown;
        }
    };

    let mut subgroups: Vec<u64> = vec![1];
    for a in 0..order {
        let cyclic = generate(1 << a);
        if !subgroups.contains(&cyclic) {
            subgroups.push(cyclic);
        }
    }
    let mut next = 0;
    while next < subgroups.len() {
        let current = subgroups[next];
        let mut fresh = Vec::new();
        for &other in &subgroups {
            let joined = generate(current | other);
            if !subgroups.contains(&joined) && !fresh.contains(&joined) {
                fresh.push(joined);
            }
        }
        subgroups.extend(fresh);
        next += 1;
    }
    subgroups.sort_by_key(|&m| (m.count_ones(), m));

    let b = subgroups.len();
    let mut leq = vec![false; b * b];
    for i in 0..b {
        for j in 0..b {
            leq[i * b + j] = subgroups[i] & !subgroups[j] == 0;
        }
    }
    let find = |mask: u64| subgroups.iter().position(|&m| m == mask).unwrap() as u32;
    let mut join = vec![0u32; b * b];
    let mut meet = vec![0u32; b * b];
    for i in 0..b {
        for j in 0..=i {
            let jn = find(generate(subgroups[i] | subgroups[j]));
            let mt = find(subgroups[i] & subgroups[j]);
            join[i * b + j] = jn;
            join[j * b + i] = jn;
            meet[i * b + j] = mt;
            meet[j * b + i] = mt;
        }
    }

    // Label each subgroup by a greedy generating set.
    let labels = subgroups
        .iter()
        .map(|&mask| {
            let mut gens: Vec<usize> = Vec::new();
            let mut span = 1u64;
            for a in 0..order {
                if mask >> a & 1 == 1 && span >> a & 1 == 0 {
                    gens.push(a);
                    span = generate(span | 1 << a);
                }
            }
            if gens.is_empty() {
                "<()>".to_string()
            } else {
                format!(
                    "<{}>",
                    gens.iter()
                        .map(|&a| els[a].cycles_string())
                        .collect::<Vec<_>>()
                        .join(", ")
                )
            }
        })
        .collect();
    FiniteLattice::from_parts(b, leq, join, meet, Some(labels))
}

/// Joint order-invariant colors for two lattices: iterated refinement by
/// the multiset of colors above and below each element.  Isomorphic
/// elements always share a color.
fn joint_colors(l1: &FiniteLattice, l2: &FiniteLattice) -> (Vec<u32>, Vec<u32>) {
    let n1 = l1.size();
    let n = n1 + l2.size();
    let side = |i: usize| if i < n1 { 0 } else { 1 };
    let leq = |x: usize, y: usize| -> bool {
        if side(x) != side(y) {
            return false;
        }
        if x < n1 {
            l1.leq(x, y)
        } else {
            l2.leq(x - n1, y - n1)
        }
    };
    let mut colors = vec![0u32; n];
    let mut count = 1usize;
    loop {
        let mut table: BTreeMap<(u32, Vec<u32>, Vec<u32>), u32> = BTreeMap::new();
        let mut next: Vec<u32> = Vec::with_capacity(n);
        for x in 0..n {
            let mut above: Vec<u32> = (0..n).filter(|&y| y != x && leq(x, y)).map(|y| colors[y]).collect();
            let mut below: Vec<u32> = (0..n).filter(|&y| y != x && leq(y, x)).map(|y| colors[y]).collect();
            above.sort_unstable();
            below.sort_unstable();
            let key = (colors[x], above, below);
            let fresh = table.len() as u32;
            next.push(*table.entry(key).or_insert(fresh));
        }
        let new_count = table.len();
        colors = next;
        if new_count == count {
            break;
        }
        count = new_count;
    }
    (colors[..n1].to_vec(), colors[n1..].to_vec())
}

/// Is there an order-isomorphism between the two lattices?  (For lattices,
/// any order-isomorphism preserves joins and meets.)
pub fn are_isomorphic(l1: &FiniteLattice, l2: &FiniteLattice) -> Result<bool> {
    for l in [l1, l2] {
        if l.size() > MAX_ISO_SIZE {
            return Err(Error::SizeCapExceeded {
                what: "isomorphism input size",
                value: l.size() as u64,
                cap: MAX_ISO_SIZE as u64,
            });
        }
    }
    if l1.size() != l2.size() {
        return Ok(false);
    }
    let n = l1.size();
    let (c1, c2) = joint_colors(l1, l2);
    let mut sorted1 = c1.clone();
    let mut sorted2 = c2.clone();
    sorted1.sort_unstable();
    sorted2.sort_unstable();
    if sorted1 != sorted2 {
        return Ok(false);
    }

    // Backtracking over l1 elements in color-rarity order.
    let mut order: Vec<usize> = (0..n).collect();
    let frequency = |c: u32| c1.iter().filter(|&&x| x == c).count();
    order.sort_by_key(|&x| frequency(c1[x]));
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];

    fn extend(
        at: usize,
        order: &[usize],
        l1: &FiniteLattice,
        l2: &FiniteLattice,
        c1: &[u32],
        c2: &[u32],
        image: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if at == order.len() {
            return true;
        }
        let x = order[at];
        for y in 0..l2.size() {
            if used[y] || c1[x] != c2[y] {
                continue;
            }
            let consistent = order[..at].iter().all(|&prev| {
                l1.leq(x, prev) == l2.leq(y, image[prev]) && l1.leq(prev, x) == l2.leq(image[prev], y)
            });
            if !consistent {
                continue;
            }
            image[x] = y;
            used[y] = true;
            if extend(at + 1, order, l1, l2, c1, c2, image, used) {
                return true;
            }
            image[x] = usize::MAX;
            used[y] = false;
        }
        false
    }

    Ok(extend(0, &order, l1, l2, &c1, &c2, &mut image, &mut used))
}

/// The direct product with componentwise order, join, and meet; element
/// `(i, j)` has index `i * |l2| + j`.
pub fn direct_product(l1: &FiniteLattice, l2: &FiniteLattice) -> Result<FiniteLattice> {
    let n = l1.size() * l2.size();
    if n > MAX_PRODUCT_SIZE {
        return Err(Error::SizeCapExceeded {
            what: "direct product size",
            value: n as u64,
            cap: MAX_PRODUCT_SIZE as u64,
        });
    }
    let (n2, idx) = (l2.size(), |i: usize, j: usize| i * l2.size() + j);
    let mut leq = vec![false; n * n];
    let mut join = vec![0u32; n * n];
    let mut meet = vec![0u32; n * n];
    for x1 in 0..l1.size() {
        for x2 in 0..n2 {
            for y1 in 0..l1.size() {
                for y2 in 0..n2 {
                    let (x, y) = (idx(x1, x2), idx(y1, y2));
                    leq[x * n + y] = l1.leq(x1, y1) && l2.leq(x2, y2);
                    join[x * n + y] = idx(l1.join(x1, y1), l2.join(x2, y2)) as u32;
                    meet[x * n + y] = idx(l1.meet(x1, y1), l2.meet(x2, y2)) as u32;
                }
            }
        }
    }
    let labels = (0..l1.size())
        .flat_map(|i| (0..n2).map(move |j| (i, j)))
        .map(|(i, j)| format!("({},{})", l1.label(i), l2.label(j)))
        .collect();
    FiniteLattice::from_parts(n, leq, join, meet, Some(labels))
}

/// Is there an injection of `l1` into `l2` preserving joins and meets
/// (a sublattice embedding)?  Bounds need not be preserved.
pub fn embeds_into(l1: &FiniteLattice, l2: &FiniteLattice) -> Result<bool> {
    if l1.size() > MAX_EMBED_SMALL {
        return Err(Error::SizeCapExceeded {
            what: "embedding source size",
            value: l1.size() as u64,
            cap: MAX_EMBED_SMALL as u64,
        });
    }
    if l2.size() > MAX_EMBED_LARGE {
        return Err(Error::SizeCapExceeded {
            what: "embedding target size",
            value: l2.size() as u64,
            cap: MAX_EMBED_LARGE as u64,
        });
    }
    if l1.size() > l2.size() {
        return Ok(false);
    }
    let n = l1.size();
    // Assign elements bottom-up so meets/joins of assigned pairs are
    // often already assigned and prune early.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| (0..n).filter(|&y| l1.leq(y, x)).count());
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; l2.size()];

    fn extend(
        at: usize,
        order: &[usize],
        l1: &FiniteLattice,
        l2: &FiniteLattice,
        image: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if at == order.len() {
            return true;
        }
        let x = order[at];
        'candidates: for y in 0..l2.size() {
            if used[y] {
                continue;
            }
            for &prev in &order[..at] {
                let (p, q) = (image[prev], y);
                if l1.leq(x, prev) != l2.leq(q, p) || l1.leq(prev, x) != l2.leq(p, q) {
                    continue 'candidates;
                }
                let jn = l1.join(x, prev);
                if image[jn] != usize::MAX && image[jn] != l2.join(q, p) {
                    continue 'candidates;
                }
                let mt = l1.meet(x, prev);
                if image[mt] != usize::MAX && image[mt] != l2.meet(q, p) {
                    continue 'candidates;
                }
            }
            // Joins/meets that land on x itself must also be respected.
            for &a in &order[..at] {
                for &b in &order[..at] {
                    if l1.join(a, b) == x && l2.join(image[a], image[b]) != y {
                        continue 'candidates;
                    }
                    if l1.meet(a, b) == x && l2.meet(image[a], image[b]) != y {
                        continue 'candidates;
                    }
                }
            }
            image[x] = y;
            used[y] = true;
            if extend(at + 1, order, l1, l2, image, used) {
                return true;
            }
            image[x] = usize::MAX;
            used[y] = false;
        }
        false
    }

    Ok(extend(0, &order, l1, l2, &mut image, &mut used))
}
