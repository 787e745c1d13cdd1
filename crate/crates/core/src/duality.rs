//! Finite Priestley duality, i.e. Birkhoff duality between finite posets and finite
//! bounded distributive lattices.
//!
//! A poset `P` goes to the lattice of its up-sets ordered by inclusion. A lattice
//! goes back to its join-irreducibles; ordered as in the lattice they form the
//! order-dual of `P` (since `↑x ⊆ ↑y` iff `y ≤ x`), so [`dual_poset`] reverses that
//! order, which is the same as taking prime filters under inclusion.

use std::collections::HashMap;
use std::ops::Deref;

use thiserror::Error;

use crate::bits::{BitSet, Relation};
use crate::order::{Carrier, MonotoneMap, Poset};

/// Up-set enumeration walks all subsets, so posets are capped here.
pub const MAX_UPSET_POINTS: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("empty poset has no bottom element")]
    Empty,
    #[error("{a} and {b} have no {which}")]
    MissingBound { which: &'static str, a: String, b: String },
    #[error("no {0} element")]
    MissingExtreme(&'static str),
    #[error("table entry {op}({a}, {b}) = {got} is not the {which}")]
    BadTable { op: &'static str, which: &'static str, a: String, b: String, got: String },
    #[error("distributivity fails at ({a}, {b}, {c}): {a} ∧ ({b} ∨ {c}) ≠ ({a} ∧ {b}) ∨ ({a} ∧ {c})")]
    NotDistributive { a: String, b: String, c: String },
    #[error("designated {which} {got} is not the {which}")]
    WrongExtreme { which: &'static str, got: String },
    #[error("poset has {0} points; up-set lattices are limited to {MAX_UPSET_POINTS}")]
    TooLarge(usize),
    #[error("map is not between posets")]
    NotPosetMap,
    #[error("homomorphism fails to preserve {0}")]
    NotHomomorphism(&'static str),
    #[error("{x} <= {y}, so no map into the 2-chain separates them")]
    NotSeparable { x: String, y: String },
}

/// A finite bounded lattice with precomputed meet and join tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundedLattice {
    order: Poset,
    meet: Vec<usize>,
    join: Vec<usize>,
    bot: usize,
    top: usize,
}

fn greatest(p: &Poset, set: &[usize]) -> Option<usize> {
    set.iter().copied().find(|&g| set.iter().all(|&s| p.le(s, g)))
}

fn least(p: &Poset, set: &[usize]) -> Option<usize> {
    set.iter().copied().find(|&g| set.iter().all(|&s| p.le(g, s)))
}

impl BoundedLattice {
    /// Computes meets and joins as greatest lower / least upper bounds.
    pub fn from_poset(order: Poset) -> Result<Self, LatticeError> {
        let n = order.len();
        if n == 0 {
            return Err(LatticeError::Empty);
        }
        let all: Vec<usize> = (0..n).collect();
        let bot = least(&order, &all).ok_or(LatticeError::MissingExtreme("bottom"))?;
        let top = greatest(&order, &all).ok_or(LatticeError::MissingExtreme("top"))?;
        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        let label = |i: usize| order.carrier().label(i).to_string();
        for a in 0..n {
            for b in 0..n {
                let lower: Vec<usize> = (0..n).filter(|&c| order.le(c, a) && order.le(c, b)).collect();
                let upper: Vec<usize> = (0..n).filter(|&c| order.le(a, c) && order.le(b, c)).collect();
                meet[a * n + b] = greatest(&order, &lower)
                    .ok_or_else(|| LatticeError::MissingBound { which: "meet", a: label(a), b: label(b) })?;
                join[a * n + b] = least(&order, &upper)
                    .ok_or_else(|| LatticeError::MissingBound { which: "join", a: label(a), b: label(b) })?;
            }
        }
        Ok(BoundedLattice { order, meet, join, bot, top })
    }

    /// Accepts explicit tables after checking each entry is the glb / lub.
    pub fn from_tables(order: Poset, meet: Vec<usize>, join: Vec<usize>, bot: usize, top: usize) -> Result<Self, LatticeError> {
        let expected = BoundedLattice::from_poset(order)?;
        let n = expected.len();
        let label = |i: usize| expected.order.carrier().label(i).to_string();
        if bot != expected.bot {
            return Err(LatticeError::WrongExtreme { which: "bottom", got: label(bot) });
        }
        if top != expected.top {
            return Err(LatticeError::WrongExtreme { which: "top", got: label(top) });
        }
        for a in 0..n {
            for b in 0..n {
                let k = a * n + b;
                if meet[k] != expected.meet[k] {
                    return Err(LatticeError::BadTable { op: "meet", which: "greatest lower bound", a: label(a), b: label(b), got: label(meet[k]) });
                }
                if join[k] != expected.join[k] {
                    return Err(LatticeError::BadTable { op: "join", which: "least upper bound", a: label(a), b: label(b), got: label(join[k]) });
                }
            }
        }
        Ok(expected)
    }

    pub fn order(&self) -> &Poset {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len() + b]
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.len() + b]
    }

    pub fn bot(&self) -> usize {
        self.bot
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// First triple violating `a ∧ (b ∨ c) = (a ∧ b) ∨ (a ∧ c)`.
    pub fn distributivity_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.len();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.meet(a, self.join(b, c)) != self.join(self.meet(a, b), self.meet(a, c)) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }
}

/// A bounded lattice known to be distributive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistLattice(BoundedLattice);

impl DistLattice {
    pub fn new(l: BoundedLattice) -> Result<Self, LatticeError> {
        if let Some((a, b, c)) = l.distributivity_violation() {
            let lab = |i: usize| l.order.carrier().label(i).to_string();
            return Err(LatticeError::NotDistributive { a: lab(a), b: lab(b), c: lab(c) });
        }
        Ok(DistLattice(l))
    }

    pub fn lattice(&self) -> &BoundedLattice {
        &self.0
    }
}

impl Deref for DistLattice {
    type Target = BoundedLattice;
    fn deref(&self) -> &BoundedLattice {
        &self.0
    }
}

/// Result of the literal total-order-disconnectedness check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PriestleyReport {
    pub holds: bool,
    /// For every `x ≰ y`, an up-set containing `x` but not `y` (clopen, as every subset is).
    pub witnesses: Vec<(usize, usize, BitSet)>,
}

pub fn is_priestley(p: &Poset) -> PriestleyReport {
    let n = p.len();
    let mut witnesses = Vec::new();
    let mut holds = true;
    for x in 0..n {
        for y in 0..n {
            if p.le(x, y) {
                continue;
            }
            let up = p.principal_up(x);
            if p.is_up_set(&up) && up.contains(x) && !up.contains(y) {
                witnesses.push((x, y, up));
            } else {
                holds = false;
            }
        }
    }
    PriestleyReport { holds, witnesses }
}

/// All up-sets of `p`, ordered by size and then by subset mask (ascending).
pub fn upsets(p: &Poset) -> Result<Vec<BitSet>, LatticeError> {
    let n = p.len();
    if n > MAX_UPSET_POINTS {
        return Err(LatticeError::TooLarge(n));
    }
    // up-closure as masks
    let ups: Vec<u64> = (0..n).map(|x| p.relation().successors(x).fold(0u64, |m, y| m | 1 << y)).collect();
    let mut found: Vec<u64> = (0..1u64 << n)
        .filter(|&mask| (0..n).all(|x| mask >> x & 1 == 0 || ups[x] & !mask == 0))
        .collect();
    found.sort_by_key(|m| (m.count_ones(), *m));
    Ok(found.into_iter().map(|m| BitSet::from_mask(n, m)).collect())
}

/// The lattice of up-sets of `p` under inclusion, with `∩` and `∪` as meet and join.
pub fn upset_lattice(p: &Poset) -> Result<DistLattice, LatticeError> {
    let sets = upsets(p)?;
    let m = sets.len();
    let index: HashMap<&BitSet, usize> = sets.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let labels = sets.iter().map(|s| p.carrier().render_subset(s)).collect();
    let mut rel = Relation::empty(m);
    let mut meet = vec![0; m * m];
    let mut join = vec![0; m * m];
    for (a, sa) in sets.iter().enumerate() {
        for (b, sb) in sets.iter().enumerate() {
            if sa.is_subset(sb) {
                rel.insert(a, b);
            }
            let mut i = sa.clone();
            i.intersect_with(sb);
            let mut u = sa.clone();
            u.union_with(sb);
            meet[a * m + b] = index[&i];
            join[a * m + b] = index[&u];
        }
    }
    let order = Poset::new_unchecked(Carrier::with_unique_labels(labels), rel);
    let (bot, top) = (0, m - 1);
    let l = BoundedLattice::from_tables(order, meet, join, bot, top)?;
    DistLattice::new(l)
}

/// Join-irreducible elements (not bottom, not a join of two strictly smaller
/// elements) with the order induced from the lattice. Rejects non-distributive input.
pub fn join_irreducibles(l: &BoundedLattice) -> Result<Poset, LatticeError> {
    let dl = DistLattice::new(l.clone())?;
    let p = dl.order();
    let n = dl.len();
    let irreducible = (0..n).filter(|&a| {
        a != dl.bot()
            && !(0..n).any(|b| p.lt(b, a) && (0..n).any(|c| p.lt(c, a) && dl.join(b, c) == a))
    });
    let subset = BitSet::from_indices(n, irreducible);
    Ok(p.induced_poset(&subset).0)
}

/// The poset dual to a distributive lattice: join-irreducibles under the reversed order.
pub fn dual_poset(l: &DistLattice) -> Poset {
    join_irreducibles(l).expect("distributive by construction").opposite()
}

/// A map of distributive lattices that preserves `∧`, `∨`, bottom and top.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeHom {
    pub dom: DistLattice,
    pub cod: DistLattice,
    pub table: Vec<usize>,
}

impl LatticeHom {
    pub fn new(dom: DistLattice, cod: DistLattice, table: Vec<usize>) -> Result<Self, LatticeError> {
        let h = LatticeHom { dom, cod, table };
        h.check()?;
        Ok(h)
    }

    fn check(&self) -> Result<(), LatticeError> {
        let (d, c, t) = (&self.dom, &self.cod, &self.table);
        if t.len() != d.len() || t.iter().any(|&v| v >= c.len()) {
            return Err(LatticeError::NotHomomorphism("carrier"));
        }
        if t[d.bot()] != c.bot() {
            return Err(LatticeError::NotHomomorphism("bottom"));
        }
        if t[d.top()] != c.top() {
            return Err(LatticeError::NotHomomorphism("top"));
        }
        for a in 0..d.len() {
            for b in 0..d.len() {
                if t[d.meet(a, b)] != c.meet(t[a], t[b]) {
                    return Err(LatticeError::NotHomomorphism("meet"));
                }
                if t[d.join(a, b)] != c.join(t[a], t[b]) {
                    return Err(LatticeError::NotHomomorphism("join"));
                }
            }
        }
        Ok(())
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &LatticeHom) -> Option<LatticeHom> {
        if self.cod != other.dom {
            return None;
        }
        let table = self.table.iter().map(|&v| other.table[v]).collect();
        Some(LatticeHom { dom: self.dom.clone(), cod: other.cod.clone(), table })
    }

    pub fn is_surjective(&self) -> bool {
        BitSet::from_indices(self.cod.len(), self.table.iter().copied()).count() == self.cod.len()
    }

    pub fn is_injective(&self) -> bool {
        BitSet::from_indices(self.cod.len(), self.table.iter().copied()).count() == self.dom.len()
    }
}

/// For `f: P → Q`, the homomorphism `U(Q) → U(P)` sending an up-set to its preimage.
pub fn dual_map(f: &MonotoneMap) -> Result<LatticeHom, LatticeError> {
    let (p, q) = match (f.dom_poset(), f.cod_poset()) {
        (Some(p), Some(q)) => (p, q),
        _ => return Err(LatticeError::NotPosetMap),
    };
    let (up_p, up_q) = (upsets(&p)?, upsets(&q)?);
    let index: HashMap<&BitSet, usize> = up_p.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let table = up_q
        .iter()
        .map(|u| {
            let pre = BitSet::from_indices(p.len(), (0..p.len()).filter(|&x| u.contains(f.apply(x))));
            index[&pre]
        })
        .collect();
    LatticeHom::new(upset_lattice(&q)?, upset_lattice(&p)?, table)
}

/// The two-element chain `0 < 1`.
pub fn two_chain() -> Poset {
    Poset::new_unchecked(Carrier::new(["0", "1"]).expect("distinct"), Relation::from_pairs(2, [(0, 0), (0, 1), (1, 1)]))
}

/// For `x ≰ y`, the characteristic map of `↑x` into the 2-chain: monotone, `x ↦ 1`, `y ↦ 0`.
pub fn separate(p: &Poset, x: usize, y: usize) -> Result<MonotoneMap, LatticeError> {
    if p.le(x, y) {
        let c = p.carrier();
        return Err(LatticeError::NotSeparable { x: c.label(x).into(), y: c.label(y).into() });
    }
    let up = p.principal_up(x);
    let table = (0..p.len()).map(|v| usize::from(up.contains(v))).collect();
    MonotoneMap::new(p.clone(), two_chain(), table).map_err(|_| LatticeError::NotHomomorphism("monotonicity"))
}
