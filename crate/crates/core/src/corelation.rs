//! Equivalence co-relations on a finite poset `X`: pre-orders on `X + X` extending
//! the coproduct order, their characterising conditions, effectiveness, and the
//! correspondence with subsets of `X`.

use std::fmt;

use thiserror::Error;

use crate::bits::{BitSet, Relation};
use crate::constructions::{coproduct_relation, double, Tag, TaggedCarrier};
use crate::order::{Poset, Preorder};

/// An element `(x, i)` of `X + X`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tagged {
    pub point: usize,
    pub tag: Tag,
}

impl Tagged {
    pub fn new(point: usize, tag: Tag) -> Self {
        Tagged { point, tag }
    }

    pub fn star(self) -> Tagged {
        Tagged { point: self.point, tag: self.tag.star() }
    }
}

/// A related pair `(x, i) ≼ (y, j)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TaggedPair {
    pub from: Tagged,
    pub to: Tagged,
}

impl TaggedPair {
    pub fn is_cross(&self) -> bool {
        self.from.tag != self.to.tag
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoRelationError {
    #[error("relation on X+X has size {got}, expected {expected}")]
    Size { expected: usize, got: usize },
    #[error("not a pre-order: {0}")]
    NotPreorder(String),
    #[error("does not extend the coproduct order: {0} is missing")]
    NotExtending(String),
    #[error("cross pair {0} is not related")]
    MissingCrossPair(String),
    #[error("not an equivalence co-relation: {0}")]
    NotEquivalence(String),
    #[error("maximal witness {z} fails the certificate condition for {pair}")]
    WitnessPostcondition { pair: String, z: String },
    #[error("point index {0} out of range")]
    OutOfRange(usize),
}

/// A pre-order on `X + X` extending the coproduct order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CoRelation {
    base: Poset,
    tagged: TaggedCarrier,
    preord: Relation,
}

impl CoRelation {
    pub fn new(base: Poset, preord: Relation) -> Result<Self, CoRelationError> {
        let tagged = TaggedCarrier::new(base.carrier().clone());
        if preord.size() != tagged.len() {
            return Err(CoRelationError::Size { expected: tagged.len(), got: preord.size() });
        }
        let xx = tagged.carrier();
        if let Err(v) = Preorder::new(xx.clone(), preord.clone()) {
            return Err(CoRelationError::NotPreorder(v.render(&xx)));
        }
        let cop = coproduct_relation(base.relation(), base.relation());
        if let Some((u, v)) = cop.pairs().find(|&(u, v)| !preord.contains(u, v)) {
            return Err(CoRelationError::NotExtending(format!("{} <= {}", tagged.render(u), tagged.render(v))));
        }
        Ok(CoRelation { base, tagged, preord })
    }

    pub(crate) fn new_unchecked(base: Poset, preord: Relation) -> Self {
        let tagged = TaggedCarrier::new(base.carrier().clone());
        debug_assert!(CoRelation::new(base.clone(), preord.clone()).is_ok());
        CoRelation { base, tagged, preord }
    }

    /// The pre-order on `X + X` generated by the coproduct order and `extra` pairs.
    pub fn generated_by(base: Poset, extra: impl IntoIterator<Item = (Tagged, Tagged)>) -> Self {
        let tagged = TaggedCarrier::new(base.carrier().clone());
        let mut rel = coproduct_relation(base.relation(), base.relation());
        for (u, v) in extra {
            rel.insert(tagged.index(u.point, u.tag), tagged.index(v.point, v.tag));
        }
        let preord = rel.reflexive_transitive_closure();
        CoRelation { base, tagged, preord }
    }

    /// The coproduct order itself (no cross pairs).
    pub fn coproduct_order(base: Poset) -> Self {
        CoRelation::generated_by(base, [])
    }

    pub fn base(&self) -> &Poset {
        &self.base
    }

    pub fn tagged(&self) -> &TaggedCarrier {
        &self.tagged
    }

    pub fn relation(&self) -> &Relation {
        &self.preord
    }

    pub fn as_preorder(&self) -> Preorder {
        Preorder::new_unchecked(self.tagged.carrier(), self.preord.clone())
    }

    /// The pre-order as a quotient object of the poset `X + X`.
    pub fn doubled_base(&self) -> Poset {
        double(&self.base)
    }

    #[inline]
    fn idx(&self, t: Tagged) -> usize {
        self.tagged.index(t.point, t.tag)
    }

    #[inline]
    pub fn le(&self, a: Tagged, b: Tagged) -> bool {
        self.preord.contains(self.idx(a), self.idx(b))
    }

    /// `(a ≼ b) ∧ (b ≼ a)`.
    pub fn equiv(&self, a: Tagged, b: Tagged) -> bool {
        self.le(a, b) && self.le(b, a)
    }

    pub fn pairs(&self) -> impl Iterator<Item = TaggedPair> + '_ {
        self.preord.pairs().map(|(u, v)| {
            let ((x, i), (y, j)) = (self.tagged.split(u), self.tagged.split(v));
            TaggedPair { from: Tagged::new(x, i), to: Tagged::new(y, j) }
        })
    }

    pub fn cross_pairs(&self) -> impl Iterator<Item = TaggedPair> + '_ {
        self.pairs().filter(TaggedPair::is_cross)
    }

    pub fn render(&self, t: Tagged) -> String {
        format!("({},{})", self.base.carrier().label(t.point), t.tag.index())
    }

    pub fn render_pair(&self, p: TaggedPair) -> String {
        format!("{} ≼ {}", self.render(p.from), self.render(p.to))
    }

    pub fn is_subrelation_of(&self, other: &CoRelation) -> bool {
        self.preord.is_subset(&other.preord)
    }
}

impl fmt::Debug for CoRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cop = coproduct_relation(self.base.relation(), self.base.relation());
        let extra: Vec<String> = self
            .preord
            .pairs()
            .filter(|&(u, v)| !cop.contains(u, v))
            .map(|(u, v)| format!("{}≼{}", self.tagged.render(u), self.tagged.render(v)))
            .collect();
        f.debug_struct("CoRelation").field("base", &self.base).field("extra", &extra).finish()
    }
}

/// `(x, i) ≼ (y, j)` entails `x ≤ y`. Cross pairs are scanned before same-tag pairs.
pub fn is_coreflexive(c: &CoRelation) -> Result<(), TaggedPair> {
    let bad = |p: &TaggedPair| !c.base.le(p.from.point, p.to.point);
    if let Some(p) = c.cross_pairs().find(bad) {
        return Err(p);
    }
    match c.pairs().find(bad) {
        Some(p) => Err(p),
        None => Ok(()),
    }
}

/// `(x, i) ≼ (y, j)` entails `(x, i*) ≼ (y, j*)`.
pub fn is_cosymmetric(c: &CoRelation) -> Result<(), TaggedPair> {
    match c.pairs().find(|p| !c.le(p.from.star(), p.to.star())) {
        Some(p) => Err(p),
        None => Ok(()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CotransitivityFailure {
    /// The characterisation only applies to co-reflexive pre-orders.
    NotCoreflexive(TaggedPair),
    /// A cross pair `(x,i) ≼ (y,i*)` with no `z` such that
    /// `(x,i) ≼ (z,i*)` and `(z,i) ≼ (y,i*)`.
    NoInterpolant(TaggedPair),
}

/// Co-transitivity of a co-reflexive pre-order: every cross pair interpolates.
pub fn is_cotransitive(c: &CoRelation) -> Result<(), CotransitivityFailure> {
    is_coreflexive(c).map_err(CotransitivityFailure::NotCoreflexive)?;
    let n = c.base.len();
    for p in c.cross_pairs() {
        let i = p.from.tag;
        let found = (0..n).any(|z| c.le(p.from, Tagged::new(z, i.star())) && c.le(Tagged::new(z, i), p.to));
        if !found {
            return Err(CotransitivityFailure::NoInterpolant(p));
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axiom {
    CoReflexivity,
    CoSymmetry,
    CoTransitivity,
}

impl Axiom {
    pub fn name(self) -> &'static str {
        match self {
            Axiom::CoReflexivity => "co-reflexivity",
            Axiom::CoSymmetry => "co-symmetry",
            Axiom::CoTransitivity => "co-transitivity",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Diagnosis {
    pub axiom: Axiom,
    pub witness: TaggedPair,
}

pub fn is_equivalence_corelation(c: &CoRelation) -> Result<(), Diagnosis> {
    is_coreflexive(c).map_err(|witness| Diagnosis { axiom: Axiom::CoReflexivity, witness })?;
    is_cosymmetric(c).map_err(|witness| Diagnosis { axiom: Axiom::CoSymmetry, witness })?;
    is_cotransitive(c).map_err(|f| match f {
        CotransitivityFailure::NotCoreflexive(witness) => Diagnosis { axiom: Axiom::CoReflexivity, witness },
        CotransitivityFailure::NoInterpolant(witness) => Diagnosis { axiom: Axiom::CoTransitivity, witness },
    })
}

/// One witness per cross pair `(x,i) ≼ (y,i*)`: a `z` with `x ≤ z ≤ y` and `(z,i) ∼ (z,i*)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EffectivenessCertificate {
    pub entries: Vec<(TaggedPair, usize)>,
}

impl EffectivenessCertificate {
    /// Re-checks every entry against `c`.
    pub fn validate(&self, c: &CoRelation) -> bool {
        let expected = c.cross_pairs().count();
        expected == self.entries.len()
            && self.entries.iter().all(|&(p, z)| {
                c.le(p.from, p.to) && p.is_cross() && certifies(c, p, z)
            })
    }
}

fn certifies(c: &CoRelation, p: TaggedPair, z: usize) -> bool {
    let i = p.from.tag;
    c.base.le(p.from.point, z) && c.base.le(z, p.to.point) && c.equiv(Tagged::new(z, i), Tagged::new(z, i.star()))
}

/// Evaluates the effectiveness criterion; on success the witness for each cross pair is
/// the least point of the interval that is glued across the two copies.
pub fn is_effective(c: &CoRelation) -> Result<EffectivenessCertificate, TaggedPair> {
    let n = c.base.len();
    let mut entries = Vec::new();
    for p in c.cross_pairs() {
        match (0..n).find(|&z| certifies(c, p, z)) {
            Some(z) => entries.push((p, z)),
            None => return Err(p),
        }
    }
    Ok(EffectivenessCertificate { entries })
}

/// `Φ(≼) = {x | (x,i) ∼ (x,i*)}`.
pub fn phi(c: &CoRelation) -> BitSet {
    let n = c.base.len();
    BitSet::from_indices(n, (0..n).filter(|&x| c.equiv(Tagged::new(x, Tag::Zero), Tagged::new(x, Tag::One))))
}

/// `(x,i) ≼^Y (y,j) ⟺ (i = j ∧ x ≤ y) ∨ (i ≠ j ∧ ∃z ∈ Y. x ≤ z ≤ y)`, indexed as `X + X`.
pub(crate) fn subset_corelation_relation(x: &Poset, y: &BitSet) -> Relation {
    let n = x.len();
    assert_eq!(y.universe(), n, "subset universe must match the poset");
    let mut rel = coproduct_relation(x.relation(), x.relation());
    for a in 0..n {
        for b in 0..n {
            if y.iter().any(|z| x.le(a, z) && x.le(z, b)) {
                rel.insert(a, n + b);
                rel.insert(n + a, b);
            }
        }
    }
    rel
}

/// The co-relation `≼^Y` induced by a subset `Y ⊆ X`.
pub fn corelation_of_subset(x: &Poset, y: &BitSet) -> CoRelation {
    CoRelation::new_unchecked(x.clone(), subset_corelation_relation(x, y))
}

/// `Ω = {u | (x,i) ≼ (u,i*) ∧ (u,i) ≼ (y,i*)}` for a cross pair.
pub fn omega(c: &CoRelation, x: usize, y: usize, i: Tag) -> BitSet {
    let n = c.base.len();
    BitSet::from_indices(
        n,
        (0..n).filter(|&u| c.le(Tagged::new(x, i), Tagged::new(u, i.star())) && c.le(Tagged::new(u, i), Tagged::new(y, i.star()))),
    )
}

/// A maximal element `z` of [`omega`] for the cross pair `(x,i) ≼ (y,i*)`, which then
/// satisfies `x ≤ z ≤ y` and `(z,i) ∼ (z,i*)`. Among several maximal elements the one
/// earliest in carrier order is returned.
pub fn maximal_witness(c: &CoRelation, x: usize, y: usize, i: Tag) -> Result<usize, CoRelationError> {
    let n = c.base.len();
    for v in [x, y] {
        if v >= n {
            return Err(CoRelationError::OutOfRange(v));
        }
    }
    let pair = TaggedPair { from: Tagged::new(x, i), to: Tagged::new(y, i.star()) };
    if !c.le(pair.from, pair.to) {
        return Err(CoRelationError::MissingCrossPair(c.render_pair(pair)));
    }
    if let Err(d) = is_equivalence_corelation(c) {
        return Err(CoRelationError::NotEquivalence(format!("{} fails at {}", d.axiom.name(), c.render_pair(d.witness))));
    }
    let candidates = omega(c, x, y, i);
    let z = *c
        .base
        .maximal_elements(&candidates)
        .first()
        .expect("co-transitivity makes Ω non-empty");
    if !certifies(c, pair, z) {
        return Err(CoRelationError::WitnessPostcondition {
            pair: c.render_pair(pair),
            z: c.base.carrier().label(z).to_string(),
        });
    }
    Ok(z)
}
