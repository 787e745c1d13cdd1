//! Limits and colimits of finite posets: the discrete/indiscrete functors, the
//! poset reflection of a pre-order, products, coproducts, quotient objects,
//! pushouts of order-embeddings, equalisers and cokernel pairs.

use thiserror::Error;

use crate::bits::{BitSet, Relation};
use crate::corelation::subset_corelation_relation;
use crate::order::{Carrier, MapError, MonotoneMap, Poset, Preorder, Violation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("{which} is not an order-embedding: witness pair ({x}, {y})")]
    NotEmbedding { which: &'static str, x: String, y: String },
    #[error("{which} is not surjective: {missed} is not in the image")]
    NotSurjective { which: &'static str, missed: String },
    #[error("{0}")]
    Mismatch(&'static str),
    #[error("domain of {which} is not a poset: {detail}")]
    NotPoset { which: &'static str, detail: String },
    #[error("pre-order does not extend the source order: {x} <= {y} is missing")]
    NotExtending { x: String, y: String },
    #[error("gluing class {class:?} has more than two members")]
    OversizedGlueClass { class: Vec<String> },
    #[error("pushout relation is not transitive: ({a}, {b}), ({b}, {c}) present but ({a}, {c}) missing")]
    ThetaNotTransitive { a: String, b: String, c: String },
    #[error("cokernel pair routes disagree at ({from}, {to})")]
    CokernelRoutesDisagree { from: String, to: String },
    #[error(transparent)]
    Map(#[from] MapError),
}

/// Coproduct tag; `star` swaps the two copies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tag {
    Zero,
    One,
}

impl Tag {
    pub const BOTH: [Tag; 2] = [Tag::Zero, Tag::One];

    pub fn star(self) -> Tag {
        match self {
            Tag::Zero => Tag::One,
            Tag::One => Tag::Zero,
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Tag> {
        match i {
            0 => Some(Tag::Zero),
            1 => Some(Tag::One),
            _ => None,
        }
    }
}

/// The doubled carrier `X + X` with elements `(x, i)`; `(x, i)` sits at index `i·|X| + x`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TaggedCarrier {
    base: Carrier,
}

impl TaggedCarrier {
    pub fn new(base: Carrier) -> Self {
        TaggedCarrier { base }
    }

    pub fn base(&self) -> &Carrier {
        &self.base
    }

    pub fn len(&self) -> usize {
        2 * self.base.len()
    }

    pub fn is_empty(&self) -> bool {
        self.base.is_empty()
    }

    #[inline]
    pub fn index(&self, x: usize, tag: Tag) -> usize {
        tag.index() * self.base.len() + x
    }

    #[inline]
    pub fn split(&self, idx: usize) -> (usize, Tag) {
        let n = self.base.len();
        (idx % n, if idx < n { Tag::Zero } else { Tag::One })
    }

    pub fn carrier(&self) -> Carrier {
        coproduct_carrier(&self.base, &self.base)
    }

    pub fn render(&self, idx: usize) -> String {
        let (x, t) = self.split(idx);
        format!("({},{})", self.base.label(x), t.index())
    }
}

fn tagged_label(label: &str, tag: Tag) -> String {
    format!("{label}:{}", tag.index())
}

fn coproduct_carrier(x: &Carrier, y: &Carrier) -> Carrier {
    let labels = x
        .labels()
        .iter()
        .map(|l| tagged_label(l, Tag::Zero))
        .chain(y.labels().iter().map(|l| tagged_label(l, Tag::One)))
        .collect();
    Carrier::with_unique_labels(labels)
}

/// The discrete order `Δ_X`.
pub fn delta(s: &Carrier) -> Poset {
    Poset::new_unchecked(s.clone(), Relation::identity(s.len()))
}

/// The improper pre-order `∇_X = X × X`.
pub fn nabla(s: &Carrier) -> Preorder {
    Preorder::new_unchecked(s.clone(), Relation::full(s.len()))
}

/// Poset reflection of a pre-order: the quotient by `≼ ∩ ≼^op` with the direct-image
/// order, and the quotient map `ρ`.
///
/// Classes are listed by their least member; a class is labelled by its members'
/// labels, sorted and joined with `+`.
pub fn reflect(p: &Preorder) -> (Poset, MonotoneMap) {
    let n = p.len();
    let sim = p.symmetrize();
    let mut class_of = vec![usize::MAX; n];
    let mut reps: Vec<usize> = Vec::new();
    let mut labels = Vec::new();
    for x in 0..n {
        if class_of[x] != usize::MAX {
            continue;
        }
        let id = reps.len();
        let mut members: Vec<&str> = Vec::new();
        for y in sim.successors(x) {
            class_of[y] = id;
            members.push(p.carrier().label(y));
        }
        members.sort_unstable();
        labels.push(members.join("+"));
        reps.push(x);
    }
    let m = reps.len();
    let mut rel = Relation::empty(m);
    for (a, &ra) in reps.iter().enumerate() {
        for (b, &rb) in reps.iter().enumerate() {
            if p.le(ra, rb) {
                rel.insert(a, b);
            }
        }
    }
    let quotient = Poset::new_unchecked(Carrier::with_unique_labels(labels), rel);
    let rho = MonotoneMap::new_unchecked(p.clone(), quotient.clone().into(), class_of);
    (quotient, rho)
}

/// Componentwise order on `X × Y`, elements listed row-major.
pub fn product(x: &Poset, y: &Poset) -> Poset {
    let (n, m) = (x.len(), y.len());
    let labels = (0..n)
        .flat_map(|a| (0..m).map(move |b| (a, b)))
        .map(|(a, b)| format!("({},{})", x.carrier().label(a), y.carrier().label(b)))
        .collect();
    let mut rel = Relation::empty(n * m);
    for a in 0..n {
        for b in 0..m {
            for a2 in x.relation().successors(a) {
                for b2 in y.relation().successors(b) {
                    rel.insert(a * m + b, a2 * m + b2);
                }
            }
        }
    }
    Poset::new_unchecked(Carrier::with_unique_labels(labels), rel)
}

/// Projections out of [`product`].
pub fn product_projections(x: &Poset, y: &Poset, prod: &Poset) -> (MonotoneMap, MonotoneMap) {
    let m = y.len();
    let p0 = (0..prod.len()).map(|k| k / m).collect();
    let p1 = (0..prod.len()).map(|k| k % m).collect();
    (
        MonotoneMap::new_unchecked(prod.preorder().clone(), x.preorder().clone(), p0),
        MonotoneMap::new_unchecked(prod.preorder().clone(), y.preorder().clone(), p1),
    )
}

/// The disjoint union with the coproduct order (no cross pairs).
#[derive(Debug, Clone)]
pub struct Coproduct {
    pub poset: Poset,
    pub inj0: MonotoneMap,
    pub inj1: MonotoneMap,
}

pub fn coproduct_relation(x: &Relation, y: &Relation) -> Relation {
    let n = x.size();
    let mut rel = Relation::empty(n + y.size());
    for (a, b) in x.pairs() {
        rel.insert(a, b);
    }
    for (a, b) in y.pairs() {
        rel.insert(n + a, n + b);
    }
    rel
}

pub fn coproduct(x: &Poset, y: &Poset) -> Coproduct {
    let n = x.len();
    let carrier = coproduct_carrier(x.carrier(), y.carrier());
    let poset = Poset::new_unchecked(carrier, coproduct_relation(x.relation(), y.relation()));
    let inj0 = MonotoneMap::new_unchecked(x.preorder().clone(), poset.preorder().clone(), (0..n).collect());
    let inj1 =
        MonotoneMap::new_unchecked(y.preorder().clone(), poset.preorder().clone(), (n..n + y.len()).collect());
    Coproduct { poset, inj0, inj1 }
}

/// `X + X` for a single poset, indexed as in [`TaggedCarrier`].
pub fn double(x: &Poset) -> Poset {
    coproduct(x, x).poset
}

/// The copairing `(f0 f1): X + Y → S`.
pub fn copair(f0: &MonotoneMap, f1: &MonotoneMap) -> Result<MonotoneMap, ConstructionError> {
    if f0.cod() != f1.cod() {
        return Err(ConstructionError::Mismatch("copair: codomains differ"));
    }
    let (x, y) = match (f0.dom_poset(), f1.dom_poset()) {
        (Some(x), Some(y)) => (x, y),
        _ => return Err(ConstructionError::Mismatch("copair: domains must be posets")),
    };
    let sum = coproduct(&x, &y);
    let table = f0.table().iter().chain(f1.table()).copied().collect();
    Ok(MonotoneMap::new_unchecked(sum.poset.into(), f0.cod().clone(), table))
}

/// A quotient object of `X`, represented by its pre-order extending `≤_X`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuotientObject {
    source: Poset,
    preord: Preorder,
}

impl QuotientObject {
    pub fn new(source: Poset, preord: Preorder) -> Result<Self, ConstructionError> {
        if source.carrier() != preord.carrier() {
            return Err(ConstructionError::Mismatch("quotient object: carriers differ"));
        }
        if let Some((x, y)) = source.relation().pairs().find(|&(x, y)| !preord.le(x, y)) {
            let c = source.carrier();
            return Err(ConstructionError::NotExtending { x: c.label(x).into(), y: c.label(y).into() });
        }
        Ok(QuotientObject { source, preord })
    }

    pub(crate) fn new_unchecked(source: Poset, preord: Preorder) -> Self {
        debug_assert!(source.relation().is_subset(preord.relation()));
        QuotientObject { source, preord }
    }

    pub fn source(&self) -> &Poset {
        &self.source
    }

    pub fn preorder(&self) -> &Preorder {
        &self.preord
    }

    /// Order of `Quot(X)`: `self` lies below `other` iff `other`'s pre-order is contained in `self`'s.
    pub fn is_below(&self, other: &QuotientObject) -> bool {
        other.preord.relation().is_subset(self.preord.relation())
    }
}

/// `≼_f = {(x1, x2) | f(x1) ≤ f(x2)}`; `f` need not be surjective.
pub fn preorder_of_map(f: &MonotoneMap) -> Result<QuotientObject, ConstructionError> {
    let source = f.dom_poset().ok_or_else(|| ConstructionError::NotPoset {
        which: "f",
        detail: "antisymmetry fails".into(),
    })?;
    let rel = f.cod().relation().preimage(f.table());
    let preord = Preorder::new_unchecked(source.carrier().clone(), rel);
    Ok(QuotientObject::new_unchecked(source, preord))
}

/// The surjection `X ↠ X/∼` corresponding to a pre-order in `Preo(X)`, with domain `X`.
pub fn quotient_of_preorder(q: &QuotientObject) -> (Poset, MonotoneMap) {
    let (quotient, rho) = reflect(q.preorder());
    let rho = MonotoneMap::new_unchecked(q.source().clone().into(), quotient.clone().into(), rho.table().to_vec());
    (quotient, rho)
}

/// Outcome of [`factor_through`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Factorization {
    /// The unique `g` with `g ∘ f1 = f2`.
    Through(MonotoneMap),
    /// `f1(x) ≤ f1(y)` but `f2(x) ≰ f2(y)`.
    Blocked { x: usize, y: usize },
}

/// Factors `f2` through the surjection `f1`: `g` exists iff `f1(x) ≤ f1(y)` implies
/// `f2(x) ≤ f2(y)` for all `x, y`.
pub fn factor_through(f1: &MonotoneMap, f2: &MonotoneMap) -> Result<Factorization, ConstructionError> {
    if f1.dom() != f2.dom() {
        return Err(ConstructionError::Mismatch("factor_through: domains differ"));
    }
    if !f1.is_surjective() {
        let missed = f1.image().complement().iter().next().expect("non-surjective map misses a point");
        return Err(ConstructionError::NotSurjective { which: "f1", missed: f1.cod().carrier().label(missed).into() });
    }
    let n = f1.dom().len();
    for x in 0..n {
        for y in 0..n {
            if f1.cod().le(f1.apply(x), f1.apply(y)) && !f2.cod().le(f2.apply(x), f2.apply(y)) {
                return Ok(Factorization::Blocked { x, y });
            }
        }
    }
    let mut table = vec![usize::MAX; f1.cod().len()];
    for x in 0..n {
        let slot = &mut table[f1.apply(x)];
        if *slot == usize::MAX {
            *slot = f2.apply(x);
        } else if *slot != f2.apply(x) {
            // only reachable when f2's codomain is not antisymmetric
            return Err(ConstructionError::Mismatch("factor_through: induced g is not single-valued"));
        }
    }
    let g = MonotoneMap::new(f1.cod().clone(), f2.cod().clone(), table)?;
    Ok(Factorization::Through(g))
}

/// A pushout of two order-embeddings.
#[derive(Debug, Clone)]
pub struct PushoutResult {
    pub apex: Poset,
    pub ins0: MonotoneMap,
    pub ins1: MonotoneMap,
    /// Fibres of `Y0 + Y1 → apex`, one per apex element, members as `(side, index)`.
    pub glue_classes: Vec<Vec<(Tag, usize)>>,
}

impl PushoutResult {
    pub(crate) fn from_insertions(apex: Poset, ins0: MonotoneMap, ins1: MonotoneMap) -> Self {
        let mut glue_classes = vec![Vec::new(); apex.len()];
        for (w, &p) in ins0.table().iter().enumerate() {
            glue_classes[p].push((Tag::Zero, w));
        }
        for (w, &p) in ins1.table().iter().enumerate() {
            glue_classes[p].push((Tag::One, w));
        }
        PushoutResult { apex, ins0, ins1, glue_classes }
    }
}

pub(crate) fn require_embedding(f: &MonotoneMap, which: &'static str) -> Result<(), ConstructionError> {
    if let Some((x, y)) = f.embedding_violation() {
        let c = f.dom().carrier();
        return Err(ConstructionError::NotEmbedding { which, x: c.label(x).into(), y: c.label(y).into() });
    }
    Ok(())
}

fn require_poset(p: &Preorder, which: &'static str) -> Result<Poset, ConstructionError> {
    Poset::try_from(p.clone())
        .map_err(|v: Violation| ConstructionError::NotPoset { which, detail: v.render(p.carrier()) })
}

/// Pushout of a cospan of order-embeddings `Y0 ← X → Y1`.
///
/// The carrier is `Y0 + Y1` with `f0(x)` and `f1(x)` identified. Its pre-order is
/// `Θ' ∪ Θ''`: `Θ'` relates images of pairs ordered inside one `Y_i`, and `Θ''`
/// relates `w ∈ Y_i` to `w' ∈ Y_{i*}` whenever some `x` has `w ≤ f_i(x)` and
/// `f_{i*}(x) ≤ w'`. This relation is checked to be transitive, then reflected.
pub fn pushout_embeddings(f0: &MonotoneMap, f1: &MonotoneMap) -> Result<PushoutResult, ConstructionError> {
    if f0.dom() != f1.dom() {
        return Err(ConstructionError::Mismatch("pushout: the two maps have different domains"));
    }
    require_embedding(f0, "f0")?;
    require_embedding(f1, "f1")?;
    let y0 = require_poset(f0.cod(), "codomain of f0")?;
    let y1 = require_poset(f1.cod(), "codomain of f1")?;
    let (n0, n1) = (y0.len(), y1.len());
    let total = n0 + n1;
    let x_len = f0.dom().len();

    let mut uf = UnionFind::new(total);
    for x in 0..x_len {
        uf.union(f0.apply(x), n0 + f1.apply(x));
    }
    // classes in order of least member
    let mut class_of = vec![usize::MAX; total];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut root_class = vec![usize::MAX; total];
    for (v, slot) in class_of.iter_mut().enumerate() {
        let r = uf.find(v);
        if root_class[r] == usize::MAX {
            root_class[r] = classes.len();
            classes.push(Vec::new());
        }
        *slot = root_class[r];
        classes[root_class[r]].push(v);
    }
    let sum_labels = coproduct_carrier(y0.carrier(), y1.carrier());
    if let Some(big) = classes.iter().find(|c| c.len() > 2) {
        return Err(ConstructionError::OversizedGlueClass {
            class: big.iter().map(|&v| sum_labels.label(v).to_string()).collect(),
        });
    }
    let labels = classes
        .iter()
        .map(|c| {
            let mut ls: Vec<&str> = c.iter().map(|&v| sum_labels.label(v)).collect();
            ls.sort_unstable();
            ls.join("+")
        })
        .collect();
    let glued = Carrier::with_unique_labels(labels);
    let m = classes.len();
    let ins = |tag: Tag, w: usize| match tag {
        Tag::Zero => class_of[w],
        Tag::One => class_of[n0 + w],
    };
    let sides: [(&Poset, &MonotoneMap); 2] = [(&y0, f0), (&y1, f1)];

    let mut theta = Relation::empty(m);
    for i in Tag::BOTH {
        let (yi, _) = sides[i.index()];
        for (w, w2) in yi.relation().pairs() {
            theta.insert(ins(i, w), ins(i, w2));
        }
    }
    for i in Tag::BOTH {
        let (yi, fi) = sides[i.index()];
        let (yj, fj) = sides[i.star().index()];
        for x in 0..x_len {
            let below = yi.principal_down(fi.apply(x));
            let above = yj.principal_up(fj.apply(x));
            for w in below.iter() {
                for w2 in above.iter() {
                    theta.insert(ins(i, w), ins(i.star(), w2));
                }
            }
        }
    }
    if let Some(v) = theta.reflexivity_violation() {
        // reflexive by construction since Θ' contains every diagonal pair
        unreachable!("pushout relation misses the diagonal at {v}");
    }
    if let Some((a, b, c)) = theta.transitivity_violation() {
        let l = |k: usize| glued.label(k).to_string();
        return Err(ConstructionError::ThetaNotTransitive { a: l(a), b: l(b), c: l(c) });
    }
    let p = Preorder::new_unchecked(glued, theta);
    let (apex, rho) = reflect(&p);
    let t0 = (0..n0).map(|w| rho.apply(ins(Tag::Zero, w))).collect();
    let t1 = (0..n1).map(|w| rho.apply(ins(Tag::One, w))).collect();
    let ins0 = MonotoneMap::new(y0.clone(), apex.clone(), t0)?;
    let ins1 = MonotoneMap::new(y1.clone(), apex.clone(), t1)?;
    Ok(PushoutResult::from_insertions(apex, ins0, ins1))
}

/// `Y = {x | q0(x) = q1(x)}` with the induced order, and its inclusion into `X`.
pub fn equalizer(q0: &MonotoneMap, q1: &MonotoneMap) -> Result<MonotoneMap, ConstructionError> {
    if q0.dom() != q1.dom() || q0.cod() != q1.cod() {
        return Err(ConstructionError::Mismatch("equalizer: maps must share domain and codomain"));
    }
    let x = q0.dom();
    let agree = BitSet::from_indices(x.len(), (0..x.len()).filter(|&v| q0.apply(v) == q1.apply(v)));
    let (y, incl) = x.induced(&agree);
    Ok(MonotoneMap::new_unchecked(y, x.clone(), incl))
}

/// The cokernel pair of an order-embedding `k: Y ↪ X`, as a quotient object of `X + X`.
///
/// Computed twice: from the pushout of `k` along itself, and from the closed formula
/// `(x,i) ≼ (y,j) ⟺ (i = j ∧ x ≤ y) ∨ (i ≠ j ∧ ∃z ∈ k(Y). x ≤ z ≤ y)`.
/// The two must coincide.
pub fn cokernel_pair(k: &MonotoneMap) -> Result<QuotientObject, ConstructionError> {
    let via_pushout = cokernel_pair_via_pushout(k)?;
    let via_formula = cokernel_pair_via_formula(k)?;
    let (a, b) = (via_pushout.preorder().relation(), via_formula.preorder().relation());
    if a != b {
        let (from, to) = a
            .pairs()
            .find(|&(u, v)| !b.contains(u, v))
            .or_else(|| b.pairs().find(|&(u, v)| !a.contains(u, v)))
            .expect("unequal relations differ somewhere");
        let c = via_formula.source().carrier();
        return Err(ConstructionError::CokernelRoutesDisagree { from: c.label(from).into(), to: c.label(to).into() });
    }
    Ok(via_formula)
}

pub fn cokernel_pair_via_pushout(k: &MonotoneMap) -> Result<QuotientObject, ConstructionError> {
    let po = pushout_embeddings(k, k)?;
    let copairing = copair(&po.ins0, &po.ins1)?;
    preorder_of_map(&copairing)
}

pub fn cokernel_pair_via_formula(k: &MonotoneMap) -> Result<QuotientObject, ConstructionError> {
    require_embedding(k, "k")?;
    let x = require_poset(k.cod(), "codomain of k")?;
    let rel = subset_corelation_relation(&x, &k.image());
    let xx = double(&x);
    let preord = Preorder::new_unchecked(xx.carrier().clone(), rel);
    Ok(QuotientObject::new_unchecked(xx, preord))
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    /// Keeps the smaller root so representatives are deterministic.
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::classify_map;

    fn map(dom: &Poset, cod: &Poset, table: &[usize]) -> MonotoneMap {
        MonotoneMap::new(dom.clone(), cod.clone(), table.to_vec()).unwrap()
    }

    fn labels(p: &Poset) -> Vec<&str> {
        p.carrier().labels().iter().map(String::as_str).collect()
    }

    #[test]
    fn delta_nabla() {
        let c = Carrier::standard(2);
        assert_eq!(delta(&c), Poset::antichain(2));
        assert_eq!(nabla(&c).relation().len(), 4);
        assert!(delta(&Carrier::empty()).is_empty());
    }

    #[test]
    fn reflect_poset_is_bijective() {
        let c = Poset::chain(3);
        let (q, rho) = reflect(c.preorder());
        assert_eq!(q.relation(), c.relation());
        assert_eq!(rho.table(), &[0, 1, 2]);
        assert_eq!(labels(&q), ["a", "b", "c"]);
    }

    #[test]
    fn reflect_nabla_collapses() {
        let (q, rho) = reflect(&nabla(&Carrier::standard(2)));
        assert_eq!(q.len(), 1);
        assert_eq!(labels(&q), ["a+b"]);
        assert_eq!(rho.table(), &[0, 0]);
    }

    #[test]
    fn reflect_contracts_class() {
        // chain a<b<c plus b ≼ a
        let mut r = Poset::chain(3).relation().clone();
        r.insert(1, 0);
        let p = Preorder::new(Carrier::standard(3), r).unwrap();
        let (q, rho) = reflect(&p);
        assert_eq!(labels(&q), ["a+b", "c"]);
        assert_eq!(q.relation(), Poset::chain(2).relation());
        assert_eq!(rho.table(), &[0, 0, 1]);
        for x in 0..3 {
            for y in 0..3 {
                assert_eq!(p.le(x, y), q.le(rho.apply(x), rho.apply(y)));
            }
        }
    }

    #[test]
    fn product_of_chains_is_square() {
        let sq = product(&Poset::chain(2), &Poset::chain(2));
        assert_eq!(labels(&sq), ["(a,a)", "(a,b)", "(b,a)", "(b,b)"]);
        let expected = Relation::from_pairs(4, [(0, 1), (0, 2), (0, 3), (1, 3), (2, 3)]).reflexive_transitive_closure();
        assert_eq!(sq.relation(), &expected);
        let one = Poset::chain(1);
        let x = Poset::chain(3);
        assert_eq!(product(&x, &one).relation(), x.relation());
        let (p0, p1) = product_projections(&x, &one, &product(&x, &one));
        assert!(classify_map(&p0).is_order_embedding && classify_map(&p1).is_surjective);
    }

    #[test]
    fn coproduct_of_chains() {
        let s = coproduct(&Poset::chain(2), &Poset::chain(2));
        assert_eq!(labels(&s.poset), ["a:0", "b:0", "a:1", "b:1"]);
        assert_eq!(s.poset.relation(), &Relation::from_pairs(4, [(0, 0), (1, 1), (2, 2), (3, 3), (0, 1), (2, 3)]));
        assert!(classify_map(&s.inj0).is_order_embedding && classify_map(&s.inj1).is_order_embedding);
    }

    #[test]
    fn preorder_of_map_examples() {
        let c = Poset::chain(2);
        assert_eq!(preorder_of_map(&MonotoneMap::identity(c.clone())).unwrap().preorder().relation(), c.relation());
        let id = MonotoneMap::identity(c.clone());
        let fold = copair(&id, &id).unwrap();
        let q = preorder_of_map(&fold).unwrap();
        let tc = TaggedCarrier::new(c.carrier().clone());
        for u in 0..4 {
            for v in 0..4 {
                let ((x, _), (y, _)) = (tc.split(u), tc.split(v));
                assert_eq!(q.preorder().le(u, v), c.le(x, y));
            }
        }
        let k = map(&c, &Poset::chain(1), &[0, 0]);
        assert_eq!(preorder_of_map(&k).unwrap().preorder().relation(), &Relation::full(2));
    }

    #[test]
    fn quotient_examples() {
        let c = Poset::chain(2);
        let q = QuotientObject::new(c.clone(), c.preorder().clone()).unwrap();
        let (p, rho) = quotient_of_preorder(&q);
        assert_eq!(p.len(), 2);
        assert!(classify_map(&rho).is_order_embedding);
        let q = QuotientObject::new(c.clone(), nabla(c.carrier())).unwrap();
        assert_eq!(quotient_of_preorder(&q).0.len(), 1);
        let anti = Poset::antichain(2);
        let pre = Preorder::new(anti.carrier().clone(), Poset::chain(2).relation().clone()).unwrap();
        let (p, rho) = quotient_of_preorder(&QuotientObject::new(anti, pre).unwrap());
        assert_eq!(p.relation(), Poset::chain(2).relation());
        assert!(rho.is_injective() && rho.is_surjective());
    }

    #[test]
    fn quotient_object_must_extend() {
        let anti = Poset::antichain(2);
        let c = Poset::chain(2);
        let err = QuotientObject::new(c, anti.preorder().clone()).unwrap_err();
        assert_eq!(err, ConstructionError::NotExtending { x: "a".into(), y: "b".into() });
    }

    #[test]
    fn factor_through_examples() {
        let c = Poset::chain(2);
        let id = MonotoneMap::identity(c.clone());
        match factor_through(&id, &id).unwrap() {
            Factorization::Through(g) => assert_eq!(g.table(), &[0, 1]),
            other => panic!("expected factorization, got {other:?}"),
        }
        let k = map(&c, &Poset::chain(1), &[0, 0]);
        assert_eq!(factor_through(&k, &id).unwrap(), Factorization::Blocked { x: 1, y: 0 });
        let c3 = Poset::chain(3);
        let collapse = map(&c3, &Poset::chain(2), &[0, 0, 1]);
        let constant = map(&c3, &Poset::chain(1), &[0, 0, 0]);
        match factor_through(&collapse, &constant).unwrap() {
            Factorization::Through(g) => assert_eq!(g.table(), &[0, 0]),
            other => panic!("expected factorization, got {other:?}"),
        }
        let not_onto = map(&Poset::chain(1), &c, &[0]);
        assert!(matches!(factor_through(&not_onto, &not_onto), Err(ConstructionError::NotSurjective { .. })));
    }

    #[test]
    fn pushout_of_identity_is_iso() {
        let x = Poset::chain(3);
        let id = MonotoneMap::identity(x.clone());
        let po = pushout_embeddings(&id, &id).unwrap();
        assert_eq!(po.apex.relation(), x.relation());
        assert_eq!(po.ins0.table(), po.ins1.table());
        assert!(po.glue_classes.iter().all(|c| c.len() == 2));
    }

    #[test]
    fn pushout_along_top_of_chain() {
        let x = Poset::chain(1);
        let c = Poset::chain(2);
        let f = map(&x, &c, &[1]);
        let po = pushout_embeddings(&f, &f).unwrap();
        assert_eq!(labels(&po.apex), ["a:0", "b:0+b:1", "a:1"]);
        let expected = Relation::from_pairs(3, [(0, 0), (1, 1), (2, 2), (0, 1), (2, 1)]);
        assert_eq!(po.apex.relation(), &expected);
        assert_eq!(po.ins0.table(), &[0, 1]);
        assert_eq!(po.ins1.table(), &[2, 1]);
        assert_eq!(po.glue_classes, vec![vec![(Tag::Zero, 0)], vec![(Tag::Zero, 1), (Tag::One, 1)], vec![(Tag::One, 0)]]);
    }

    #[test]
    fn pushout_over_empty_is_coproduct() {
        let e = Poset::chain(0);
        let (y0, y1) = (Poset::chain(2), Poset::antichain(2));
        let po = pushout_embeddings(&map(&e, &y0, &[]), &map(&e, &y1, &[])).unwrap();
        assert_eq!(po.apex.relation(), coproduct(&y0, &y1).poset.relation());
    }

    #[test]
    fn pushout_rejects_non_embedding() {
        let inc = map(&Poset::antichain(2), &Poset::chain(2), &[0, 1]);
        let err = pushout_embeddings(&inc, &inc).unwrap_err();
        assert_eq!(err, ConstructionError::NotEmbedding { which: "f0", x: "a".into(), y: "b".into() });
    }

    #[test]
    fn equalizer_examples() {
        let c = Poset::chain(3);
        let id = MonotoneMap::identity(c.clone());
        assert_eq!(equalizer(&id, &id).unwrap().table(), &[0, 1, 2]);
        let s = coproduct(&c, &c);
        assert!(equalizer(&s.inj0, &s.inj1).unwrap().dom().is_empty());
    }

    #[test]
    fn equalizer_of_cokernel_pair_recovers_subset() {
        let x = Poset::chain(3);
        let y = Poset::chain(1);
        let k = map(&y, &x, &[1]);
        let po = pushout_embeddings(&k, &k).unwrap();
        let e = equalizer(&po.ins0, &po.ins1).unwrap();
        assert_eq!(e.table(), &[1]);
    }

    #[test]
    fn cokernel_pair_examples() {
        let c = Poset::chain(2);
        let tc = TaggedCarrier::new(c.carrier().clone());
        let full = cokernel_pair(&MonotoneMap::identity(c.clone())).unwrap();
        for u in 0..4 {
            for v in 0..4 {
                assert_eq!(full.preorder().le(u, v), c.le(tc.split(u).0, tc.split(v).0));
            }
        }
        let empty = cokernel_pair(&map(&Poset::chain(0), &c, &[])).unwrap();
        assert_eq!(empty.preorder().relation(), double(&c).relation());

        let q = cokernel_pair(&map(&Poset::chain(1), &c, &[0])).unwrap();
        let cross: Vec<(String, String)> = q
            .preorder()
            .relation()
            .pairs()
            .filter(|&(u, v)| tc.split(u).1 != tc.split(v).1)
            .map(|(u, v)| (tc.render(u), tc.render(v)))
            .collect();
        let expect = [("(a,0)", "(a,1)"), ("(a,0)", "(b,1)"), ("(a,1)", "(a,0)"), ("(a,1)", "(b,0)")];
        assert_eq!(cross, expect.map(|(a, b)| (a.to_string(), b.to_string())));
    }
}
