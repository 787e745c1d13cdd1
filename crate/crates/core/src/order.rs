//! Carriers, pre-orders, posets and monotone maps.
//!
//! Every space here is finite and discrete, so the topological side conditions
//! (compactness, closedness of a relation, continuity of a map) hold for every
//! value. They are still exposed as predicates, each returning `true`, so that
//! code written against the categorical vocabulary reads the same at this scale.

use std::fmt;
use std::ops::Deref;
use std::sync::Arc;

use thiserror::Error;

use crate::bits::{BitSet, Relation};

/// An ordered list of pairwise distinct labels.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Carrier {
    labels: Arc<[String]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CarrierError {
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
}

impl Carrier {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self, CarrierError> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(CarrierError::DuplicateLabel(l.clone()));
            }
        }
        Ok(Carrier { labels: labels.into() })
    }

    /// Like [`Carrier::new`], but repeated labels get `'` appended until unique.
    pub fn with_unique_labels(labels: Vec<String>) -> Self {
        let mut out: Vec<String> = Vec::with_capacity(labels.len());
        for mut l in labels {
            while out.contains(&l) {
                l.push('\'');
            }
            out.push(l);
        }
        Carrier { labels: out.into() }
    }

    /// `a, b, c, ...`; past `z` the labels become `x26, x27, ...`.
    pub fn standard(n: usize) -> Self {
        let labels = (0..n)
            .map(|i| if i < 26 { ((b'a' + i as u8) as char).to_string() } else { format!("x{i}") })
            .collect::<Vec<_>>();
        Carrier { labels: labels.into() }
    }

    pub fn empty() -> Self {
        Carrier::standard(0)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// A finite discrete space is compact Hausdorff.
    pub fn is_compact_hausdorff(&self) -> bool {
        true
    }

    pub fn render_subset(&self, s: &BitSet) -> String {
        let parts: Vec<&str> = s.iter().map(|i| self.label(i)).collect();
        format!("{{{}}}", parts.join(","))
    }
}

impl fmt::Debug for Carrier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.labels.iter()).finish()
    }
}

/// Which order axiom failed, with a witness given by carrier indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Violation {
    Reflexivity { element: usize },
    Transitivity { a: usize, b: usize, c: usize },
    Antisymmetry { a: usize, b: usize },
    /// Relation size differs from the carrier size.
    Size { carrier: usize, relation: usize },
}

impl Violation {
    pub fn axiom(&self) -> &'static str {
        match self {
            Violation::Reflexivity { .. } => "reflexivity",
            Violation::Transitivity { .. } => "transitivity",
            Violation::Antisymmetry { .. } => "antisymmetry",
            Violation::Size { .. } => "size",
        }
    }

    pub fn render(&self, carrier: &Carrier) -> String {
        let l = |i: usize| carrier.label(i);
        match *self {
            Violation::Reflexivity { element } => format!("reflexivity fails at {}", l(element)),
            Violation::Transitivity { a, b, c } => format!(
                "transitivity fails: {} <= {} and {} <= {} but not {} <= {}",
                l(a), l(b), l(b), l(c), l(a), l(c)
            ),
            Violation::Antisymmetry { a, b } => format!(
                "antisymmetry fails: {} <= {} and {} <= {}",
                l(a), l(b), l(b), l(a)
            ),
            Violation::Size { carrier, relation } => {
                format!("relation has size {relation} but carrier has {carrier} elements")
            }
        }
    }
}

/// A reflexive and transitive relation on a carrier.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Preorder {
    carrier: Carrier,
    rel: Relation,
}

impl Preorder {
    pub fn new(carrier: Carrier, rel: Relation) -> Result<Self, Violation> {
        check_preorder(&carrier, &rel)?;
        Ok(Preorder { carrier, rel })
    }

    /// Caller guarantees reflexivity and transitivity.
    pub(crate) fn new_unchecked(carrier: Carrier, rel: Relation) -> Self {
        debug_assert!(check_preorder(&carrier, &rel).is_ok());
        Preorder { carrier, rel }
    }

    /// The pre-order generated by `rel`.
    pub fn generated_by(carrier: Carrier, rel: &Relation) -> Self {
        assert_eq!(carrier.len(), rel.size());
        Preorder { carrier, rel: reflexive_transitive_closure(rel) }
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn relation(&self) -> &Relation {
        &self.rel
    }

    pub fn into_relation(self) -> Relation {
        self.rel
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    #[inline]
    pub fn le(&self, i: usize, j: usize) -> bool {
        self.rel.contains(i, j)
    }

    /// Closedness in the product topology; automatic for discrete spaces.
    pub fn is_closed(&self) -> bool {
        true
    }

    /// `≼ ∩ ≼^op`.
    pub fn symmetrize(&self) -> Relation {
        self.rel.intersection(&self.rel.transpose())
    }

    pub fn opposite(&self) -> Preorder {
        Preorder { carrier: self.carrier.clone(), rel: self.rel.transpose() }
    }

    pub fn down_closure(&self, s: &BitSet) -> BitSet {
        assert_eq!(s.universe(), self.len());
        BitSet::from_indices(self.len(), (0..self.len()).filter(|&x| s.iter().any(|d| self.le(x, d))))
    }

    pub fn up_closure(&self, s: &BitSet) -> BitSet {
        assert_eq!(s.universe(), self.len());
        BitSet::from_indices(self.len(), (0..self.len()).filter(|&x| s.iter().any(|d| self.le(d, x))))
    }

    pub fn is_up_set(&self, s: &BitSet) -> bool {
        self.up_closure(s) == *s
    }

    pub fn is_down_set(&self, s: &BitSet) -> bool {
        self.down_closure(s) == *s
    }

    pub fn principal_up(&self, x: usize) -> BitSet {
        self.rel.row(x)
    }

    pub fn principal_down(&self, x: usize) -> BitSet {
        BitSet::from_indices(self.len(), self.rel.predecessors(x))
    }

    /// Restriction to a subset, in carrier order, with the inclusion table.
    pub fn induced(&self, subset: &BitSet) -> (Preorder, Vec<usize>) {
        let members: Vec<usize> = subset.iter().collect();
        let carrier = Carrier { labels: members.iter().map(|&i| self.carrier.label(i).to_string()).collect() };
        let rel = self.rel.preimage(&members);
        (Preorder { carrier, rel }, members)
    }

    pub fn as_poset(&self) -> Option<Poset> {
        Poset::try_from(self.clone()).ok()
    }
}

impl fmt::Debug for Preorder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<(&str, &str)> = self
            .rel
            .pairs()
            .filter(|(i, j)| i != j)
            .map(|(i, j)| (self.carrier.label(i), self.carrier.label(j)))
            .collect();
        f.debug_struct("Preorder").field("elements", &self.carrier).field("pairs", &pairs).finish()
    }
}

/// A pre-order that is also antisymmetric.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poset(Preorder);

impl Poset {
    pub fn new(carrier: Carrier, rel: Relation) -> Result<Self, Violation> {
        check_poset(&carrier, &rel)
    }

    pub(crate) fn new_unchecked(carrier: Carrier, rel: Relation) -> Self {
        debug_assert!(check_poset(&carrier, &rel).is_ok());
        Poset(Preorder { carrier, rel })
    }

    /// The discrete order on `n` standard labels.
    pub fn antichain(n: usize) -> Self {
        Poset::new_unchecked(Carrier::standard(n), Relation::identity(n))
    }

    /// `a < b < c < ...` on `n` standard labels.
    pub fn chain(n: usize) -> Self {
        let rel = Relation::from_pairs(n, (0..n).flat_map(|i| (i..n).map(move |j| (i, j))));
        Poset::new_unchecked(Carrier::standard(n), rel)
    }

    pub fn preorder(&self) -> &Preorder {
        &self.0
    }

    pub fn into_preorder(self) -> Preorder {
        self.0
    }

    pub fn opposite(&self) -> Poset {
        Poset(self.0.opposite())
    }

    pub fn induced_poset(&self, subset: &BitSet) -> (Poset, Vec<usize>) {
        let (p, incl) = self.0.induced(subset);
        (Poset(p), incl)
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.le(i, j)
    }

    pub fn maximal_elements(&self, s: &BitSet) -> Vec<usize> {
        s.iter().filter(|&z| !s.iter().any(|u| self.lt(z, u))).collect()
    }
}

impl Deref for Poset {
    type Target = Preorder;
    fn deref(&self) -> &Preorder {
        &self.0
    }
}

impl From<Poset> for Preorder {
    fn from(p: Poset) -> Preorder {
        p.0
    }
}

impl TryFrom<Preorder> for Poset {
    type Error = Violation;
    fn try_from(p: Preorder) -> Result<Self, Violation> {
        match p.rel.antisymmetry_violation() {
            Some((a, b)) => Err(Violation::Antisymmetry { a, b }),
            None => Ok(Poset(p)),
        }
    }
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poset")?;
        self.0.fmt(f)
    }
}

pub fn reflexive_transitive_closure(r: &Relation) -> Relation {
    r.reflexive_transitive_closure()
}

pub fn check_preorder(carrier: &Carrier, r: &Relation) -> Result<(), Violation> {
    if carrier.len() != r.size() {
        return Err(Violation::Size { carrier: carrier.len(), relation: r.size() });
    }
    if let Some(element) = r.reflexivity_violation() {
        return Err(Violation::Reflexivity { element });
    }
    if let Some((a, b, c)) = r.transitivity_violation() {
        return Err(Violation::Transitivity { a, b, c });
    }
    Ok(())
}

/// Validates the three partial-order axioms, reporting the first one that fails.
pub fn check_poset(carrier: &Carrier, r: &Relation) -> Result<Poset, Violation> {
    check_preorder(carrier, r)?;
    if let Some((a, b)) = r.antisymmetry_violation() {
        return Err(Violation::Antisymmetry { a, b });
    }
    Ok(Poset(Preorder { carrier: carrier.clone(), rel: r.clone() }))
}

/// Covering pairs `a ⋖ b`: `a < b` with nothing strictly between.
pub fn covering_relation(p: &Poset) -> Relation {
    let n = p.len();
    let mut cov = Relation::empty(n);
    for a in 0..n {
        for b in 0..n {
            if p.lt(a, b) && !(0..n).any(|c| p.lt(a, c) && p.lt(c, b)) {
                cov.insert(a, b);
            }
        }
    }
    cov
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("map table has {table} entries but the domain has {domain} elements")]
    TableSize { table: usize, domain: usize },
    #[error("image {image} of element {element} is outside the codomain")]
    OutOfRange { element: usize, image: usize },
    #[error("not monotone: {x} <= {y} but f({x}) is not below f({y})")]
    NotMonotone { x: usize, y: usize },
    #[error("maps are not composable")]
    NotComposable,
}

/// A monotone function between pre-ordered carriers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonotoneMap {
    dom: Preorder,
    cod: Preorder,
    table: Vec<usize>,
}

impl MonotoneMap {
    pub fn new(dom: impl Into<Preorder>, cod: impl Into<Preorder>, table: Vec<usize>) -> Result<Self, MapError> {
        let (dom, cod) = (dom.into(), cod.into());
        if table.len() != dom.len() {
            return Err(MapError::TableSize { table: table.len(), domain: dom.len() });
        }
        if let Some((element, &image)) = table.iter().enumerate().find(|(_, &t)| t >= cod.len()) {
            return Err(MapError::OutOfRange { element, image });
        }
        let f = MonotoneMap { dom, cod, table };
        if let Some((x, y)) = f.monotonicity_violation() {
            return Err(MapError::NotMonotone { x, y });
        }
        Ok(f)
    }

    pub(crate) fn new_unchecked(dom: Preorder, cod: Preorder, table: Vec<usize>) -> Self {
        let f = MonotoneMap { dom, cod, table };
        debug_assert!(f.monotonicity_violation().is_none());
        f
    }

    pub fn identity(p: impl Into<Preorder>) -> Self {
        let p = p.into();
        let table = (0..p.len()).collect();
        MonotoneMap { dom: p.clone(), cod: p, table }
    }

    pub fn dom(&self) -> &Preorder {
        &self.dom
    }

    pub fn cod(&self) -> &Preorder {
        &self.cod
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    pub fn dom_poset(&self) -> Option<Poset> {
        self.dom.as_poset()
    }

    pub fn cod_poset(&self) -> Option<Poset> {
        self.cod.as_poset()
    }

    /// Every function between discrete spaces is continuous.
    pub fn is_continuous(&self) -> bool {
        true
    }

    pub fn monotonicity_violation(&self) -> Option<(usize, usize)> {
        self.dom.rel.pairs().find(|&(x, y)| !self.cod.le(self.table[x], self.table[y]))
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = BitSet::new(self.cod.len());
        for &t in &self.table {
            hit.insert(t);
        }
        hit.count() == self.cod.len()
    }

    pub fn is_injective(&self) -> bool {
        let mut hit = BitSet::new(self.cod.len());
        self.table.iter().all(|&t| hit.insert(t))
    }

    /// First pair where `x ≤ y ⟺ f(x) ≤ f(y)` fails.
    pub fn embedding_violation(&self) -> Option<(usize, usize)> {
        let n = self.dom.len();
        (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .find(|&(x, y)| self.dom.le(x, y) != self.cod.le(self.table[x], self.table[y]))
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &MonotoneMap) -> Result<MonotoneMap, MapError> {
        if self.cod != other.dom {
            return Err(MapError::NotComposable);
        }
        let table = self.table.iter().map(|&y| other.table[y]).collect();
        Ok(MonotoneMap { dom: self.dom.clone(), cod: other.cod.clone(), table })
    }

    pub fn image(&self) -> BitSet {
        BitSet::from_indices(self.cod.len(), self.table.iter().copied())
    }
}

impl fmt::Debug for MonotoneMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let entries: Vec<(&str, &str)> = self
            .table
            .iter()
            .enumerate()
            .map(|(x, &y)| (self.dom.carrier.label(x), self.cod.carrier.label(y)))
            .collect();
        f.debug_struct("MonotoneMap").field("map", &entries).finish()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MapClass {
    pub is_monotone: bool,
    pub is_surjective: bool,
    pub is_order_embedding: bool,
}

/// Monotone maps are the morphisms, monotone surjections the epimorphisms, and
/// order-embeddings the regular monomorphisms.
pub fn classify_map(f: &MonotoneMap) -> MapClass {
    MapClass {
        is_monotone: f.monotonicity_violation().is_none(),
        is_surjective: f.is_surjective(),
        is_order_embedding: f.embedding_violation().is_none(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(n: usize, pairs: &[(usize, usize)]) -> Relation {
        let mut r = Relation::identity(n);
        for &(a, b) in pairs {
            r.insert(a, b);
        }
        r
    }

    #[test]
    fn duplicate_labels_rejected() {
        assert_eq!(Carrier::new(["a", "a"]), Err(CarrierError::DuplicateLabel("a".into())));
        let c = Carrier::with_unique_labels(vec!["a".into(), "a".into(), "a'".into()]);
        assert_eq!(c.labels(), ["a", "a'", "a''"]);
    }

    #[test]
    fn check_poset_examples() {
        assert!(check_poset(&Carrier::standard(1), &Relation::identity(1)).is_ok());
        let sym = rel(2, &[(0, 1), (1, 0)]);
        assert_eq!(check_poset(&Carrier::standard(2), &sym), Err(Violation::Antisymmetry { a: 0, b: 1 }));
        assert!(check_poset(&Carrier::standard(2), &rel(2, &[(0, 1)])).is_ok());
        let missing = Relation::from_pairs(2, [(0, 0)]);
        assert_eq!(check_poset(&Carrier::standard(2), &missing), Err(Violation::Reflexivity { element: 1 }));
        let intrans = rel(3, &[(0, 1), (1, 2)]);
        assert_eq!(
            check_poset(&Carrier::standard(3), &intrans),
            Err(Violation::Transitivity { a: 0, b: 1, c: 2 })
        );
    }

    #[test]
    fn symmetrize_examples() {
        assert_eq!(Poset::chain(3).symmetrize(), Relation::identity(3));
        let nabla = Preorder::new(Carrier::standard(2), Relation::full(2)).unwrap();
        assert_eq!(nabla.symmetrize(), Relation::full(2));
        // a ≼ b, b ≼ a, both below c
        let p = Preorder::generated_by(Carrier::standard(3), &rel(3, &[(0, 1), (1, 0), (1, 2)]));
        assert_eq!(p.symmetrize(), rel(3, &[(0, 1), (1, 0)]));
    }

    #[test]
    fn opposite_examples() {
        let c = Poset::chain(2);
        assert!(c.opposite().le(1, 0) && !c.opposite().le(0, 1));
        assert_eq!(Poset::antichain(3).opposite(), Poset::antichain(3));
        // N: a<c, b<c, b<d
        let n = Poset::new(Carrier::standard(4), rel(4, &[(0, 2), (1, 2), (1, 3)])).unwrap();
        let expected = Poset::new(Carrier::standard(4), rel(4, &[(2, 0), (2, 1), (3, 1)])).unwrap();
        assert_eq!(n.opposite(), expected);
        assert_eq!(n.opposite().opposite(), n);
    }

    fn diamond() -> Poset {
        // bot=a, m1=b, m2=c, top=d
        let r = rel(4, &[(0, 1), (0, 2), (0, 3), (1, 3), (2, 3)]);
        Poset::new(Carrier::new(["bot", "m1", "m2", "top"]).unwrap(), r).unwrap()
    }

    #[test]
    fn closures() {
        let c = Poset::chain(2);
        assert_eq!(c.down_closure(&BitSet::from_indices(2, [1])), BitSet::full(2));
        assert!(c.down_closure(&BitSet::new(2)).is_empty());
        let d = diamond();
        assert_eq!(d.down_closure(&BitSet::from_indices(4, [1, 2])), BitSet::from_indices(4, [0, 1, 2]));
        assert_eq!(d.up_closure(&BitSet::from_indices(4, [1])), BitSet::from_indices(4, [1, 3]));
    }

    #[test]
    fn classify_examples() {
        let c = Poset::chain(2);
        let id = MonotoneMap::identity(c.clone());
        assert_eq!(classify_map(&id), MapClass { is_monotone: true, is_surjective: true, is_order_embedding: true });
        let k = MonotoneMap::new(c.clone(), Poset::chain(1), vec![0, 0]).unwrap();
        assert_eq!(classify_map(&k), MapClass { is_monotone: true, is_surjective: true, is_order_embedding: false });
        let inc = MonotoneMap::new(Poset::antichain(2), c.clone(), vec![0, 1]).unwrap();
        let class = classify_map(&inc);
        assert!(class.is_monotone && inc.is_injective() && !class.is_order_embedding);
        assert_eq!(inc.embedding_violation(), Some((0, 1)));
    }

    #[test]
    fn non_monotone_rejected() {
        let c = Poset::chain(2);
        assert_eq!(MonotoneMap::new(c.clone(), c, vec![1, 0]), Err(MapError::NotMonotone { x: 0, y: 1 }));
    }

    #[test]
    fn covering_examples() {
        assert_eq!(covering_relation(&Poset::chain(3)), Relation::from_pairs(3, [(0, 1), (1, 2)]));
        assert!(covering_relation(&Poset::antichain(3)).is_empty());
        let cov = covering_relation(&diamond());
        assert_eq!(cov, Relation::from_pairs(4, [(0, 1), (0, 2), (1, 3), (2, 3)]));
    }

    #[test]
    fn topology_is_vacuous() {
        let c = Poset::chain(2);
        assert!(c.is_closed() && c.carrier().is_compact_hausdorff());
        assert!(MonotoneMap::identity(c).is_continuous());
    }
}
