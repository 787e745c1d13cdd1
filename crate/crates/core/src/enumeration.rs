//! Exhaustive generators over small carriers, plus independent brute-force oracles
//! used to cross-check them.
//!
//! The generators extend a closed relation one off-diagonal pair at a time, either
//! excluding the pair for good or adding it and re-closing. Every transitive
//! extension is reached by exactly one sequence of decisions, so the output has no
//! duplicates and a fixed order.

use std::collections::HashSet;

use thiserror::Error;

use crate::bits::{BitSet, Relation};
use crate::canon::{canonical_form, find_isomorphism};
use crate::constructions::{
    coproduct, coproduct_relation, reflect, require_embedding, ConstructionError, PushoutResult,
};
use crate::corelation::{is_equivalence_corelation, CoRelation};
use crate::order::{Carrier, MonotoneMap, Poset, Preorder};

/// Largest carrier on which pre-orders are enumerated (`< 10^7` labeled pre-orders).
pub const MAX_PREORDER_POINTS: usize = 7;
/// Largest base poset for co-relation enumeration (`X + X` must fit the pre-order bound).
pub const MAX_CORELATION_BASE: usize = MAX_PREORDER_POINTS / 2;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error("budget exceeded: {what} needs {requested} points, limit is {limit}")]
    BudgetExceeded { what: &'static str, requested: usize, limit: usize },
}

fn within(what: &'static str, requested: usize, limit: usize) -> Result<(), EnumerationError> {
    if requested > limit {
        Err(EnumerationError::BudgetExceeded { what, requested, limit })
    } else {
        Ok(())
    }
}

/// Bounds and knobs for an exhaustive run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationBudget {
    pub max_n: usize,
    pub labeled: bool,
    pub dedupe_iso: bool,
    /// Worker count; `1` keeps all parallel iterators on a single worker.
    pub parallelism: usize,
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        EnumerationBudget { max_n: 3, labeled: true, dedupe_iso: false, parallelism: 1 }
    }
}

impl EnumerationBudget {
    pub fn with_max_n(max_n: usize) -> Self {
        EnumerationBudget { max_n, ..Default::default() }
    }

    /// Runs `f` on a pool of `parallelism` workers.
    pub fn install<R: Send>(&self, f: impl FnOnce() -> R + Send) -> R {
        match rayon::ThreadPoolBuilder::new().num_threads(self.parallelism.max(1)).build() {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        }
    }
}

/// Calls `visit` on every transitive relation containing `base` (which must already be
/// reflexive and transitive); with `antisymmetric`, only on antisymmetric ones.
pub fn visit_transitive_extensions(base: &Relation, antisymmetric: bool, visit: &mut impl FnMut(&Relation)) {
    let n = base.size();
    let free: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| i != j && !base.contains(i, j))
        .collect();
    let mut excluded = Relation::empty(n);
    extend(&free, 0, base.clone(), &mut excluded, antisymmetric, visit);
}

fn extend(
    free: &[(usize, usize)],
    k: usize,
    rel: Relation,
    excluded: &mut Relation,
    antisymmetric: bool,
    visit: &mut impl FnMut(&Relation),
) {
    let Some(&(i, j)) = free.get(k) else {
        visit(&rel);
        return;
    };
    if rel.contains(i, j) {
        extend(free, k + 1, rel, excluded, antisymmetric, visit);
        return;
    }
    excluded.insert(i, j);
    extend(free, k + 1, rel.clone(), excluded, antisymmetric, visit);
    excluded.remove(i, j);

    let mut grown = rel;
    grown.insert_closed(i, j);
    if grown.intersects(excluded) {
        return;
    }
    if antisymmetric && grown.antisymmetry_violation().is_some() {
        return;
    }
    extend(free, k + 1, grown, excluded, antisymmetric, visit);
}

/// All partial orders on `n` standard labels; with `labeled = false`, one per
/// isomorphism class (the first one generated).
pub fn enumerate_posets(n: usize, labeled: bool) -> Result<Vec<Poset>, EnumerationError> {
    within("poset enumeration", n, MAX_PREORDER_POINTS)?;
    let carrier = Carrier::standard(n);
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    visit_transitive_extensions(&Relation::identity(n), true, &mut |r| {
        if labeled || seen.insert(canonical_form(r).0) {
            out.push(Poset::new_unchecked(carrier.clone(), r.clone()));
        }
    });
    Ok(out)
}

/// All posets with at most `max_n` points, by increasing size.
pub fn enumerate_posets_up_to(max_n: usize, labeled: bool) -> Result<Vec<Poset>, EnumerationError> {
    let mut all = Vec::new();
    for n in 0..=max_n {
        all.extend(enumerate_posets(n, labeled)?);
    }
    Ok(all)
}

/// `Preo(X)`: every pre-order on the carrier of `p` that extends its order.
pub fn enumerate_preorders_extending(p: &Poset) -> Result<Vec<Preorder>, EnumerationError> {
    within("pre-order enumeration", p.len(), MAX_PREORDER_POINTS)?;
    let mut out = Vec::new();
    visit_transitive_extensions(p.relation(), false, &mut |r| {
        out.push(Preorder::new_unchecked(p.carrier().clone(), r.clone()));
    });
    Ok(out)
}

/// Equivalence co-relations on `p`, plus how many pre-orders on `X + X` were examined.
#[derive(Debug, Clone)]
pub struct CoRelationScan {
    pub corelations: Vec<CoRelation>,
    pub preorders_scanned: usize,
}

/// Visits every pre-order on `X + X` that extends the coproduct order.
pub fn visit_doubled_preorders(p: &Poset, visit: &mut impl FnMut(&Relation)) -> Result<(), EnumerationError> {
    within("co-relation enumeration", p.len(), MAX_CORELATION_BASE)?;
    let base = coproduct_relation(p.relation(), p.relation());
    visit_transitive_extensions(&base, false, visit);
    Ok(())
}

/// Every pre-order on `X + X` extending the coproduct order that passes the
/// equivalence co-relation conditions.
pub fn enumerate_corelations(p: &Poset) -> Result<CoRelationScan, EnumerationError> {
    let mut corelations = Vec::new();
    let mut preorders_scanned = 0;
    visit_doubled_preorders(p, &mut |r| {
        preorders_scanned += 1;
        let c = CoRelation::new_unchecked(p.clone(), r.clone());
        if is_equivalence_corelation(&c).is_ok() {
            corelations.push(c);
        }
    })?;
    Ok(CoRelationScan { corelations, preorders_scanned })
}

/// All monotone maps `dom → cod`, tables in lexicographic order.
pub fn monotone_maps(dom: &Poset, cod: &Poset) -> Vec<MonotoneMap> {
    let (n, m) = (dom.len(), cod.len());
    let mut out = Vec::new();
    let mut table = vec![0; n];
    fn go(dom: &Poset, cod: &Poset, k: usize, table: &mut Vec<usize>, out: &mut Vec<MonotoneMap>) {
        if k == dom.len() {
            out.push(MonotoneMap::new_unchecked(dom.preorder().clone(), cod.preorder().clone(), table.clone()));
            return;
        }
        for y in 0..cod.len() {
            let ok = (0..k).all(|x| {
                (!dom.le(x, k) || cod.le(table[x], y)) && (!dom.le(k, x) || cod.le(y, table[x]))
            });
            if ok {
                table[k] = y;
                go(dom, cod, k + 1, table, out);
            }
        }
    }
    if n == 0 || m > 0 {
        go(dom, cod, 0, &mut table, &mut out);
    }
    out
}

pub fn monotone_surjections(dom: &Poset, cod: &Poset) -> Vec<MonotoneMap> {
    monotone_maps(dom, cod).into_iter().filter(MonotoneMap::is_surjective).collect()
}

pub fn order_embeddings(dom: &Poset, cod: &Poset) -> Vec<MonotoneMap> {
    monotone_maps(dom, cod).into_iter().filter(|f| f.embedding_violation().is_none()).collect()
}

/// Pushout of order-embeddings computed the slow way: close the coproduct order of
/// `Y0 + Y1` together with `f0(x) ≼ f1(x) ≼ f0(x)` under transitivity, then reflect.
/// This is the smallest pre-order making both insertions monotone and identifying the
/// two images of `X`; no gluing classes or crossing formula are used.
pub fn brute_force_pushout(f0: &MonotoneMap, f1: &MonotoneMap) -> Result<PushoutResult, ConstructionError> {
    if f0.dom() != f1.dom() {
        return Err(ConstructionError::Mismatch("pushout: the two maps have different domains"));
    }
    require_embedding(f0, "f0")?;
    require_embedding(f1, "f1")?;
    let (y0, y1) = match (f0.cod_poset(), f1.cod_poset()) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(ConstructionError::Mismatch("pushout: codomains must be posets")),
    };
    let sum = coproduct(&y0, &y1);
    let n0 = y0.len();
    let mut rel = sum.poset.relation().clone();
    for x in 0..f0.dom().len() {
        rel.insert(f0.apply(x), n0 + f1.apply(x));
        rel.insert(n0 + f1.apply(x), f0.apply(x));
    }
    let pre = Preorder::generated_by(sum.poset.carrier().clone(), &rel);
    let (apex, rho) = reflect(&pre);
    let through = |inj: &MonotoneMap| inj.table().iter().map(|&k| rho.apply(k)).collect::<Vec<_>>();
    let ins0 = MonotoneMap::new(y0, apex.clone(), through(&sum.inj0))?;
    let ins1 = MonotoneMap::new(y1, apex.clone(), through(&sum.inj1))?;
    Ok(PushoutResult::from_insertions(apex, ins0, ins1))
}

/// Checks two pushouts of the same cospan are isomorphic compatibly with the insertions.
///
/// Since the insertions are jointly surjective, the comparison map is forced:
/// `h(a.ins_i(w)) = b.ins_i(w)`. It must be well defined, bijective and an order
/// isomorphism; the apexes must also share a canonical form.
pub fn compare_pushouts(a: &PushoutResult, b: &PushoutResult) -> Result<(), String> {
    let m = a.apex.len();
    if b.apex.len() != m {
        return Err(format!("apex sizes differ: {} vs {}", m, b.apex.len()));
    }
    if canonical_form(a.apex.relation()).0 != canonical_form(b.apex.relation()).0 {
        return Err("apexes are not isomorphic".into());
    }
    let mut h = vec![usize::MAX; m];
    for (ia, ib) in [(&a.ins0, &b.ins0), (&a.ins1, &b.ins1)] {
        for w in 0..ia.dom().len() {
            let (p, q) = (ia.apply(w), ib.apply(w));
            if h[p] != usize::MAX && h[p] != q {
                return Err(format!("insertions disagree at {}", a.apex.carrier().label(p)));
            }
            h[p] = q;
        }
    }
    if h.contains(&usize::MAX) {
        return Err("insertions are not jointly surjective".into());
    }
    if BitSet::from_indices(m, h.iter().copied()).count() != m {
        return Err("comparison map is not injective".into());
    }
    for u in 0..m {
        for v in 0..m {
            if a.apex.le(u, v) != b.apex.le(h[u], h[v]) {
                let l = |k: usize| a.apex.carrier().label(k).to_string();
                return Err(format!("comparison map is not an order isomorphism at ({}, {})", l(u), l(v)));
            }
        }
    }
    Ok(())
}

/// Filter-based counting, independent of the generators above: plain boolean matrices,
/// every reflexive relation tried, axioms checked by direct triple loops.
pub mod oracle {
    use std::collections::HashSet;

    type Matrix = Vec<Vec<bool>>;

    fn relation_from_mask(n: usize, mask: u64) -> Matrix {
        let mut m = vec![vec![false; n]; n];
        let mut bit = 0;
        for (i, row) in m.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                if i == j {
                    *cell = true;
                } else {
                    *cell = mask >> bit & 1 == 1;
                    bit += 1;
                }
            }
        }
        m
    }

    fn transitive(m: &Matrix) -> bool {
        let n = m.len();
        (0..n).all(|a| (0..n).all(|b| !m[a][b] || (0..n).all(|c| !m[b][c] || m[a][c])))
    }

    fn antisymmetric(m: &Matrix) -> bool {
        let n = m.len();
        (0..n).all(|a| (0..n).all(|b| a == b || !(m[a][b] && m[b][a])))
    }

    fn reflexive_relations(n: usize) -> impl Iterator<Item = Matrix> {
        let free = n * n.saturating_sub(1);
        assert!(free < 32, "oracle limited to n <= 5");
        (0..1u64 << free).map(move |mask| relation_from_mask(n, mask))
    }

    /// Labeled partial orders on `n` points.
    pub fn posets(n: usize) -> Vec<Matrix> {
        reflexive_relations(n).filter(|m| transitive(m) && antisymmetric(m)).collect()
    }

    pub fn count_posets(n: usize) -> usize {
        reflexive_relations(n).filter(|m| transitive(m) && antisymmetric(m)).count()
    }

    pub fn count_preorders(n: usize) -> usize {
        reflexive_relations(n).filter(transitive).count()
    }

    fn closure(mut m: Matrix) -> Matrix {
        let n = m.len();
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if m[i][k] && m[k][j] {
                        m[i][j] = true;
                    }
                }
            }
        }
        m
    }

    /// Distinct closures of `base ∪ S` over all sets `S` of pairs outside `base`.
    pub fn preorders_extending(base: &[Vec<bool>]) -> HashSet<Matrix> {
        let n = base.len();
        let free: Vec<(usize, usize)> =
            (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|&(i, j)| !base[i][j]).collect();
        assert!(free.len() < 24, "closure oracle limited to 23 free pairs");
        let mut out = HashSet::new();
        for mask in 0..1u64 << free.len() {
            let mut m = base.to_vec();
            for (b, &(i, j)) in free.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    m[i][j] = true;
                }
            }
            out.insert(closure(m));
        }
        out
    }

    /// Isomorphism classes by pairwise search against class representatives.
    pub fn count_unlabeled_posets(n: usize) -> usize {
        let all = posets(n);
        let mut reps: Vec<Matrix> = Vec::new();
        for m in all {
            if !reps.iter().any(|r| isomorphic(r, &m)) {
                reps.push(m);
            }
        }
        reps.len()
    }

    fn isomorphic(a: &Matrix, b: &Matrix) -> bool {
        let n = a.len();
        let mut perm: Vec<usize> = (0..n).collect();
        loop {
            if (0..n).all(|i| (0..n).all(|j| a[i][j] == b[perm[i]][perm[j]])) {
                return true;
            }
            if !next_permutation(&mut perm) {
                return false;
            }
        }
    }

    fn next_permutation(p: &mut [usize]) -> bool {
        let n = p.len();
        if n < 2 {
            return false;
        }
        let mut i = n - 1;
        while i > 0 && p[i - 1] >= p[i] {
            i -= 1;
        }
        if i == 0 {
            return false;
        }
        let mut j = n - 1;
        while p[j] <= p[i - 1] {
            j -= 1;
        }
        p.swap(i - 1, j);
        p[i..].reverse();
        true
    }
}

/// Converts a relation to the oracle's matrix form.
pub fn to_matrix(r: &Relation) -> Vec<Vec<bool>> {
    (0..r.size()).map(|i| (0..r.size()).map(|j| r.contains(i, j)).collect()).collect()
}

/// Unlabeled isomorphism test used for cross-checks.
pub fn posets_isomorphic(a: &Poset, b: &Poset) -> bool {
    find_isomorphism(a.relation(), b.relation()).is_some()
}
