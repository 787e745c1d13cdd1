//! Exhaustive verification runs, one per registered statement.
//!
//! Each run enumerates every instance within the budget, checks the statement on
//! it, and collects failures. Work is split per base poset (or per cospan) and
//! merged in enumeration order, so reports do not depend on the worker count.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::{BitSet, Relation};
use crate::canon::{canonical_form, find_isomorphism};
use crate::constructions::{
    cokernel_pair_via_formula, cokernel_pair_via_pushout, equalizer, factor_through, preorder_of_map,
    pushout_embeddings, quotient_of_preorder, ConstructionError, Factorization, QuotientObject, Tag,
};
use crate::corelation::{
    corelation_of_subset, is_coreflexive, is_cotransitive, is_effective, is_equivalence_corelation,
    maximal_witness, phi, CoRelation, CotransitivityFailure, Tagged, TaggedPair,
};
use crate::duality::{dual_map, dual_poset, is_priestley, separate, upset_lattice};
use crate::enumeration::{
    brute_force_pushout, compare_pushouts, enumerate_corelations, enumerate_posets, enumerate_posets_up_to,
    enumerate_preorders_extending, monotone_maps, monotone_surjections, oracle, order_embeddings,
    visit_doubled_preorders, EnumerationBudget, EnumerationError, MAX_CORELATION_BASE,
};
use crate::io::{poset_json, CoRelationJson, PreorderJson};
use crate::order::{classify_map, MonotoneMap, Poset};

/// A registered statement with its default and maximum size bound.
#[derive(Debug, Clone, Copy)]
pub struct TheoremInfo {
    pub id: &'static str,
    pub statement: &'static str,
    pub default_max_n: usize,
    pub max_n_limit: usize,
}

pub const MANIFEST: &[TheoremInfo] = &[
    TheoremInfo {
        id: "effectiveness",
        statement: "every equivalence co-relation on a finite poset is effective",
        default_max_n: 3,
        max_n_limit: MAX_CORELATION_BASE,
    },
    TheoremInfo {
        id: "subset_bijection",
        statement: "equivalence co-relations on X correspond to subsets of X via Φ and Y ↦ ≼^Y",
        default_max_n: 3,
        max_n_limit: MAX_CORELATION_BASE,
    },
    TheoremInfo {
        id: "preo_quot",
        statement: "pre-orders extending ≤_X correspond to quotient objects of X",
        default_max_n: 3,
        max_n_limit: 4,
    },
    TheoremInfo {
        id: "pushout_theta",
        statement: "pushouts of order-embeddings are given by Θ = Θ′ ∪ Θ″ followed by reflection",
        default_max_n: 3,
        max_n_limit: 3,
    },
    TheoremInfo {
        id: "cokernel_pair",
        statement: "≼^Y is the pre-order of the pushout of Y ↪ X along itself",
        default_max_n: 3,
        max_n_limit: 5,
    },
    TheoremInfo {
        id: "counting",
        statement: "generator counts of labeled posets, pre-orders and unlabeled posets match filter oracles",
        default_max_n: 4,
        max_n_limit: 5,
    },
    TheoremInfo {
        id: "birkhoff",
        statement: "up-set lattices and join-irreducibles are mutually inverse; dual maps compose contravariantly",
        default_max_n: 5,
        max_n_limit: 5,
    },
    TheoremInfo {
        id: "separation",
        statement: "the 2-chain separates points: x ≰ y gives a monotone f with f(x)=1, f(y)=0",
        default_max_n: 5,
        max_n_limit: 6,
    },
    TheoremInfo {
        id: "negative_controls",
        statement: "known non-examples fail the co-reflexivity, co-transitivity and effectiveness checks",
        default_max_n: 3,
        max_n_limit: 3,
    },
];

pub fn theorem_info(id: &str) -> Option<&'static TheoremInfo> {
    MANIFEST.iter().find(|t| t.id == id)
}

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("unknown theorem id {0:?}; known ids: {}", MANIFEST.iter().map(|t| t.id).collect::<Vec<_>>().join(", "))]
    UnknownTheorem(String),
    #[error("max-n {requested} exceeds the limit {limit} for {id}")]
    BudgetTooLarge { id: &'static str, requested: usize, limit: usize },
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub poset: Option<PreorderJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub corelation: Option<CoRelationJson>,
    pub axiom: String,
    pub witness: String,
}

impl Failure {
    fn on(poset: &Poset, axiom: &str, witness: impl Into<String>) -> Self {
        Failure { poset: Some(poset_json(poset)), corelation: None, axiom: axiom.into(), witness: witness.into() }
    }

    fn on_corelation(c: &CoRelation, axiom: &str, witness: impl Into<String>) -> Self {
        Failure {
            poset: Some(poset_json(c.base())),
            corelation: Some(CoRelationJson::from_corelation(c)),
            axiom: axiom.into(),
            witness: witness.into(),
        }
    }

    fn bare(axiom: &str, witness: impl Into<String>) -> Self {
        Failure { poset: None, corelation: None, axiom: axiom.into(), witness: witness.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BudgetJson {
    pub max_n: usize,
    pub labeled: bool,
    pub dedupe_iso: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub theorem_id: String,
    pub budget: BudgetJson,
    pub instances: u64,
    /// Named instance counts, e.g. `posets_checked` and `corelations_checked`.
    pub counts: BTreeMap<String, u64>,
    pub failures: Vec<Failure>,
    /// Wall-clock time; clear it to make reports byte-reproducible.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Per-chunk tally, merged by addition and concatenation.
#[derive(Debug, Default)]
struct Tally {
    counts: BTreeMap<String, u64>,
    failures: Vec<Failure>,
}

impl Tally {
    fn add(&mut self, key: &str, by: u64) {
        *self.counts.entry(key.to_string()).or_default() += by;
    }

    fn fail(&mut self, f: Failure) {
        self.failures.push(f);
    }

    fn merge(mut self, other: Tally) -> Tally {
        for (k, v) in other.counts {
            *self.counts.entry(k).or_default() += v;
        }
        self.failures.extend(other.failures);
        self
    }
}

fn merge_all(parts: Vec<Tally>) -> Tally {
    parts.into_iter().fold(Tally::default(), Tally::merge)
}

/// Runs the exhaustive suite registered under `theorem_id`.
pub fn verify(theorem_id: &str, budget: &EnumerationBudget) -> Result<VerificationReport, VerifyError> {
    let info = theorem_info(theorem_id).ok_or_else(|| VerifyError::UnknownTheorem(theorem_id.to_string()))?;
    if budget.max_n > info.max_n_limit {
        return Err(VerifyError::BudgetTooLarge { id: info.id, requested: budget.max_n, limit: info.max_n_limit });
    }
    let start = Instant::now();
    let n = budget.max_n;
    let (tally, instances_key) = budget.install(|| -> Result<(Tally, &'static str), VerifyError> {
        Ok(match info.id {
            "effectiveness" => (check_effectiveness(n)?, "corelations_checked"),
            "subset_bijection" => (check_subset_bijection(n)?, "corelations_checked"),
            "preo_quot" => (check_preo_quot(n)?, "preorders_checked"),
            "pushout_theta" => (check_pushouts(n)?, "cospans_checked"),
            "cokernel_pair" => (check_cokernel_pairs(n)?, "subsets_checked"),
            "counting" => (check_counting(n)?, "sequences_checked"),
            "birkhoff" => (check_birkhoff(n)?, "posets_checked"),
            "separation" => (check_separation(n)?, "pairs_checked"),
            "negative_controls" => (check_negative_controls(), "controls_checked"),
            _ => unreachable!("manifest ids are exhaustive"),
        })
    })?;
    Ok(VerificationReport {
        theorem_id: info.id.to_string(),
        budget: BudgetJson {
            max_n: budget.max_n,
            labeled: budget.labeled,
            dedupe_iso: budget.dedupe_iso,
        },
        instances: tally.counts.get(instances_key).copied().unwrap_or(0),
        counts: tally.counts,
        failures: tally.failures,
        elapsed_ms: Some(start.elapsed().as_millis() as u64),
    })
}

fn per_poset(max_n: usize, f: impl Fn(&Poset) -> Result<Tally, VerifyError> + Sync + Send) -> Result<Tally, VerifyError> {
    let posets = enumerate_posets_up_to(max_n, true)?;
    let parts: Vec<Tally> = posets.par_iter().map(f).collect::<Result<_, _>>()?;
    let mut t = merge_all(parts);
    t.add("posets_checked", posets.len() as u64);
    Ok(t)
}

fn check_effectiveness(max_n: usize) -> Result<Tally, VerifyError> {
    per_poset(max_n, |x| {
        let mut t = Tally::default();
        let scan = enumerate_corelations(x)?;
        t.add("preorders_scanned", scan.preorders_scanned as u64);
        t.add("corelations_checked", scan.corelations.len() as u64);
        for c in &scan.corelations {
            match is_effective(c) {
                Ok(cert) if cert.validate(c) => {}
                Ok(_) => t.fail(Failure::on_corelation(c, "certificate", "certificate failed re-validation")),
                Err(p) => t.fail(Failure::on_corelation(c, "effectiveness", c.render_pair(p))),
            }
            // the maximal element of Ω must itself be a certificate witness
            for p in c.cross_pairs() {
                t.add("maximal_witnesses_checked", 1);
                if let Err(e) = maximal_witness(c, p.from.point, p.to.point, p.from.tag) {
                    t.fail(Failure::on_corelation(c, "maximal_witness", e.to_string()));
                }
            }
        }
        Ok(t)
    })
}

fn check_subset_bijection(max_n: usize) -> Result<Tally, VerifyError> {
    per_poset(max_n, |x| {
        let mut t = Tally::default();
        let n = x.len();
        let subsets: Vec<BitSet> = (0..1u64 << n).map(|m| BitSet::from_mask(n, m)).collect();
        let images: Vec<CoRelation> = subsets.iter().map(|y| corelation_of_subset(x, y)).collect();
        let scan = enumerate_corelations(x)?;
        t.add("corelations_checked", scan.corelations.len() as u64);
        t.add("subsets_checked", subsets.len() as u64);
        if scan.corelations.len() != subsets.len() {
            t.fail(Failure::on(x, "count", format!("{} co-relations for {} subsets", scan.corelations.len(), subsets.len())));
        }
        for (y, c) in subsets.iter().zip(&images) {
            if is_equivalence_corelation(c).is_err() {
                t.fail(Failure::on_corelation(c, "image_is_equivalence", x.carrier().render_subset(y)));
            }
            if phi(c) != *y {
                t.fail(Failure::on_corelation(c, "phi_after_subset", x.carrier().render_subset(y)));
            }
        }
        let image_set: HashSet<&CoRelation> = images.iter().collect();
        for c in &scan.corelations {
            if corelation_of_subset(x, &phi(c)) != *c {
                t.fail(Failure::on_corelation(c, "subset_after_phi", x.carrier().render_subset(&phi(c))));
            }
            if !image_set.contains(c) {
                t.fail(Failure::on_corelation(c, "not_an_image", "co-relation is not ≼^Y for any Y"));
            }
            if let Some(p) = same_tag_law_violation(c) {
                t.fail(Failure::on_corelation(c, "same_tag_law", c.render_pair(p)));
            }
        }
        for (a, ya) in subsets.iter().enumerate() {
            for (b, yb) in subsets.iter().enumerate() {
                t.add("order_pairs_checked", 1);
                if ya.is_subset(yb) != images[a].is_subrelation_of(&images[b]) {
                    t.fail(Failure::on(
                        x,
                        "order_isomorphism",
                        format!("{} vs {}", x.carrier().render_subset(ya), x.carrier().render_subset(yb)),
                    ));
                }
            }
        }
        // ≼^{Φ(≼)} ⊆ ≼ for every pre-order extending the coproduct order
        let mut failures = Vec::new();
        let mut scanned = 0u64;
        visit_doubled_preorders(x, &mut |r| {
            scanned += 1;
            // Φ read off the relation directly; images[m] is ≼^Y for the subset with mask m
            let mask = (0..n).filter(|&a| r.contains(a, n + a) && r.contains(n + a, a)).fold(0u64, |m, a| m | 1 << a);
            if !images[mask as usize].relation().is_subset(r) {
                let c = CoRelation::new_unchecked(x.clone(), r.clone());
                failures.push(Failure::on_corelation(&c, "phi_inclusion", "≼^Φ(≼) is not contained in ≼"));
            }
        })?;
        t.add("preorders_scanned", scanned);
        t.failures.extend(failures);
        Ok(t)
    })
}

/// `(x,i) ≼ (y,i) ⟺ x ≤ y`.
fn same_tag_law_violation(c: &CoRelation) -> Option<TaggedPair> {
    let x = c.base();
    for i in Tag::BOTH {
        for a in 0..x.len() {
            for b in 0..x.len() {
                let (u, v) = (Tagged::new(a, i), Tagged::new(b, i));
                if c.le(u, v) != x.le(a, b) {
                    return Some(TaggedPair { from: u, to: v });
                }
            }
        }
    }
    None
}

fn check_preo_quot(max_n: usize) -> Result<Tally, VerifyError> {
    let codomains = enumerate_posets_up_to(max_n, true)?;
    per_poset(max_n, |x| {
        let mut t = Tally::default();
        let preorders = enumerate_preorders_extending(x)?;
        t.add("preorders_checked", preorders.len() as u64);
        let quotients: Vec<(QuotientObject, MonotoneMap)> = preorders
            .iter()
            .map(|q| {
                let q = QuotientObject::new(x.clone(), q.clone()).expect("enumerated pre-orders extend ≤_X");
                let (_, rho) = quotient_of_preorder(&q);
                (q, rho)
            })
            .collect();
        for (q, rho) in &quotients {
            match preorder_of_map(rho) {
                Ok(back) if back == *q => {}
                Ok(_) => t.fail(Failure::on(x, "preorder_round_trip", format!("{:?}", q.preorder()))),
                Err(e) => t.fail(Failure::on(x, "preorder_round_trip", e.to_string())),
            }
        }
        // ρ1 factors through ρ2 exactly when ≼_2 ⊆ ≼_1
        for (q1, rho1) in &quotients {
            for (q2, rho2) in &quotients {
                t.add("order_pairs_checked", 1);
                let factors = matches!(factor_through(rho2, rho1), Ok(Factorization::Through(_)));
                if factors != q1.is_below(q2) {
                    t.fail(Failure::on(x, "reverse_inclusion", format!("{:?} vs {:?}", q1.preorder(), q2.preorder())));
                }
            }
        }
        for y in codomains.iter().filter(|y| y.len() <= x.len()) {
            for f in monotone_surjections(x, y) {
                t.add("surjections_checked", 1);
                if let Err(w) = surjection_round_trip(&f) {
                    t.fail(Failure::on(x, "quotient_round_trip", format!("{:?}: {w}", f)));
                }
            }
        }
        Ok(t)
    })
}

/// `quotient_of_preorder(≼_f)` is isomorphic to `f` over `X`.
fn surjection_round_trip(f: &MonotoneMap) -> Result<(), String> {
    let q = preorder_of_map(f).map_err(|e| e.to_string())?;
    let (_, rho) = quotient_of_preorder(&q);
    match factor_through(&rho, f).map_err(|e| e.to_string())? {
        Factorization::Through(g) => {
            let class = classify_map(&g);
            if class.is_surjective && class.is_order_embedding {
                Ok(())
            } else {
                Err("comparison map is not an isomorphism".into())
            }
        }
        Factorization::Blocked { x, y } => Err(format!("no comparison map, blocked at ({x}, {y})")),
    }
}

fn check_pushouts(max_n: usize) -> Result<Tally, VerifyError> {
    let posets = enumerate_posets_up_to(max_n, true)?;
    let parts: Vec<Tally> = posets
        .par_iter()
        .map(|x| {
            let mut t = Tally::default();
            for y0 in posets.iter().filter(|y| y.len() >= x.len()) {
                let emb0 = order_embeddings(x, y0);
                if emb0.is_empty() {
                    continue;
                }
                for y1 in posets.iter().filter(|y| y.len() >= x.len()) {
                    let emb1 = order_embeddings(x, y1);
                    for f0 in &emb0 {
                        for f1 in &emb1 {
                            t.add("cospans_checked", 1);
                            check_cospan(f0, f1, &mut t);
                        }
                    }
                }
            }
            t
        })
        .collect();
    let mut t = merge_all(parts);
    t.add("posets_checked", posets.len() as u64);
    Ok(t)
}

fn check_cospan(f0: &MonotoneMap, f1: &MonotoneMap, t: &mut Tally) {
    let describe = || format!("f0 = {:?}, f1 = {:?}", f0, f1);
    let theta = match pushout_embeddings(f0, f1) {
        Ok(po) => po,
        Err(e @ ConstructionError::ThetaNotTransitive { .. }) => {
            t.fail(Failure::bare("theta_transitivity", format!("{}: {e}", describe())));
            return;
        }
        Err(e) => {
            t.fail(Failure::bare("pushout", format!("{}: {e}", describe())));
            return;
        }
    };
    let oracle = match brute_force_pushout(f0, f1) {
        Ok(po) => po,
        Err(e) => {
            t.fail(Failure::bare("brute_force_pushout", format!("{}: {e}", describe())));
            return;
        }
    };
    if let Err(w) = compare_pushouts(&theta, &oracle) {
        t.fail(Failure::bare("pushout_agreement", format!("{}: {w}", describe())));
    }
    let commutes = (0..f0.dom().len()).all(|x| theta.ins0.apply(f0.apply(x)) == theta.ins1.apply(f1.apply(x)));
    if !commutes {
        t.fail(Failure::bare("pushout_commutes", describe()));
    }
    for (name, ins) in [("ins0", &theta.ins0), ("ins1", &theta.ins1)] {
        if !classify_map(ins).is_order_embedding {
            t.fail(Failure::bare("embedding_stability", format!("{}: {name} is not an order-embedding", describe())));
        }
    }
}

fn check_cokernel_pairs(max_n: usize) -> Result<Tally, VerifyError> {
    per_poset(max_n, |x| {
        let mut t = Tally::default();
        let n = x.len();
        for mask in 0..1u64 << n {
            t.add("subsets_checked", 1);
            let y = BitSet::from_mask(n, mask);
            let (sub, incl) = x.induced_poset(&y);
            let k = MonotoneMap::new(sub, x.clone(), incl).expect("inclusion is monotone");
            let witness = x.carrier().render_subset(&y);
            match (cokernel_pair_via_pushout(&k), cokernel_pair_via_formula(&k)) {
                (Ok(a), Ok(b)) if a == b => {}
                (Ok(_), Ok(_)) => t.fail(Failure::on(x, "cokernel_routes", witness.clone())),
                (Err(e), _) | (_, Err(e)) => t.fail(Failure::on(x, "cokernel_pair", format!("{witness}: {e}"))),
            }
            // the equaliser of the two insertions recovers Y
            match pushout_embeddings(&k, &k).and_then(|po| equalizer(&po.ins0, &po.ins1)) {
                Ok(e) if e.table() == k.table() => {}
                Ok(_) => t.fail(Failure::on(x, "equalizer_recovers_subset", witness)),
                Err(e) => t.fail(Failure::on(x, "equalizer", format!("{witness}: {e}"))),
            }
        }
        Ok(t)
    })
}

/// Reference sequences for n = 0..=5.
pub const LABELED_POSETS: [u64; 6] = [1, 1, 3, 19, 219, 4231];
pub const LABELED_PREORDERS: [u64; 6] = [1, 1, 4, 29, 355, 6942];
pub const UNLABELED_POSETS: [u64; 6] = [1, 1, 2, 5, 16, 63];

fn check_counting(max_n: usize) -> Result<Tally, VerifyError> {
    let rows: Vec<Result<Tally, VerifyError>> = (0..=max_n)
        .into_par_iter()
        .map(|n| {
            let mut t = Tally::default();
            let gen_posets = enumerate_posets(n, true)?.len() as u64;
            let gen_preorders = enumerate_preorders_extending(&Poset::antichain(n))?.len() as u64;
            let gen_unlabeled = enumerate_posets(n, false)?.len() as u64;
            let filt_posets = oracle::count_posets(n) as u64;
            let filt_preorders = oracle::count_preorders(n) as u64;
            let filt_unlabeled = oracle::count_unlabeled_posets(n) as u64;
            for (name, generated, filtered, reference) in [
                ("labeled_posets", gen_posets, filt_posets, LABELED_POSETS[n]),
                ("labeled_preorders", gen_preorders, filt_preorders, LABELED_PREORDERS[n]),
                ("unlabeled_posets", gen_unlabeled, filt_unlabeled, UNLABELED_POSETS[n]),
            ] {
                t.add("sequences_checked", 1);
                t.add(&format!("{name}_n{n}"), generated);
                if generated != filtered || generated != reference {
                    t.fail(Failure::bare(
                        name,
                        format!("n={n}: generator {generated}, filter {filtered}, reference {reference}"),
                    ));
                }
            }
            Ok(t)
        })
        .collect();
    Ok(merge_all(rows.into_iter().collect::<Result<_, _>>()?))
}

/// Largest poset size used for the contravariance check.
const CONTRAVARIANCE_MAX_N: usize = 3;

fn check_birkhoff(max_n: usize) -> Result<Tally, VerifyError> {
    let posets = enumerate_posets_up_to(max_n, false)?;
    let parts: Vec<Tally> = posets
        .par_iter()
        .map(|p| {
            let mut t = Tally::default();
            t.add("posets_checked", 1);
            t.add(&format!("posets_with_{}_points", p.len()), 1);
            if !is_priestley(p).holds {
                t.fail(Failure::on(p, "priestley", "separating up-set missing"));
            }
            let l = match upset_lattice(p) {
                Ok(l) => l,
                Err(e) => {
                    t.fail(Failure::on(p, "upset_lattice", e.to_string()));
                    return t;
                }
            };
            let back = dual_poset(&l);
            if canonical_form(back.relation()).0 != canonical_form(p.relation()).0 {
                t.fail(Failure::on(p, "round_trip_poset", format!("dual poset {:?}", back)));
            }
            match upset_lattice(&back) {
                Ok(l2) if find_isomorphism(l2.order().relation(), l.order().relation()).is_some() => {}
                Ok(_) => t.fail(Failure::on(p, "round_trip_lattice", "lattices are not isomorphic")),
                Err(e) => t.fail(Failure::on(p, "round_trip_lattice", e.to_string())),
            }
            t
        })
        .collect();
    let mut t = merge_all(parts);
    t = t.merge(check_contravariance(max_n.min(CONTRAVARIANCE_MAX_N))?);
    Ok(t)
}

type MapWithDual = (MonotoneMap, Vec<usize>);

/// `dual_map(g ∘ f) = dual_map(f) ∘ dual_map(g)` for every composable pair.
fn check_contravariance(max_n: usize) -> Result<Tally, VerifyError> {
    let posets = enumerate_posets_up_to(max_n, false)?;
    let k = posets.len();
    // maps[a][b]: all monotone maps posets[a] → posets[b], with their dual tables
    let mut maps: Vec<Vec<Vec<MapWithDual>>> = Vec::with_capacity(k);
    let mut t = Tally::default();
    for p in &posets {
        let mut row = Vec::with_capacity(k);
        for q in &posets {
            let mut entries = Vec::new();
            for f in monotone_maps(p, q) {
                match dual_map(&f) {
                    Ok(h) => entries.push((f, h.table)),
                    Err(e) => t.fail(Failure::on(p, "dual_map", format!("{:?}: {e}", f))),
                }
            }
            row.push(entries);
        }
        maps.push(row);
    }
    let index: Vec<Vec<HashMap<&[usize], usize>>> = maps
        .iter()
        .map(|row| row.iter().map(|es| es.iter().enumerate().map(|(i, (f, _))| (f.table(), i)).collect()).collect())
        .collect();
    for a in 0..k {
        for b in 0..k {
            for c in 0..k {
                for (f, df) in &maps[a][b] {
                    for (g, dg) in &maps[b][c] {
                        t.add("composable_pairs_checked", 1);
                        let gf: Vec<usize> = f.table().iter().map(|&y| g.apply(y)).collect();
                        let Some(&slot) = index[a][c].get(gf.as_slice()) else {
                            t.fail(Failure::on(&posets[a], "composition", "composite is not monotone"));
                            continue;
                        };
                        let d_gf = &maps[a][c][slot].1;
                        // dual(f) ∘ dual(g): first dg, then df
                        let composed: Vec<usize> = dg.iter().map(|&u| df[u]).collect();
                        if *d_gf != composed {
                            t.fail(Failure::on(&posets[a], "contravariance", format!("f = {:?}, g = {:?}", f, g)));
                        }
                    }
                }
            }
        }
    }
    Ok(t)
}

fn check_separation(max_n: usize) -> Result<Tally, VerifyError> {
    per_poset(max_n, |p| {
        let mut t = Tally::default();
        for x in 0..p.len() {
            for y in 0..p.len() {
                if p.le(x, y) {
                    continue;
                }
                t.add("pairs_checked", 1);
                let ok = match separate(p, x, y) {
                    Ok(f) => classify_map(&f).is_monotone && f.apply(x) == 1 && f.apply(y) == 0,
                    Err(_) => false,
                };
                if !ok {
                    let c = p.carrier();
                    t.fail(Failure::on(p, "separation", format!("({}, {})", c.label(x), c.label(y))));
                }
            }
        }
        Ok(t)
    })
}

/// The 3-chain with cross pairs `(a,0) ≼ (c,1)` and `(a,1) ≼ (c,0)` only.
pub fn three_chain_counterexample() -> CoRelation {
    let t = |p: usize, tag: Tag| Tagged::new(p, tag);
    CoRelation::generated_by(Poset::chain(3), [(t(0, Tag::Zero), t(2, Tag::One)), (t(0, Tag::One), t(2, Tag::Zero))])
}

/// `∇` on `2-chain + 2-chain`.
pub fn full_corelation_on_two_chain() -> CoRelation {
    CoRelation::new(Poset::chain(2), Relation::full(4)).expect("∇ extends every order")
}

fn check_negative_controls() -> Tally {
    let mut t = Tally::default();
    let c = three_chain_counterexample();
    let expected = TaggedPair { from: Tagged::new(0, Tag::Zero), to: Tagged::new(2, Tag::One) };
    t.add("controls_checked", 1);
    if is_cotransitive(&c) != Err(CotransitivityFailure::NoInterpolant(expected)) {
        t.fail(Failure::on_corelation(&c, "negative_cotransitivity", format!("{:?}", is_cotransitive(&c))));
    }
    t.add("controls_checked", 1);
    if is_effective(&c) != Err(expected) {
        t.fail(Failure::on_corelation(&c, "negative_effectiveness", "criterion unexpectedly satisfied"));
    }
    let full = full_corelation_on_two_chain();
    let expected = TaggedPair { from: Tagged::new(1, Tag::Zero), to: Tagged::new(0, Tag::One) };
    t.add("controls_checked", 1);
    if is_coreflexive(&full) != Err(expected) {
        t.fail(Failure::on_corelation(&full, "negative_coreflexivity", format!("{:?}", is_coreflexive(&full))));
    }
    t
}
