use proptest::prelude::*;

use pospace::bits::{BitSet, Relation};
use pospace::canon::{are_isomorphic, canonical_form, find_isomorphism};
use pospace::constructions::{
    coproduct, factor_through, pushout_embeddings, quotient_of_preorder, reflect, Factorization, QuotientObject,
};
use pospace::corelation::{corelation_of_subset, is_effective, is_equivalence_corelation, phi};
use pospace::duality::{dual_poset, join_irreducibles, separate, upset_lattice, upsets};
use pospace::enumeration::{brute_force_pushout, compare_pushouts, enumerate_posets_up_to, order_embeddings};
use pospace::io::{poset_json, to_dot, PreorderJson};
use pospace::order::{classify_map, covering_relation, reflexive_transitive_closure};
use pospace::{Carrier, MonotoneMap, Poset, Preorder};

/// A random poset on up to `max` points: a random DAG on a shuffled carrier, closed.
fn poset(max: usize) -> impl Strategy<Value = Poset> {
    (0..=max)
        .prop_flat_map(|n| {
            let pairs = n * n.saturating_sub(1) / 2;
            (Just(n), prop::collection::vec(prop::bool::weighted(0.35), pairs), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
        })
        .prop_map(|(n, edges, perm)| {
            let mut rel = Relation::identity(n);
            let mut k = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if edges[k] {
                        rel.insert(perm[i], perm[j]);
                    }
                    k += 1;
                }
            }
            Poset::new(Carrier::standard(n), rel.reflexive_transitive_closure()).expect("closed DAG is a poset")
        })
}

fn relation(max: usize) -> impl Strategy<Value = Relation> {
    (0..=max).prop_flat_map(|n| {
        prop::collection::vec(prop::bool::weighted(0.2), n * n).prop_map(move |bits| {
            Relation::from_pairs(n, (0..n * n).filter(|&k| bits[k]).map(|k| (k / n, k % n)))
        })
    })
}

/// Floyd–Warshall on boolean matrices.
fn naive_closure(r: &Relation) -> Relation {
    let n = r.size();
    let mut m: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| i == j || r.contains(i, j)).collect()).collect();
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                m[i][j] = m[i][j] || (m[i][k] && m[k][j]);
            }
        }
    }
    Relation::from_pairs(n, (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|&(i, j)| m[i][j]))
}

fn poset_with_relation(max: usize) -> impl Strategy<Value = (Poset, Relation)> {
    poset(max).prop_flat_map(|p| {
        let n = p.len();
        (Just(p), prop::collection::vec(prop::bool::weighted(0.2), n * n))
            .prop_map(move |(p, bits)| (p, Relation::from_pairs(n, (0..n * n).filter(|&k| bits[k]).map(|k| (k / n, k % n)))))
    })
}

fn poset_with_subset(max: usize) -> impl Strategy<Value = (Poset, BitSet)> {
    poset(max).prop_flat_map(|p| {
        let n = p.len();
        (Just(p), prop::collection::vec(any::<bool>(), n))
            .prop_map(move |(p, bits)| (p, BitSet::from_indices(n, (0..n).filter(|&i| bits[i]))))
    })
}

fn inclusion(p: &Poset, s: &BitSet) -> MonotoneMap {
    let (sub, table) = p.induced_poset(s);
    MonotoneMap::new(sub, p.clone(), table).expect("inclusions are monotone")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn closure_is_idempotent_and_minimal(r in relation(7)) {
        let c = reflexive_transitive_closure(&r);
        prop_assert!(r.is_subset(&c));
        prop_assert!(c.is_transitive());
        prop_assert_eq!(c.reflexivity_violation(), None);
        prop_assert_eq!(reflexive_transitive_closure(&c), c.clone());
        prop_assert_eq!(c, naive_closure(&r));
    }

    #[test]
    fn opposite_is_an_involution(p in poset(7)) {
        prop_assert_eq!(p.opposite().opposite(), p.clone());
        let op = p.opposite();
        prop_assert_eq!(op.relation(), &p.relation().transpose());
    }

    #[test]
    fn up_closure_is_down_closure_of_opposite((p, s) in poset_with_subset(7)) {
        prop_assert_eq!(p.up_closure(&s), p.opposite().down_closure(&s));
        prop_assert!(p.is_up_set(&p.up_closure(&s)));
        prop_assert!(p.is_down_set(&p.down_closure(&s)));
    }

    #[test]
    fn reflection_is_a_poset_and_collapses_cycles(r in relation(6)) {
        let pre = Preorder::generated_by(Carrier::standard(r.size()), &r);
        let (q, rho) = reflect(&pre);
        prop_assert_eq!(q.relation().antisymmetry_violation(), None);
        for x in 0..pre.len() {
            for y in 0..pre.len() {
                prop_assert_eq!(pre.le(x, y), q.le(rho.apply(x), rho.apply(y)));
            }
        }
        prop_assert!(rho.is_surjective());
    }

    #[test]
    fn reflecting_a_poset_is_an_isomorphism(p in poset(7)) {
        let (q, rho) = reflect(p.preorder());
        prop_assert_eq!(q.len(), p.len());
        prop_assert!(classify_map(&rho).is_order_embedding);
    }

    #[test]
    fn canonical_forms_are_permutation_invariant(p in poset(6), seed in any::<u64>()) {
        let n = p.len();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let permuted = p.relation().image(n, &perm);
        prop_assert_eq!(canonical_form(&permuted).0, canonical_form(p.relation()).0);
        let iso = find_isomorphism(p.relation(), &permuted).expect("permuted copy is isomorphic");
        for (a, b) in p.relation().pairs() {
            prop_assert!(permuted.contains(iso[a], iso[b]));
        }
    }

    #[test]
    fn embeddings_compose((p, s) in poset_with_subset(6), bits in prop::collection::vec(any::<bool>(), 6)) {
        let outer = inclusion(&p, &s);
        let sub = outer.dom_poset().expect("induced order is a poset");
        let t = BitSet::from_indices(sub.len(), (0..sub.len()).filter(|&i| bits[i]));
        let inner = inclusion(&sub, &t);
        let both = inner.then(&outer).expect("composable");
        prop_assert!(classify_map(&both).is_order_embedding);
    }

    #[test]
    fn upset_lattice_recovers_the_poset(p in poset(6)) {
        let l = upset_lattice(&p).expect("small poset");
        prop_assert_eq!(l.lattice().len(), upsets(&p).unwrap().len());
        prop_assert_eq!(l.lattice().distributivity_violation(), None);
        let ji = join_irreducibles(l.lattice()).unwrap();
        prop_assert_eq!(ji.len(), p.len());
        prop_assert!(are_isomorphic(dual_poset(&l).relation(), p.relation()));
    }

    #[test]
    fn separation_by_the_two_chain(p in poset(7)) {
        for x in 0..p.len() {
            for y in 0..p.len() {
                if !p.le(x, y) {
                    let f = separate(&p, x, y).unwrap();
                    prop_assert!(classify_map(&f).is_monotone);
                    prop_assert_eq!((f.apply(x), f.apply(y)), (1, 0));
                }
            }
        }
    }

    #[test]
    fn subset_corelations_are_effective((x, y) in poset_with_subset(5)) {
        let c = corelation_of_subset(&x, &y);
        prop_assert!(is_equivalence_corelation(&c).is_ok());
        prop_assert_eq!(phi(&c), y);
        let cert = is_effective(&c);
        prop_assert!(cert.as_ref().is_ok_and(|cert| cert.validate(&c)));
    }

    #[test]
    fn random_pushouts_match_brute_force((y0, s) in poset_with_subset(4), y1 in poset(4)) {
        let f0 = inclusion(&y0, &s);
        let x = f0.dom_poset().unwrap();
        let f1 = match order_embeddings(&x, &y1).into_iter().next() {
            Some(f) => f,
            None => {
                let sum = coproduct(&x, &y1);
                sum.inj0
            }
        };
        let theta = pushout_embeddings(&f0, &f1).unwrap();
        let brute = brute_force_pushout(&f0, &f1).unwrap();
        prop_assert_eq!(compare_pushouts(&theta, &brute), Ok(()));
    }

    #[test]
    fn preorder_quotients_round_trip((p, r) in poset_with_relation(5)) {
        let ext = p.relation().union(&r).reflexive_transitive_closure();
        let q = QuotientObject::new(p.clone(), Preorder::new(p.carrier().clone(), ext).unwrap()).unwrap();
        let (_, rho) = quotient_of_preorder(&q);
        let back = pospace::constructions::preorder_of_map(&rho).unwrap();
        prop_assert_eq!(&back, &q);
        let id = MonotoneMap::identity(p.clone());
        // the identity factors through ρ only when ρ collapses nothing beyond ≤_X
        let factors = matches!(factor_through(&rho, &id).unwrap(), Factorization::Through(_));
        prop_assert_eq!(factors, q.preorder().relation() == p.relation());
    }

    #[test]
    fn json_round_trip(p in poset(7)) {
        let text = serde_json::to_string(&poset_json(&p)).unwrap();
        let back: PreorderJson = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back.to_poset().unwrap(), p);
    }

    #[test]
    fn dot_has_one_edge_per_cover(p in poset(7)) {
        let dot = to_dot(&p, "p");
        prop_assert_eq!(dot.matches(" -> ").count(), covering_relation(&p).pairs().count());
    }
}

#[test]
fn covering_relation_round_trips_exhaustively() {
    for p in enumerate_posets_up_to(6, false).unwrap() {
        let cover = covering_relation(&p);
        assert_eq!(cover.reflexive_transitive_closure(), *p.relation());
        assert!(cover.pairs().all(|(a, b)| a != b));
        // no cover is implied by a longer path
        for (a, b) in cover.pairs() {
            let mut without = cover.clone();
            without.remove(a, b);
            assert!(!without.reflexive_transitive_closure().contains(a, b));
        }
    }
}
