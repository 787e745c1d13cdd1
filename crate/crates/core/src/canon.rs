//! Isomorphism testing for small relations.
//!
//! Vertices are first partitioned by a degree invariant (in-degree, out-degree,
//! plus the sorted invariants of their neighbours). The canonical form is the
//! lexicographically least adjacency matrix over all invariant-respecting
//! relabellings; this is meant for carriers of at most about eight points.
//! [`find_isomorphism`] instead backtracks directly and copes with larger inputs
//! such as lattices of up-sets.

use crate::bits::Relation;

type Invariant = (usize, usize, Vec<(usize, usize)>, Vec<(usize, usize)>);

fn degrees(r: &Relation) -> Vec<(usize, usize)> {
    (0..r.size())
        .map(|v| {
            let ins = r.predecessors(v).filter(|&u| u != v).count();
            let outs = r.successors(v).filter(|&u| u != v).count();
            (ins, outs)
        })
        .collect()
}

fn invariants(r: &Relation) -> Vec<Invariant> {
    let deg = degrees(r);
    (0..r.size())
        .map(|v| {
            let mut below: Vec<_> = r.predecessors(v).filter(|&u| u != v).map(|u| deg[u]).collect();
            let mut above: Vec<_> = r.successors(v).filter(|&u| u != v).map(|u| deg[u]).collect();
            below.sort_unstable();
            above.sort_unstable();
            (deg[v].0, deg[v].1, below, above)
        })
        .collect()
}

/// Canonical representative of the isomorphism class of `r`, together with the
/// relabelling `perm` (old index to new index) that produces it.
pub fn canonical_form(r: &Relation) -> (Relation, Vec<usize>) {
    let n = r.size();
    let inv = invariants(r);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| inv[a].cmp(&inv[b]).then(a.cmp(&b)));
    // block boundaries of equal invariants, in position order
    let mut blocks: Vec<(usize, usize)> = Vec::new();
    let mut start = 0;
    for k in 1..=n {
        if k == n || inv[order[k]] != inv[order[start]] {
            blocks.push((start, k));
            start = k;
        }
    }

    let mut best: Option<(Vec<u64>, Vec<usize>)> = None;
    let mut current = order.clone();
    permute_blocks(&blocks, 0, &mut current, &mut |arrangement| {
        // arrangement[pos] = old vertex
        let code = encode(r, arrangement);
        if best.as_ref().is_none_or(|(b, _)| code < *b) {
            best = Some((code, arrangement.to_vec()));
        }
    });
    let arrangement = best.map(|(_, a)| a).unwrap_or_default();
    let mut perm = vec![0; n];
    for (pos, &v) in arrangement.iter().enumerate() {
        perm[v] = pos;
    }
    (r.image(n, &perm), perm)
}

fn encode(r: &Relation, arrangement: &[usize]) -> Vec<u64> {
    let n = arrangement.len();
    let mut out = vec![0u64; (n * n).div_ceil(64)];
    for (i, &a) in arrangement.iter().enumerate() {
        for (j, &b) in arrangement.iter().enumerate() {
            if r.contains(a, b) {
                let k = i * n + j;
                // most significant first, so Vec ordering is matrix-lexicographic
                out[k / 64] |= 1u64 << (63 - k % 64);
            }
        }
    }
    out
}

fn permute_blocks(blocks: &[(usize, usize)], b: usize, cur: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
    if b == blocks.len() {
        visit(cur);
        return;
    }
    let (lo, hi) = blocks[b];
    permute_range(blocks, b, lo, hi, cur, visit);
}

fn permute_range(
    blocks: &[(usize, usize)],
    b: usize,
    k: usize,
    hi: usize,
    cur: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]),
) {
    if k + 1 >= hi {
        permute_blocks(blocks, b + 1, cur, visit);
        return;
    }
    for s in k..hi {
        cur.swap(k, s);
        permute_range(blocks, b, k + 1, hi, cur, visit);
        cur.swap(k, s);
    }
}

pub fn are_isomorphic(a: &Relation, b: &Relation) -> bool {
    find_isomorphism(a, b).is_some()
}

/// A bijection `m` with `a(u, v) ⟺ b(m(u), m(v))`, if one exists.
pub fn find_isomorphism(a: &Relation, b: &Relation) -> Option<Vec<usize>> {
    let n = a.size();
    if b.size() != n || a.len() != b.len() {
        return None;
    }
    let (ia, ib) = (invariants(a), invariants(b));
    let mut sa = ia.clone();
    let mut sb = ib.clone();
    sa.sort();
    sb.sort();
    if sa != sb {
        return None;
    }
    // rarest invariant classes first
    let count = |inv: &Invariant| ia.iter().filter(|x| *x == inv).count();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (count(&ia[v]), v));
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if extend(a, b, &ia, &ib, &order, 0, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn extend(
    a: &Relation,
    b: &Relation,
    ia: &[Invariant],
    ib: &[Invariant],
    order: &[usize],
    k: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if k == order.len() {
        return true;
    }
    let v = order[k];
    for w in 0..b.size() {
        if used[w] || ia[v] != ib[w] || a.contains(v, v) != b.contains(w, w) {
            continue;
        }
        let consistent = order[..k].iter().all(|&u| {
            let mu = map[u];
            a.contains(u, v) == b.contains(mu, w) && a.contains(v, u) == b.contains(w, mu)
        });
        if !consistent {
            continue;
        }
        map[v] = w;
        used[w] = true;
        if extend(a, b, ia, ib, order, k + 1, map, used) {
            return true;
        }
        used[w] = false;
        map[v] = usize::MAX;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn closed(n: usize, pairs: &[(usize, usize)]) -> Relation {
        Relation::from_pairs(n, pairs.iter().copied()).reflexive_transitive_closure()
    }

    #[test]
    fn relabelled_chains_share_canonical_form() {
        let a = closed(3, &[(0, 1), (1, 2)]);
        let b = closed(3, &[(2, 0), (0, 1)]);
        assert_eq!(canonical_form(&a).0, canonical_form(&b).0);
        let (canon, perm) = canonical_form(&b);
        assert_eq!(b.image(3, &perm), canon);
    }

    #[test]
    fn v_and_wedge_differ() {
        let v = closed(3, &[(0, 2), (1, 2)]);
        let wedge = closed(3, &[(0, 1), (0, 2)]);
        assert_ne!(canonical_form(&v).0, canonical_form(&wedge).0);
        assert!(!are_isomorphic(&v, &wedge));
        assert!(are_isomorphic(&v, &closed(3, &[(1, 0), (2, 0)])));
    }

    #[test]
    fn isomorphism_is_a_witness() {
        let a = closed(5, &[(0, 1), (0, 2), (1, 3), (2, 3), (3, 4)]);
        let perm = [3, 0, 4, 1, 2];
        let b = a.image(5, &perm);
        let m = find_isomorphism(&a, &b).unwrap();
        for (u, v) in a.pairs() {
            assert!(b.contains(m[u], m[v]));
        }
    }
}
