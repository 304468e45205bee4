use std::collections::BTreeSet;
use std::sync::Arc;

use batchgeo::field::{Elem, Field};
use batchgeo::geometry::{
    check_niceness, construction1, max_nice_collection, AffinePlane, NiceCollection, Niceness,
    DEFAULT_ENUMERATION_BUDGET, DEFAULT_SEARCH_BUDGET,
};
use batchgeo::linalg::{index_vector, vector_index, Subspace};

fn gf(q: u64) -> Arc<Field> {
    Arc::new(Field::new(q).unwrap())
}

/// Largest L-nice family of one-dimensional subspaces of GF(2)^3, by
/// checking all 128 subsets directly. Vectors are 3-bit masks; the line
/// through `u` is `{0, u}` and its cosets are the pairs `{v, v ^ u}`.
fn fano_oracle(level: usize) -> usize {
    let mut best = 0;
    for family in 0u32..128 {
        let members: Vec<u8> = (1..=7u8).filter(|u| family >> (u - 1) & 1 == 1).collect();
        let nice = members.iter().all(|&u| {
            (1..8u8).filter(|&v| v != u).all(|v| {
                let coset = [v, v ^ u];
                members.iter().filter(|w| coset.contains(w)).count() <= level
            })
        });
        if nice {
            best = best.max(members.len());
        }
    }
    best
}

// Exhaustive value of fano_oracle(1).
const FANO_MAX_L1: usize = 4;

/// Niceness straight from the definition: every `v` outside `V_i`, every
/// member `V_j`, point sets compared explicitly.
fn niceness_oracle(c: &NiceCollection) -> usize {
    let f = c.field();
    let d = c.ambient_dim();
    let total = (f.size() as u64).pow(d as u32);
    let sets: Vec<BTreeSet<u64>> = c
        .subspaces()
        .iter()
        .map(|s| s.points().iter().map(|p| vector_index(f, p)).collect())
        .collect();
    let mut worst = 0;
    for (i, s) in c.subspaces().iter().enumerate() {
        let pts = s.points();
        for idx in 0..total {
            if sets[i].contains(&idx) {
                continue;
            }
            let v = index_vector(f, d, idx).unwrap();
            let coset: BTreeSet<u64> = pts
                .iter()
                .map(|u| {
                    let w: Vec<Elem> = u.iter().zip(&v).map(|(&a, &b)| f.add(a, b)).collect();
                    vector_index(f, &w)
                })
                .collect();
            let hits = sets.iter().filter(|s| !s.is_disjoint(&coset)).count();
            worst = worst.max(hits);
        }
    }
    worst
}

#[test]
fn plane_axioms() {
    for q in [2u64, 3, 4, 5, 7, 8, 9] {
        let plane = AffinePlane::with_order(q).unwrap();
        let q = q as usize;
        assert_eq!(plane.lines().len(), q * q + q);
        assert!(plane.lines().iter().all(|l| l.len() == q));
        let mut degree = vec![0; q * q];
        plane.lines().iter().flatten().for_each(|&p| degree[p] += 1);
        assert!(degree.iter().all(|&d| d == q + 1));
        let sets: Vec<BTreeSet<usize>> = plane
            .lines()
            .iter()
            .map(|l| l.iter().copied().collect())
            .collect();
        for (a, la) in sets.iter().enumerate() {
            for lb in &sets[a + 1..] {
                assert!(la.intersection(lb).count() <= 1);
            }
        }
    }
}

#[test]
fn construction_is_nice() {
    let cases = [
        (3, 1, true),
        (4, 1, false),
        (5, 1, false),
        (7, 1, false),
        (8, 1, false),
        (9, 1, false),
        (4, 2, false),
        (5, 2, false),
    ];
    for (q, ell, zero) in cases {
        let mut c = construction1(gf(q), ell, None, zero).unwrap();
        assert!(c.check_pairwise(), "q={q} ell={ell}");
        let level = c.certify(DEFAULT_ENUMERATION_BUDGET).unwrap();
        assert!(level as usize <= ell, "q={q} ell={ell}: L*={level}");
        assert!(c.m() <= (level as usize + 1) * q as usize);
        if q <= 5 {
            assert_eq!(level as usize, niceness_oracle(&c), "q={q} ell={ell}");
        }
    }
}

#[test]
fn pairwise_matches_brute_force() {
    let c = construction1(gf(5), 1, None, false).unwrap();
    for a in c.subspaces() {
        for b in c.subspaces() {
            let pa: BTreeSet<_> = a.points().into_iter().collect();
            let common = b.points().into_iter().filter(|p| pa.contains(p)).count();
            assert_eq!(common, if a == b { 5 } else { 1 });
        }
    }
}

#[test]
fn niceness_invariant_under_reordering_and_rebasing() {
    let f = gf(7);
    let c = construction1(f.clone(), 1, None, false).unwrap();
    let base = check_niceness(&c, DEFAULT_ENUMERATION_BUDGET).unwrap();
    let mut reversed: Vec<Subspace> = c.subspaces().to_vec();
    reversed.reverse();
    // rebuild each member from a rescaled spanning vector
    let three = f.elem(3).unwrap();
    let rebased: Vec<Subspace> = reversed
        .iter()
        .map(|s| {
            let v: Vec<Elem> = s.basis()[0].iter().map(|&x| f.mul(three, x)).collect();
            Subspace::span(f.clone(), &[v]).unwrap()
        })
        .collect();
    let other = NiceCollection::new(f, 1, rebased).unwrap();
    assert_eq!(
        check_niceness(&other, DEFAULT_ENUMERATION_BUDGET).unwrap(),
        base
    );
}

#[test]
fn non_nice_collection_is_detected() {
    // all 13 lines through the origin of GF(3)^3
    let f = gf(3);
    let (m, _) = max_nice_collection(f.clone(), 1, 12, DEFAULT_SEARCH_BUDGET).unwrap();
    assert_eq!(m, 13);
    let all = batchgeo::geometry::all_subspaces(&f, 1, 3);
    let c = NiceCollection::new(f, 1, all).unwrap();
    let level = check_niceness(&c, DEFAULT_ENUMERATION_BUDGET).unwrap();
    assert_eq!(level as usize, niceness_oracle(&c));
    assert_eq!(level, 3);
}

#[test]
fn fano_search_matches_oracle() {
    assert_eq!(fano_oracle(1), FANO_MAX_L1);
    let (m, witness) = max_nice_collection(gf(2), 1, 1, DEFAULT_SEARCH_BUDGET).unwrap();
    assert_eq!(m, FANO_MAX_L1);
    assert!(m <= 2 * 2);
    assert!(matches!(witness.niceness(), Niceness::BruteForce(l) if l <= 1));
    for level in 0..=1 {
        let (m, _) = max_nice_collection(gf(2), 1, level, DEFAULT_SEARCH_BUDGET).unwrap();
        assert_eq!(m, fano_oracle(level as usize), "L={level}");
        assert!(m <= (level as usize + 1) * 2);
    }
}

/// `m <= (L+1) q` fails for complete families of lines: every off-origin
/// coset of a line meets exactly q lines through the origin, so all
/// `q^2 + q + 1` of them form a q-nice family. The averaging argument
/// holds with `Pr[g in W] = (q^l - 1)/(q^(l+1) - 1)` instead of `1/q`,
/// which gives `m <= L (q^(l+1) - 1)/(q^l - 1) + 1`.
#[test]
fn size_bound_fails_for_complete_line_families() {
    let (m, w) = max_nice_collection(gf(2), 1, 2, DEFAULT_SEARCH_BUDGET).unwrap();
    assert_eq!(m, fano_oracle(2));
    assert_eq!((m, w.niceness()), (7, Niceness::BruteForce(2)));
    assert!(m > (2 + 1) * 2);
    assert!(m <= 2 * 3 + 1);

    let f = gf(3);
    let all = batchgeo::geometry::all_subspaces(&f, 1, 3);
    let mut c = NiceCollection::new(f, 1, all).unwrap();
    assert_eq!(c.certify(DEFAULT_ENUMERATION_BUDGET).unwrap(), 3);
    assert!(c.m() > (3 + 1) * 3);
    assert!(c.m() <= 3 * 4 + 1);
}

#[test]
fn search_respects_upper_bound() {
    for (q, level) in [(3u64, 1u32), (3, 2), (4, 1)] {
        let (m, w) = max_nice_collection(gf(q), 1, level, DEFAULT_SEARCH_BUDGET).unwrap();
        assert!(
            m <= (level as usize + 1) * q as usize,
            "q={q} L={level} m={m}"
        );
        assert_eq!(niceness_oracle(&w) as u32, w.niceness().level().unwrap());
        assert!(w.niceness().level().unwrap() <= level);
    }
    // the three-direction example is a witness for q = 3, L = 1
    let (m, _) = max_nice_collection(gf(3), 1, 1, DEFAULT_SEARCH_BUDGET).unwrap();
    assert!(m >= 3);
}
