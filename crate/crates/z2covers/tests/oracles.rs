//! Independent oracles for the fast paths: naive transforms, naive
//! half-sums, a dynamic-programming monomial count, the naive triple loop
//! and exhaustive rank-2 and rank-3 classifications.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use z2covers::classify::{
    enumerate_flat, enumerate_l1, is_pluricanonical, l_distribution_candidates, reconstruct_branch,
};
use z2covers::cover::{half_point_count, zero_sum_triple_sum};
use z2covers::gf2::{canonicalize, pairing};
use z2covers::moduli::{gen_new_component, gen_unbounded, UnboundedKind};
use z2covers::walsh::forward;
use z2covers::wps::{euler_char_line, monomial_count, well_formed};
use z2covers::{BranchData, CoverSpec, GroupFunction, Rank, Weights};

fn rank(s: u32) -> Rank {
    Rank::new(s).unwrap()
}

fn random_function(rng: &mut ChaCha8Rng, s: u32, lo: i64, hi: i64, zero_at_identity: bool) -> GroupFunction {
    let r = rank(s);
    GroupFunction::from_fn(r, |g| {
        if zero_at_identity && g == 0 {
            0
        } else {
            rng.gen_range(lo..=hi)
        }
    })
}

fn naive_walsh(d: &GroupFunction) -> Vec<i128> {
    let n = d.rank().order() as u32;
    (0..n)
        .map(|chi| {
            (0..n)
                .map(|x| {
                    let v = d.get(x) as i128;
                    if pairing(chi, x) {
                        -v
                    } else {
                        v
                    }
                })
                .sum()
        })
        .collect()
}

fn naive_half_sums(d: &GroupFunction) -> Vec<i128> {
    let n = d.rank().order() as u32;
    (0..n)
        .map(|chi| (0..n).filter(|&g| pairing(chi, g)).map(|g| d.get(g) as i128).sum())
        .collect()
}

/// Coefficients of `Π 1/(1 - t^{a_i})` up to `n_max` by the coin-change DP.
fn dp_monomials(a: [u64; 4], n_max: usize) -> Vec<u128> {
    let mut c = vec![0u128; n_max + 1];
    c[0] = 1;
    for &w in &a {
        let w = w as usize;
        for n in w..=n_max {
            c[n] += c[n - w];
        }
    }
    c
}

#[test]
fn fast_walsh_matches_naive_summation() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for s in 1..=8 {
        for _ in 0..20 {
            let d = random_function(&mut rng, s, -1000, 1000, false);
            assert_eq!(forward(&d).values(), naive_walsh(&d).as_slice(), "s = {s}");
        }
    }
}

#[test]
fn eigensheaf_degrees_match_naive_half_sums() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut checked = 0;
    for s in 1..=7 {
        for _ in 0..200 {
            let d = random_function(&mut rng, s, 0, 6, true);
            let half = naive_half_sums(&d);
            let Ok(branch) = BranchData::new(d.clone()) else { continue };
            let integral = half.iter().all(|h| h % 2 == 0);
            match z2covers::cover::eigensheaf_degrees(&branch) {
                Ok(l) => {
                    assert!(integral);
                    let expected: Vec<i128> = half.iter().map(|h| h / 2).collect();
                    assert_eq!(l.values(), expected.as_slice());
                    checked += 1;
                }
                Err(_) => assert!(!integral),
            }
        }
    }
    assert!(checked > 0);
}

#[test]
fn monomial_count_matches_generating_function() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut tuples = vec![[1, 1, 1, 1], [1, 1, 2, 2], [2, 3, 10, 15], [1, 6, 14, 21], [1, 1, 1, 4]];
    while tuples.len() < 40 {
        let a = [
            rng.gen_range(1..=9),
            rng.gen_range(1..=9),
            rng.gen_range(1..=9),
            rng.gen_range(1..=9),
        ];
        if well_formed(a) {
            tuples.push(a);
        }
    }
    for a in tuples {
        let w = Weights::new(a).unwrap();
        let dp = dp_monomials(w.get(), 200);
        for (n, &c) in dp.iter().enumerate() {
            assert_eq!(monomial_count(&w, n as i128), c, "weights {w}, n = {n}");
        }
    }
}

#[test]
fn euler_characteristic_on_projective_space() {
    let p3 = Weights::projective_space();
    for n in -20i128..=20 {
        assert_eq!(euler_char_line(&p3, n), (n + 1) * (n + 2) * (n + 3) / 6, "n = {n}");
    }
}

#[test]
fn serre_duality_holds_identically() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for a in [[1, 1, 1, 1], [1, 1, 2, 2], [1, 2, 3, 6], [2, 3, 10, 15]] {
        let w = Weights::new(a).unwrap();
        for _ in 0..50 {
            let n: i128 = rng.gen_range(-80..=80);
            assert_eq!(euler_char_line(&w, n), -euler_char_line(&w, -n - w.sum() as i128));
        }
    }
}

#[test]
fn triple_sum_matches_naive_loop() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for s in 1..=6 {
        for _ in 0..30 {
            let d = random_function(&mut rng, s, 0, 9, true);
            let n = d.rank().order() as u32;
            // Unordered triples of distinct nonzero elements summing to 0.
            let mut naive = BigInt::from(0);
            for p in 1..n {
                for q in (p + 1)..n {
                    let r = p ^ q;
                    if r > q {
                        naive += BigInt::from(d.get(p)) * d.get(q) * d.get(r);
                    }
                }
            }
            assert_eq!(zero_sum_triple_sum(&d), naive);
            let Ok(branch) = BranchData::new(d) else { continue };
            if let Ok(c) = CoverSpec::new(Weights::projective_space(), branch) {
                assert_eq!(half_point_count(&c).unwrap(), naive);
            }
        }
    }
}

fn canonical_set(rows: impl IntoIterator<Item = (Weights, i128, Vec<i64>)>) -> BTreeSet<(Weights, i128, Vec<i64>)> {
    rows.into_iter().collect()
}

/// Every `(a, m, d)` with `a_i <= 8`, `D <= 48` is tested directly.
#[test]
fn rank_two_classification_matches_exhaustive_search() {
    let r = rank(2);
    let mut weights = Vec::new();
    for a0 in 1..=8u64 {
        for a1 in a0..=8 {
            for a2 in a1..=8 {
                for a3 in a2..=8 {
                    if well_formed([a0, a1, a2, a3]) {
                        weights.push(Weights::new([a0, a1, a2, a3]).unwrap());
                    }
                }
            }
        }
    }
    for m in 1..=5u32 {
        let mut brute = BTreeSet::new();
        for w in &weights {
            for total in 1..=48i64 {
                // M = m(D/2 - W) must be positive.
                if (m as i128) * (total as i128) <= 2 * (m as i128) * w.sum() as i128 {
                    continue;
                }
                for d1 in 0..=total {
                    for d2 in 0..=(total - d1) {
                        let d3 = total - d1 - d2;
                        if (d1 + d3) % 2 != 0 || (d2 + d3) % 2 != 0 {
                            continue;
                        }
                        let branch = BranchData::from_nonzero(r, &[d1, d2, d3]).unwrap();
                        let cover = CoverSpec::new(*w, branch).unwrap();
                        let Some(rep) = is_pluricanonical(&cover, m) else { continue };
                        if w.lcm() >= 2 && !rep.flat {
                            continue;
                        }
                        let d = canonicalize(cover.branch().degrees()).unwrap();
                        brute.insert((*w, rep.k, d.nonzero_values().to_vec()));
                    }
                }
            }
        }
        let engine = canonical_set(
            enumerate_flat(2, m)
                .into_iter()
                .chain(enumerate_l1(2, m))
                .map(|s| (s.weights, s.k, s.d.nonzero_values().to_vec())),
        );
        assert_eq!(engine, brute, "m = {m}");
    }
}

#[test]
fn reconstruction_round_trips_the_spectrum() {
    for (s, total, min_l, sq) in [(4u32, 9u64, 2u64, 11u64), (4, 9, 2, 9), (4, 12, 3, 12), (3, 12, 3, 36)] {
        for n in l_distribution_candidates(s, total, min_l, sq) {
            for d in reconstruct_branch(s, total, &n) {
                let branch = BranchData::new(d).unwrap();
                let l = z2covers::cover::eigensheaf_degrees(&branch).unwrap();
                let mut got = std::collections::BTreeMap::new();
                for &v in l.nonzero_values() {
                    *got.entry(v).or_insert(0u64) += 1;
                }
                assert_eq!(got, n);
                assert_eq!(branch.total(), total as i128);
            }
        }
    }
}

#[test]
fn emitted_solutions_round_trip() {
    for s in 2..=5 {
        for m in 1..=4 {
            for sol in enumerate_flat(s, m).into_iter().chain(enumerate_l1(s, m)) {
                let cover = sol.cover();
                let rep = is_pluricanonical(&cover, m).expect("solution re-passes the criterion");
                assert_eq!(rep.k, sol.k);
                assert_eq!(rep.plurigenus, sol.plurigenus);
                if sol.weights.lcm() >= 2 {
                    assert!(rep.flat);
                    if s == 2 {
                        assert_eq!(sol.d_total() % sol.weights.lcm() as i128, 0);
                    }
                }
            }
        }
    }
}

#[test]
fn unbounded_families_satisfy_their_closed_forms() {
    for s in 3..=24 {
        for kind in [UnboundedKind::Canonical, UnboundedKind::Bicanonical] {
            let Ok(f) = gen_unbounded(s, kind) else {
                assert!(kind == UnboundedKind::Canonical && s == 3);
                continue;
            };
            let l = f.l_lcm as u128;
            let expected_total = match kind {
                UnboundedKind::Canonical => 6 * l + 4,
                UnboundedKind::Bicanonical => 5 * l + 4,
            };
            assert_eq!(f.d_total, expected_total, "{kind:?} s = {s}");
            let half = f.value as u128;
            assert_eq!(f.l_chi0, (1u128 << (s - 1)) * half / 2);
            assert_eq!(f.l_other, (1u128 << (s - 2)) * half / 2);
            assert!(f.structural_ok);
            if let Some(c) = &f.cover {
                let lvals = c.eigensheaf_degrees();
                assert_eq!(lvals.get(1) as u128, f.l_chi0);
                assert!((2..c.rank().order() as u32).all(|chi| lvals.get(chi) as u128 == f.l_other));
                assert!(f.report.is_some());
            }
        }
    }
}

#[test]
fn new_components_pass_the_criteria() {
    for m in (4..=20).step_by(2) {
        let nc = gen_new_component(m).unwrap();
        assert!(nc.deformation.passes());
        assert!(!nc.flat);
        let l = nc.cover.eigensheaf_degrees();
        for chi in 1..16u32 {
            let expected = if chi & 1 == 1 { nc.l_odd } else { nc.l_even };
            assert_eq!(l.get(chi), expected);
        }
    }
}

fn compositions(total: i64, parts: usize, prefix: &mut Vec<i64>, out: &mut dyn FnMut(&[i64])) {
    if parts == 1 {
        prefix.push(total);
        out(prefix);
        prefix.pop();
        return;
    }
    for v in 0..=total {
        prefix.push(v);
        compositions(total - v, parts - 1, prefix, out);
        prefix.pop();
    }
}

/// Every branch function on rank 3 over `P(1,1,1,1)` with `D <= 18`.
#[test]
fn rank_three_projective_classification_matches_exhaustive_search() {
    let r = rank(3);
    let p3 = Weights::projective_space();
    let mut brute: Vec<BTreeSet<(i128, Vec<i64>)>> = vec![BTreeSet::new(); 5];
    for total in 9..=18i64 {
        let mut prefix = Vec::new();
        compositions(total, 7, &mut prefix, &mut |d: &[i64]| {
            let Ok(branch) = BranchData::from_nonzero(r, d) else { return };
            let Ok(cover) = CoverSpec::new(p3, branch) else { return };
            for m in 1..=4u32 {
                if let Some(rep) = is_pluricanonical(&cover, m) {
                    let c = canonicalize(cover.branch().degrees()).unwrap();
                    brute[m as usize].insert((rep.k, c.nonzero_values().to_vec()));
                }
            }
        });
    }
    for m in 1..=4u32 {
        let engine: BTreeSet<(i128, Vec<i64>)> = enumerate_l1(3, m)
            .into_iter()
            .map(|s| (s.k, s.d.nonzero_values().to_vec()))
            .collect();
        assert_eq!(engine, brute[m as usize], "m = {m}");
    }
}
