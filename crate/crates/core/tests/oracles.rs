//! Library results checked against the brute-force references in `common`.

mod common;

use std::collections::BTreeSet;

use cbf_core::{
    build_expanded, build_s, build_u, build_u_via_v_rule, build_v, count_u_closed,
    count_u_enumerate, expansion_candidates, expansion_witness, greedy_saturate,
    is_cross_bifix_free, is_non_expandable, overlap_witness, p_class, size_s_closed, size_v_closed,
    Bipartition, Code, ExpansionParams, ScanLimit, UCache, Word,
};
use common::*;

const LIM: ScanLimit = ScanLimit { guard: 1 << 28 };

fn bips() -> Vec<(Bipartition, Vec<u8>)> {
    vec![
        (Bipartition::new(2, &[0]).unwrap(), vec![0]),
        (Bipartition::new(2, &[1]).unwrap(), vec![1]),
        (Bipartition::new(3, &[0]).unwrap(), vec![0]),
        (Bipartition::new(3, &[0, 2]).unwrap(), vec![0, 2]),
    ]
}

#[test]
fn s_matches_filtered_space() {
    for (bip, i_set) in bips() {
        let max_n: usize = if bip.q() == 2 { 11 } else { 8 };
        for n in 2..=max_n {
            for k in 1..n {
                let got = raw_set(&build_s(&bip, n, k, LIM).unwrap());
                assert_eq!(got, naive_s(bip.q(), &i_set, n, k), "{bip} n={n} k={k}");
            }
        }
    }
}

#[test]
fn s_closed_form_matches_enumeration() {
    for (bip, i_set) in bips() {
        let max_n: usize = if bip.q() == 2 { 12 } else { 8 };
        for n in 2..=max_n {
            for k in n.div_ceil(2)..n {
                let want = naive_s(bip.q(), &i_set, n, k).len() as u128;
                assert_eq!(
                    size_s_closed(&bip, n, k).unwrap(),
                    want,
                    "{bip} n={n} k={k}"
                );
            }
        }
    }
    let bip = Bipartition::classic(3).unwrap();
    assert_eq!(naive_s(3, &[0], 8, 4).len(), 36);
    assert_eq!(size_s_closed(&bip, 8, 4).unwrap(), 36);
}

#[test]
fn v_matches_filtered_space_and_closed_form() {
    for (bip, i_set) in bips() {
        let max_n: usize = if bip.q() == 2 { 12 } else { 9 };
        for n in 7..=max_n {
            for k in n.div_ceil(2)..=n - 2 {
                let p = ExpansionParams::new(n, k).unwrap();
                for m in p.lengths() {
                    let got = raw_set(&build_v(&p, &bip, m, LIM).unwrap());
                    assert_eq!(
                        got,
                        naive_v(bip.q(), &i_set, n, k, m),
                        "{bip} n={n} k={k} m={m}"
                    );
                }
                let full = naive_v(bip.q(), &i_set, n, k, n).len() as u128;
                assert_eq!(size_v_closed(&bip, n, k).unwrap(), full);
            }
        }
    }
}

#[test]
fn u_matches_unmemoized_recursion() {
    for (bip, i_set) in bips() {
        let max_n: usize = if bip.q() == 2 { 12 } else { 9 };
        let mut cache = UCache::new();
        for n in 7..=max_n {
            for k in n.div_ceil(2)..=n - 2 {
                let p = ExpansionParams::new(n, k).unwrap();
                for m in p.lengths() {
                    let got = raw_set(&build_u(&p, &bip, m, &mut cache, LIM).unwrap());
                    assert_eq!(
                        got,
                        naive_u(bip.q(), &i_set, n, k, m),
                        "{bip} n={n} k={k} m={m}"
                    );
                }
            }
        }
    }
}

#[test]
fn cross_bifix_check_matches_pairwise_definition() {
    // every 1- and 2-word code over Z_2^5 and Z_3^3
    for (q, n) in [(2u8, 5usize), (3, 3)] {
        let space = all_words(q, n);
        for (a, u) in space.iter().enumerate() {
            for v in &space[a..] {
                let set: BTreeSet<Raw> = [u.clone(), v.clone()].into_iter().collect();
                let code = Code::new(q, n, set.iter().cloned().map(Word::new)).unwrap();
                let got = is_cross_bifix_free(&code).unwrap();
                assert_eq!(got, naive_cbf(&set), "{set:?}");
            }
        }
    }
}

#[test]
fn candidates_match_pairwise_definition() {
    for (bip, i_set) in bips() {
        let max_n: usize = if bip.q() == 2 { 9 } else { 5 };
        for n in 4..=max_n {
            for k in 1..n {
                let s = build_s(&bip, n, k, LIM).unwrap();
                let got: BTreeSet<Raw> = expansion_candidates(&s, LIM)
                    .unwrap()
                    .into_iter()
                    .map(Word::into_inner)
                    .collect();
                let want = naive_candidates(bip.q(), &naive_s(bip.q(), &i_set, n, k));
                assert_eq!(got, want, "{bip} n={n} k={k}");
                let verdict = is_non_expandable(&s, LIM).unwrap();
                assert_eq!(verdict.non_expandable, want.is_empty());
                assert_eq!(verdict.witness.map(Word::into_inner), want.first().cloned());
            }
        }
    }
}

#[test]
fn overlap_witness_agrees_with_candidates() {
    let bip = Bipartition::classic(2).unwrap();
    let s = build_s(&bip, 8, 5, LIM).unwrap();
    let cands = expansion_candidates(&s, LIM).unwrap();
    for x in all_words(2, 8) {
        let wit = overlap_witness(&x, &s).unwrap();
        if s.contains(&x) {
            assert!(wit.is_none());
        } else if cands.contains(x.as_slice()) {
            assert!(wit.is_none(), "{x:?}");
        } else {
            let wit = wit.unwrap_or_else(|| panic!("no witness for {x:?}"));
            assert!(wit.is_valid());
            assert!(wit.length >= 1 && wit.length < 8);
        }
    }
}

#[test]
fn candidates_for_s_7_5_contain_the_u_members() {
    let bip = Bipartition::classic(2).unwrap();
    let s = build_s(&bip, 7, 5, LIM).unwrap();
    let cands = expansion_candidates(&s, LIM).unwrap();
    let p = ExpansionParams::new(7, 5).unwrap();
    let u = build_u(&p, &bip, 7, &mut UCache::new(), LIM).unwrap();
    assert_eq!(u.len(), 3);
    for w in u.iter() {
        assert!(cands.contains(w), "{}", w.to_text(2));
    }
}

#[test]
fn greedy_saturation_is_non_expandable_and_idempotent() {
    for (bip, _) in bips() {
        let max_n: usize = if bip.q() == 2 { 10 } else { 6 };
        for n in 4..=max_n {
            for k in 1..n {
                let s = build_s(&bip, n, k, LIM).unwrap();
                let sat = greedy_saturate(&s, LIM).unwrap();
                assert!(s.words().is_subset(sat.words()));
                assert!(is_cross_bifix_free(&sat).unwrap());
                assert!(is_non_expandable(&sat, LIM).unwrap().non_expandable);
                assert_eq!(greedy_saturate(&sat, LIM).unwrap(), sat);
            }
        }
    }
}

#[test]
fn expansion_witnesses_are_candidates() {
    for (bip, _) in bips() {
        let max_n: usize = if bip.q() == 2 { 12 } else { 8 };
        for n in 5..=max_n {
            for k in n.div_ceil(2)..=n - 2 {
                let s = build_s(&bip, n, k, LIM).unwrap();
                let ells: Vec<Option<usize>> = if k + 2 == n {
                    vec![None]
                } else {
                    (n - k - 1..k).map(Some).collect()
                };
                for ell in ells {
                    let x = expansion_witness(&bip, n, k, ell).unwrap();
                    assert!(!s.contains(&x), "{bip} n={n} k={k} ell={ell:?}");
                    assert!(
                        overlap_witness(&x, &s).unwrap().is_none(),
                        "{bip} n={n} k={k} ell={ell:?}"
                    );
                }
            }
        }
    }
}

#[test]
fn intermediate_u_codes_are_cross_bifix_free() {
    let mut cache = UCache::new();
    for (bip, _) in bips() {
        let max_n: usize = if bip.q() == 2 { 13 } else { 9 };
        for n in 7..=max_n {
            for k in n.div_ceil(2)..=n - 2 {
                let p = ExpansionParams::new(n, k).unwrap();
                for m in p.lengths() {
                    let u = build_u(&p, &bip, m, &mut cache, LIM).unwrap();
                    if u.n() >= 2 && !u.is_empty() {
                        assert!(is_cross_bifix_free(&u).unwrap(), "{bip} n={n} k={k} m={m}");
                    }
                }
            }
        }
    }
}

#[test]
fn u_rules_agree_beyond_the_full_length() {
    for (bip, _) in bips() {
        let max_n: usize = if bip.q() == 2 { 13 } else { 9 };
        let mut cache = UCache::new();
        for n in 7..=max_n {
            for k in n.div_ceil(2)..=n - 2 {
                let p = ExpansionParams::new(n, k).unwrap();
                for m in p.lengths() {
                    assert_eq!(
                        build_u(&p, &bip, m, &mut cache, LIM).unwrap(),
                        build_u_via_v_rule(&p, &bip, m, LIM).unwrap(),
                        "{bip} n={n} k={k} m={m}"
                    );
                }
            }
        }
    }
}

/// `|V(n)|` minus the suffix-class sizes `|A_m|` and `|B_m|` recovers `|U(n)|`,
/// and each class size matches the materialized `P_m(n)`.
#[test]
fn disjoint_decomposition_identity() {
    let bip = Bipartition::classic(2).unwrap();
    let (qi, ii, jj) = (2u128, 1u128, 1u128);
    let mut cache = UCache::new();
    for n in [9usize, 10] {
        for k in n.div_ceil(2)..=n - 2 {
            let p = ExpansionParams::new(n, k).unwrap();
            let t = p.t();
            let f = p.forced_i_position();
            let u = |m: usize, cache: &mut UCache| {
                build_u(&p, &bip, m, cache, LIM).unwrap().len() as u128
            };
            let mut total = build_v(&p, &bip, n, LIM).unwrap().len() as u128;
            for m in p.class_lengths() {
                let class = if m <= k - t {
                    ii.pow(t as u32 + 1) * jj * qi.pow((n - t - m - 2) as u32) * u(m, &mut cache)
                } else {
                    ii.pow(t as u32) * jj * qi.pow((n - t - m - 1) as u32) * u(m, &mut cache)
                };
                assert_ne!(m, f);
                let materialized = p_class(&p, &bip, m, &mut cache, LIM).unwrap().len() as u128;
                assert_eq!(class, materialized, "n={n} k={k} m={m}");
                total -= class;
            }
            assert_eq!(
                total,
                count_u_enumerate(&bip, n, k, &mut cache, LIM).unwrap(),
                "n={n} k={k}"
            );
        }
    }
}

#[test]
fn expanded_code_exceeds_s_in_the_expandable_regime() {
    let bip = Bipartition::classic(2).unwrap();
    let mut cache = UCache::new();
    for n in 7usize..=14 {
        for k in n.div_ceil(2)..=n - 2 {
            let s = size_s_closed(&bip, n, k).unwrap();
            let u = count_u_closed(&bip, n, k, &mut cache, LIM)
                .unwrap()
                .closed_form
                .unwrap();
            assert!(u > 0, "n={n} k={k}");
            let e = build_expanded(&bip, n, k, &mut cache, LIM).unwrap();
            assert_eq!(e.len() as u128, s + u);
        }
    }
}
